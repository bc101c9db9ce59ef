import pytest

from quantcat.errors import InvalidInput, UnknownElement
from quantcat.lattice import (FiniteLattice, chain, diamond, lattice_from_json,
                              m3, n5)


def forbidden_sublattice(lat):
    """Independent oracle: search for an M3 or N5 sublattice directly.

    By Birkhoff's criterion a lattice is distributive iff it contains neither.
    """
    ids = range(len(lat))
    for x in ids:
        for y in ids:
            if y <= x or lat.leq(x, y) or lat.leq(y, x):
                continue
            for z in ids:
                if z <= y or z == x:
                    continue
                if (lat.leq(x, z) or lat.leq(z, x)
                        or lat.leq(y, z) or lat.leq(z, y)):
                    continue
                p = lat.meet2(x, y)
                q = lat.join2(x, y)
                if (lat.meet2(y, z) == p and lat.meet2(z, x) == p
                        and lat.join2(y, z) == q and lat.join2(z, x) == q
                        and p != q):
                    return "m3"
    for a in ids:
        for c in ids:
            if a == c or not lat.leq(a, c):
                continue
            for b in ids:
                bot = lat.meet2(a, b)
                top = lat.join2(a, b)
                if (lat.meet2(c, b) == bot and lat.join2(c, b) == top
                        and len({bot, a, c, b, top}) == 5):
                    return "n5"
    return None


def product(l1, l2):
    names = [f"{a}.{b}" for a in l1.names for b in l2.names]
    pairs = []
    for a1 in l1.ids():
        for b1 in l2.ids():
            for a2 in l1.ids():
                for b2 in l2.ids():
                    if l1.leq(a1, a2) and l2.leq(b1, b2):
                        pairs.append((f"{l1.name(a1)}.{l2.name(b1)}",
                                      f"{l1.name(a2)}.{l2.name(b2)}"))
    return FiniteLattice(names, pairs)


def powerset_lattice(n):
    names = [f"s{m}" for m in range(1 << n)]
    pairs = [(f"s{a}", f"s{b}") for a in range(1 << n)
             for b in range(1 << n) if a & ~b == 0]
    return FiniteLattice(names, pairs)


def test_chain_basics():
    c = chain(4)
    assert c.bottom == c.index("0")
    assert c.top == c.index("3")
    assert c.join([1, 2]) == 2
    assert c.meet([1, 2]) == 1
    assert c.join([]) == c.bottom
    assert c.meet([]) == c.top
    assert c.leq(0, 3) and not c.leq(3, 0)
    assert len(c) == 4


def test_diamond_ops():
    d = diamond()
    a, b = d.index("a"), d.index("b")
    assert d.join2(a, b) == d.top
    assert d.meet2(a, b) == d.bottom
    assert not d.leq(a, b) and not d.leq(b, a)


def test_name_lookup_errors():
    c = chain(2)
    with pytest.raises(UnknownElement):
        c.index("nope")


def test_missing_reflexive_pair_diagnostic():
    with pytest.raises(InvalidInput, match=r"missing reflexive pair \(y, y\)"):
        FiniteLattice(["x", "y"], [("x", "x"), ("x", "y")])


def test_antisymmetry_rejected():
    with pytest.raises(InvalidInput, match="antisymmetric"):
        FiniteLattice(["x", "y"],
                      [("x", "x"), ("y", "y"), ("x", "y"), ("y", "x")])


def test_transitivity_rejected():
    with pytest.raises(InvalidInput, match="transitive"):
        FiniteLattice(["x", "y", "z"],
                      [("x", "x"), ("y", "y"), ("z", "z"),
                       ("x", "y"), ("y", "z")])


def test_unknown_element_in_pairs():
    with pytest.raises(UnknownElement):
        FiniteLattice(["x"], [("x", "x"), ("x", "w")])


def test_missing_bound_rejected():
    # Two atoms under two co-atoms: join of the atoms has two minimal upper
    # bounds, so no least one.
    names = ["a", "b", "x", "y"]
    pairs = [(n, n) for n in names] + [
        ("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")]
    with pytest.raises(InvalidInput, match="bound"):
        FiniteLattice(names, pairs)


def test_duplicate_and_empty_names_rejected():
    with pytest.raises(InvalidInput):
        FiniteLattice(["x", "x"], [("x", "x")])
    with pytest.raises(InvalidInput):
        FiniteLattice([""], [("", "")])
    with pytest.raises(InvalidInput):
        FiniteLattice([], [])


def test_distributivity_matches_forbidden_sublattice_oracle():
    cases = [
        chain(1), chain(2), chain(5), diamond(), m3(), n5(),
        powerset_lattice(3),
        product(diamond(), chain(3)),
        product(m3(), chain(2)),
        product(n5(), diamond()),
        product(chain(2), chain(4)),
    ]
    for lat in cases:
        assert lat.is_distributive() == (forbidden_sublattice(lat) is None)


def test_m3_witness_is_a_real_violation():
    lat = m3()
    w = lat.distributivity_witness()
    assert w is not None
    a, b, c = w
    assert lat.meet2(a, lat.join2(b, c)) != lat.join2(lat.meet2(a, b),
                                                      lat.meet2(a, c))


def test_n5_not_distributive_m3_pattern_absent():
    assert forbidden_sublattice(n5()) == "n5"
    assert forbidden_sublattice(m3()) == "m3"


def test_json_round_trip():
    d = diamond()
    back = lattice_from_json(d.to_json())
    assert back.names == d.names
    assert back.leq_pairs() == d.leq_pairs()


def test_json_shape_errors():
    with pytest.raises(InvalidInput):
        lattice_from_json([])
    with pytest.raises(InvalidInput):
        lattice_from_json({"elements": ["a"]})
    with pytest.raises(InvalidInput):
        lattice_from_json({"elements": [1], "leq": []})
