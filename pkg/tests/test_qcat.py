"""Categories, functors, and distributors over small quantaloids."""

import random
from fractions import Fraction as F

import pytest

from quantcat.errors import InvalidFunctor, InvalidInput, TypeMismatch
from quantcat.qcat import (QCat, build_category, category_from_json,
                           category_report, category_to_json,
                           category_violation, compose_distributor,
                           compose_functor, discrete_cat, dist_leq,
                           distributor, distributor_closure,
                           distributor_violation, functor, functor_conditions,
                           functor_leq, identity_distributor,
                           identity_functor, is_fully_faithful, lower_star,
                           underlying_order, upper_star)
from quantcat.qrel import (compose_rel, identity_rel, random_relation,
                           rel_join, rel_leq, relation, typed_map, typed_set)

INF = float("inf")


def close_category(X, r):
    """Reflexive-transitive closure of a relation, as a category."""
    a = rel_join([r, identity_rel(X)])
    while True:
        nxt = rel_join([a, compose_rel(a, a)])
        if nxt == a:
            return build_category(X, a)
        a = nxt


def chain_cat(q2, names):
    X = typed_set(q2, names)
    n = len(names)
    rows = [[1 if i <= j else 0 for j in range(n)] for i in range(n)]
    return build_category(X, relation(X, X, rows))


def metric_cat(lawvere, names, dist):
    X = typed_set(lawvere, names)
    rows = [[dist(i, j) for j in range(len(names))]
            for i in range(len(names))]
    return build_category(X, relation(X, X, rows))


def line_cat(lawvere, coords, names=None):
    names = names or [f"p{i}" for i in range(len(coords))]
    return metric_cat(lawvere, names,
                      lambda i, j: abs(coords[i] - coords[j]))


# ---------------------------------------------------------------- categories


def test_preorder_chain_is_category(q2):
    C = chain_cat(q2, ["a", "b", "c"])
    assert underlying_order(C) == [(0, 0), (0, 1), (0, 2),
                                   (1, 1), (1, 2), (2, 2)]


def test_metric_line_is_category(lawvere):
    C = line_cat(lawvere, [F(0), F(1), F(3)])
    assert C.hom.table[0][2] == F(3)
    # a separated metric orders nothing beyond the diagonal
    assert underlying_order(C) == [(0, 0), (1, 1), (2, 2)]


def test_zero_distance_pair_is_ordered_both_ways(lawvere):
    C = metric_cat(lawvere, ["x", "y"], lambda i, j: F(0))
    assert set(underlying_order(C)) == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_discrete_category(q2):
    X = typed_set(q2, ["x", "y"])
    C = discrete_cat(X)
    assert C.hom.table == ((1, 0), (0, 1))
    assert category_violation(X, C.hom) is None


def test_broken_reflexivity_is_reported(lawvere):
    X = typed_set(lawvere, ["x", "y"])
    bad = relation(X, X, [[F(1), F(2)], [F(2), F(0)]])
    w = category_violation(X, bad)
    assert w == {"axiom": "identity", "element": "x", "value": "1"}
    with pytest.raises(InvalidInput, match="not a category"):
        build_category(X, bad)
    rep = category_report(X, bad)
    assert not rep.passed
    assert [c.name for c in rep.checks] == ["identities below homs",
                                            "composition below homs"]


def test_triangle_breach_is_reported(lawvere):
    X = typed_set(lawvere, ["a", "b", "c"])
    bad = relation(X, X, [[F(0), F(1), F(5)],
                          [F(1), F(0), F(1)],
                          [F(5), F(1), F(0)]])
    w = category_violation(X, bad)
    assert w["axiom"] == "composition"
    assert w["triple"] == ["a", "b", "c"]
    assert w["composite"] == "2" and w["value"] == "5"
    rep = category_report(X, bad)
    assert [c.passed for c in rep.checks] == [True, False]


def test_typed_category_over_two_objects(pairq):
    X = typed_set(pairq, ["x", "y"], {"x": "p", "y": "q"})
    C = discrete_cat(X)
    assert category_violation(X, C.hom) is None
    # cross-type elements are never order-related
    assert underlying_order(C) == [(0, 0), (1, 1)]


def test_random_closures_are_categories(chain3):
    rng = random.Random(7)
    X = typed_set(chain3, ["a", "b", "c", "d"])
    for _ in range(12):
        r = random_relation(chain3, X, X, rng)
        C = close_category(X, r)
        assert category_violation(X, C.hom) is None


# ------------------------------------------------------------------ functors


def test_monotone_map_is_functor(q2):
    C = chain_cat(q2, ["a", "b", "c"])
    D = chain_cat(q2, ["u", "v"])
    f = functor(C, D, {"a": "u", "b": "u", "c": "v"})
    assert f.mapping == (0, 0, 1)


def test_non_monotone_map_rejected(q2):
    C = chain_cat(q2, ["a", "b"])
    D = chain_cat(q2, ["u", "v"])
    with pytest.raises(InvalidFunctor):
        functor(C, D, {"a": "v", "b": "u"})


def test_nonexpansive_map_is_functor(lawvere):
    C = line_cat(lawvere, [F(0), F(1), F(3)])
    D = line_cat(lawvere, [F(0), F(1)], names=["q0", "q1"])
    f = functor(C, D, {"p0": "q0", "p1": "q1", "p2": "q1"})
    assert f.mapping == (0, 1, 1)
    with pytest.raises(InvalidFunctor):
        # p0, p1 at distance 1 would land at distance... nothing: the map
        # sending both ends of a short gap to the far ends of a longer one
        functor(D, C, {"q0": "p0", "q1": "p2"})


def test_four_functor_conditions_agree_on_arbitrary_maps(chain3):
    rng = random.Random(11)
    X = typed_set(chain3, ["a", "b", "c"])
    Y = typed_set(chain3, ["u", "v", "w"])
    for _ in range(15):
        C = close_category(X, random_relation(chain3, X, X, rng))
        D = close_category(Y, random_relation(chain3, Y, Y, rng))
        f = typed_map(X, Y, tuple(rng.randrange(3) for _ in range(3)))
        conds = functor_conditions(C, D, f)
        assert len(set(conds.values())) == 1, conds


def test_identity_and_composition_of_functors(q2):
    C = chain_cat(q2, ["a", "b"])
    D = chain_cat(q2, ["u", "v", "w"])
    E = chain_cat(q2, ["s", "t"])
    f = functor(C, D, {"a": "u", "b": "w"})
    g = functor(D, E, {"u": "s", "v": "s", "w": "t"})
    gf = compose_functor(g, f)
    assert gf.mapping == (0, 1)
    assert compose_functor(identity_functor(D), f).mapping == f.mapping
    assert compose_functor(f, identity_functor(C)).mapping == f.mapping
    with pytest.raises(TypeMismatch):
        compose_functor(f, g)


def test_functor_order(q2):
    C = chain_cat(q2, ["a", "b"])
    D = chain_cat(q2, ["u", "v", "w"])
    low = functor(C, D, {"a": "u", "b": "v"})
    high = functor(C, D, {"a": "v", "b": "w"})
    assert functor_leq(low, high)
    assert not functor_leq(high, low)
    assert functor_leq(low, low)
    with pytest.raises(TypeMismatch):
        functor_leq(low, identity_functor(D))


# -------------------------------------------------------------- full fidelity


def test_subspace_embedding_is_fully_faithful(lawvere):
    big = line_cat(lawvere, [F(0), F(1), F(3)])
    sub = line_cat(lawvere, [F(0), F(3)], names=["s0", "s1"])
    emb = functor(sub, big, {"s0": "p0", "s1": "p2"})
    assert is_fully_faithful(emb)


def test_collapsing_map_is_not_fully_faithful(lawvere):
    big = line_cat(lawvere, [F(0), F(1)])
    pt = line_cat(lawvere, [F(0)], names=["o"])
    assert not is_fully_faithful(functor(big, pt, {"p0": "o", "p1": "o"}))


def test_order_embedding_versus_mere_monotone(q2):
    X = typed_set(q2, ["x", "y"])
    disc = discrete_cat(X)
    chain = chain_cat(q2, ["u", "v"])
    mono = functor(disc, chain, {"x": "u", "y": "v"})
    assert not is_fully_faithful(mono)
    assert is_fully_faithful(identity_functor(chain))


# ------------------------------------------------------ graphs as distributors


def test_star_distributor_values(lawvere):
    C = line_cat(lawvere, [F(0), F(1)])
    D = line_cat(lawvere, [F(0), F(1), F(3)], names=["q0", "q1", "q2"])
    f = functor(C, D, {"p0": "q0", "p1": "q1"})
    lo, up = lower_star(f), upper_star(f)
    # lower star: distance measured from the image, f_*(x, y) = b(fx, y)
    assert lo.rel.table == ((F(0), F(1), F(3)), (F(1), F(0), F(2)))
    # upper star: distance measured into the image, f^*(y, x) = b(y, fx)
    assert up.rel.table == ((F(0), F(1)), (F(1), F(0)), (F(3), F(2)))
    assert distributor_violation(C, D, lo.rel) is None
    assert distributor_violation(D, C, up.rel) is None


def test_star_adjunction(chain3):
    rng = random.Random(3)
    X = typed_set(chain3, ["a", "b", "c"])
    Y = typed_set(chain3, ["u", "v"])
    for _ in range(10):
        C = close_category(X, random_relation(chain3, X, X, rng))
        D = close_category(Y, random_relation(chain3, Y, Y, rng))
        m = typed_map(X, Y, tuple(rng.randrange(2) for _ in range(3)))
        if not functor_conditions(C, D, m)["pointwise"]:
            continue
        f = functor(C, D, m.mapping)
        unit = compose_distributor(upper_star(f), lower_star(f))
        counit = compose_distributor(lower_star(f), upper_star(f))
        assert dist_leq(identity_distributor(C), unit)
        assert dist_leq(counit, identity_distributor(D))


# -------------------------------------------------------------- distributors


def test_distributor_validation(lawvere):
    C = line_cat(lawvere, [F(0), F(1)])
    D = line_cat(lawvere, [F(0), F(2)], names=["q0", "q1"])
    ok = relation(C.carrier, D.carrier, [[F(4), F(2)], [F(5), F(3)]])
    assert distributor_violation(C, D, ok) is None
    phi = distributor(C, D, ok)
    # shrinking one cell below what the actions force breaks the axiom
    bad = relation(C.carrier, D.carrier, [[F(4), F(1)], [F(5), F(3)]])
    assert distributor_violation(C, D, bad) is not None
    with pytest.raises(InvalidInput, match="not a distributor"):
        distributor(C, D, bad)
    # identity distributors are neutral for composition
    assert compose_distributor(phi, identity_distributor(C)).rel == phi.rel
    assert compose_distributor(identity_distributor(D), phi).rel == phi.rel


def test_closure_always_yields_distributor(chain3):
    rng = random.Random(19)
    X = typed_set(chain3, ["a", "b"])
    Y = typed_set(chain3, ["u", "v", "w"])
    for _ in range(12):
        C = close_category(X, random_relation(chain3, X, X, rng))
        D = close_category(Y, random_relation(chain3, Y, Y, rng))
        r = random_relation(chain3, X, Y, rng)
        phi = distributor_closure(C, D, r)
        assert distributor_violation(C, D, phi.rel) is None
        assert rel_leq(r, phi.rel)


def test_distributor_composition_is_associative(chain3):
    rng = random.Random(23)
    names = (["a", "b"], ["u", "v"], ["s", "t"], ["y", "z"])
    sets = [typed_set(chain3, n) for n in names]
    cats = [close_category(S, random_relation(chain3, S, S, rng))
            for S in sets]
    for _ in range(8):
        phi = distributor_closure(
            cats[0], cats[1], random_relation(chain3, sets[0], sets[1], rng))
        psi = distributor_closure(
            cats[1], cats[2], random_relation(chain3, sets[1], sets[2], rng))
        chi = distributor_closure(
            cats[2], cats[3], random_relation(chain3, sets[2], sets[3], rng))
        left = compose_distributor(chi, compose_distributor(psi, phi))
        right = compose_distributor(compose_distributor(chi, psi), phi)
        assert left.rel == right.rel


def test_distributor_middle_mismatch(q2):
    C = chain_cat(q2, ["a", "b"])
    D = chain_cat(q2, ["u", "v"])
    phi = identity_distributor(C)
    psi = identity_distributor(D)
    with pytest.raises(TypeMismatch):
        compose_distributor(psi, phi)


# ---------------------------------------------------------------------- JSON


def test_category_json_round_trip(lawvere, q2, pairq):
    for C in (line_cat(lawvere, [F(0), F(1, 2), F(2)]),
              chain_cat(q2, ["a", "b", "c"]),
              discrete_cat(typed_set(pairq, ["x", "y"],
                                     {"x": "p", "y": "q"}))):
        doc = category_to_json(C)
        back = category_from_json(C.carrier.quantaloid, doc)
        assert back == C


def test_category_json_rejects_bad_docs(lawvere):
    with pytest.raises(InvalidInput):
        category_from_json(lawvere, ["not", "an", "object"])
    with pytest.raises(InvalidInput):
        category_from_json(lawvere, {"elements": ["x"]})
    with pytest.raises(InvalidInput, match="not a category"):
        category_from_json(lawvere, {"elements": ["x"], "hom": [["3/2"]]})
