import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci", derandomize=True, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

from quantcat.lattice import FiniteLattice, chain, m3
from quantcat.quantaloid import (LAWVERE, TableQuantaloid, get_builtin,
                                 quantaloid_from_json)


@pytest.fixture(scope="session")
def q2():
    return get_builtin("2")


@pytest.fixture(scope="session")
def chain3():
    return get_builtin("chain3")


@pytest.fixture(scope="session")
def luk3():
    return get_builtin("lukasiewicz3")


@pytest.fixture(scope="session")
def lawvere():
    return LAWVERE


def _two_object_doc():
    """Two objects whose homs are all 2-chains; compose is meet.

    This is a valid quantaloid (units are the top of each endo-hom) and is the
    smallest fixture that exercises genuinely typed composition plumbing.
    """
    lat = {"elements": ["0", "1"], "leq": [["0", "0"], ["0", "1"], ["1", "1"]]}
    objs = ["p", "q"]
    homs = [dict(lat, **{"from": a, "to": b}) for a in objs for b in objs]
    meet_table = [["0", "0"], ["0", "1"]]
    compose = [{"from": a, "via": b, "to": c, "table": meet_table}
               for a in objs for b in objs for c in objs]
    return {"name": "pair", "objects": objs, "homs": homs,
            "compose": compose, "units": {"p": "1", "q": "1"}}


@pytest.fixture(scope="session")
def pairq():
    return quantaloid_from_json(_two_object_doc())


@pytest.fixture()
def two_object_doc():
    return _two_object_doc()


def m3_hom_quantaloid():
    """Two objects; hom(p,q) is M3, so the quantaloid is a genuine one but
    not completely distributive. Scalars act by identity or constant bottom."""
    two = chain(2)
    em3 = m3()
    one = FiniteLattice(["o"], [("o", "o")])
    n3 = len(em3.names)
    homs = {("p", "p"): two, ("q", "q"): two, ("p", "q"): em3, ("q", "p"): one}
    right_scalar = [[em3.bottom, b] for b in range(n3)]        # table[b][s]
    left_scalar = [[em3.bottom] * n3, list(range(n3))]          # table[s][b]
    meet = [[0, 0], [0, 1]]
    tables = {
        ("p", "p", "p"): meet,
        ("q", "q", "q"): meet,
        ("p", "p", "q"): right_scalar,
        ("p", "q", "q"): left_scalar,
        ("q", "q", "p"): [[0, 0]],
        ("q", "p", "p"): [[0], [0]],
        ("p", "q", "p"): [[0] * n3],
        ("q", "p", "q"): [[0] for _ in range(n3)],
    }
    return TableQuantaloid("m3pair", ("p", "q"), homs, tables,
                           {"p": 1, "q": 1})
