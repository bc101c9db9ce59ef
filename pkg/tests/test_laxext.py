"""Lax extensions: the minimal, largest, and initial constructions."""

import pytest

from quantcat.corpus import all_categories, all_distributors, metric_fixtures
from quantcat.errors import (EnumerationUnsupported, InvalidInput,
                             InvalidMorphism)
from quantcat.hausdorff import line_space
from quantcat.laxext import (check_enriched_lax_extension,
                             check_enriched_monad, check_monad_morphism,
                             check_yoneda_full_fidelity,
                             conical_inclusion_morphism, enriched_monad,
                             flat_uniqueness_probe,
                             generic_minimal_extension, identity_morphism,
                             initial_extension, is_flat, largest_extension,
                             meet_extension, minimal_extension, monad_names,
                             verify_enriched_lax_extension,
                             verify_enriched_monad)
from quantcat.qcat import (build_category, dist_leq, identity_distributor,
                           top_distributor)
from quantcat.qrel import rel_from_function, typed_set


@pytest.fixture(scope="module")
def cats(q2):
    return all_categories(q2, 2)


def two_chain(q2):
    X = typed_set(q2, ["x", "y"])
    hom = rel_from_function(X, X, lambda i, j: 1 if i <= j else 0)
    return build_category(X, hom)


# ------------------------------------------------------------------ registry


def test_registry_lists_the_built_in_monads():
    assert set(monad_names()) == {
        "Id", "P", "Pdag", "PPdag", "PdagP", "H", "Hdag", "HHdag", "HdagH"}
    assert enriched_monad("P") is enriched_monad("P")


def test_registry_rejects_unknown_names():
    with pytest.raises(InvalidInput):
        enriched_monad("nope")


# ------------------------------------------------- minimal: closed vs generic


@pytest.mark.parametrize("name", ["Id", "P", "Pdag", "H", "Hdag"])
def test_closed_forms_match_the_generic_composite_everywhere(name, cats):
    closed = minimal_extension(name)
    generic = generic_minimal_extension(name)
    assert closed.provenance == generic.provenance == "minimal"
    for X in cats:
        for Y in cats:
            for phi in all_distributors(X, Y):
                assert closed.extend(phi).rel == generic.extend(phi).rel


@pytest.mark.parametrize("name", ["PPdag", "PdagP", "HHdag", "HdagH"])
def test_doubled_closed_forms_match_the_generic_composite(name, cats):
    closed = minimal_extension(name)
    generic = generic_minimal_extension(name)
    X, Y = cats[3], cats[5]
    for phi in all_distributors(X, Y):
        assert closed.extend(phi).rel == generic.extend(phi).rel


def test_presheaf_extension_of_the_identity_is_the_presheaf_order(q2):
    # Down-sets of the two-chain x <= y are <0,0> <= <1,0> <= <1,1>; the
    # extension of the identity distributor must be exactly that 3-chain.
    C = two_chain(q2)
    ext = minimal_extension("P").extend(identity_distributor(C))
    assert ext.rel.table == ((1, 1, 1), (0, 1, 1), (0, 0, 1))
    assert ext.source.carrier.elements == ("<0,0>", "<1,0>", "<1,1>")


def test_generic_composite_needs_enumerable_homs():
    line3 = metric_fixtures()[0]
    generic = generic_minimal_extension("H")
    with pytest.raises(EnumerationUnsupported):
        generic.extend(identity_distributor(line3))


# ----------------------------------------------------- flatness biconditional


@pytest.mark.parametrize("name", ["Id", "P", "Pdag", "H", "Hdag"])
def test_yoneda_full_fidelity_matches_minimal_flatness(name, cats):
    rep = check_yoneda_full_fidelity(name, cats)
    assert rep.passed
    assert len(rep.checks) == len(cats)
    assert all(c.notes == "fully faithful and flat" for c in rep.checks)


# ----------------------------------------------------------- largest extension


def test_largest_extension_passes_laws_but_is_not_flat(cats):
    top = largest_extension("P")
    assert top.provenance == "largest"
    rep = check_enriched_lax_extension(top, cats[3], cats[4], cats[5])
    verdicts = {c.name: c for c in rep.checks}
    failing = [c.name for c in rep.failures()]
    assert failing == ["flat"]
    w = verdicts["flat"].witness
    assert w is not None and w["lhs"] != w["rhs"]


def test_largest_extension_dominates_the_minimal_one(cats):
    top, low = largest_extension("P"), minimal_extension("P")
    for X in (cats[2], cats[3]):
        for Y in (cats[4], cats[5]):
            for phi in all_distributors(X, Y):
                assert dist_leq(low.extend(phi), top.extend(phi))


def test_largest_extension_is_flat_exactly_on_degenerate_images(cats):
    top = largest_extension("P")
    empty = cats[0]
    assert len(empty) == 0
    assert is_flat(top, empty)          # one presheaf only: nothing to miss
    assert not is_flat(top, cats[3])    # a genuine order is not codiscrete


def test_top_distributor_is_the_everywhere_greatest_one(cats):
    X, Y = cats[3], cats[4]
    top = top_distributor(X, Y)
    for phi in all_distributors(X, Y):
        assert dist_leq(phi, top)


# ------------------------------------------------------------------ law suite


@pytest.mark.parametrize("name", ["Id", "P", "Pdag", "H", "Hdag"])
def test_minimal_extensions_pass_the_full_suite(name, cats):
    E = minimal_extension(name)
    rep = check_enriched_lax_extension(E, cats[3], cats[4], cats[5])
    assert rep.passed, [c.name for c in rep.failures()]
    rep = check_enriched_lax_extension(E, cats[5], cats[3], cats[2])
    assert rep.passed, [c.name for c in rep.failures()]


@pytest.mark.parametrize("name", ["PPdag", "PdagP", "HHdag", "HdagH"])
def test_doubled_minimal_extensions_pass_the_suite_on_small_categories(
        name, q2):
    E = minimal_extension(name)
    small = [C for C in all_categories(q2, 1)]
    rep = verify_enriched_lax_extension(E, small)
    assert rep.passed, [c.name for c in rep.failures()]


def test_conical_extension_passes_the_suite_over_metric_spaces():
    line3, line4, tri = metric_fixtures()
    E = minimal_extension("H")
    rep = check_enriched_lax_extension(E, tri, line3, samples=4)
    assert rep.passed, [c.name for c in rep.failures()]
    # image carriers of 3-point spaces are too wide to double; the row must
    # say it was skipped rather than silently passing
    mult = next(c for c in rep.checks if c.name == "mult oplax")
    assert mult.notes and "skipped" in mult.notes


def test_mult_oplaxness_runs_on_a_small_metric_space():
    small = line_space(["0", "2"], ["0", "2"])
    E = minimal_extension("H")
    rep = check_enriched_lax_extension(E, small, small, samples=4)
    assert rep.passed, [c.name for c in rep.failures()]
    mult = next(c for c in rep.checks if c.name == "mult oplax")
    assert mult.notes is None


def test_the_suite_refuses_oversized_carriers():
    from quantcat.errors import CorpusTooLarge
    big = line_space([str(k) for k in range(9)])
    with pytest.raises(CorpusTooLarge):
        check_enriched_lax_extension(minimal_extension("H"), big, big)


# ------------------------------------------------- morphisms and initiality


def test_conical_inclusion_is_a_monad_morphism(cats):
    lam = conical_inclusion_morphism()
    rep = check_monad_morphism(lam, [cats[2], cats[3], cats[4]])
    assert rep.passed, [c.name for c in rep.failures()]


def test_initial_extension_along_the_identity_changes_nothing(cats):
    E = minimal_extension("H")
    ini = initial_extension(identity_morphism("H"), E)
    assert ini.provenance == "initial"
    for phi in all_distributors(cats[3], cats[4]):
        assert ini.extend(phi).rel == E.extend(phi).rel


def test_initial_extension_along_the_inclusion_recovers_the_conical_form(
        cats):
    lam = conical_inclusion_morphism()
    ini = initial_extension(lam, minimal_extension("P"))
    E = minimal_extension("H")
    for X in (cats[2], cats[3], cats[5]):
        for Y in (cats[3], cats[4]):
            for phi in all_distributors(X, Y):
                assert ini.extend(phi).rel == E.extend(phi).rel


def test_initial_extension_checks_the_morphism_target():
    with pytest.raises(InvalidMorphism):
        initial_extension(identity_morphism("H"), minimal_extension("P"))


def test_meet_of_initial_extensions_passes_the_suite(cats):
    lam = conical_inclusion_morphism()
    low = initial_extension(lam, minimal_extension("P"))
    high = initial_extension(lam, largest_extension("P"))
    met = meet_extension("meet-of-initials", [low, high])
    rep = check_enriched_lax_extension(met, cats[3], cats[4], cats[5])
    assert rep.passed, [c.name for c in rep.failures()]
    for phi in all_distributors(cats[3], cats[4]):
        assert met.extend(phi).rel == low.extend(phi).rel  # low is below high


def test_meet_requires_a_single_monad():
    with pytest.raises(InvalidMorphism):
        meet_extension("bad", [minimal_extension("P"),
                               minimal_extension("H")])
    with pytest.raises(InvalidInput):
        meet_extension("empty", [])


# ------------------------------------------------------------------ monads


@pytest.mark.parametrize("name", ["Id", "P", "Pdag", "H", "Hdag"])
def test_monad_laws_hold_on_the_small_corpus(name, cats):
    T = enriched_monad(name)
    rep = verify_enriched_monad(T, cats)
    assert rep.passed, [c.name for c in rep.failures()]


@pytest.mark.parametrize("name", ["PPdag", "PdagP", "HHdag", "HdagH"])
def test_doubled_monad_laws_hold_on_tiny_categories(name, q2):
    T = enriched_monad(name)
    rep = verify_enriched_monad(T, all_categories(q2, 1))
    assert rep.passed, [c.name for c in rep.failures()]


def test_monad_law_rows_cover_units_mult_and_naturality(cats):
    rep = check_enriched_monad(enriched_monad("P"), cats[3])
    names = [c.name for c in rep.checks]
    assert names == ["unit is a functor", "mult is a functor",
                     "left unit law", "right unit law",
                     "mult associativity"]


# --------------------------------------------------------------------- probe


def test_probe_confirms_flat_extensions_agree_with_the_minimal_one(cats):
    rep = flat_uniqueness_probe(minimal_extension("H"),
                                [cats[3], cats[4]])
    assert rep.passed
    assert all("generic composite" in (c.notes or "") for c in rep.checks)


def test_probe_refuses_candidates_that_fail_the_flat_suite(cats):
    with pytest.raises(InvalidInput):
        flat_uniqueness_probe(largest_extension("P"), [cats[3], cats[4]])


def test_probe_falls_back_to_closed_forms_over_metric_spaces():
    small = line_space(["0", "1"], ["0", "1"])
    rep = flat_uniqueness_probe(minimal_extension("H"), [small],
                                samples=3)
    assert rep.passed
    assert all("closed form" in (c.notes or "") for c in rep.checks)
