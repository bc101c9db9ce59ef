"""Lifting set-level monads to enriched ones and restricting them back."""

import random
from fractions import Fraction

import pytest

from quantcat.bridge import (counit_iota, coreflective_image_check, delta,
                             discrete_agreement, discretization_pairing,
                             gamma, gamma_delta_identity_check,
                             powerset_correspondence, upset_correspondence)
from quantcat.corpus import all_categories, metric_fixtures
from quantcat.errors import InvalidInput
from quantcat.hausdorff import line_space
from quantcat.laxext import (is_flat, verify_enriched_lax_extension,
                             verify_enriched_monad)
from quantcat.quantaloid import INF, LAWVERE
from quantcat.qrel import (DiscreteLaxExtension, finite_collapse_ext,
                           identity_ext, identity_monad, powerset_lower_ext,
                           powerset_upper_ext, relation, typed_set,
                           upset_source_first_ext, upset_target_first_ext)


@pytest.fixture(scope="module")
def cats(q2):
    return all_categories(q2, 2)


def failing_rows(report):
    return [c.name for c in report.checks if not c.passed]


# ------------------------------------------------------------------- lifting


def test_lift_orders_subsets_by_memberwise_reachability(q2, cats):
    # Hand-computed: over the two-element chain x0 <= x1, a subset A reaches
    # a subset B exactly when every member of A is below some member of B.
    chain = cats[4]
    assert chain.hom.table == ((1, 1), (0, 1))
    lifted = delta(powerset_lower_ext(q2))
    image = lifted.monad.carrier(chain)
    assert image.carrier.elements == ("{}", "{x0}", "{x1}", "{x0,x1}")
    assert image.hom.table == ((1, 1, 1, 1),
                               (0, 1, 1, 1),
                               (0, 0, 1, 1),
                               (0, 0, 1, 1))


def test_lift_refuses_an_extension_that_breaks_the_set_level_laws(q2):
    bottom_everywhere = DiscreteLaxExtension(
        "broken", identity_monad(q2),
        lambda r: relation(r.source, r.target,
                           [[0] * len(r.target) for _ in range(len(r.source))]))
    with pytest.raises(InvalidInput) as err:
        delta(bottom_everywhere)
    assert "set-level laws fail" in str(err.value)
    assert "lax identity" in str(err.value)


def test_lift_is_flat_and_passes_the_enriched_suites(q2, cats):
    lifted = delta(powerset_lower_ext(q2))
    assert all(is_flat(lifted.extension, X) for X in cats)
    ext_report = verify_enriched_lax_extension(lifted.extension, cats)
    assert ext_report.passed, failing_rows(ext_report)
    monad_report = verify_enriched_monad(lifted.monad, cats)
    assert monad_report.passed, failing_rows(monad_report)


def test_lift_skips_oversized_law_instances_with_a_note(q2, cats):
    # The triple image of a two-element category under the subset monad
    # needs a 2^16 x 2^16 comparison table, far past the enumeration
    # budget; the law row must skip with an explanation, not silently pass.
    lifted = delta(powerset_lower_ext(q2))
    report = verify_enriched_monad(lifted.monad, cats)
    skipped = [c for c in report.checks
               if c.name.endswith("mult associativity") and c.notes]
    assert skipped
    assert all("budget" in c.notes for c in skipped)


# ------------------------------------------------------- restriction inverts


ROUND_TRIP_PAIRS = [
    ("subsets, source-first", lambda q2: powerset_lower_ext(q2)),
    ("subsets, target-first", lambda q2: powerset_upper_ext(q2)),
    ("identity", lambda q2: identity_ext(q2)),
    ("up-families, source-first", lambda q2: upset_source_first_ext(q2)),
    ("up-families, target-first", lambda q2: upset_target_first_ext(q2)),
]


@pytest.mark.parametrize("label,make", ROUND_TRIP_PAIRS,
                         ids=[p[0] for p in ROUND_TRIP_PAIRS])
def test_restriction_after_lift_returns_the_original_data(q2, label, make):
    report = gamma_delta_identity_check(make(q2), (typed_set(q2, ("a",)),
                                                   typed_set(q2, ("a", "b"))))
    assert report.passed, failing_rows(report)


@pytest.mark.parametrize("make", [identity_ext, lambda _: finite_collapse_ext()],
                         ids=["identity", "finite-collapse"])
def test_restriction_after_lift_round_trips_over_distances(make):
    sets = (typed_set(LAWVERE, ("a",)), typed_set(LAWVERE, ("a", "b")))
    report = gamma_delta_identity_check(make(LAWVERE), sets)
    assert report.passed, failing_rows(report)


def test_collapse_lift_flattens_finite_distances_to_zero():
    line3 = metric_fixtures()[0]
    lifted = delta(finite_collapse_ext())
    image = lifted.monad.carrier(line3)
    zero = Fraction(0)
    assert image.hom.table == ((zero,) * 3,) * 3


# ------------------------------------------- restrictions of built-in monads


def unique_match(disc, correspondence, forms, sets):
    matched = []
    for form in forms:
        sub = discrete_agreement(form, disc.extension, correspondence, sets)
        if sub.passed:
            matched.append(form.name)
    return matched


def test_conical_monads_restrict_to_the_subset_formulas(q2):
    sets = (typed_set(q2, ("a",)), typed_set(q2, ("a", "b")))
    forms = (powerset_lower_ext(q2), powerset_upper_ext(q2))
    expected = {"P": "powerset-lower", "Pdag": "powerset-upper",
                "H": "powerset-lower", "Hdag": "powerset-upper"}
    for name, form_name in expected.items():
        matched = unique_match(gamma(name, q2), powerset_correspondence(name),
                               forms, sets)
        assert matched == [form_name]


def test_two_layer_composites_restrict_to_the_up_family_formulas(q2):
    sets = (typed_set(q2, ("a",)), typed_set(q2, ("a", "b")))
    pairing, report = discretization_pairing(sets)
    assert report.passed, failing_rows(report)
    assert pairing == {"HdagH": "upset-target-first",
                       "HHdag": "upset-source-first",
                       "PdagP": "upset-target-first",
                       "PPdag": "upset-source-first"}


def test_distance_restriction_is_the_directed_point_set_distance():
    # Independent oracle: worst best-case distance from a source member to
    # the target set, with sup {} = 0 and inf {} = infinity.
    restricted = gamma("H", LAWVERE)
    rng = random.Random(7)
    X = typed_set(LAWVERE, ("x0", "x1", "x2"))
    Y = typed_set(LAWVERE, ("y0", "y1"))
    rows = [[Fraction(rng.randrange(0, 9), rng.randrange(1, 4))
             if rng.random() < 0.85 else INF
             for _ in range(len(Y))] for _ in range(len(X))]
    r = relation(X, Y, rows)
    table = restricted.extension.extend(r).table
    TX = restricted.monad.on_objects(X)
    TY = restricted.monad.on_objects(Y)

    def oracle(members_a, members_b):
        worst = Fraction(0)
        for i in members_a:
            best = INF
            for j in members_b:
                if rows[i][j] < best:
                    best = rows[i][j]
            if best > worst:
                worst = best
            if worst == INF:
                return INF
        return worst

    for mask_a in range(8):
        A = [i for i in range(3) if (mask_a >> i) & 1]
        a = TX.index("{" + ",".join(f"x{i}" for i in A) + "}")
        for mask_b in range(4):
            B = [j for j in range(2) if (mask_b >> j) & 1]
            b = TY.index("{" + ",".join(f"y{j}" for j in B) + "}")
            assert table[a][b] == oracle(A, B)


# ------------------------------------------------------- comparison functors


def test_comparison_at_a_lifted_monad_is_the_identity(q2, cats):
    lifted = delta(powerset_lower_ext(q2))
    comparison = counit_iota(lifted.monad, cats, extension=lifted.extension)
    assert comparison.is_isomorphism
    assert comparison.report.passed, failing_rows(comparison.report)
    for X in cats:
        mapping = comparison.morphism.component(X).mapping
        assert mapping == tuple(range(len(mapping)))


def test_identity_monad_comparison_is_an_isomorphism_everywhere(cats):
    comparison = counit_iota("Id", cats)
    assert comparison.is_isomorphism
    assert comparison.report.passed, failing_rows(comparison.report)


# The conical image of a category quotients subsets that generate the same
# lower set, so over an ordered carrier the comparison out of the plain
# subset lift merges elements: it stays surjective and fully faithful but
# is bijective only when the underlying order is discrete.
CONICAL_COLLAPSES = {
    "H": {3: (0, 1, 1, 2), 4: (0, 1, 2, 2), 5: (0, 1, 1, 1)},
    "P": {3: (0, 1, 2, 2), 4: (0, 2, 1, 2), 5: (0, 1, 1, 1)},
}


@pytest.mark.parametrize("name", ["H", "P"])
def test_comparison_merges_subsets_exactly_on_ordered_carriers(cats, name):
    comparison = counit_iota(name, cats)
    assert not comparison.is_isomorphism
    expected = CONICAL_COLLAPSES[name]
    for i, X in enumerate(cats):
        mapping = comparison.morphism.component(X).mapping
        row = next(c for c in comparison.report.checks
                   if c.name == f"component is bijective [{i}]")
        if i in expected:
            assert mapping == expected[i]
            assert not row.passed
            assert row.witness["original size"] < row.witness["round-trip size"]
        else:
            assert mapping == tuple(range(len(mapping)))
            assert row.passed
        faithful = next(c for c in comparison.report.checks
                        if c.name == f"component reflects homs [{i}]")
        assert faithful.passed


def test_comparison_is_an_isomorphism_on_separated_metric_spaces():
    comparison = counit_iota("H", metric_fixtures())
    assert comparison.is_isomorphism
    assert comparison.report.passed, failing_rows(comparison.report)


def test_comparison_suite_exercises_a_real_mult_square_on_a_small_space():
    two_points = line_space(["0", "1"], ["0", "1"])
    comparison = counit_iota("H", [two_points])
    squares = [c for c in comparison.report.checks if "mult square" in c.name]
    assert squares and all(c.passed for c in squares)
    assert any(not c.notes for c in squares)
    assert comparison.is_isomorphism


# ----------------------------------------------------------- image criterion


def test_image_check_accepts_lifts_and_localizes_conical_quotients(q2, cats):
    lifted = delta(powerset_lower_ext(q2))
    accepted = coreflective_image_check(lifted.monad, cats,
                                        extension=lifted.extension)
    assert accepted.passed, failing_rows(accepted)

    for name, small in (("P", 3), ("H", 3)):
        report = coreflective_image_check(name, cats)
        assert not report.passed
        for i in range(6):
            carrier_row = next(c for c in report.checks
                               if c.name == f"carrier unchanged by the hom [{i}]")
            if i in (3, 4, 5):
                assert not carrier_row.passed
                assert carrier_row.witness == {
                    "with hom": small if i != 5 else 2, "discrete": 4}
            else:
                assert carrier_row.passed
