"""Desk-scale corpora for exhaustive checking.

Verification code elsewhere wants "every category up to this size", "every
functor between these two", "every distributor", so that laws can be tested
by brute force rather than by sampling. These enumerations only make sense
over enumerable homs and small carriers; past the caps they raise rather
than silently sampling. Fixed rational metric spaces used as standard
fixtures live here too.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from functools import lru_cache

from .errors import CorpusTooLarge
from .hausdorff import line_space, space_from_matrix
from .qcat import (QCat, QDistributor, QFunctor, category_violation,
                   distributor_closure, distributor_violation,
                   functor_conditions)
from .qrel import (TypedMap, TypedSet, random_relation, rel_from_function,
                   typed_set)

# Candidate tables scanned per carrier before giving up; each candidate is
# cheap, so the bound is generous without being open-ended.
MAX_CORPUS_TABLES = 1_000_000


def _table_budget(pools, what):
    total = 1
    for p in pools:
        total *= len(p)
        if total > MAX_CORPUS_TABLES:
            raise CorpusTooLarge(
                f"{what} needs more than {MAX_CORPUS_TABLES} candidate "
                "tables; shrink the carriers")
    return total


def _all_relations(X: TypedSet, Y: TypedSet, what):
    """Every relation table between two carriers, cell by cell."""
    Q = X.quantaloid
    n, m = len(X), len(Y)
    pools = [tuple(Q.hom(X.types[i], Y.types[j]).elements())
             for i in range(n) for j in range(m)]
    _table_budget(pools, what)
    for combo in itertools.product(*pools):
        yield rel_from_function(X, Y, lambda i, j: combo[i * m + j])


@lru_cache(maxsize=None)
def all_categories(Q, max_size: int) -> tuple:
    """Every category over Q on carriers x0, x1, ... up to the given size,
    across all type assignments. Labelled, not up to isomorphism."""
    out = []
    for n in range(max_size + 1):
        names = [f"x{k}" for k in range(n)]
        for types in itertools.product(Q.objects, repeat=n):
            X = typed_set(Q, names, types)
            for hom in _all_relations(X, X, "category enumeration"):
                if category_violation(X, hom) is None:
                    out.append(QCat(X, hom))
    return tuple(out)


def all_maps(X: TypedSet, Y: TypedSet) -> tuple:
    """Every type-preserving map between two carriers."""
    fits = [tuple(j for j in range(len(Y)) if Y.types[j] == X.types[i])
            for i in range(len(X))]
    _table_budget(fits, "map enumeration")
    return tuple(TypedMap(X, Y, combo)
                 for combo in itertools.product(*fits))


def all_functors(C: QCat, D: QCat) -> tuple:
    """Every functor, found by testing every type-preserving map. All four
    equivalent functor conditions are evaluated on every candidate and must
    agree; a disagreement is an internal contradiction, not a verdict."""
    out = []
    for f in all_maps(C.carrier, D.carrier):
        conds = functor_conditions(C, D, f)
        if len(set(conds.values())) != 1:
            raise AssertionError(
                f"equivalent functor conditions disagree on {f.mapping}: "
                f"{conds}")
        if conds["pointwise"]:
            out.append(QFunctor(C, D, f.mapping))
    return tuple(out)


def all_distributors(C: QCat, D: QCat) -> tuple:
    """Every distributor between two categories, by filtering every
    relation table for the two action laws."""
    out = []
    for rel in _all_relations(C.carrier, D.carrier,
                              "distributor enumeration"):
        if distributor_violation(C, D, rel) is None:
            out.append(QDistributor(C, D, rel))
    return tuple(out)


def random_distributor(C: QCat, D: QCat,
                       rng: random.Random) -> QDistributor:
    """The distributor closure of a random relation; usable over
    non-enumerable homs, where exhaustive listing is impossible."""
    raw = random_relation(C.carrier.quantaloid, C.carrier, D.carrier, rng)
    return distributor_closure(C, D, raw)


def sample_distributors(C: QCat, D: QCat, count: int,
                        seed: int = 0) -> tuple:
    rng = random.Random(seed)
    return tuple(random_distributor(C, D, rng) for _ in range(count))


# --------------------------------------------------------- metric fixtures


@lru_cache(maxsize=None)
def metric_fixtures() -> tuple:
    """Three fixed rational metric spaces: two lines and a triangle whose
    side lengths are deliberately not all integers."""
    line3 = line_space(["0", "1", "3"], ["0", "1", "3"])
    line4 = line_space(["0", "1/2", "2", "7/2"], ["0", "1/2", "2", "7/2"])
    triangle = space_from_matrix(
        ["a", "b", "c"],
        [["0", "1", "2"], ["1", "0", "5/2"], ["2", "5/2", "0"]])
    return (line3, line4, triangle)


def random_points(n: int, rng: random.Random) -> list:
    """n distinct rational coordinates with small numerators/denominators."""
    coords = set()
    while len(coords) < n:
        coords.add(Fraction(rng.randint(0, 400), rng.randint(1, 8)))
    return sorted(coords)
