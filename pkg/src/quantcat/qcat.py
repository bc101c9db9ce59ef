"""Categories enriched in a quantaloid, their functors and distributors.

A category is a typed set with a hom relation a: X -/-> X satisfying
unit <= a(x, x) and a . a <= a. Over the [0, inf] quantale these are exactly
generalized metric spaces (triangle inequality, zero self-distance, no
symmetry or separation required); over the two-element quantale they are
preorders.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import MAX_VALIDATED_CARRIER
from .errors import InvalidFunctor, InvalidInput, TypeMismatch
from .qrel import (QRelation, TypedMap, TypedSet, cograph, compose_rel,
                   graph, identity_rel, rel_leq, relation, relation_from_json,
                   top_rel, typed_map, typed_set_from_json, typed_set_to_json)
from .report import Report


@dataclass(frozen=True)
class QCat:
    carrier: TypedSet
    hom: QRelation

    def __len__(self):
        return len(self.carrier)


def discrete_cat(X: TypedSet) -> QCat:
    return QCat(X, identity_rel(X))


def category_violation(X: TypedSet, hom: QRelation):
    """None if (X, hom) is a category, else a dict locating the failure."""
    Q = X.quantaloid
    if hom.source != X or hom.target != X:
        return {"axiom": "shape", "reason": "hom must go from X to X"}
    for i in range(len(X)):
        h = Q.hom(X.types[i], X.types[i])
        if not h.leq(Q.unit(X.types[i]), hom.table[i][i]):
            return {"axiom": "identity", "element": X.elements[i],
                    "value": h.format(hom.table[i][i])}
    for i in range(len(X)):
        for j in range(len(X)):
            for k in range(len(X)):
                h = Q.hom(X.types[i], X.types[k])
                via = Q.compose(X.types[i], X.types[j], X.types[k],
                                hom.table[j][k], hom.table[i][j])
                if not h.leq(via, hom.table[i][k]):
                    return {"axiom": "composition",
                            "triple": [X.elements[i], X.elements[j],
                                       X.elements[k]],
                            "composite": h.format(via),
                            "value": h.format(hom.table[i][k])}
    return None


def build_category(X: TypedSet, hom: QRelation) -> QCat:
    """Validated constructor; carriers past the cap are taken on trust,
    which keeps theorem-backed constructions (whose axioms hold by
    construction) from paying a cubic scan."""
    if len(X) <= MAX_VALIDATED_CARRIER:
        w = category_violation(X, hom)
        if w is not None:
            raise InvalidInput(f"not a category: {w}")
    return QCat(X, hom)


def category_report(X: TypedSet, hom: QRelation) -> Report:
    rep = Report("category axioms")
    w = category_violation(X, hom)
    rep.add("identities below homs",
            w is None or w["axiom"] != "identity",
            witness=w if w and w["axiom"] == "identity" else None)
    rep.add("composition below homs",
            w is None or w["axiom"] != "composition",
            witness=w if w and w["axiom"] == "composition" else None)
    return rep


def underlying_order(C: QCat):
    """Pairs (i, j) with x_i below x_j: same type and unit below hom."""
    X = C.carrier
    Q = X.quantaloid
    out = []
    for i in range(len(X)):
        for j in range(len(X)):
            if X.types[i] != X.types[j]:
                continue
            h = Q.hom(X.types[i], X.types[j])
            if h.leq(Q.unit(X.types[i]), C.hom.table[i][j]):
                out.append((i, j))
    return out


@dataclass(frozen=True)
class QFunctor:
    source: QCat
    target: QCat
    mapping: tuple

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    @property
    def as_map(self) -> TypedMap:
        return TypedMap(self.source.carrier, self.target.carrier,
                        self.mapping)


def _respects_homs(source: QCat, target: QCat, f: TypedMap) -> bool:
    a, b = source.hom, target.hom
    return all(
        target.carrier.quantaloid.hom(
            target.carrier.types[f.mapping[i]],
            target.carrier.types[f.mapping[j]]).leq(
                a.table[i][j], b.table[f.mapping[i]][f.mapping[j]])
        for i in range(len(source.carrier))
        for j in range(len(source.carrier)))


def functor_conditions(source: QCat, target: QCat, f: TypedMap) -> dict:
    """The four equivalent ways of saying a map is a functor. They must
    always agree; computing all four is a cross-check of the relation
    calculus, not a convenience."""
    a, b = source.hom, target.hom
    lower = graph(f)
    upper = cograph(f)
    return {
        "pointwise": _respects_homs(source, target, f),
        "graph square": rel_leq(compose_rel(lower, a),
                                compose_rel(b, lower)),
        "unit form": rel_leq(a, compose_rel(upper,
                                            compose_rel(b, lower))),
        "cograph square": rel_leq(compose_rel(a, upper),
                                  compose_rel(upper, b)),
    }


# Above this many carrier-pair cells the relation-calculus cross-check in
# functor() would dominate construction time, so only the pointwise
# condition (which is what the others are equivalent to) is verified.
_FULL_CHECK_CELLS = 2500


def functor(source: QCat, target: QCat, assignment) -> QFunctor:
    f = typed_map(source.carrier, target.carrier, assignment)
    if len(source.carrier) * len(target.carrier) <= _FULL_CHECK_CELLS:
        conds = functor_conditions(source, target, f)
        if len(set(conds.values())) != 1:
            raise AssertionError(
                f"equivalent functor conditions disagree: {conds}")
        ok = conds["pointwise"]
    else:
        ok = _respects_homs(source, target, f)
    if not ok:
        raise InvalidFunctor("map does not respect homs")
    return QFunctor(source, target, f.mapping)


def identity_functor(C: QCat) -> QFunctor:
    return QFunctor(C, C, tuple(range(len(C))))


def compose_functor(g: QFunctor, f: QFunctor) -> QFunctor:
    if f.target != g.source:
        raise TypeMismatch("functors do not compose: middle categories differ")
    return QFunctor(f.source, g.target,
                    tuple(g.mapping[j] for j in f.mapping))


def functor_leq(f: QFunctor, g: QFunctor) -> bool:
    """Pointwise order: unit below b(fx, gx) everywhere."""
    if f.source != g.source or f.target != g.target:
        raise TypeMismatch("functors with different endpoints are incomparable")
    Y = f.target.carrier
    Q = Y.quantaloid
    b = f.target.hom
    for i in range(len(f.source.carrier)):
        fi, gi = f.mapping[i], g.mapping[i]
        if Y.types[fi] != Y.types[gi]:
            return False
        if not Q.hom(Y.types[fi], Y.types[gi]).leq(Q.unit(Y.types[fi]),
                                                   b.table[fi][gi]):
            return False
    return True


def is_fully_faithful(f: QFunctor) -> bool:
    a, b = f.source.hom, f.target.hom
    direct = all(
        a.table[i][j] == b.table[f.mapping[i]][f.mapping[j]]
        for i in range(len(f.source.carrier))
        for j in range(len(f.source.carrier)))
    via_stars = compose_rel(upper_star(f).rel, lower_star(f).rel) == a
    if direct != via_stars:
        raise AssertionError(
            "full fidelity routes disagree (table vs star composite)")
    return direct


@dataclass(frozen=True)
class QDistributor:
    source: QCat
    target: QCat
    rel: QRelation


def distributor_violation(source: QCat, target: QCat, rel: QRelation):
    if rel.source != source.carrier or rel.target != target.carrier:
        return {"axiom": "shape"}
    right = compose_rel(rel, source.hom)
    if not rel_leq(right, rel):
        return {"axiom": "right action"}
    left = compose_rel(target.hom, rel)
    if not rel_leq(left, rel):
        return {"axiom": "left action"}
    return None


def distributor(source: QCat, target: QCat, rel: QRelation) -> QDistributor:
    w = distributor_violation(source, target, rel)
    if w is not None:
        raise InvalidInput(f"not a distributor: {w}")
    return QDistributor(source, target, rel)


def distributor_closure(source: QCat, target: QCat,
                        rel: QRelation) -> QDistributor:
    """Smallest distributor above an arbitrary relation between carriers."""
    closed = compose_rel(target.hom, compose_rel(rel, source.hom))
    return QDistributor(source, target, closed)


def identity_distributor(C: QCat) -> QDistributor:
    return QDistributor(C, C, C.hom)


def top_distributor(source: QCat, target: QCat) -> QDistributor:
    """The greatest distributor between two categories: the closure of the
    everywhere-top relation (which the actions cannot enlarge further)."""
    return distributor_closure(source, target,
                               top_rel(source.carrier, target.carrier))


def compose_distributor(psi: QDistributor, phi: QDistributor) -> QDistributor:
    if phi.target != psi.source:
        raise TypeMismatch(
            "distributors do not compose: middle categories differ")
    return QDistributor(phi.source, psi.target, compose_rel(psi.rel, phi.rel))


def dist_leq(phi: QDistributor, psi: QDistributor) -> bool:
    return rel_leq(phi.rel, psi.rel)


def lower_star(f: QFunctor) -> QDistributor:
    """f with the target hom on its far side: value b(fx, y)."""
    b = f.target.hom
    return QDistributor(f.source, f.target,
                        compose_rel(b, graph(f.as_map)))


def upper_star(f: QFunctor) -> QDistributor:
    """The right adjoint shape: value b(y, fx)."""
    b = f.target.hom
    return QDistributor(f.target, f.source,
                        compose_rel(cograph(f.as_map), b))


def category_to_json(C: QCat) -> dict:
    Q = C.carrier.quantaloid
    X = C.carrier
    doc = typed_set_to_json(X)
    doc["hom"] = [[Q.hom(X.types[i], X.types[j]).format(C.hom.table[i][j])
                   for j in range(len(X))] for i in range(len(X))]
    return doc


def category_from_json(Q, doc) -> QCat:
    if not isinstance(doc, dict):
        raise InvalidInput("category JSON must be an object")
    X = typed_set_from_json(Q, doc)
    rows = doc.get("hom")
    if not isinstance(rows, list):
        raise InvalidInput("category JSON needs a 'hom' table")
    rel = relation_from_json(Q, {"source": typed_set_to_json(X),
                                 "target": typed_set_to_json(X),
                                 "table": rows})
    return build_category(X, rel)
