"""Presheaf and copresheaf categories over a quantaloid, with the four
monads they generate.

A presheaf of type s on a category (X, a) is a choice of hom value
sigma(x) in Q(|x|, s) absorbing the hom on the right (sigma . a = sigma);
a copresheaf takes values tau(x) in Q(s, |x|) and absorbs on the left
(a . tau = tau). Over the two-element quantale these are the down-closed
and up-closed subsets; over [0, inf] they are the nonexpansive distance
functions into and out of the space.

Carriers are enumerated by closing the scaled representables under binary
joins, which touches only genuine (co)presheaves instead of the full value
product. Element counts are capped by the enumeration budget.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .config import max_enum
from .errors import (EnumerationTooLarge, EnumerationUnsupported,
                     InvalidInput)
from .qcat import (QCat, QFunctor, build_category, compose_functor, functor,
                   identity_functor, lower_star, upper_star)
from .qrel import QRelation, rel_from_function, typed_set


@dataclass(frozen=True)
class HomVector:
    """A typed family of hom values indexed by a category's carrier."""
    typ: str
    values: tuple


@dataclass(frozen=True, eq=False)
class IndexedCat:
    """A category whose elements are determined by attached data tables."""
    cat: QCat
    tables: tuple  # tables[i] is the data behind carrier element i

    def __post_init__(self):
        object.__setattr__(self, "index",
                           {t: i for i, t in enumerate(self.tables)})

    def position(self, table) -> int:
        try:
            return self.index[table]
        except KeyError:
            raise InvalidInput(
                "value is not an element of this carrier") from None


def presheaf_compose(vec: HomVector, rel: QRelation) -> HomVector:
    """vec . rel: a vector over rel's target pulled back to its source."""
    Q = rel.source.quantaloid
    X, Y = rel.source, rel.target
    return HomVector(vec.typ, tuple(
        Q.hom(X.types[i], vec.typ).join(
            Q.compose(X.types[i], Y.types[j], vec.typ,
                      vec.values[j], rel.table[i][j])
            for j in range(len(Y)))
        for i in range(len(X))))


def copresheaf_compose(rel: QRelation, vec: HomVector) -> HomVector:
    """rel . vec: a vector over rel's source pushed to its target."""
    Q = rel.source.quantaloid
    X, Y = rel.source, rel.target
    return HomVector(vec.typ, tuple(
        Q.hom(vec.typ, Y.types[j]).join(
            Q.compose(vec.typ, X.types[i], Y.types[j],
                      rel.table[i][j], vec.values[i])
            for i in range(len(X)))
        for j in range(len(Y))))


def is_presheaf(X: QCat, vec: HomVector) -> bool:
    return presheaf_compose(vec, X.hom) == vec


def is_copresheaf(X: QCat, vec: HomVector) -> bool:
    return copresheaf_compose(X.hom, vec) == vec


def presheaf_hom(X: QCat, sig: HomVector, tau: HomVector):
    """Largest beta with beta . sig(x) <= tau(x) for every x."""
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    return Q.hom(sig.typ, tau.typ).meet(
        Q.left_residual(ts[i], sig.typ, tau.typ, tau.values[i], sig.values[i])
        for i in range(len(X)))


def copresheaf_hom(X: QCat, sig: HomVector, tau: HomVector):
    """Largest alpha with tau(x) . alpha <= sig(x) for every x."""
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    return Q.hom(sig.typ, tau.typ).meet(
        Q.right_residual(sig.typ, tau.typ, ts[i], tau.values[i],
                         sig.values[i])
        for i in range(len(X)))


def _join_closure(Q, typ, homs, seeds, what):
    """Close a seed set of vectors under pointwise binary joins.

    Both the carrier size and the total work (slot-level join operations)
    are bounded by the enumeration budget; otherwise a closure that is
    astronomically large would spend hours creeping toward the size cap.
    """
    cap = max_enum()
    step = max(len(seeds) * len(homs), 1)
    spent = 0
    bottom = HomVector(typ, tuple(h.bottom for h in homs))
    closed = {bottom}
    closed.update(seeds)
    work = list(closed)
    while work:
        v = work.pop()
        spent += step
        if spent > cap:
            raise EnumerationTooLarge(
                f"{what} join closure needs more than {cap} lattice "
                f"operations; raise QUANTCAT_MAX_ENUM to go further")
        for s in seeds:
            j = HomVector(typ, tuple(
                h.join((a, b))
                for h, a, b in zip(homs, v.values, s.values)))
            if j not in closed:
                closed.add(j)
                work.append(j)
                if len(closed) > cap:
                    raise EnumerationTooLarge(
                        f"{what} carrier exceeds the enumeration budget "
                        f"({cap}); raise QUANTCAT_MAX_ENUM to go further")
    return closed


def _enumerable(hom):
    if not hom.enumerable:
        raise EnumerationUnsupported(
            f"hom {hom.source} -> {hom.target} is not enumerable; over an "
            "infinite quantale use the finitely generated (Hausdorff) "
            "construction instead")
    return hom


def enumerate_presheaves(X: QCat, typ: str) -> tuple:
    """All presheaves of one type, as joins of scaled representables."""
    Q = X.carrier.quantaloid
    Q.check_object(typ)
    ts = X.carrier.types
    homs = [_enumerable(Q.hom(p, typ)) for p in ts]
    seeds = []
    for x in range(len(X)):
        for beta in Q.hom(ts[x], typ).elements():
            seeds.append(HomVector(typ, tuple(
                Q.compose(ts[i], ts[x], typ, beta, X.hom.table[i][x])
                for i in range(len(X)))))
    closed = _join_closure(Q, typ, homs, seeds, "presheaf")
    return tuple(sorted(closed, key=lambda v: v.values))


def enumerate_copresheaves(X: QCat, typ: str) -> tuple:
    Q = X.carrier.quantaloid
    Q.check_object(typ)
    ts = X.carrier.types
    homs = [_enumerable(Q.hom(typ, p)) for p in ts]
    seeds = []
    for x in range(len(X)):
        for alpha in Q.hom(typ, ts[x]).elements():
            seeds.append(HomVector(typ, tuple(
                Q.compose(typ, ts[x], ts[i], X.hom.table[x][i], alpha)
                for i in range(len(X)))))
    closed = _join_closure(Q, typ, homs, seeds, "copresheaf")
    return tuple(sorted(closed, key=lambda v: v.values))


def _vector_name(Q, slot_homs, vec: HomVector) -> str:
    body = ",".join(h.format(v) for h, v in zip(slot_homs, vec.values))
    name = f"<{body}>"
    if len(Q.objects) > 1:
        name += f":{vec.typ}"
    return name


def _indexed_cat(X: QCat, tables, hom_fn, slot_homs_fn) -> IndexedCat:
    Q = X.carrier.quantaloid
    names = [_vector_name(Q, slot_homs_fn(v.typ), v) for v in tables]
    carrier = typed_set(Q, names, [v.typ for v in tables])
    hom = rel_from_function(carrier, carrier,
                            lambda i, j: hom_fn(X, tables[i], tables[j]))
    return IndexedCat(build_category(carrier, hom), tuple(tables))


@lru_cache(maxsize=None)
def presheaf_cat(X: QCat) -> IndexedCat:
    Q = X.carrier.quantaloid
    tables = [v for s in Q.objects for v in enumerate_presheaves(X, s)]
    ts = X.carrier.types
    return _indexed_cat(X, tables, presheaf_hom,
                        lambda s: [Q.hom(p, s) for p in ts])


@lru_cache(maxsize=None)
def copresheaf_cat(X: QCat) -> IndexedCat:
    Q = X.carrier.quantaloid
    tables = [v for s in Q.objects for v in enumerate_copresheaves(X, s)]
    ts = X.carrier.types
    return _indexed_cat(X, tables, copresheaf_hom,
                        lambda s: [Q.hom(s, p) for p in ts])


def yoneda(X: QCat) -> QFunctor:
    """x maps to the presheaf a(-, x)."""
    PX = presheaf_cat(X)
    ts = X.carrier.types
    mapping = tuple(
        PX.position(HomVector(ts[x], tuple(X.hom.table[i][x]
                                           for i in range(len(X)))))
        for x in range(len(X)))
    return functor(X, PX.cat, mapping)


def co_yoneda(X: QCat) -> QFunctor:
    """x maps to the copresheaf a(x, -)."""
    PdX = copresheaf_cat(X)
    ts = X.carrier.types
    mapping = tuple(
        PdX.position(HomVector(ts[x], tuple(X.hom.table[x][i]
                                            for i in range(len(X)))))
        for x in range(len(X)))
    return functor(X, PdX.cat, mapping)


def presheaf_transpose(phi: QRelation, source: QCat, target: QCat) -> QFunctor:
    """A distributor phi: X -/-> Y as the functor Y -> PX, y -> phi(-, y)."""
    PX = presheaf_cat(source)
    ty = target.carrier.types
    try:
        mapping = tuple(
            PX.position(HomVector(ty[y], tuple(phi.table[i][y]
                                               for i in range(len(source)))))
            for y in range(len(target)))
    except InvalidInput:
        raise InvalidInput(
            "columns are presheaves only when the relation is a "
            "distributor") from None
    return functor(target, PX.cat, mapping)


def copresheaf_transpose(phi: QRelation, source: QCat,
                         target: QCat) -> QFunctor:
    """A distributor phi: X -/-> Y as the functor X -> P+Y, x -> phi(x, -)."""
    PdY = copresheaf_cat(target)
    tx = source.carrier.types
    try:
        mapping = tuple(
            PdY.position(HomVector(tx[x], tuple(phi.table[x][j]
                                                for j in range(len(target)))))
            for x in range(len(source)))
    except InvalidInput:
        raise InvalidInput(
            "rows are copresheaves only when the relation is a "
            "distributor") from None
    return functor(source, PdY.cat, mapping)


def presheaf_map(f: QFunctor) -> QFunctor:
    """The induced functor between presheaf categories."""
    PX, PY = presheaf_cat(f.source), presheaf_cat(f.target)
    up = upper_star(f).rel  # Y -/-> X with value b(y, fx)
    mapping = tuple(PY.position(presheaf_compose(sig, up))
                    for sig in PX.tables)
    return functor(PX.cat, PY.cat, mapping)


def copresheaf_map(f: QFunctor) -> QFunctor:
    PdX, PdY = copresheaf_cat(f.source), copresheaf_cat(f.target)
    low = lower_star(f).rel  # X -/-> Y with value b(fx, y)
    mapping = tuple(PdY.position(copresheaf_compose(low, tau))
                    for tau in PdX.tables)
    return functor(PdX.cat, PdY.cat, mapping)


@dataclass(frozen=True, eq=False)
class EnrichedMonad:
    """A monad on categories: carrier construction, functor action, unit
    and multiplication, each given per category."""
    name: str
    on_objects: object  # QCat -> IndexedCat
    on_arrows: object   # QFunctor -> QFunctor
    unit: object        # QCat -> QFunctor X -> TX
    mult: object        # QCat -> QFunctor TTX -> TX

    def carrier(self, X: QCat) -> QCat:
        return self.on_objects(X).cat


def _p_mult(X: QCat) -> QFunctor:
    PX = presheaf_cat(X)
    PPX = presheaf_cat(PX.cat)
    y_low = lower_star(yoneda(X)).rel  # X -/-> PX, value sigma(x)
    mapping = tuple(PX.position(presheaf_compose(Sigma, y_low))
                    for Sigma in PPX.tables)
    return functor(PPX.cat, PX.cat, mapping)


def _pdag_mult(X: QCat) -> QFunctor:
    PdX = copresheaf_cat(X)
    PdPdX = copresheaf_cat(PdX.cat)
    y_up = upper_star(co_yoneda(X)).rel  # PdX -/-> X, value tau(x)
    mapping = tuple(PdX.position(copresheaf_compose(y_up, Theta))
                    for Theta in PdPdX.tables)
    return functor(PdPdX.cat, PdX.cat, mapping)


def presheaf_monad() -> EnrichedMonad:
    return EnrichedMonad("P", presheaf_cat, presheaf_map, yoneda, _p_mult)


def copresheaf_monad() -> EnrichedMonad:
    return EnrichedMonad("Pdag", copresheaf_cat, copresheaf_map, co_yoneda,
                         _pdag_mult)


@lru_cache(maxsize=None)
def _ppdag_on_objects(X: QCat) -> IndexedCat:
    return presheaf_cat(copresheaf_cat(X).cat)


def _ppdag_unit(X: QCat) -> QFunctor:
    return compose_functor(yoneda(copresheaf_cat(X).cat), co_yoneda(X))


def _ppdag_mult(X: QCat) -> QFunctor:
    D = _ppdag_on_objects(X)          # P Pd X
    PdX = copresheaf_cat(X)
    PdD = copresheaf_cat(D.cat)       # Pd P Pd X
    DD = presheaf_cat(PdD.cat)        # P Pd P Pd X
    g = compose_functor(co_yoneda(D.cat), yoneda(PdX.cat))
    g_low = lower_star(g).rel         # Pd X -/-> Pd P Pd X
    mapping = tuple(D.position(presheaf_compose(Sigma, g_low))
                    for Sigma in DD.tables)
    return functor(DD.cat, D.cat, mapping)


@lru_cache(maxsize=None)
def _pdagp_on_objects(X: QCat) -> IndexedCat:
    return copresheaf_cat(presheaf_cat(X).cat)


def _pdagp_unit(X: QCat) -> QFunctor:
    return compose_functor(co_yoneda(presheaf_cat(X).cat), yoneda(X))


def _pdagp_mult(X: QCat) -> QFunctor:
    D = _pdagp_on_objects(X)          # Pd P X
    PX = presheaf_cat(X)
    PD = presheaf_cat(D.cat)          # P Pd P X
    DD = copresheaf_cat(PD.cat)       # Pd P Pd P X
    h = compose_functor(yoneda(D.cat), co_yoneda(PX.cat))
    h_up = upper_star(h).rel          # P Pd P X -/-> P X
    mapping = tuple(D.position(copresheaf_compose(h_up, Theta))
                    for Theta in DD.tables)
    return functor(DD.cat, D.cat, mapping)


def double_presheaf_monad() -> EnrichedMonad:
    return EnrichedMonad(
        "PPdag", _ppdag_on_objects,
        lambda f: presheaf_map(copresheaf_map(f)),
        _ppdag_unit, _ppdag_mult)


def double_copresheaf_monad() -> EnrichedMonad:
    return EnrichedMonad(
        "PdagP", _pdagp_on_objects,
        lambda f: copresheaf_map(presheaf_map(f)),
        _pdagp_unit, _pdagp_mult)


@lru_cache(maxsize=None)
def _id_on_objects(X: QCat) -> IndexedCat:
    return IndexedCat(X, tuple(range(len(X))))


def identity_enriched_monad() -> EnrichedMonad:
    return EnrichedMonad("Id", _id_on_objects, lambda f: f,
                         identity_functor, identity_functor)


ENRICHED_MONADS = {
    "P": presheaf_monad,
    "Pdag": copresheaf_monad,
    "PPdag": double_presheaf_monad,
    "PdagP": double_copresheaf_monad,
    "Id": identity_enriched_monad,
}


def naive_presheaves(X: QCat, typ: str) -> tuple:
    """Filter the raw value product; exponential, kept as an oracle."""
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    pools = [tuple(Q.hom(p, typ).elements()) for p in ts]
    total = 1
    for p in pools:
        total *= len(p)
    if total > max_enum():
        raise EnumerationTooLarge("raw value product exceeds the budget")
    out = [HomVector(typ, combo) for combo in itertools.product(*pools)
           if is_presheaf(X, HomVector(typ, combo))]
    return tuple(sorted(out, key=lambda v: v.values))


def naive_copresheaves(X: QCat, typ: str) -> tuple:
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    pools = [tuple(Q.hom(typ, p).elements()) for p in ts]
    total = 1
    for p in pools:
        total *= len(p)
    if total > max_enum():
        raise EnumerationTooLarge("raw value product exceeds the budget")
    out = [HomVector(typ, combo) for combo in itertools.product(*pools)
           if is_copresheaf(X, HomVector(typ, combo))]
    return tuple(sorted(out, key=lambda v: v.values))
