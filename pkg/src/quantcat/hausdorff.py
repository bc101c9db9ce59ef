"""Finitely generated (conical) presheaf categories.

A conical presheaf is a join of representables: for a subset A of one
fiber of the carrier, sigma_A(-) joins a(-, x) over x in A. These tables
exist over any quantaloid, enumerable or not, because only the carrier is
scanned — never the hom lattices. Over [0, inf] the hom between conical
tables is the directed Hausdorff distance between generating sets, which
is where the construction gets its name; over the two-element quantale
every down-set is conical and the construction coincides with the full
presheaf category.

Each table is stored with its largest generating subset; two subsets give
the same element exactly when they have the same closure, so generators
double as canonical names.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .config import MAX_HAUSDORFF_FIBER
from .errors import (CarrierTooLarge, InvalidInput,
                     NotCompletelyDistributive, NotConical, TypeMismatch)
from .presheaf import (EnrichedMonad, HomVector, IndexedCat,
                       copresheaf_compose, presheaf_compose)
from .qcat import (QCat, QFunctor, build_category, compose_functor, functor,
                   lower_star, upper_star)
from .qrel import QRelation, rel_from_function, typed_set
from .quantaloid import LAWVERE, distributivity_witness


@dataclass(frozen=True, eq=False)
class GeneratedCat(IndexedCat):
    gens: tuple  # gens[i] = indices of the largest subset generating table i


# ------------------------------------------------------- tables & generators


def _table_type(Q, members, types, typ):
    found = {types[x] for x in members}
    if len(found) > 1:
        raise TypeMismatch(
            f"a conical table joins elements of one type; got {sorted(found)}")
    if found:
        s = found.pop()
        if typ is not None and typ != s:
            raise TypeMismatch(f"members have type {s}, not {typ}")
        return s
    if typ is not None:
        Q.check_object(typ)
        return typ
    if len(Q.objects) == 1:
        return Q.objects[0]
    raise InvalidInput("an empty table needs an explicit type")


def conical_table(X: QCat, members, typ=None) -> HomVector:
    """sigma_A: the pointwise join of a(-, x) over x in the subset."""
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    members = tuple(members)
    s = _table_type(Q, members, ts, typ)
    return HomVector(s, tuple(
        Q.hom(ts[v], s).join(X.hom.table[v][x] for x in members)
        for v in range(len(X))))


def conical_cotable(X: QCat, members, typ=None) -> HomVector:
    """tau_A: the pointwise join of a(x, -) over x in the subset."""
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    members = tuple(members)
    s = _table_type(Q, members, ts, typ)
    return HomVector(s, tuple(
        Q.hom(s, ts[v]).join(X.hom.table[x][v] for x in members)
        for v in range(len(X))))


def max_generator(X: QCat, vec: HomVector) -> tuple:
    """All x whose representable a(-, x) sits below the table."""
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    return tuple(
        x for x in range(len(X)) if ts[x] == vec.typ and all(
            Q.hom(ts[v], vec.typ).leq(X.hom.table[v][x], vec.values[v])
            for v in range(len(X))))


def comax_generator(X: QCat, vec: HomVector) -> tuple:
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    return tuple(
        x for x in range(len(X)) if ts[x] == vec.typ and all(
            Q.hom(vec.typ, ts[v]).leq(X.hom.table[x][v], vec.values[v])
            for v in range(len(X))))


def is_conical(X: QCat, vec: HomVector) -> bool:
    return conical_table(X, max_generator(X, vec), vec.typ) == vec


def is_coconical(X: QCat, vec: HomVector) -> bool:
    return conical_cotable(X, comax_generator(X, vec), vec.typ) == vec


def conical_position(H: GeneratedCat, vec: HomVector, context: str) -> int:
    pos = H.index.get(vec)
    if pos is None:
        raise NotConical(
            f"{context} produced a table outside the conical carrier; "
            f"witness values {vec.values}")
    return pos


# ------------------------------------------------------------------ carriers


def _generated_cat(X: QCat, table_fn, gen_fn, hom_fn) -> GeneratedCat:
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    entries = []
    for s in Q.objects:
        fiber = [x for x in range(len(X)) if ts[x] == s]
        if len(fiber) > MAX_HAUSDORFF_FIBER:
            raise CarrierTooLarge(
                f"fiber over {s} has {len(fiber)} elements; subsets are "
                f"enumerated only up to {MAX_HAUSDORFF_FIBER}")
        seen = set()
        for mask in range(1 << len(fiber)):
            members = [fiber[k] for k in range(len(fiber)) if mask >> k & 1]
            t = table_fn(X, members, s)
            if t not in seen:
                seen.add(t)
                entries.append((t, gen_fn(X, t)))
    order = {s: k for k, s in enumerate(Q.objects)}
    entries.sort(key=lambda e: (order[e[0].typ], e[1]))
    names = []
    for t, gen in entries:
        nm = "{" + ",".join(X.carrier.elements[x] for x in gen) + "}"
        if len(Q.objects) > 1:
            nm += f":{t.typ}"
        names.append(nm)
    carrier = typed_set(Q, names, [t.typ for t, _ in entries])
    hom = rel_from_function(carrier, carrier,
                            lambda i, j: hom_fn(Q, entries, i, j))
    return GeneratedCat(build_category(carrier, hom),
                        tuple(t for t, _ in entries),
                        tuple(g for _, g in entries))


def _h_hom(Q, entries, i, j):
    """Meet of the second table over the first one's generator."""
    ti, gi = entries[i]
    tj, _ = entries[j]
    return Q.hom(ti.typ, tj.typ).meet(tj.values[x] for x in gi)


def _hdag_hom(Q, entries, i, j):
    """Meet of the first table over the second one's generator."""
    ti, _ = entries[i]
    tj, gj = entries[j]
    return Q.hom(ti.typ, tj.typ).meet(ti.values[v] for v in gj)


@lru_cache(maxsize=None)
def hausdorff_cat(X: QCat) -> GeneratedCat:
    return _generated_cat(X, conical_table, max_generator, _h_hom)


@lru_cache(maxsize=None)
def co_hausdorff_cat(X: QCat) -> GeneratedCat:
    return _generated_cat(X, conical_cotable, comax_generator, _hdag_hom)


def h_yoneda(X: QCat) -> QFunctor:
    """x maps to the singleton table a(-, x); dense in the conical carrier."""
    H = hausdorff_cat(X)
    mapping = tuple(H.position(conical_table(X, (x,)))
                    for x in range(len(X)))
    return functor(X, H.cat, mapping)


def h_co_yoneda(X: QCat) -> QFunctor:
    H = co_hausdorff_cat(X)
    mapping = tuple(H.position(conical_cotable(X, (x,)))
                    for x in range(len(X)))
    return functor(X, H.cat, mapping)


# -------------------------------------------------------------------- monads


def hausdorff_map(f: QFunctor) -> QFunctor:
    """Direct image on generators."""
    HX, HY = hausdorff_cat(f.source), hausdorff_cat(f.target)
    mapping = tuple(
        HY.position(conical_table(f.target,
                                  sorted({f.mapping[x] for x in gen}),
                                  HX.tables[i].typ))
        for i, gen in enumerate(HX.gens))
    return functor(HX.cat, HY.cat, mapping)


def co_hausdorff_map(f: QFunctor) -> QFunctor:
    HX, HY = co_hausdorff_cat(f.source), co_hausdorff_cat(f.target)
    mapping = tuple(
        HY.position(conical_cotable(f.target,
                                    sorted({f.mapping[x] for x in gen}),
                                    HX.tables[i].typ))
        for i, gen in enumerate(HX.gens))
    return functor(HX.cat, HY.cat, mapping)


def _h_mult(X: QCat) -> QFunctor:
    HX = hausdorff_cat(X)
    HHX = hausdorff_cat(HX.cat)
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    mapping = []
    for i, gen in enumerate(HHX.gens):
        typ = HHX.tables[i].typ
        joined = HomVector(typ, tuple(
            Q.hom(ts[v], typ).join(HX.tables[s].values[v] for s in gen)
            for v in range(len(X))))
        mapping.append(conical_position(HX, joined, "multiplication"))
    return functor(HHX.cat, HX.cat, tuple(mapping))


def _hdag_mult(X: QCat) -> QFunctor:
    HX = co_hausdorff_cat(X)
    HHX = co_hausdorff_cat(HX.cat)
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    mapping = []
    for i, gen in enumerate(HHX.gens):
        typ = HHX.tables[i].typ
        joined = HomVector(typ, tuple(
            Q.hom(typ, ts[v]).join(HX.tables[s].values[v] for s in gen)
            for v in range(len(X))))
        mapping.append(conical_position(HX, joined, "multiplication"))
    return functor(HHX.cat, HX.cat, tuple(mapping))


def hausdorff_monad() -> EnrichedMonad:
    return EnrichedMonad("H", hausdorff_cat, hausdorff_map, h_yoneda,
                         _h_mult)


def co_hausdorff_monad() -> EnrichedMonad:
    return EnrichedMonad("Hdag", co_hausdorff_cat, co_hausdorff_map,
                         h_co_yoneda, _hdag_mult)


def _require_cd(Q, what):
    w = distributivity_witness(Q)
    if w is not None:
        raise NotCompletelyDistributive(
            f"{what} needs completely distributive homs; hom "
            f"{w['hom'][0]} -> {w['hom'][1]} fails on triple {w['triple']}")


@lru_cache(maxsize=None)
def _hhdag_on_objects(X: QCat) -> GeneratedCat:
    return hausdorff_cat(co_hausdorff_cat(X).cat)


def _hhdag_unit(X: QCat) -> QFunctor:
    return compose_functor(h_yoneda(co_hausdorff_cat(X).cat),
                           h_co_yoneda(X))


def _hhdag_mult(X: QCat) -> QFunctor:
    _require_cd(X.carrier.quantaloid, "the double conical multiplication")
    D = _hhdag_on_objects(X)
    HdX = co_hausdorff_cat(X)
    HdD = co_hausdorff_cat(D.cat)
    DD = hausdorff_cat(HdD.cat)
    g = compose_functor(h_co_yoneda(D.cat), h_yoneda(HdX.cat))
    g_low = lower_star(g).rel
    mapping = tuple(
        conical_position(D, presheaf_compose(S, g_low),
                         "double multiplication")
        for S in DD.tables)
    return functor(DD.cat, D.cat, mapping)


@lru_cache(maxsize=None)
def _hdagh_on_objects(X: QCat) -> GeneratedCat:
    return co_hausdorff_cat(hausdorff_cat(X).cat)


def _hdagh_unit(X: QCat) -> QFunctor:
    return compose_functor(h_co_yoneda(hausdorff_cat(X).cat), h_yoneda(X))


def _hdagh_mult(X: QCat) -> QFunctor:
    _require_cd(X.carrier.quantaloid, "the double conical multiplication")
    D = _hdagh_on_objects(X)
    HX = hausdorff_cat(X)
    HD = hausdorff_cat(D.cat)
    DD = co_hausdorff_cat(HD.cat)
    h = compose_functor(h_yoneda(D.cat), h_co_yoneda(HX.cat))
    h_up = upper_star(h).rel
    mapping = tuple(
        conical_position(D, copresheaf_compose(h_up, T),
                         "double multiplication")
        for T in DD.tables)
    return functor(DD.cat, D.cat, mapping)


def double_hausdorff_monad() -> EnrichedMonad:
    return EnrichedMonad(
        "HHdag", _hhdag_on_objects,
        lambda f: hausdorff_map(co_hausdorff_map(f)),
        _hhdag_unit, _hhdag_mult)


def double_co_hausdorff_monad() -> EnrichedMonad:
    return EnrichedMonad(
        "HdagH", _hdagh_on_objects,
        lambda f: co_hausdorff_map(hausdorff_map(f)),
        _hdagh_unit, _hdagh_mult)


HAUSDORFF_MONADS = {
    "H": hausdorff_monad,
    "Hdag": co_hausdorff_monad,
    "HHdag": double_hausdorff_monad,
    "HdagH": double_co_hausdorff_monad,
}


# ------------------------------------------------------------ lax extensions


def hausdorff_extend(phi: QRelation, C: QCat, D: QCat) -> QRelation:
    """Worst best case: meet over the source generator of joins over the
    target generator."""
    HX, HY = hausdorff_cat(C), hausdorff_cat(D)
    Q = C.carrier.quantaloid

    def cell(i, j):
        h = Q.hom(HX.tables[i].typ, HY.tables[j].typ)
        return h.meet(
            h.join(phi.table[x][y] for y in HY.gens[j])
            for x in HX.gens[i])
    return rel_from_function(HX.cat.carrier, HY.cat.carrier, cell)


def co_hausdorff_extend(phi: QRelation, C: QCat, D: QCat) -> QRelation:
    HX, HY = co_hausdorff_cat(C), co_hausdorff_cat(D)
    Q = C.carrier.quantaloid

    def cell(i, j):
        h = Q.hom(HX.tables[i].typ, HY.tables[j].typ)
        return h.meet(
            h.join(phi.table[x][y] for x in HX.gens[i])
            for y in HY.gens[j])
    return rel_from_function(HX.cat.carrier, HY.cat.carrier, cell)


def double_hausdorff_extend(phi: QRelation, C: QCat, D: QCat) -> QRelation:
    inner = co_hausdorff_extend(phi, C, D)
    return hausdorff_extend(inner, co_hausdorff_cat(C).cat,
                            co_hausdorff_cat(D).cat)


def double_co_hausdorff_extend(phi: QRelation, C: QCat, D: QCat) -> QRelation:
    inner = hausdorff_extend(phi, C, D)
    return co_hausdorff_extend(inner, hausdorff_cat(C).cat,
                               hausdorff_cat(D).cat)


# ---------------------------------------------------- distances over [0, inf]


def directed_distance(X: QCat, source_names, target_names, typ=None):
    """Hom between the conical tables of two subsets, computed from the
    carrier alone — nothing is enumerated."""
    A = [X.carrier.index(n) for n in source_names]
    B = [X.carrier.index(n) for n in target_names]
    Q = X.carrier.quantaloid
    ts = X.carrier.types
    s = _table_type(Q, A + B, ts, typ)
    sigA = conical_table(X, A, s)
    sigB = conical_table(X, B, s)
    return Q.hom(s, s).meet(sigB.values[x]
                            for x in max_generator(X, sigA))


def symmetric_distance(X: QCat, a_names, b_names, typ=None):
    """The lax two-sided distance: the worse of the two directions."""
    A = [X.carrier.index(n) for n in a_names]
    B = [X.carrier.index(n) for n in b_names]
    Q = X.carrier.quantaloid
    s = _table_type(Q, A + B, X.carrier.types, typ)
    return Q.hom(s, s).meet((directed_distance(X, a_names, b_names, typ),
                             directed_distance(X, b_names, a_names, typ)))


def line_space(coords, names=None) -> QCat:
    """Points on the rational line with symmetric distance."""
    coords = [Fraction(c) for c in coords]
    names = list(names) if names is not None else [
        f"p{i}" for i in range(len(coords))]
    X = typed_set(LAWVERE, names)
    hom = rel_from_function(X, X, lambda i, j: abs(coords[i] - coords[j]))
    return build_category(X, hom)


def space_from_matrix(names, rows) -> QCat:
    """A space from an explicit distance table (validated)."""
    X = typed_set(LAWVERE, names)
    h = LAWVERE.hom("*", "*")
    if len(rows) != len(names) or any(len(r) != len(names) for r in rows):
        raise InvalidInput("distance table shape does not match the points")
    hom = rel_from_function(X, X, lambda i, j: h.parse(rows[i][j]))
    return build_category(X, hom)
