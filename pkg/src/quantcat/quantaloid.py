"""Quantaloids: complete-lattice homs with join-preserving composition.

Two implementations live here. TableQuantaloid holds finitely many objects
with explicitly tabulated homs, composition and units; its constructor checks
shapes only, so deliberately broken instances can be built and fed to
verify_quantaloid. LawvereQuantaloid is the intensional quantale on [0, inf]
ordered by >=, with + as composition and 0 as unit; its homs cannot be
enumerated, so verification samples.

Conventions fixed once and used everywhere:
  * compose(p, q, r, beta, alpha) is the composite of beta in Q(q,r) after
    alpha in Q(p,q), landing in Q(p,r).
  * left_residual(p, q, r, gamma, alpha) is the largest beta in Q(q,r) with
    beta . alpha <= gamma, for gamma in Q(p,r) and alpha in Q(p,q).
  * right_residual(p, q, r, beta, gamma) is the largest alpha in Q(p,q) with
    beta . alpha <= gamma.
Composition tables are indexed table[i][j] where i runs over the hom of the
arrow applied second and j over the arrow applied first.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from .errors import (EnumerationUnsupported, InvalidInput, UnknownElement)
from .lattice import FiniteLattice, lattice_from_json
from .report import Report

INF = float("inf")


class Hom:
    """Handle for one hom-lattice of a quantaloid."""

    __slots__ = ("quantaloid", "source", "target")

    enumerable = False

    def __init__(self, quantaloid, source, target):
        self.quantaloid = quantaloid
        self.source = source
        self.target = target

    def elements(self):
        raise EnumerationUnsupported(
            f"hom {self.source} -> {self.target} of {self.quantaloid.name} "
            "is not enumerable")

    def leq(self, a, b) -> bool:
        raise NotImplementedError

    def join(self, vals):
        raise NotImplementedError

    def meet(self, vals):
        raise NotImplementedError

    @property
    def bottom(self):
        return self.join(())

    @property
    def top(self):
        return self.meet(())

    def contains(self, v) -> bool:
        raise NotImplementedError

    def format(self, v) -> str:
        raise NotImplementedError

    def parse(self, raw):
        raise NotImplementedError


class TableHom(Hom):
    __slots__ = ("lattice",)

    enumerable = True

    def __init__(self, quantaloid, source, target, lattice):
        super().__init__(quantaloid, source, target)
        self.lattice = lattice

    def elements(self):
        return range(len(self.lattice))

    def leq(self, a, b) -> bool:
        return self.lattice.leq(a, b)

    def join(self, vals):
        return self.lattice.join(vals)

    def meet(self, vals):
        return self.lattice.meet(vals)

    def contains(self, v) -> bool:
        return isinstance(v, int) and 0 <= v < len(self.lattice)

    def format(self, v) -> str:
        return self.lattice.name(v)

    def parse(self, raw):
        if not isinstance(raw, str):
            raise InvalidInput(
                f"values in {self.quantaloid.name} must be element names, "
                f"got {raw!r}")
        return self.lattice.index(raw)


def law_value(raw):
    """Parse a [0, inf] value from JSON-ish input into Fraction or INF."""
    if isinstance(raw, bool):
        raise InvalidInput(f"not a distance value: {raw!r}")
    if isinstance(raw, int):
        v = Fraction(raw)
    elif isinstance(raw, float):
        if raw == INF:
            return INF
        try:
            v = Fraction(str(raw))
        except ValueError:
            raise InvalidInput(f"not a distance value: {raw!r}") from None
    elif isinstance(raw, Fraction):
        v = raw
    elif isinstance(raw, str):
        if raw.strip() == "inf":
            return INF
        try:
            v = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise InvalidInput(f"not a distance value: {raw!r}") from None
    else:
        raise InvalidInput(f"not a distance value: {raw!r}")
    if v < 0:
        raise InvalidInput(f"distance values must be >= 0, got {raw!r}")
    return v


def law_format(v) -> str:
    if v == INF:
        return "inf"
    if v.denominator == 1:
        return str(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def law_add(a, b):
    if a == INF or b == INF:
        return INF
    return a + b


def law_sub(gamma, beta):
    """Largest x (in the >= order: numerically least) with beta + x >= gamma."""
    if beta >= gamma:
        return Fraction(0)
    if gamma == INF:
        return INF
    return gamma - beta


class LawvereHom(Hom):
    __slots__ = ()

    enumerable = False

    def leq(self, a, b) -> bool:
        # The lattice order is reversed numeric order.
        return a >= b

    def join(self, vals):
        return min(vals, default=INF)

    def meet(self, vals):
        return max(vals, default=Fraction(0))

    def contains(self, v) -> bool:
        return v == INF or (isinstance(v, Fraction) and v >= 0)

    def format(self, v) -> str:
        return law_format(v)

    def parse(self, raw):
        return law_value(raw)


class Quantaloid:
    name: str
    objects: tuple
    enumerable: bool

    def hom(self, p, q) -> Hom:
        raise NotImplementedError

    def compose(self, p, q, r, beta, alpha):
        raise NotImplementedError

    def unit(self, p):
        raise NotImplementedError

    def left_residual(self, p, q, r, gamma, alpha):
        raise NotImplementedError

    def right_residual(self, p, q, r, beta, gamma):
        raise NotImplementedError

    def check_object(self, p):
        if p not in self.objects:
            raise UnknownElement(f"{self.name} has no object {p!r}")


class TableQuantaloid(Quantaloid):
    """Finitely presented quantaloid. Construction validates shape only."""

    enumerable = True

    def __init__(self, name, objects, homs, tables, units):
        if not objects:
            raise InvalidInput("a quantaloid needs at least one object")
        objects = tuple(str(o) for o in objects)
        if len(set(objects)) != len(objects):
            raise InvalidInput("duplicate object names")
        self.name = name
        self.objects = objects
        for p in objects:
            for q in objects:
                if (p, q) not in homs:
                    raise InvalidInput(f"missing hom {p} -> {q}")
                if not isinstance(homs[(p, q)], FiniteLattice):
                    raise InvalidInput(f"hom {p} -> {q} is not a lattice")
        if set(homs) != {(p, q) for p in objects for q in objects}:
            raise InvalidInput("hom table mentions unknown objects")
        self._homs = dict(homs)
        for p in objects:
            for q in objects:
                for r in objects:
                    t = tables.get((p, q, r))
                    if t is None:
                        raise InvalidInput(
                            f"missing composition table {p} -> {q} -> {r}")
                    rows = len(homs[(q, r)].names)
                    cols = len(homs[(p, q)].names)
                    out = len(homs[(p, r)].names)
                    if len(t) != rows or any(len(row) != cols for row in t):
                        raise InvalidInput(
                            f"composition table {p} -> {q} -> {r} has wrong shape")
                    for row in t:
                        for v in row:
                            if not (isinstance(v, int) and 0 <= v < out):
                                raise InvalidInput(
                                    f"composition table {p} -> {q} -> {r} "
                                    f"entry {v!r} out of range")
        if set(tables) != {(p, q, r) for p in objects for q in objects
                           for r in objects}:
            raise InvalidInput("composition tables mention unknown objects")
        self._tables = {k: tuple(tuple(row) for row in t)
                        for k, t in tables.items()}
        for p in objects:
            u = units.get(p)
            if not (isinstance(u, int) and 0 <= u < len(homs[(p, p)].names)):
                raise InvalidInput(f"missing or invalid unit for object {p}")
        if set(units) != set(objects):
            raise InvalidInput("units mention unknown objects")
        self._units = dict(units)
        self._hom_handles = {}
        self._lres = {}
        self._rres = {}

    def hom(self, p, q) -> TableHom:
        h = self._hom_handles.get((p, q))
        if h is None:
            self.check_object(p)
            self.check_object(q)
            h = TableHom(self, p, q, self._homs[(p, q)])
            self._hom_handles[(p, q)] = h
        return h

    def compose(self, p, q, r, beta, alpha):
        return self._tables[(p, q, r)][beta][alpha]

    def unit(self, p):
        return self._units[p]

    def left_residual(self, p, q, r, gamma, alpha):
        key = (p, q, r, gamma, alpha)
        v = self._lres.get(key)
        if v is None:
            lat = self._homs[(q, r)]
            out = self._homs[(p, r)]
            table = self._tables[(p, q, r)]
            v = lat.join(b for b in range(len(lat.names))
                         if out.leq(table[b][alpha], gamma))
            self._lres[key] = v
        return v

    def right_residual(self, p, q, r, beta, gamma):
        key = (p, q, r, beta, gamma)
        v = self._rres.get(key)
        if v is None:
            lat = self._homs[(p, q)]
            out = self._homs[(p, r)]
            row = self._tables[(p, q, r)][beta]
            v = lat.join(a for a in range(len(lat.names))
                         if out.leq(row[a], gamma))
            self._rres[key] = v
        return v


class LawvereQuantaloid(Quantaloid):
    enumerable = False

    def __init__(self):
        self.name = "lawvere"
        self.objects = ("*",)
        self._hom = LawvereHom(self, "*", "*")

    def hom(self, p, q) -> LawvereHom:
        self.check_object(p)
        self.check_object(q)
        return self._hom

    def compose(self, p, q, r, beta, alpha):
        return law_add(beta, alpha)

    def unit(self, p):
        return Fraction(0)

    def left_residual(self, p, q, r, gamma, alpha):
        return law_sub(gamma, alpha)

    def right_residual(self, p, q, r, beta, gamma):
        return law_sub(gamma, beta)


LAWVERE = LawvereQuantaloid()


def quantale(name, names, leq_pairs, tensor, unit) -> TableQuantaloid:
    """One-object quantaloid from a lattice plus tensor table.

    tensor is a 2D list of element names, tensor[i][j] = names[i] . names[j].
    Unlike the raw TableQuantaloid constructor this validates the axioms and
    refuses broken inputs.
    """
    lat = FiniteLattice(names, leq_pairs)
    n = len(lat.names)
    if len(tensor) != n or any(len(row) != n for row in tensor):
        raise InvalidInput("tensor table has wrong shape")
    table = [[lat.index(str(v)) for v in row] for row in tensor]
    q = TableQuantaloid(name, ("*",), {("*", "*"): lat},
                        {("*", "*", "*"): table}, {"*": lat.index(str(unit))})
    rep = verify_quantaloid(q)
    if not rep.passed:
        first = rep.failures()[0]
        raise InvalidInput(
            f"not a quantale: {first.name} fails "
            f"(witness {json.dumps(first.witness, sort_keys=True)})")
    return q


def _builtin_two() -> TableQuantaloid:
    return quantale("builtin:2", ["0", "1"],
                    [("0", "0"), ("0", "1"), ("1", "1")],
                    [["0", "0"], ["0", "1"]], "1")


def _builtin_chain3() -> TableQuantaloid:
    names = ["0", "1", "2"]
    pairs = [(names[i], names[j]) for i in range(3) for j in range(i, 3)]
    tensor = [[names[min(i, j)] for j in range(3)] for i in range(3)]
    return quantale("builtin:chain3", names, pairs, tensor, "2")


def _builtin_lukasiewicz3() -> TableQuantaloid:
    names = ["0", "1", "2"]
    pairs = [(names[i], names[j]) for i in range(3) for j in range(i, 3)]
    tensor = [[names[max(i + j - 2, 0)] for j in range(3)] for i in range(3)]
    return quantale("builtin:lukasiewicz3", names, pairs, tensor, "2")


_BUILTINS = {
    "2": _builtin_two,
    "chain3": _builtin_chain3,
    "lukasiewicz3": _builtin_lukasiewicz3,
    "lawvere": lambda: LAWVERE,
}
_builtin_cache: dict = {}


def builtin_names() -> list:
    return sorted(_BUILTINS)


def get_builtin(name: str) -> Quantaloid:
    if name not in _BUILTINS:
        raise InvalidInput(
            f"unknown builtin quantaloid {name!r} "
            f"(have: {', '.join(builtin_names())})")
    if name not in _builtin_cache:
        _builtin_cache[name] = _BUILTINS[name]()
    return _builtin_cache[name]


def quantaloid_from_json(obj) -> TableQuantaloid:
    if not isinstance(obj, dict):
        raise InvalidInput("quantaloid JSON must be an object")
    objects = obj.get("objects")
    if not isinstance(objects, list) or not all(isinstance(o, str) for o in objects):
        raise InvalidInput("quantaloid JSON needs an 'objects' list of strings")
    homs = {}
    for entry in obj.get("homs", ()):
        if not isinstance(entry, dict) or "from" not in entry or "to" not in entry:
            raise InvalidInput("each hom needs 'from' and 'to'")
        key = (entry["from"], entry["to"])
        if key in homs:
            raise InvalidInput(f"duplicate hom {key[0]} -> {key[1]}")
        homs[key] = lattice_from_json(entry)
    tables = {}
    for entry in obj.get("compose", ()):
        if not isinstance(entry, dict):
            raise InvalidInput("each compose entry must be an object")
        try:
            key = (entry["from"], entry["via"], entry["to"])
        except KeyError as e:
            raise InvalidInput(f"compose entry missing {e.args[0]!r}") from None
        if key in tables:
            raise InvalidInput(
                f"duplicate compose table {key[0]} -> {key[1]} -> {key[2]}")
        raw = entry.get("table")
        if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
            raise InvalidInput("compose 'table' must be a list of rows")
        out = homs.get((key[0], key[2]))
        if out is None:
            raise InvalidInput(
                f"compose table {key[0]} -> {key[1]} -> {key[2]} "
                "refers to a missing hom")
        tables[key] = [[out.index(str(v)) for v in row] for row in raw]
    units = {}
    raw_units = obj.get("units")
    if not isinstance(raw_units, dict):
        raise InvalidInput("quantaloid JSON needs a 'units' object")
    for p, v in raw_units.items():
        h = homs.get((p, p))
        if h is None:
            raise InvalidInput(f"unit given for unknown object {p!r}")
        units[p] = h.index(str(v))
    name = obj.get("name", "quantaloid")
    return TableQuantaloid(name, objects, homs, tables, units)


def quantaloid_to_json(Q: TableQuantaloid) -> dict:
    homs = []
    tables = []
    for p in Q.objects:
        for q in Q.objects:
            lat = Q._homs[(p, q)]
            entry = {"from": p, "to": q}
            entry.update(lat.to_json())
            homs.append(entry)
    for p in Q.objects:
        for q in Q.objects:
            for r in Q.objects:
                out = Q._homs[(p, r)]
                tables.append({
                    "from": p, "via": q, "to": r,
                    "table": [[out.name(v) for v in row]
                              for row in Q._tables[(p, q, r)]],
                })
    return {
        "name": Q.name,
        "objects": list(Q.objects),
        "homs": homs,
        "compose": tables,
        "units": {p: Q._homs[(p, p)].name(Q._units[p]) for p in Q.objects},
    }


def load_quantaloid(spec: str) -> Quantaloid:
    """Resolve 'builtin:<name>' or a path to a quantaloid JSON file."""
    if spec.startswith("builtin:"):
        return get_builtin(spec[len("builtin:"):])
    try:
        with open(spec, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise InvalidInput(f"cannot read quantaloid file {spec!r}: {e}") from None
    except json.JSONDecodeError as e:
        raise InvalidInput(f"invalid JSON in {spec!r}: {e}") from None
    return quantaloid_from_json(data)


def _law_sample(rng: random.Random):
    t = rng.randrange(8)
    if t == 0:
        return INF
    if t == 1:
        return Fraction(0)
    return Fraction(rng.randrange(0, 41), rng.randrange(1, 9))


def sample_hom_value(Q: Quantaloid, p, q, rng: random.Random):
    """Seeded draw from the hom Q(p, q); covers bottom, unit and inf cases."""
    h = Q.hom(p, q)
    if h.enumerable:
        return rng.randrange(len(h.lattice))
    return _law_sample(rng)


def verify_quantaloid(Q: Quantaloid, samples: int = 1000, seed: int = 0) -> Report:
    """Full axiom audit. Exhaustive when homs enumerate, else seeded sampling."""
    rep = Report(f"quantaloid {Q.name}")
    if Q.enumerable:
        _verify_exhaustive(Q, rep)
    else:
        _verify_sampled(Q, rep, samples, seed)
    return rep


def _verify_exhaustive(Q: Quantaloid, rep: Report) -> None:
    objs = Q.objects

    def wit(**kw):
        return {k: v for k, v in kw.items()}

    ok, w = True, None
    for p in objs:
        for q in objs:
            for r in objs:
                for s in objs:
                    hrs = Q.hom(r, s)
                    hqr = Q.hom(q, r)
                    hpq = Q.hom(p, q)
                    for c in hrs.elements():
                        for b in hqr.elements():
                            cb = Q.compose(q, r, s, c, b)
                            for a in hpq.elements():
                                lhs = Q.compose(p, q, s, cb, a)
                                rhs = Q.compose(p, r, s, c,
                                                Q.compose(p, q, r, b, a))
                                if lhs != rhs:
                                    ok, w = False, wit(
                                        objects=[p, q, r, s],
                                        gamma=hrs.format(c), beta=hqr.format(b),
                                        alpha=hpq.format(a))
                                    break
                            if not ok:
                                break
                        if not ok:
                            break
    rep.add("compose associative", ok, witness=w)

    ok, w = True, None
    for p in objs:
        for q in objs:
            hpq = Q.hom(p, q)
            for a in hpq.elements():
                if Q.compose(p, q, q, Q.unit(q), a) != a:
                    ok, w = False, wit(objects=[p, q], alpha=hpq.format(a))
                    break
            if not ok:
                break
    rep.add("unit left identity", ok, witness=w)

    ok, w = True, None
    for p in objs:
        for q in objs:
            hpq = Q.hom(p, q)
            for a in hpq.elements():
                if Q.compose(p, p, q, a, Q.unit(p)) != a:
                    ok, w = False, wit(objects=[p, q], alpha=hpq.format(a))
                    break
            if not ok:
                break
    rep.add("unit right identity", ok, witness=w)

    ok, w = True, None
    for p in objs:
        for q in objs:
            for r in objs:
                hpq = Q.hom(p, q)
                hqr = Q.hom(q, r)
                hpr = Q.hom(p, r)
                for b in hqr.elements():
                    if Q.compose(p, q, r, b, hpq.bottom) != hpr.bottom:
                        ok, w = False, wit(objects=[p, q, r],
                                           beta=hqr.format(b), side="right")
                        break
                for a in hpq.elements():
                    if Q.compose(p, q, r, hqr.bottom, a) != hpr.bottom:
                        ok, w = False, wit(objects=[p, q, r],
                                           alpha=hpq.format(a), side="left")
                        break
    rep.add("compose preserves bottom", ok, witness=w)

    ok, w = True, None
    for p in objs:
        for q in objs:
            for r in objs:
                hpq = Q.hom(p, q)
                hqr = Q.hom(q, r)
                hpr = Q.hom(p, r)
                for b in hqr.elements():
                    for a1 in hpq.elements():
                        for a2 in hpq.elements():
                            lhs = Q.compose(p, q, r, b, hpq.join((a1, a2)))
                            rhs = hpr.join((Q.compose(p, q, r, b, a1),
                                            Q.compose(p, q, r, b, a2)))
                            if lhs != rhs:
                                ok, w = False, wit(
                                    objects=[p, q, r], beta=hqr.format(b),
                                    alpha1=hpq.format(a1), alpha2=hpq.format(a2))
    rep.add("compose preserves joins on the right", ok, witness=w)

    ok, w = True, None
    for p in objs:
        for q in objs:
            for r in objs:
                hpq = Q.hom(p, q)
                hqr = Q.hom(q, r)
                hpr = Q.hom(p, r)
                for a in hpq.elements():
                    for b1 in hqr.elements():
                        for b2 in hqr.elements():
                            lhs = Q.compose(p, q, r, hqr.join((b1, b2)), a)
                            rhs = hpr.join((Q.compose(p, q, r, b1, a),
                                            Q.compose(p, q, r, b2, a)))
                            if lhs != rhs:
                                ok, w = False, wit(
                                    objects=[p, q, r], alpha=hpq.format(a),
                                    beta1=hqr.format(b1), beta2=hqr.format(b2))
    rep.add("compose preserves joins on the left", ok, witness=w)

    okl, wl = True, None
    okr, wr = True, None
    for p in objs:
        for q in objs:
            for r in objs:
                hpq = Q.hom(p, q)
                hqr = Q.hom(q, r)
                hpr = Q.hom(p, r)
                for a in hpq.elements():
                    for b in hqr.elements():
                        ba = Q.compose(p, q, r, b, a)
                        for g in hpr.elements():
                            under = hpr.leq(ba, g)
                            if okr and under != hpq.leq(
                                    a, Q.right_residual(p, q, r, b, g)):
                                okr, wr = False, {
                                    "objects": [p, q, r], "alpha": hpq.format(a),
                                    "beta": hqr.format(b), "gamma": hpr.format(g)}
                            if okl and under != hqr.leq(
                                    b, Q.left_residual(p, q, r, g, a)):
                                okl, wl = False, {
                                    "objects": [p, q, r], "alpha": hpq.format(a),
                                    "beta": hqr.format(b), "gamma": hpr.format(g)}
    rep.add("right residual adjunction", okr, witness=wr)
    rep.add("left residual adjunction", okl, witness=wl)


def _verify_sampled(Q: Quantaloid, rep: Report, samples: int, seed: int) -> None:
    rng = random.Random(seed)
    h = Q.hom(Q.objects[0], Q.objects[0])
    p = Q.objects[0]

    def triple():
        return _law_sample(rng), _law_sample(rng), _law_sample(rng)

    ok, w = True, None
    for _ in range(samples):
        c, b, a = triple()
        lhs = Q.compose(p, p, p, Q.compose(p, p, p, c, b), a)
        rhs = Q.compose(p, p, p, c, Q.compose(p, p, p, b, a))
        if lhs != rhs:
            ok, w = False, {"gamma": h.format(c), "beta": h.format(b),
                            "alpha": h.format(a)}
            break
    rep.add("compose associative", ok, sampled=True, witness=w)

    ok, w = True, None
    for _ in range(samples):
        a = _law_sample(rng)
        if Q.compose(p, p, p, Q.unit(p), a) != a:
            ok, w = False, {"alpha": h.format(a)}
            break
    rep.add("unit left identity", ok, sampled=True, witness=w)

    ok, w = True, None
    for _ in range(samples):
        a = _law_sample(rng)
        if Q.compose(p, p, p, a, Q.unit(p)) != a:
            ok, w = False, {"alpha": h.format(a)}
            break
    rep.add("unit right identity", ok, sampled=True, witness=w)

    ok, w = True, None
    for _ in range(samples):
        b = _law_sample(rng)
        if (Q.compose(p, p, p, b, h.bottom) != h.bottom
                or Q.compose(p, p, p, h.bottom, b) != h.bottom):
            ok, w = False, {"beta": h.format(b)}
            break
    rep.add("compose preserves bottom", ok, sampled=True, witness=w)

    ok, w = True, None
    for _ in range(samples):
        b, a1, a2 = triple()
        lhs = Q.compose(p, p, p, b, h.join((a1, a2)))
        rhs = h.join((Q.compose(p, p, p, b, a1), Q.compose(p, p, p, b, a2)))
        if lhs != rhs:
            ok, w = False, {"beta": h.format(b), "alpha1": h.format(a1),
                            "alpha2": h.format(a2)}
            break
    rep.add("compose preserves joins on the right", ok, sampled=True, witness=w)

    ok, w = True, None
    for _ in range(samples):
        a, b1, b2 = triple()
        lhs = Q.compose(p, p, p, h.join((b1, b2)), a)
        rhs = h.join((Q.compose(p, p, p, b1, a), Q.compose(p, p, p, b2, a)))
        if lhs != rhs:
            ok, w = False, {"alpha": h.format(a), "beta1": h.format(b1),
                            "beta2": h.format(b2)}
            break
    rep.add("compose preserves joins on the left", ok, sampled=True, witness=w)

    okr, wr = True, None
    okl, wl = True, None
    for _ in range(samples):
        a, b, g = triple()
        under = h.leq(Q.compose(p, p, p, b, a), g)
        if okr and under != h.leq(a, Q.right_residual(p, p, p, b, g)):
            okr, wr = False, {"alpha": h.format(a), "beta": h.format(b),
                              "gamma": h.format(g)}
        if okl and under != h.leq(b, Q.left_residual(p, p, p, g, a)):
            okl, wl = False, {"alpha": h.format(a), "beta": h.format(b),
                              "gamma": h.format(g)}
    rep.add("right residual adjunction", okr, sampled=True, witness=wr)
    rep.add("left residual adjunction", okl, sampled=True, witness=wl)


def completely_distributive(Q: Quantaloid) -> bool:
    return distributivity_witness(Q) is None


def distributivity_witness(Q: Quantaloid):
    """None, or a dict locating a hom whose lattice is not distributive.

    Hom lattices here are finite (or chains, for the intensional quantale),
    where distributivity and complete distributivity coincide.
    """
    if not Q.enumerable:
        return None
    for p in Q.objects:
        for q in Q.objects:
            lat = Q.hom(p, q).lattice
            t = lat.distributivity_witness()
            if t is not None:
                return {"hom": [p, q],
                        "triple": [lat.name(i) for i in t]}
    return None
