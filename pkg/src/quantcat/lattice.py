"""Finite lattices on named elements.

The order relation must be supplied in full, reflexive pairs included; the
constructor validates partial-order axioms and the existence of all binary
joins and meets, so every instance is a complete lattice (folds of the binary
operations give top and bottom). Elements are addressed by integer id in the
order their names were given; names exist only at the I/O boundary.
"""

from __future__ import annotations

from .errors import InvalidInput, UnknownElement


class FiniteLattice:
    __slots__ = ("names", "_index", "_up", "_dn", "_join2", "_meet2", "bottom", "top")

    def __init__(self, names, leq_pairs):
        names = tuple(str(n) for n in names)
        if not names:
            raise InvalidInput("lattice needs at least one element")
        if len(set(names)) != len(names):
            raise InvalidInput("duplicate element names in lattice")
        if any(n == "" for n in names):
            raise InvalidInput("empty string is not a valid element name")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}
        n = len(names)

        # up[i] is the bitmask of all j with i <= j; dn[i] the mask of j <= i.
        up = [0] * n
        dn = [0] * n
        for pair in leq_pairs:
            a, b = pair
            ia = self._index.get(str(a))
            ib = self._index.get(str(b))
            if ia is None or ib is None:
                bad = a if ia is None else b
                raise UnknownElement(f"leq pair mentions unknown element {bad!r}")
            up[ia] |= 1 << ib
            dn[ib] |= 1 << ia

        for i in range(n):
            if not (up[i] >> i) & 1:
                raise InvalidInput(
                    f"missing reflexive pair ({names[i]}, {names[i]})")
        for i in range(n):
            for j in range(n):
                if i != j and (up[i] >> j) & 1 and (up[j] >> i) & 1:
                    raise InvalidInput(
                        f"order not antisymmetric: {names[i]} and {names[j]}")
        for i in range(n):
            reach = up[i]
            m = reach
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                if up[j] & ~reach:
                    k = ((up[j] & ~reach) & -(up[j] & ~reach)).bit_length() - 1
                    raise InvalidInput(
                        f"order not transitive: {names[i]} <= {names[j]} <= "
                        f"{names[k]} but the pair ({names[i]}, {names[k]}) is missing")
        self._up = up
        self._dn = dn

        full = (1 << n) - 1
        self._join2 = [[self._bound(i, j, up, dn, True) for j in range(n)]
                       for i in range(n)]
        self._meet2 = [[self._bound(i, j, dn, up, False) for j in range(n)]
                       for i in range(n)]

        bots = [i for i in range(n) if up[i] == full]
        tops = [i for i in range(n) if dn[i] == full]
        # Folding validated binary meets over a finite carrier always lands on
        # a global minimum, so these cannot be empty once the pair scan passed.
        self.bottom = bots[0]
        self.top = tops[0]

    def _bound(self, i, j, fwd, bwd, is_join) -> int:
        common = fwd[i] & fwd[j]
        if common == 0:
            kind = "upper" if is_join else "lower"
            raise InvalidInput(
                f"no common {kind} bound for {self.names[i]}, {self.names[j]}")
        m = common
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            if common & ~fwd[u] == 0:
                return u
        kind = "least upper" if is_join else "greatest lower"
        raise InvalidInput(
            f"no {kind} bound for {self.names[i]}, {self.names[j]}")

    def __len__(self) -> int:
        return len(self.names)

    def ids(self) -> range:
        return range(len(self.names))

    def index(self, name: str) -> int:
        i = self._index.get(name)
        if i is None:
            raise UnknownElement(f"unknown lattice element {name!r}")
        return i

    def name(self, i: int) -> str:
        return self.names[i]

    def leq(self, i: int, j: int) -> bool:
        return bool((self._up[i] >> j) & 1)

    def join2(self, i: int, j: int) -> int:
        return self._join2[i][j]

    def meet2(self, i: int, j: int) -> int:
        return self._meet2[i][j]

    def join(self, ids) -> int:
        acc = self.bottom
        for i in ids:
            acc = self._join2[acc][i]
        return acc

    def meet(self, ids) -> int:
        acc = self.top
        for i in ids:
            acc = self._meet2[acc][i]
        return acc

    def distributivity_witness(self):
        """A triple (a, b, c) with a /\\ (b \\/ c) != (a /\\ b) \\/ (a /\\ c),
        or None. For finite lattices one direction suffices (the property is
        self-dual) and it coincides with complete distributivity."""
        n = len(self.names)
        j2, m2 = self._join2, self._meet2
        for a in range(n):
            ma = m2[a]
            for b in range(n):
                ab = ma[b]
                for c in range(n):
                    if ma[j2[b][c]] != j2[ab][ma[c]]:
                        return (a, b, c)
        return None

    def is_distributive(self) -> bool:
        return self.distributivity_witness() is None

    def leq_pairs(self):
        """All order pairs as (i, j) ids, row-major."""
        n = len(self.names)
        return [(i, j) for i in range(n) for j in range(n) if self.leq(i, j)]

    def to_json(self) -> dict:
        return {
            "elements": list(self.names),
            "leq": [[self.names[i], self.names[j]] for i, j in self.leq_pairs()],
        }


def lattice_from_json(obj) -> FiniteLattice:
    if not isinstance(obj, dict):
        raise InvalidInput("lattice JSON must be an object")
    elements = obj.get("elements")
    leq = obj.get("leq")
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise InvalidInput("lattice JSON needs an 'elements' list of strings")
    if not isinstance(leq, list) or not all(
            isinstance(p, list) and len(p) == 2 for p in leq):
        raise InvalidInput("lattice JSON needs a 'leq' list of [lo, hi] pairs")
    return FiniteLattice(elements, [(p[0], p[1]) for p in leq])


def chain(n: int, names=None) -> FiniteLattice:
    """Total order on n elements, named '0' .. 'n-1' unless given."""
    if n < 1:
        raise InvalidInput("a chain needs at least one element")
    if names is None:
        names = [str(i) for i in range(n)]
    return FiniteLattice(names, [(names[i], names[j])
                                 for i in range(n) for j in range(i, n)])


def _from_covers(names, covers) -> FiniteLattice:
    idx = {n: i for i, n in enumerate(names)}
    up = [1 << i for i in range(len(names))]
    changed = True
    while changed:
        changed = False
        for a, b in covers:
            new = up[idx[a]] | up[idx[b]]
            if new != up[idx[a]]:
                up[idx[a]] = new
                changed = True
        for i in range(len(names)):
            m = up[i]
            acc = m
            mm = m
            while mm:
                j = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                acc |= up[j]
            if acc != up[i]:
                up[i] = acc
                changed = True
    pairs = [(names[i], names[j]) for i in range(len(names))
             for j in range(len(names)) if (up[i] >> j) & 1]
    return FiniteLattice(names, pairs)


def diamond() -> FiniteLattice:
    """Four elements: bot < a, b < top with a, b incomparable."""
    return _from_covers(["bot", "a", "b", "top"],
                        [("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")])


def m3() -> FiniteLattice:
    """Three pairwise incomparable atoms under a common top: not distributive."""
    return _from_covers(
        ["bot", "a", "b", "c", "top"],
        [("bot", "a"), ("bot", "b"), ("bot", "c"),
         ("a", "top"), ("b", "top"), ("c", "top")])


def n5() -> FiniteLattice:
    """The pentagon: bot < a < c < top, bot < b < top; not distributive."""
    return _from_covers(
        ["bot", "a", "c", "b", "top"],
        [("bot", "a"), ("a", "c"), ("c", "top"), ("bot", "b"), ("b", "top")])
