"""Finite permutation groups via a deterministic base and strong generating set.

The stabilizer chain is built with the classical (non-randomized)
Schreier-Sims procedure: insert each input generator by sifting, then walk
the chain bottom-up checking every Schreier generator, restarting at the
level where a residue lands. Base points are always the smallest point
moved by the residue that creates the level, and orbits are expanded
breadth-first in generator order, so repeated runs on the same input
produce the identical chain.

Orders are exact Python integers; the degree-64 symmetric group (order 64!)
is routine.
"""

from __future__ import annotations

from math import factorial
from typing import Iterable, Iterator, Sequence

from dessins import _kernel as K
from dessins.errors import CapExceededError
from dessins.perm import Permutation

DEFAULT_ELEMENT_CAP = 10**6


class _Level:
    __slots__ = ("point", "gens", "own_count", "table", "pending", "head")

    def __init__(self, point: int, identity: tuple[int, ...]):
        self.point = point
        self.gens: list[tuple[int, ...]] = []
        self.own_count = 0
        self.table = {point: (identity, identity)}
        self.pending: list[tuple[int, int]] = []
        self.head = 0


class PermGroup:
    """Group generated by permutations of a common degree."""

    __slots__ = ("_degree", "_gens", "_levels", "_strong", "_identity")

    def __init__(self, generators: Sequence[Permutation]):
        gens = list(generators)
        if not gens:
            raise ValueError("need at least one generator")
        degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators must share a degree")
        self._degree = degree
        self._identity = tuple(range(degree))
        self._gens = tuple(dict.fromkeys(gens))
        self._levels: list[_Level] = []
        self._strong: list[tuple[int, ...]] = []
        for g in self._gens:
            if not g.is_identity():
                self._insert(g.images)
        self._drain()

    @classmethod
    def from_generators(cls, generators: Sequence[Permutation]) -> "PermGroup":
        return cls(generators)

    # -- chain construction ------------------------------------------------

    def _chain_view(self, start: int = 0):
        return [(lvl.point, lvl.table) for lvl in self._levels[start:]]

    def _insert(self, raw: tuple[int, ...]) -> None:
        residue, idx = K.sift(raw, self._chain_view())
        if residue != self._identity:
            self._register(idx, residue)

    def _register(self, idx: int, residue: tuple[int, ...]) -> None:
        # A strong generator discovered at level idx fixes every base point
        # above, so it joins the effective generator list (and grows the
        # orbit) of levels 0..idx.
        if idx == len(self._levels):
            point = min(i for i, j in enumerate(residue) if i != j)
            self._levels.append(_Level(point, self._identity))
        self._strong.append(residue)
        for m in range(idx + 1):
            lvl = self._levels[m]
            lvl.gens.append(residue)
            K.extend_orbit(lvl.table, lvl.gens, len(lvl.gens) - 1, lvl.pending)

    def _drain(self) -> None:
        # Work deepest level first so that sifting at shallower levels runs
        # against an already settled chain below.
        while True:
            for i in range(len(self._levels) - 1, -1, -1):
                lvl = self._levels[i]
                if lvl.head < len(lvl.pending):
                    break
            else:
                return
            head, residue, idx = K.process_pending(
                lvl.table, lvl.gens, lvl.pending, lvl.head, self._chain_view(i + 1)
            )
            lvl.head = head
            if residue is not None:
                self._register(i + 1 + idx, residue)

    # -- queries -------------------------------------------------------------

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def generators(self) -> tuple[Permutation, ...]:
        return self._gens

    @property
    def base(self) -> tuple[int, ...]:
        """Base points, 1-based."""
        return tuple(lvl.point + 1 for lvl in self._levels)

    @property
    def strong_generators(self) -> tuple[Permutation, ...]:
        return tuple(Permutation._raw(g) for g in self._strong)

    def transversal_sizes(self) -> tuple[int, ...]:
        return tuple(len(lvl.table) for lvl in self._levels)

    def order(self) -> int:
        n = 1
        for lvl in self._levels:
            n *= len(lvl.table)
        return n

    def contains(self, p: Permutation) -> bool:
        if p.degree != self._degree:
            raise ValueError("degree mismatch")
        residue, _ = K.sift(p.images, self._chain_view())
        return residue == self._identity

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def elements(self, cap: int = DEFAULT_ELEMENT_CAP) -> list[Permutation]:
        """All elements, sorted lexicographically by image array."""
        n = self.order()
        if n > cap:
            raise CapExceededError(f"group order {n} exceeds cap {cap}", n)
        elems = [self._identity]
        for lvl in reversed(self._levels):
            reps = [entry[0] for entry in lvl.table.values()]
            elems = [K.compose(e, u) for e in elems for u in reps]
        elems.sort()
        return [Permutation._raw(e) for e in elems]

    def center(self, cap: int = DEFAULT_ELEMENT_CAP) -> list[Permutation]:
        """Elements commuting with every generator, in element order."""
        gens = [g.images for g in self._gens]
        out = []
        for z in self.elements(cap):
            raw = z.images
            if all(K.compose(raw, g) == K.compose(g, raw) for g in gens):
                out.append(z)
        return out

    def is_transitive(self) -> bool:
        return len(_orbit_of(0, [g.images for g in self._gens], self._degree)) == self._degree

    def is_full_symmetric(self) -> bool:
        return self.order() == factorial(self._degree)

    def is_abelian(self) -> bool:
        return all(a.commutes_with(b) for a in self._gens for b in self._gens)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self._degree}, order={self.order()})"


def _orbit_of(point: int, gens: list[tuple[int, ...]], degree: int) -> set[int]:
    orbit = {point}
    queue = [point]
    while queue:
        a = queue.pop()
        for g in gens:
            b = g[a]
            if b not in orbit:
                orbit.add(b)
                queue.append(b)
    return orbit


def point_orbits(perms: Iterable[Permutation], degree: int) -> list[list[int]]:
    """Orbit partition of {1..degree} under a set of permutations (1-based)."""
    gens = [p.images for p in perms]
    seen = [False] * degree
    out = []
    for start in range(degree):
        if seen[start]:
            continue
        orbit = sorted(_orbit_of(start, gens, degree))
        for pt in orbit:
            seen[pt] = True
        out.append([pt + 1 for pt in orbit])
    return out


def brute_force_elements(gens: Sequence[Permutation], cap: int = 10**5) -> list[Permutation]:
    """Closure by repeated multiplication; the independent order oracle for tests."""
    if not gens:
        raise ValueError("need at least one generator")
    degree = gens[0].degree
    identity = Permutation.identity(degree)
    known = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for e in frontier:
            for g in gens:
                h = e * g
                if h not in known:
                    if len(known) >= cap:
                        raise CapExceededError(f"closure exceeded cap {cap}", len(known))
                    known.add(h)
                    new.append(h)
        frontier = new
    return sorted(known)
