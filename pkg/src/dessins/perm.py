"""Permutations on {1..n} with cycle-notation round-trip.

A permutation carries its degree explicitly; fixed points are never printed,
so ``(1,2,3,7,8,9)(6,12)`` of degree 12 fixes 4, 5, 10 and 11. Points are
1-based everywhere in the public interface (matching the usual edge
numbering of dessins); the internal image array is 0-based and is what the
kernel functions operate on.

Composition acts on the right: ``p * q`` (or ``compose(p, q)``) means
"apply p first, then q", so ``i ^ (pq) == (i ^ p) ^ q``.
"""

from __future__ import annotations

import re
from functools import reduce
from math import gcd
from typing import Iterable, Iterator, Sequence

from dessins import _kernel as K
from dessins.errors import DessinsError


class CycleParseError(DessinsError):
    """Malformed cycle notation; ``position`` is a 0-based text offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Permutation:
    """An immutable bijection of {1..degree}."""

    __slots__ = ("_images", "_hash")

    def __init__(self, images0: Sequence[int]):
        """Build from the 0-based image tuple; validates bijectivity."""
        images = tuple(images0)
        n = len(images)
        seen = [False] * n
        for j in images:
            if not 0 <= j < n or seen[j]:
                raise ValueError(f"images {images!r} are not a bijection of 0..{n - 1}")
            seen[j] = True
        object.__setattr__(self, "_images", images)
        object.__setattr__(self, "_hash", hash(images))

    # -- construction ----------------------------------------------------

    @staticmethod
    def identity(degree: int) -> "Permutation":
        if degree < 1:
            raise ValueError("degree must be >= 1")
        return Permutation._raw(tuple(range(degree)))

    @staticmethod
    def from_cycles(cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 1-based cycles; unmentioned points are fixed."""
        if degree < 1:
            raise ValueError("degree must be >= 1")
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for pt in cycle:
                if not 1 <= pt <= degree:
                    raise ValueError(f"point {pt} out of range 1..{degree}")
                if pt in seen:
                    raise ValueError(f"point {pt} repeated")
                seen.add(pt)
            for a, b in zip(cycle, cycle[1:]):
                images[a - 1] = b - 1
            if cycle:
                images[cycle[-1] - 1] = cycle[0] - 1
        return Permutation._raw(tuple(images))

    @staticmethod
    def _raw(images: tuple[int, ...]) -> "Permutation":
        """Trusted constructor skipping the bijection check."""
        p = object.__new__(Permutation)
        object.__setattr__(p, "_images", images)
        object.__setattr__(p, "_hash", hash(images))
        return p

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self._images)

    @property
    def images(self) -> tuple[int, ...]:
        """The 0-based image tuple (entry i is the image of point i+1, minus 1)."""
        return self._images

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self._images[point - 1] + 1

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._images))

    def moved_points(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, j in enumerate(self._images) if i != j)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles as 1-based tuples, least point first, sorted."""
        images = self._images
        seen = [False] * len(images)
        out = []
        for i in range(len(images)):
            if seen[i] or images[i] == i:
                continue
            cycle = [i]
            seen[i] = True
            j = images[i]
            while j != i:
                seen[j] = True
                cycle.append(j)
                j = images[j]
            out.append(tuple(pt + 1 for pt in cycle))
        return out

    def cycle_type(self) -> "CycleType":
        images = self._images
        seen = [False] * len(images)
        parts = []
        for i in range(len(images)):
            if seen[i]:
                continue
            length = 1
            seen[i] = True
            j = images[i]
            while j != i:
                seen[j] = True
                length += 1
                j = images[j]
            parts.append(length)
        return CycleType(parts)

    def order(self) -> int:
        return reduce(lambda a, b: a * b // gcd(a, b), self.cycle_type().parts, 1)

    # -- algebra -----------------------------------------------------------

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        return Permutation._raw(K.inverse(self._images))

    def __pow__(self, n: int) -> "Permutation":
        return Permutation._raw(K.power(self._images, n))

    def conjugate(self, g: "Permutation") -> "Permutation":
        """g^-1 * self * g."""
        if g.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation._raw(K.compose3(K.inverse(g._images), self._images, g._images))

    def commutes_with(self, other: "Permutation") -> bool:
        return K.compose(self._images, other._images) == K.compose(other._images, self._images)

    # -- dunder plumbing ----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._images == other._images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self._images < other._images

    def __repr__(self) -> str:
        return f"Permutation({print_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return print_cycles(self)


class CycleType:
    """Multiset of cycle lengths, fixed points included as 1s."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        self.parts: tuple[int, ...] = tuple(sorted(parts, reverse=True))
        if any(p < 1 for p in self.parts):
            raise ValueError("cycle lengths must be positive")

    @property
    def degree(self) -> int:
        return sum(self.parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycleType) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        out = []
        i = 0
        while i < len(self.parts):
            j = i
            while j < len(self.parts) and self.parts[j] == self.parts[i]:
                j += 1
            out.append(f"{self.parts[i]}^{j - i}" if j - i > 1 else str(self.parts[i]))
            i = j
        return " ".join(out)

    def __repr__(self) -> str:
        return f"CycleType({list(self.parts)})"


_TOKEN = re.compile(r"\s*(\(|\)|,|\d+)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation like ``(1,2,3,7,8,9)(6,12)``.

    Whitespace is ignored; ``()`` and the empty string denote the identity.
    Errors (bad syntax, point out of range, repeated point) carry the text
    position where they occurred.
    """
    if degree < 1:
        raise ValueError("degree must be >= 1")
    images = list(range(degree))
    seen: set[int] = set()
    pos = 0
    n = len(text)

    def skip_ws(i: int) -> int:
        while i < n and text[i].isspace():
            i += 1
        return i

    pos = skip_ws(pos)
    while pos < n:
        if text[pos] != "(":
            raise CycleParseError(f"expected '(' but found {text[pos]!r}", pos)
        pos = skip_ws(pos + 1)
        cycle: list[int] = []
        if pos < n and text[pos] == ")":
            pos = skip_ws(pos + 1)
        else:
            while True:
                m = _TOKEN.match(text, pos)
                if m is None or not m.group(1).isdigit():
                    raise CycleParseError("expected an integer", pos)
                pt = int(m.group(1))
                if not 1 <= pt <= degree:
                    raise CycleParseError(f"point {pt} out of range 1..{degree}", pos)
                if pt in seen:
                    raise CycleParseError(f"point {pt} repeated", pos)
                seen.add(pt)
                cycle.append(pt)
                pos = skip_ws(m.end())
                if pos >= n:
                    raise CycleParseError("unclosed cycle", pos)
                if text[pos] == ")":
                    pos = skip_ws(pos + 1)
                    break
                if text[pos] != ",":
                    raise CycleParseError(f"expected ',' or ')' but found {text[pos]!r}", pos)
                pos = skip_ws(pos + 1)
        for a, b in zip(cycle, cycle[1:]):
            images[a - 1] = b - 1
        if cycle:
            images[cycle[-1] - 1] = cycle[0] - 1
    return Permutation._raw(tuple(images))


def print_cycles(p: Permutation) -> str:
    """Cycle notation without fixed points; identity prints as ``()``."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + ",".join(map(str, c)) + ")" for c in cycles)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} != {q.degree}")
    return Permutation._raw(K.compose(p.images, q.images))


def direct_sum_pair(p1: Permutation, p2: Permutation) -> Permutation:
    """Act as p1 on 1..n1 and as p2 shifted by n1 on n1+1..n1+n2."""
    n1 = p1.degree
    return Permutation._raw(p1.images + tuple(j + n1 for j in p2.images))


def restrict_to_block(p: Permutation, start: int, length: int) -> Permutation:
    """Inverse of direct_sum_pair: the action on points start..start+length-1 (1-based).

    Requires the block to be invariant under p.
    """
    lo = start - 1
    sub = p.images[lo : lo + length]
    if any(not lo <= j < lo + length for j in sub):
        raise ValueError("block is not invariant")
    return Permutation(tuple(j - lo for j in sub))
