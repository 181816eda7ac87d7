"""Dessins d'enfants as transitive permutation pairs.

A dessin of degree n is a pair (sigma_x, sigma_y) of permutations of the
edge labels {1..n} generating a transitive group: sigma_x rotates edges
around black vertices, sigma_y around white vertices, and the face
permutation is z = (sigma_x sigma_y)^-1. Everything here is a function of
that pair: passports, genus, the monodromy (cartographic) group, regular
covers, quotients, isomorphism testing, a canonical form, and passport
enumeration.
"""

from __future__ import annotations

import itertools
import struct
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

from dessins import _kernel as K
from dessins.errors import CapExceededError, DessinsError
from dessins.group import PermGroup, point_orbits
from dessins.perm import CycleType, Permutation, compose

DEFAULT_COVER_CAP = 10**6
DEFAULT_ENUM_CAP_DEGREE = 8


class NotTransitiveError(DessinsError):
    """The pair does not act transitively; ``orbits`` is the orbit partition."""

    def __init__(self, orbits: list[list[int]]):
        super().__init__(f"permutation pair is not transitive; orbits: {orbits}")
        self.orbits = orbits


class Passport(NamedTuple):
    """Cycle types of sigma_x, sigma_y and z = (sigma_x sigma_y)^-1."""

    x_type: CycleType
    y_type: CycleType
    z_type: CycleType

    @property
    def degree(self) -> int:
        return self.x_type.degree

    def __str__(self) -> str:
        return f"{self.x_type} | {self.y_type} | {self.z_type}"


class RegularType(NamedTuple):
    """Orders (|sigma_x|, |sigma_y|, |sigma_x sigma_y|) of a regular dessin."""

    p: int
    q: int
    r: int

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.r})"


class Dessin:
    """A transitive pair of permutations on the edge set {1..n}."""

    __slots__ = ("sigma_x", "sigma_y", "name", "_group")

    def __init__(self, sigma_x: Permutation, sigma_y: Permutation, name: str | None = None):
        if sigma_x.degree != sigma_y.degree:
            raise ValueError("sigma_x and sigma_y must have equal degree")
        orbits = point_orbits([sigma_x, sigma_y], sigma_x.degree)
        if len(orbits) != 1:
            raise NotTransitiveError(orbits)
        object.__setattr__(self, "sigma_x", sigma_x)
        object.__setattr__(self, "sigma_y", sigma_y)
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_group", None)

    @property
    def degree(self) -> int:
        return self.sigma_x.degree

    @property
    def sigma_z(self) -> Permutation:
        """Face permutation (sigma_x sigma_y)^-1."""
        return (self.sigma_x * self.sigma_y).inverse()

    def with_name(self, name: str) -> "Dessin":
        d = Dessin.__new__(Dessin)
        object.__setattr__(d, "sigma_x", self.sigma_x)
        object.__setattr__(d, "sigma_y", self.sigma_y)
        object.__setattr__(d, "name", name)
        object.__setattr__(d, "_group", self._group)
        return d

    def passport(self) -> Passport:
        product = self.sigma_x * self.sigma_y
        return Passport(self.sigma_x.cycle_type(), self.sigma_y.cycle_type(), product.cycle_type())

    def genus(self) -> int:
        """Genus from the orbit-count Euler characteristic.

        chi = c(sigma_x) + c(sigma_y) + c(sigma_x sigma_y) - n, which is
        always even for a permutation pair, and g = (2 - chi) / 2.
        """
        n = self.degree
        product = self.sigma_x * self.sigma_y
        chi = (
            len(self.sigma_x.cycle_type().parts)
            + len(self.sigma_y.cycle_type().parts)
            + len(product.cycle_type().parts)
            - n
        )
        assert chi % 2 == 0
        return (2 - chi) // 2

    def monodromy_group(self) -> PermGroup:
        if self._group is None:
            object.__setattr__(self, "_group", PermGroup([self.sigma_x, self.sigma_y]))
        return self._group

    def is_regular(self) -> bool:
        return self.monodromy_group().order() == self.degree

    def type_of_regular(self) -> RegularType:
        if not self.is_regular():
            raise DessinsError(
                f"dessin is not regular (degree {self.degree}, "
                f"monodromy order {self.monodromy_group().order()})"
            )
        return RegularType(
            self.sigma_x.order(), self.sigma_y.order(), (self.sigma_x * self.sigma_y).order()
        )

    def relabel(self, g: Permutation) -> "Dessin":
        """Conjugate both rotations by g (an isomorphic dessin)."""
        return Dessin(self.sigma_x.conjugate(g), self.sigma_y.conjugate(g), name=self.name)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Dessin)
            and self.sigma_x == other.sigma_x
            and self.sigma_y == other.sigma_y
        )

    def __hash__(self) -> int:
        return hash((self.sigma_x, self.sigma_y))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"Dessin({label and label + ', '}degree={self.degree}, x={self.sigma_x}, y={self.sigma_y})"


def new_dessin(sigma_x: Permutation, sigma_y: Permutation, name: str | None = None) -> Dessin:
    return Dessin(sigma_x, sigma_y, name)


class CoveringMap:
    """Edge map of a covering of dessins; validates equivariance on build.

    ``edge_map`` has length source.degree; entry i (0-based) is the 1-based
    image of source edge i+1. The map must be surjective and commute with
    both rotations.
    """

    __slots__ = ("source", "target", "edge_map")

    def __init__(self, source: Dessin, target: Dessin, edge_map: Sequence[int]):
        edge_map = tuple(edge_map)
        if len(edge_map) != source.degree:
            raise ValueError("edge map length must equal source degree")
        if set(edge_map) != set(range(1, target.degree + 1)):
            raise ValueError("edge map is not onto the target edge set")
        for sigma_s, sigma_t, gen in (
            (source.sigma_x, target.sigma_x, "x"),
            (source.sigma_y, target.sigma_y, "y"),
        ):
            for e in range(1, source.degree + 1):
                if edge_map[sigma_s(e) - 1] != sigma_t(edge_map[e - 1]):
                    raise ValueError(f"edge map is not equivariant for sigma_{gen} at edge {e}")
        self.source = source
        self.target = target
        self.edge_map = edge_map

    def __call__(self, edge: int) -> int:
        return self.edge_map[edge - 1]

    def __repr__(self) -> str:
        return f"CoveringMap(degree {self.source.degree} -> {self.target.degree})"


def regular_cover(d: Dessin, cap: int = DEFAULT_COVER_CAP) -> Dessin:
    """The regular dessin whose edges are the monodromy group elements.

    Edges are the group elements in lexicographic order, with x and y
    acting by right multiplication; the map "element g maps to the image
    of edge 1 under g" is then a covering onto the base dessin.
    """
    return regular_cover_with_map(d, cap)[0]


def regular_cover_with_map(d: Dessin, cap: int = DEFAULT_COVER_CAP) -> tuple[Dessin, CoveringMap]:
    group = d.monodromy_group()
    order = group.order()
    if order > cap:
        raise CapExceededError(f"monodromy group order {order} exceeds cap {cap}", order)
    elements = group.elements(cap)
    index = {e.images: i for i, e in enumerate(elements)}
    raw_x = d.sigma_x.images
    raw_y = d.sigma_y.images
    cover_x = Permutation._raw(tuple(index[K.compose(e.images, raw_x)] for e in elements))
    cover_y = Permutation._raw(tuple(index[K.compose(e.images, raw_y)] for e in elements))
    name = f"{d.name}~" if d.name else None
    cover = Dessin(cover_x, cover_y, name=name)
    edge_map = tuple(e.images[0] + 1 for e in elements)
    return cover, CoveringMap(cover, d, edge_map)


def isomorphic(d1: Dessin, d2: Dessin) -> Optional[tuple[int, ...]]:
    """An edge bijection intertwining both rotations, or None.

    The bijection is returned as a tuple whose i-th entry (0-based) is the
    1-based image of edge i+1 of d1 in d2. Edge 1 of d1 is tried against
    every edge of d2; transitivity makes each extension unique.
    """
    if d1.degree != d2.degree:
        return None
    n = d1.degree
    x1, y1 = d1.sigma_x.images, d1.sigma_y.images
    x2, y2 = d2.sigma_x.images, d2.sigma_y.images
    gens1 = (x1, K.inverse(x1), y1, K.inverse(y1))
    gens2 = (x2, K.inverse(x2), y2, K.inverse(y2))
    for target in range(n):
        mapping = _propagate(n, gens1, gens2, target)
        if mapping is None:
            continue
        if all(mapping[x1[a]] == x2[mapping[a]] and mapping[y1[a]] == y2[mapping[a]] for a in range(n)):
            return tuple(m + 1 for m in mapping)
    return None


def _propagate(n, gens1, gens2, target):
    """Extend edge-1 -> target equivariantly; None on collision."""
    mapping = [-1] * n
    used = [False] * n
    mapping[0] = target
    used[target] = True
    queue = [0]
    head = 0
    while head < len(queue):
        a = queue[head]
        head += 1
        for g1, g2 in zip(gens1, gens2):
            b = g1[a]
            image = g2[mapping[a]]
            if mapping[b] == -1:
                if used[image]:
                    return None
                mapping[b] = image
                used[image] = True
                queue.append(b)
            elif mapping[b] != image:
                return None
    return mapping


def automorphisms(d: Dessin) -> list[tuple[int, ...]]:
    """All self-isomorphisms, ordered by the image of edge 1."""
    n = d.degree
    x, y = d.sigma_x.images, d.sigma_y.images
    gens = (x, K.inverse(x), y, K.inverse(y))
    out = []
    for target in range(n):
        mapping = _propagate(n, gens, gens, target)
        if mapping is None:
            continue
        if all(mapping[x[a]] == x[mapping[a]] and mapping[y[a]] == y[mapping[a]] for a in range(n)):
            out.append(tuple(m + 1 for m in mapping))
    return out


def quotient_by_partition(d: Dessin, blocks: Iterable[Iterable[int]]) -> Dessin:
    return quotient_with_map(d, blocks)[0]


def quotient_with_map(d: Dessin, blocks: Iterable[Iterable[int]]) -> tuple[Dessin, CoveringMap]:
    """Induced action on an invariant partition of the edge set (1-based blocks).

    Blocks are renumbered 1..k by their smallest member.
    """
    n = d.degree
    block_sets = [frozenset(b) for b in blocks]
    if not block_sets:
        raise ValueError("empty partition")
    all_points = sorted(pt for b in block_sets for pt in b)
    if all_points != list(range(1, n + 1)):
        raise ValueError("blocks do not partition {1..degree}")
    block_sets.sort(key=min)
    block_of = {}
    for i, b in enumerate(block_sets):
        for pt in b:
            block_of[pt] = i
    images = {"x": d.sigma_x, "y": d.sigma_y}
    induced = {}
    for gen, sigma in images.items():
        imgs = []
        for i, b in enumerate(block_sets):
            image = frozenset(sigma(pt) for pt in b)
            j = block_of[min(image)]
            if image != block_sets[j]:
                raise DessinsError(
                    f"partition is not invariant: sigma_{gen} maps block {sorted(b)} "
                    f"to {sorted(image)}, which is not a block"
                )
            imgs.append(j)
        induced[gen] = Permutation(tuple(imgs))
    quotient = Dessin(induced["x"], induced["y"], name=f"{d.name}/~" if d.name else None)
    edge_map = tuple(block_of[e] + 1 for e in range(1, n + 1))
    return quotient, CoveringMap(d, quotient, edge_map)


def quotient_by_central(d: Dessin, central: Sequence[Permutation]) -> Dessin:
    """Quotient of a regular dessin by a central subgroup of its monodromy group.

    ``central`` must be closed under multiplication and commute with both
    rotations; the blocks are its orbits on the edge set.
    """
    if not d.is_regular():
        raise DessinsError("central quotients are defined for regular dessins only")
    zset = set(central)
    if not zset:
        raise ValueError("empty central subgroup")
    for z in central:
        if z.degree != d.degree:
            raise ValueError("central element degree mismatch")
        if not (z.commutes_with(d.sigma_x) and z.commutes_with(d.sigma_y)):
            raise DessinsError(f"element {z} is not central in the monodromy group")
    for a in central:
        for b in central:
            if a * b not in zset:
                raise DessinsError(f"central set is not closed under multiplication: {a} * {b}")
    blocks = point_orbits(list(central), d.degree)
    return quotient_by_partition(d, blocks)


def euler_rh(degree: int, regular_type: tuple[int, int, int]) -> int:
    """Euler characteristic N(1/p + 1/q + 1/r - 1) of a regular dessin.

    Raises if the value is not an integer (an impossible type for that
    degree); the genus is (2 - chi) / 2.
    """
    p, q, r = regular_type
    chi = degree * (Fraction(1, p) + Fraction(1, q) + Fraction(1, r) - 1)
    if chi.denominator != 1:
        raise DessinsError(f"non-integral Euler characteristic {chi} for degree {degree}, type {regular_type}")
    return int(chi)


def genus_from_type(degree: int, regular_type: tuple[int, int, int]) -> int:
    chi = euler_rh(degree, regular_type)
    if chi % 2 != 0:
        raise DessinsError(f"odd Euler characteristic {chi} for degree {degree}, type {regular_type}")
    return (2 - chi) // 2


def canonical_form(d: Dessin) -> bytes:
    """Isomorphism-invariant byte encoding.

    Edges are relabeled breadth-first from each base edge, exploring
    neighbors in the order x, x^-1, y, y^-1; the lexicographically least
    relabeled pair wins. Two dessins get the same bytes iff isomorphic.
    """
    n = d.degree
    x, y = d.sigma_x.images, d.sigma_y.images
    gens = (x, K.inverse(x), y, K.inverse(y))
    best = None
    for start in range(n):
        pos = [-1] * n
        order = [start]
        pos[start] = 0
        head = 0
        while head < len(order):
            a = order[head]
            head += 1
            for g in gens:
                b = g[a]
                if pos[b] == -1:
                    pos[b] = len(order)
                    order.append(b)
        cand = (
            tuple(pos[x[a]] for a in order),
            tuple(pos[y[a]] for a in order),
        )
        if best is None or cand < best:
            best = cand
    return struct.pack(">I", n) + b"".join(struct.pack(">I", v) for pair in best for v in pair)


def canonical_permutation_of_type(cycle_type: CycleType) -> Permutation:
    """The permutation of a given type whose cycles use consecutive points."""
    cycles = []
    next_point = 1
    for part in cycle_type.parts:
        cycles.append(tuple(range(next_point, next_point + part)))
        next_point += part
    return Permutation.from_cycles([c for c in cycles if len(c) > 1], cycle_type.degree)


def permutations_of_type(cycle_type: CycleType):
    """All permutations of S_n with the given cycle type, in lex order."""
    n = cycle_type.degree
    for images in itertools.permutations(range(n)):
        p = Permutation._raw(images)
        if p.cycle_type() == cycle_type:
            yield p


def enumerate_by_passport(
    passport: Passport, cap_degree: int = DEFAULT_ENUM_CAP_DEGREE
) -> list[Dessin]:
    """All dessins with the given passport, one per isomorphism class.

    sigma_x is pinned to the canonical permutation of its type; sigma_y
    sweeps every permutation of its type; candidates are filtered by the
    z type and transitivity and deduplicated by canonical form. The result
    is sorted by canonical form, so the output is independent of sweep
    order.
    """
    n = passport.degree
    if passport.y_type.degree != n or passport.z_type.degree != n:
        raise ValueError("passport parts have inconsistent degrees")
    if n > cap_degree:
        raise CapExceededError(f"passport degree {n} exceeds cap {cap_degree}", n)
    sigma_x = canonical_permutation_of_type(passport.x_type)
    found: dict[bytes, Dessin] = {}
    for sigma_y in permutations_of_type(passport.y_type):
        if (sigma_x * sigma_y).cycle_type() != passport.z_type:
            continue
        if len(point_orbits([sigma_x, sigma_y], n)) != 1:
            continue
        d = Dessin(sigma_x, sigma_y)
        key = canonical_form(d)
        if key not in found:
            found[key] = d
    return [found[key] for key in sorted(found)]
