"""Galois-orbit distinctness at the combinatorial level.

Two dessins have the same regular cover exactly when their monodromy
homomorphisms have equal kernels in the free group on x, y. That is
decided without materializing covers: the diagonal (subdirect) group
K = <sigma_x1 (+) sigma_x2, sigma_y1 (+) sigma_y2> satisfies
|K| == |G1| == |G2| iff the kernels agree, since K projects onto each
factor with kernel measuring the mismatch.

When the kernels differ, a distinguishing word is recovered from a
word-tracked stabilizer chain of K whose base is forced to run through
one factor's points first: any strong generator found below that prefix
is the identity on one factor and not on the other, and the word that
produced it is the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from dessins import _kernel as K
from dessins.dessin import Dessin, genus_from_type
from dessins.errors import DessinsError
from dessins.group import PermGroup
from dessins.perm import Permutation, direct_sum_pair
from dessins.words import Word

DEFAULT_WITNESS_BUDGET = 10**5


class WitnessBudgetError(DessinsError):
    def __init__(self, budget: int):
        super().__init__(f"witness search exceeded budget of {budget} sift steps")
        self.budget = budget


def subdirect_group(d1: Dessin, d2: Dessin) -> PermGroup:
    """The group generated by the paired rotations acting on both edge sets."""
    return PermGroup(
        [direct_sum_pair(d1.sigma_x, d2.sigma_x), direct_sum_pair(d1.sigma_y, d2.sigma_y)]
    )


def kernels_equal(d1: Dessin, d2: Dessin) -> bool:
    order = subdirect_group(d1, d2).order()
    return order == d1.monodromy_group().order() == d2.monodromy_group().order()


class _TrackedLevel:
    __slots__ = ("point", "gens", "table", "pending", "head")

    def __init__(self, point: int, degree: int):
        identity = tuple(range(degree))
        self.point = point
        # gens entries are (raw permutation, word); table maps orbit point
        # to (rep, rep_inv, rep_word)
        self.gens: list[tuple[tuple[int, ...], Word]] = []
        self.table = {point: (identity, identity, Word())}
        self.pending: list[tuple[int, int]] = []
        self.head = 0


class _TrackedChain:
    """Stabilizer chain that remembers a word for every strong generator.

    The base starts with the prescribed points (in order, one level each)
    so the pointwise stabilizer of that prefix is exactly the chain below
    it; levels for further points are appended on demand.
    """

    def __init__(self, degree: int, prescribed: Sequence[int], budget: int):
        self.degree = degree
        self.identity = tuple(range(degree))
        self.levels = [_TrackedLevel(pt, degree) for pt in prescribed]
        self.prefix = len(self.levels)
        self.budget = budget
        self.steps = 0
        # (level index, raw, word) per strong generator, in discovery order
        self.strong: list[tuple[int, tuple[int, ...], Word]] = []

    def _charge(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise WitnessBudgetError(self.budget)

    def sift(self, raw: tuple[int, ...], word: Word, start: int = 0):
        self._charge()
        for idx in range(start, len(self.levels)):
            lvl = self.levels[idx]
            img = raw[lvl.point]
            if img == lvl.point:
                continue
            entry = lvl.table.get(img)
            if entry is None:
                return raw, word, idx
            raw = K.compose(raw, entry[1])
            word = word * entry[2].inverse()
        return raw, word, len(self.levels)

    def insert(self, raw: tuple[int, ...], word: Word) -> None:
        raw, word, idx = self.sift(raw, word)
        if raw != self.identity:
            self._register(idx, raw, word)
        self._drain()

    def _register(self, idx: int, raw: tuple[int, ...], word: Word) -> None:
        if idx == len(self.levels):
            point = min(i for i, j in enumerate(raw) if i != j)
            self.levels.append(_TrackedLevel(point, self.degree))
        self.strong.append((idx, raw, word))
        for m in range(idx + 1):
            self._extend(m, raw, word)

    def _extend(self, m: int, raw: tuple[int, ...], word: Word) -> None:
        lvl = self.levels[m]
        lvl.gens.append((raw, word))
        gi_new = len(lvl.gens) - 1
        frontier = []
        for a in list(lvl.table):
            lvl.pending.append((a, gi_new))
            b = raw[a]
            if b not in lvl.table:
                rep_a = lvl.table[a]
                rep = K.compose(rep_a[0], raw)
                lvl.table[b] = (rep, K.inverse(rep), rep_a[2] * word)
                frontier.append(b)
        head = 0
        while head < len(frontier):
            b = frontier[head]
            head += 1
            for gi, (graw, gword) in enumerate(lvl.gens):
                lvl.pending.append((b, gi))
                c = graw[b]
                if c not in lvl.table:
                    rep_b = lvl.table[b]
                    rep = K.compose(rep_b[0], graw)
                    lvl.table[c] = (rep, K.inverse(rep), rep_b[2] * gword)
                    frontier.append(c)

    def _drain(self) -> None:
        while True:
            for i in range(len(self.levels) - 1, -1, -1):
                lvl = self.levels[i]
                if lvl.head < len(lvl.pending):
                    break
            else:
                return
            a, gi = lvl.pending[lvl.head]
            lvl.head += 1
            graw, gword = lvl.gens[gi]
            b = graw[a]
            entry_a = lvl.table[a]
            entry_b = lvl.table[b]
            sg = K.compose3(entry_a[0], graw, entry_b[1])
            if sg == self.identity:
                self._charge()
                continue
            sg_word = entry_a[2] * gword * entry_b[2].inverse()
            residue, word, idx = self.sift(sg, sg_word, start=i + 1)
            if residue != self.identity:
                self._register(idx, residue, word)


def _one_sided_witness(d1: Dessin, d2: Dessin, budget: int) -> Optional[Word]:
    """A word trivial on d1 and nontrivial on d2, if one exists."""
    n1 = d1.degree
    degree = n1 + d2.degree
    chain = _TrackedChain(degree, range(n1), budget)
    chain.insert(direct_sum_pair(d1.sigma_x, d2.sigma_x).images, Word.x())
    chain.insert(direct_sum_pair(d1.sigma_y, d2.sigma_y).images, Word.y())
    for level_idx, raw, word in chain.strong:
        if level_idx >= chain.prefix:
            return word
    return None


def distinguishing_witness(
    d1: Dessin, d2: Dessin, budget: int = DEFAULT_WITNESS_BUDGET
) -> Optional[Word]:
    """A word separating the two monodromy kernels, or None if they agree.

    The result kills one dessin's monodromy and not the other's; it is
    re-verified by direct evaluation before being returned.
    """
    if kernels_equal(d1, d2):
        return None
    witness = _one_sided_witness(d1, d2, budget)
    if witness is None:
        witness = _one_sided_witness(d2, d1, budget)
    if witness is None:
        raise DessinsError("kernels differ but no witness was found; this is a bug")
    v1 = witness.evaluate(d1.sigma_x, d1.sigma_y)
    v2 = witness.evaluate(d2.sigma_x, d2.sigma_y)
    if v1.is_identity() == v2.is_identity():
        raise DessinsError("witness failed re-verification; this is a bug")
    return witness


@dataclass
class OrbitReport:
    """Pairwise isomorphism/kernel data for a list of dessins."""

    names: list[str]
    dessins: list[Dessin]
    passports: list[str]
    genera: list[int]
    monodromy_orders: list[int]
    cover_degrees: list[int]
    cover_genera: list[int]
    isomorphic_matrix: list[list[bool]]
    kernel_matrix: list[list[bool]]
    witnesses: dict[tuple[int, int], Word] = field(default_factory=dict)


def orbit_report(
    dessins: Sequence[Dessin],
    with_witnesses: bool = False,
    budget: int = DEFAULT_WITNESS_BUDGET,
) -> OrbitReport:
    from dessins.dessin import isomorphic  # local import to avoid a cycle

    if not dessins:
        raise ValueError("need at least one dessin")
    names = [d.name or f"dessin{i + 1}" for i, d in enumerate(dessins)]
    orders = [d.monodromy_group().order() for d in dessins]
    cover_genera = []
    for d in dessins:
        t = (d.sigma_x.order(), d.sigma_y.order(), (d.sigma_x * d.sigma_y).order())
        cover_genera.append(genus_from_type(d.monodromy_group().order(), t))
    k = len(dessins)
    iso = [[True] * k for _ in range(k)]
    ker = [[True] * k for _ in range(k)]
    witnesses: dict[tuple[int, int], Word] = {}
    for i in range(k):
        for j in range(i + 1, k):
            iso[i][j] = iso[j][i] = isomorphic(dessins[i], dessins[j]) is not None
            ker[i][j] = ker[j][i] = kernels_equal(dessins[i], dessins[j])
            if ker[i][j] and orders[i] != orders[j]:
                raise DessinsError("equal kernels with different monodromy orders; this is a bug")
            if with_witnesses and not ker[i][j]:
                w = distinguishing_witness(dessins[i], dessins[j], budget)
                if w is not None:
                    witnesses[(i, j)] = w
    return OrbitReport(
        names=names,
        dessins=list(dessins),
        passports=[str(d.passport()) for d in dessins],
        genera=[d.genus() for d in dessins],
        monodromy_orders=orders,
        cover_degrees=orders[:],
        cover_genera=cover_genera,
        isomorphic_matrix=iso,
        kernel_matrix=ker,
        witnesses=witnesses,
    )
