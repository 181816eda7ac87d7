"""Bounded coset enumeration for quotients of the free group on x, y.

Given relators r_1, ..., r_k, enumerates the cosets of the normal closure
N = <<r_1, ..., r_k>> in F_2 by the HLT strategy (relator scanning with
row filling and coincidence processing, as in Holt, Eick & O'Brien,
"Handbook of Computational Group Theory", ch. 5). On completion the live
cosets carry a transitive action of x and y whose kernel is N, returned
as a dessin of degree equal to the index.

Enumeration is capped by the number of simultaneously live cosets; hitting
the cap raises a distinguishable error (the quotient may be infinite, or
the cap too small) carrying the high-water mark.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from dessins.dessin import Dessin
from dessins.errors import DessinsError
from dessins.perm import Permutation
from dessins.words import Word

DEFAULT_COSET_CAP = 10**5

# table columns: 0 = x, 1 = x^-1, 2 = y, 3 = y^-1; col ^ 1 inverts
_NCOLS = 4


class CosetCapExceededError(DessinsError):
    def __init__(self, cap: int, high_water: int):
        super().__init__(
            f"coset enumeration exceeded {cap} live cosets "
            f"(high-water mark {high_water}); the quotient may be infinite"
        )
        self.cap = cap
        self.high_water = high_water


@dataclass(frozen=True)
class Presentation:
    relators: tuple[Word, ...]
    cap: int = DEFAULT_COSET_CAP


def _word_to_cols(w: Word) -> list[int]:
    cols = []
    for g, e in w.letters:
        col = 2 * g + (0 if e > 0 else 1)
        cols.extend([col] * abs(e))
    return cols


class _Enumerator:
    def __init__(self, relators: list[list[int]], cap: int):
        self.relators = relators
        self.cap = cap
        self.table: list[list[int | None]] = [[None] * _NCOLS]
        self.p = [0]
        self.live = 1
        self.high_water = 1

    def rep(self, k: int) -> int:
        r = k
        while self.p[r] != r:
            r = self.p[r]
        while self.p[k] != r:
            self.p[k], k = r, self.p[k]
        return r

    def define(self, a: int, col: int) -> None:
        if self.live >= self.cap:
            raise CosetCapExceededError(self.cap, self.high_water)
        n = len(self.table)
        self.table.append([None] * _NCOLS)
        self.p.append(n)
        self.table[a][col] = n
        self.table[n][col ^ 1] = a
        self.live += 1
        self.high_water = max(self.high_water, self.live)

    def merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.p[hi] = lo
        self.live -= 1
        queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        head = 0
        while head < len(queue):
            e = queue[head]
            head += 1
            for col in range(_NCOLS):
                f = self.table[e][col]
                if f is None:
                    continue
                self.table[f][col ^ 1] = None
                mu, nu = self.rep(e), self.rep(f)
                if self.table[mu][col] is not None:
                    self.merge(self.table[mu][col], nu, queue)
                elif self.table[nu][col ^ 1] is not None:
                    self.merge(mu, self.table[nu][col ^ 1], queue)
                else:
                    self.table[mu][col] = nu
                    self.table[nu][col ^ 1] = mu

    def scan_and_fill(self, a: int, word: list[int]) -> None:
        f, i = a, 0
        b, j = a, len(word) - 1
        while True:
            while i <= j and self.table[f][word[i]] is not None:
                f = self.table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][word[j] ^ 1] is not None:
                b = self.table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                if f != b:
                    self.coincidence(f, b)
                return
            if j == i:
                self.table[f][word[i]] = b
                self.table[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def run(self) -> None:
        a = 0
        while a < len(self.table):
            if self.p[a] == a:
                for rel in self.relators:
                    self.scan_and_fill(a, rel)
                    if self.p[a] != a:
                        break
                if self.p[a] == a:
                    for col in range(_NCOLS):
                        if self.table[a][col] is None:
                            self.define(a, col)
            a += 1

    def action(self) -> tuple[Permutation, Permutation]:
        alive = [a for a in range(len(self.table)) if self.p[a] == a]
        renumber = {old: new for new, old in enumerate(alive)}
        imgs = []
        for col in (0, 2):
            imgs.append(
                tuple(renumber[self.rep(self.table[a][col])] for a in alive)
            )
        return Permutation(imgs[0]), Permutation(imgs[1])


def coset_enumerate(presentation: Presentation) -> tuple[int, Dessin]:
    """Index of the relators' normal closure and the induced coset action.

    The returned dessin is the action of x and y on the cosets (the regular
    representation of the quotient group); its kernel is the normal
    closure. The result is verified before returning: every relator acts
    trivially and the action is transitive of the stated degree.
    """
    if presentation.cap < 1:
        raise ValueError("cap must be >= 1")
    enum = _Enumerator([_word_to_cols(w) for w in presentation.relators], presentation.cap)
    enum.run()
    sigma_x, sigma_y = enum.action()
    action = Dessin(sigma_x, sigma_y)
    index = action.degree
    for w in presentation.relators:
        if not w.evaluate(sigma_x, sigma_y).is_identity():
            raise DessinsError(f"relator {w} does not act trivially; this is a bug")
    return index, action
