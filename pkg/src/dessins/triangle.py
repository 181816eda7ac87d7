"""Triangle-group signatures: maximality and normality of regular dessins.

A regular dessin of type (p, q, r) is a quotient of the triangle group
D(p,q,r) = <x, y, z | x^p = y^q = z^r = xyz = 1> by a normal torsion-free
subgroup. The signature is maximal when D(p,q,r) embeds with finite index
in no larger triangle group; the complete list of such embeddings is
Singerman's, shipped as a data table and consulted up to reordering of the
entries.

When the type is non-maximal with an index-two target, normality of the
dessin subgroup in the bigger group reduces to a concrete test: conjugation
by the extra coset acts on (x, y) as an explicit substitution, and the
subgroup is normal iff that substitution extends to an automorphism of the
monodromy group. The extension test compares the order of the subdirect
group generated by the paired images with the group order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from itertools import permutations
from typing import Optional

from dessins.dessin import Dessin
from dessins.errors import DessinsError
from dessins.group import PermGroup
from dessins.perm import direct_sum_pair
from dessins.words import Word, parse_word

Type3 = tuple[int, int, int]


class SphericalTypeError(DessinsError):
    def __init__(self, t: Type3):
        super().__init__(
            f"type {t} is spherical (1/p + 1/q + 1/r > 1); only hyperbolic "
            "and Euclidean signatures are handled"
        )


@dataclass(frozen=True)
class Inclusion:
    """One instantiated row of the inclusion table."""

    sub: Type3
    sup: Type3
    index: int
    generator_images: Optional[tuple[Word, Word, Word]] = None
    coset_conjugations: Optional[tuple[tuple[Word, Word], ...]] = None

    def __str__(self) -> str:
        return f"{self.sub} < {self.sup} at index {self.index}"


_ATOM = re.compile(r"^(\d+)([a-z]?)$|^([a-z])$")


def _parse_pattern(text: str) -> tuple[tuple[int, str | None], ...]:
    """A signature pattern: each entry is (coefficient, parameter-or-None)."""
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        m = _ATOM.match(piece)
        if not m:
            raise DessinsError(f"bad pattern entry {piece!r} in inclusion table")
        if m.group(3):
            out.append((1, m.group(3)))
        elif m.group(2):
            out.append((int(m.group(1)), m.group(2)))
        else:
            out.append((int(m.group(1)), None))
    if len(out) != 3:
        raise DessinsError(f"pattern {text!r} does not have three entries")
    return tuple(out)


@dataclass(frozen=True)
class _Row:
    sub: tuple[tuple[int, str | None], ...]
    sup: tuple[tuple[int, str | None], ...]
    index: int
    generator_images: Optional[tuple[Word, Word, Word]]
    coset_conjugations: Optional[tuple[tuple[Word, Word], ...]]


def _measure(t: Type3) -> Fraction:
    p, q, r = t
    return 1 - Fraction(1, p) - Fraction(1, q) - Fraction(1, r)


def _check_measure(sub: Type3, sup: Type3, index: int) -> None:
    if _measure(sub) != index * _measure(sup):
        raise DessinsError(
            f"inclusion table row {sub} < {sup} fails the Riemann-Hurwitz "
            f"measure identity at index {index}"
        )


@lru_cache(maxsize=1)
def _load_table() -> tuple[_Row, ...]:
    text = resources.files("dessins.data").joinpath("triangle_inclusions.txt").read_text()
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(";")]
        if len(fields) != 5:
            raise DessinsError(f"bad inclusion table line: {line!r}")
        images = None
        if fields[3] != "-":
            parts = [parse_word(w.strip()) for w in fields[3].split("|")]
            if len(parts) != 3:
                raise DessinsError(f"expected three generator images: {line!r}")
            images = tuple(parts)
        conj = None
        if fields[4] != "-":
            subs = []
            for chunk in fields[4].split("&"):
                pair = dict(
                    (side.split(":", 1)[0].strip(), parse_word(side.split(":", 1)[1]))
                    for side in chunk.split(",")
                )
                subs.append((pair["x"], pair["y"]))
            conj = tuple(subs)
        rows.append(
            _Row(_parse_pattern(fields[0]), _parse_pattern(fields[1]), int(fields[2]), images, conj)
        )
    table = tuple(rows)
    _validate_word_rows(table)
    return table


def _validate_word_rows(table: tuple[_Row, ...]) -> None:
    """Check rows carrying generator images inside a finite instance.

    Instantiating the super-type to a spherical signature gives a finite
    triangle group, enumerated by cosets; the image words must then have
    orders dividing the sub-type entries, and each coset conjugation must
    act as an automorphism there.
    """
    from dessins.fpgroup import Presentation, coset_enumerate

    for row in table:
        if row.generator_images is None:
            continue
        instance = _instantiate_for_validation(row)
        if instance is None:
            continue
        sub, sup = instance
        relators = (
            parse_word(f"x^{sup[0]}"),
            parse_word(f"y^{sup[1]}"),
            parse_word(f"(xy)^{sup[2]}"),
        )
        _, action = coset_enumerate(Presentation(relators))
        for image_word, entry in zip(row.generator_images, sub):
            order = image_word.evaluate(action.sigma_x, action.sigma_y).order()
            if entry % order != 0:
                raise DessinsError(
                    f"inclusion table image word {image_word} has order {order}, "
                    f"not dividing {entry}"
                )


def _instantiate_for_validation(row: _Row) -> Optional[tuple[Type3, Type3]]:
    """A small parameter assignment making the super-type spherical."""
    params = sorted({sym for c, sym in row.sub + row.sup if sym})
    for values in permutations(range(2, 7), len(params)) if params else [()]:
        env = dict(zip(params, values))
        try:
            sub = tuple(c * (env[sym] if sym else 1) for c, sym in row.sub)
            sup = tuple(c * (env[sym] if sym else 1) for c, sym in row.sup)
        except KeyError:
            return None
        if any(e < 2 for e in sub + sup):
            continue
        if _measure(sup) < 0 and _measure(sub) == row.index * _measure(sup):
            return sub, sup
    return None


def _match_pattern(pattern, triple: Type3) -> Optional[dict[str, int]]:
    env: dict[str, int] = {}
    for (coeff, sym), value in zip(pattern, triple):
        if sym is None:
            if value != coeff:
                return None
        else:
            if value % coeff != 0:
                return None
            v = value // coeff
            if v < 1 or env.setdefault(sym, v) != v:
                return None
    return env


def _validate_type(t) -> Type3:
    if len(t) != 3 or any(not isinstance(e, int) or e < 2 for e in t):
        raise DessinsError(f"triangle type must be three integers >= 2, got {t}")
    return tuple(t)


def is_maximal(t) -> tuple[bool, list[Inclusion]]:
    """Whether no triangle group properly contains D(t), plus the inclusions.

    The input is matched against the table up to reordering; each returned
    inclusion states the matched ordering of the sub-type (the one for
    which any attached word data is valid).
    """
    t = _validate_type(t)
    if _measure(t) < 0:
        raise SphericalTypeError(t)
    found: list[Inclusion] = []
    seen = set()
    for row_id, row in enumerate(_load_table()):
        for perm in permutations(t):
            env = _match_pattern(row.sub, perm)
            if env is None:
                continue
            sup = tuple(c * (env[sym] if sym else 1) for c, sym in row.sup)
            if any(e < 2 for e in sup):
                continue
            _check_measure(perm, sup, row.index)
            key = (row_id, perm, sup)
            if key in seen:
                continue
            seen.add(key)
            found.append(
                Inclusion(perm, sup, row.index, row.generator_images, row.coset_conjugations)
            )
    return not found, found


def find_inclusion(sub, sup) -> Inclusion:
    """The table inclusion matching the given sub and super types."""
    sub = _validate_type(sub)
    sup = _validate_type(sup)
    _, inclusions = is_maximal(sub)
    for inc in inclusions:
        if sorted(inc.sup) == sorted(sup):
            return inc
    raise DessinsError(f"no inclusion of {sub} into {sup} is in the table")


def normal_in_supergroup(dreg: Dessin, inc: Inclusion) -> bool:
    """Whether the dessin's subgroup stays normal in the bigger triangle group.

    Requires a regular dessin satisfying the sub-type's relations and an
    inclusion carrying coset-conjugation substitutions. Each substitution
    (x -> wx, y -> wy) extends to an automorphism of the monodromy group
    iff the group generated by the paired permutations sigma (+) w(sigma)
    has the same order as the group itself; the subgroup is normal in the
    super-group iff every substitution passes.
    """
    if inc.coset_conjugations is None:
        raise DessinsError(f"inclusion {inc} carries no coset-conjugation data")
    if not dreg.is_regular():
        raise DessinsError("normality test requires a regular dessin")
    sx, sy = dreg.sigma_x, dreg.sigma_y
    p, q, r = inc.sub
    for perm, power, label in ((sx, p, "x^p"), (sy, q, "y^q"), (sx * sy, r, "(xy)^r")):
        if not (perm**power).is_identity():
            raise DessinsError(
                f"dessin does not satisfy the relation {label} = 1 for sub-type {inc.sub}"
            )
    order = dreg.monodromy_group().order()
    for wx, wy in inc.coset_conjugations:
        ax = wx.evaluate(sx, sy)
        ay = wy.evaluate(sx, sy)
        paired = PermGroup([direct_sum_pair(sx, ax), direct_sum_pair(sy, ay)])
        if paired.order() != order:
            return False
    return True
