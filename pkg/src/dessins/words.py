"""Words in the free group on x and y.

Grammar (exact)::

    word := term+
    term := atom ('^' (int | atom))*
    atom := 'x' | 'y' | '(' word ')' | '[' word ',' word ']'

``a^n`` is the n-th power for integer n, ``a^b`` the conjugate b^-1 a b,
and ``[a, b]`` the commutator a^-1 b^-1 a b. Powers and conjugations chain
left to right, so ``(w)^x^2`` is ((w)^x)^2; write ``(w)^(x^2)`` to
conjugate by x^2. Conjugation binds tighter than juxtaposition:
``x^3y^2`` is (x^3)(y^2).

Words are stored freely reduced; no unreduced form is observable.
"""

from __future__ import annotations

from typing import Iterable

from dessins.errors import DessinsError
from dessins.perm import Permutation

X, Y = 0, 1
_NAMES = ("x", "y")


class WordParseError(DessinsError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _reduce(letters: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for g, e in letters:
        if e == 0:
            continue
        if out and out[-1][0] == g:
            s = out[-1][1] + e
            out.pop()
            if s:
                out.append((g, s))
        else:
            out.append((g, e))
    return tuple(out)


class Word:
    """Freely reduced word; letters are (generator, nonzero exponent) pairs."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[int, int]] = ()):
        object.__setattr__(self, "letters", _reduce(letters))

    @staticmethod
    def identity() -> "Word":
        return Word()

    @staticmethod
    def x() -> "Word":
        return Word(((X, 1),))

    @staticmethod
    def y() -> "Word":
        return Word(((Y, 1),))

    @staticmethod
    def generator(name: str) -> "Word":
        if name not in _NAMES:
            raise ValueError(f"unknown generator {name!r}")
        return Word(((_NAMES.index(name), 1),))

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word()
        for _ in range(n):
            out = out * self
        return out

    def conjugated_by(self, b: "Word") -> "Word":
        """a^b = b^-1 a b."""
        return b.inverse() * self * b

    def length(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def exponent_sum(self, generator: str) -> int:
        g = _NAMES.index(generator)
        return sum(e for gen, e in self.letters if gen == g)

    def evaluate(self, sigma_x: Permutation, sigma_y: Permutation) -> Permutation:
        """Image under the homomorphism x -> sigma_x, y -> sigma_y."""
        if sigma_x.degree != sigma_y.degree:
            raise ValueError("degree mismatch")
        images = (sigma_x, sigma_y)
        result = Permutation.identity(sigma_x.degree)
        for g, e in self.letters:
            result = result * (images[g] ** e)
        return result

    def substitute(self, image_x: "Word", image_y: "Word") -> "Word":
        """Image under the endomorphism x -> image_x, y -> image_y."""
        images = (image_x, image_y)
        out = Word()
        for g, e in self.letters:
            out = out * (images[g] ** e)
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(
            _NAMES[g] + (f"^{e}" if e != 1 else "") for g, e in self.letters
        )

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def commutator(a: Word, b: Word) -> Word:
    """[a, b] = a^-1 b^-1 a b."""
    return a.inverse() * b.inverse() * a * b


def evaluate(w: Word, sigma_x: Permutation, sigma_y: Permutation) -> Permutation:
    return w.evaluate(sigma_x, sigma_y)


def substitute(w: Word, image_x: Word, image_y: Word) -> Word:
    return w.substitute(image_x, image_y)


def exponent_sum(w: Word, generator: str) -> int:
    return w.exponent_sum(generator)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> WordParseError:
        return WordParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str | None:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            raise self.error("expected an integer")
        value = int(self.text[start : self.pos])
        if value == 0:
            self.pos = start
            raise self.error("zero exponent")
        return value

    def parse_word(self) -> Word:
        terms = [self.parse_term()]
        while self.peek() in ("x", "y", "(", "["):
            terms.append(self.parse_term())
        out = Word()
        for t in terms:
            out = out * t
        return out

    def parse_term(self) -> Word:
        w = self.parse_atom()
        while self.peek() == "^":
            self.pos += 1
            ch = self.peek()
            if ch is None:
                raise self.error("dangling '^'")
            if ch in ("x", "y", "(", "["):
                w = w.conjugated_by(self.parse_atom())
            else:
                w = w ** self.parse_int()
        return w

    def parse_atom(self) -> Word:
        ch = self.peek()
        if ch == "x":
            self.pos += 1
            return Word.x()
        if ch == "y":
            self.pos += 1
            return Word.y()
        if ch == "(":
            self.pos += 1
            w = self.parse_word()
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            a = self.parse_word()
            self.expect(",")
            b = self.parse_word()
            self.expect("]")
            return commutator(a, b)
        raise self.error("expected 'x', 'y', '(' or '['")


def parse_word(text: str) -> Word:
    parser = _Parser(text)
    w = parser.parse_word()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input")
    return w


# The distinguishing word for the bundled pair of conjugate degree-12
# dessins: it evaluates to the identity on one and to (4,10)(6,12) on the
# other, certifying that their regular covers are distinct.
BUNDLED_WITNESS = "x^3y^2(x^3y^2)^x(x^3y^2)^(x^2)"


def bundled_witness() -> Word:
    return parse_word(BUNDLED_WITNESS)
