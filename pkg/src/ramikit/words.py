"""Freely reduced words over a signed generator alphabet.

A letter is a pair ``(generator_index, sign)`` with sign +1 or -1.  A Word is
an immutable, freely reduced sequence of letters; the empty word is the
identity.  Multiplication, inversion and powers reduce eagerly, so every Word
in circulation is in normal form.
"""

from __future__ import annotations

from typing import Iterable, Iterator

Letter = tuple[int, int]


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for gen, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign!r}")
        if gen < 0:
            raise ValueError(f"generator index must be >= 0, got {gen!r}")
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return tuple(stack)


class Word:
    """A freely reduced word.  ``u * v`` concatenates and reduces, ``~u``
    inverts, ``u ** n`` is a power.  Equality and hashing are by letters."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()) -> None:
        if isinstance(letters, Word):
            self.letters: tuple[Letter, ...] = letters.letters
        else:
            self.letters = _reduce(letters)

    @staticmethod
    def gen(index: int, sign: int = 1) -> "Word":
        return Word(((index, sign),))

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else ~self
        out = Word()
        for _ in range(abs(n)):
            out = out * base
        return out

    def conj(self, g: "Word") -> "Word":
        """The conjugate ``g * self * g**-1``."""
        return g * self * ~g

    def max_generator(self) -> int:
        """Largest generator index used, or -1 for the identity."""
        return max((g for g, _ in self.letters), default=-1)

    def exponent_vector(self, n_generators: int) -> list[int]:
        """Exponent sums per generator (the abelianized image)."""
        vec = [0] * n_generators
        for g, s in self.letters:
            vec[g] += s
        return vec

    def __repr__(self) -> str:
        return f"Word({list(self.letters)!r})"


def free_reduce(letters: Iterable[Letter] | Word) -> Word:
    """Freely reduce a raw letter sequence (idempotent on Words)."""
    return Word(letters)


def cyclically_reduce(w: Word) -> Word:
    """Strip matching first/last letters until the word is cyclically reduced."""
    letters = list(w.letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] \
            and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    return Word(letters)
