"""Freely reduced words over the indexed generators g1, g2, g3, ...

Words are immutable values; every operation returns a fresh word.  The
empty word is the group identity.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Letter:
    """A single generator occurrence: ``Letter(3, -1)`` is g3 inverse."""

    index: int
    sign: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> Letter:
        return Letter(self.index, -self.sign)


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters, not necessarily reduced."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def is_reduced(self) -> bool:
        ls = self.letters
        return all(not _cancels(ls[i], ls[i + 1]) for i in range(len(ls) - 1))

    def max_index(self) -> int:
        """Largest generator index appearing; 0 for the empty word."""
        return max((l.index for l in self.letters), default=0)


EMPTY = Word()


def _cancels(a: Letter, b: Letter) -> bool:
    return a.index == b.index and a.sign == -b.sign


def _require_reduced(w: Word) -> None:
    if not w.is_reduced():
        raise ValueError(f"word is not freely reduced: {w.letters}")


def gen(index: int, sign: int = 1) -> Word:
    """The one-letter word for a generator (or its inverse)."""
    return Word((Letter(index, sign),))


def word(*pairs: tuple[int, int]) -> Word:
    """Build a word from (index, sign) pairs."""
    return Word(tuple(Letter(i, s) for i, s in pairs))


def free_reduce(w: Word) -> Word:
    """The unique freely reduced form of ``w``.

    Single left-to-right stack scan: push each letter, pop when the top
    cancels the incoming one.  Free reduction is confluent, so the scan
    order does not matter.
    """
    out: list[Letter] = []
    for letter in w.letters:
        if out and _cancels(out[-1], letter):
            out.pop()
        else:
            out.append(letter)
    return Word(tuple(out))


def concat(u: Word, v: Word) -> Word:
    """Concatenation without reduction."""
    return Word(u.letters + v.letters)


def invert(w: Word) -> Word:
    """Reverse the letters and flip every sign."""
    return Word(tuple(l.inverse() for l in reversed(w.letters)))


def commutator(u: Word, v: Word) -> Word:
    """The word u v u^-1 v^-1 (unreduced)."""
    return concat(concat(u, v), concat(invert(u), invert(v)))


def multiply_reduced(u: Word, v: Word) -> Word:
    """Group product of two reduced words, returned reduced."""
    _require_reduced(u)
    _require_reduced(v)
    return free_reduce(concat(u, v))


def occurrence_count(w: Word, k: int) -> int:
    """How many letters of ``w`` use generator index ``k``, either sign."""
    if k < 1:
        raise ValueError(f"generator index must be >= 1, got {k}")
    return sum(1 for l in w.letters if l.index == k)


def exponent_sum(w: Word) -> int:
    """Sum of the letter signs (the image of ``w`` in the integers)."""
    return sum(l.sign for l in w.letters)


def project(w: Word, n: int) -> Word:
    """Delete every letter with index above ``n``, then reduce.

    ``n = 0`` deletes everything and returns the empty word.
    """
    _require_reduced(w)
    if n < 0:
        raise ValueError(f"projection level must be >= 0, got {n}")
    return free_reduce(Word(tuple(l for l in w.letters if l.index <= n)))
