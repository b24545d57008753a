"""Truncated elements of the inverse limit of the free groups F1 <- F2 <- ...

An element is stored as its levels w1, ..., wD, where wn lives in Fn and
projecting w(n+1) down one level recovers wn.  The toolkit never claims
full membership in the limit group image: every verdict here is exact
about the stored truncation only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .words import (
    EMPTY,
    Word,
    commutator,
    gen,
    multiply_reduced,
    occurrence_count,
    project,
)


class IndexTooLarge(ValueError):
    """Level n used a generator index above n."""

    def __init__(self, level: int, index: int):
        super().__init__(f"level {level} uses generator index {index} > {level}")
        self.level = level
        self.index = index


class IncoherentAt(ValueError):
    """Projecting level n+1 did not reproduce level n."""

    def __init__(self, level: int):
        super().__init__(f"projection of level {level + 1} does not equal level {level}")
        self.level = level


class DepthMismatch(ValueError):
    pass


class DepthTooSmall(ValueError):
    pass


@dataclass(frozen=True)
class TruncatedCoherentSequence:
    """Levels (w1, ..., wD); wn is reduced, uses indices <= n, and is the
    projection of w(n+1).  Validated on construction."""

    levels: tuple[Word, ...]

    def __post_init__(self):
        if not self.levels:
            raise ValueError("a coherent sequence needs at least one level")
        for n, w in enumerate(self.levels, start=1):
            if not w.is_reduced():
                raise ValueError(f"level {n} is not freely reduced")
            if w.max_index() > n:
                raise IndexTooLarge(n, w.max_index())
        for n in range(1, len(self.levels)):
            if project(self.levels[n], n) != self.levels[n - 1]:
                raise IncoherentAt(n)

    @property
    def depth(self) -> int:
        return len(self.levels)

    def level(self, n: int) -> Word:
        """1-based access: level(n) is wn."""
        if not 1 <= n <= self.depth:
            raise IndexError(f"level {n} out of range 1..{self.depth}")
        return self.levels[n - 1]


def validate_coherent(levels: Sequence[Word] | Iterable[Word]) -> TruncatedCoherentSequence:
    """Check the coherence invariants and return the validated sequence.

    Raises IndexTooLarge or IncoherentAt naming the first violated level.
    """
    return TruncatedCoherentSequence(tuple(levels))


def identity_sequence(depth: int) -> TruncatedCoherentSequence:
    return TruncatedCoherentSequence((EMPTY,) * depth)


def embed_word(w: Word, depth: int) -> TruncatedCoherentSequence:
    """The constant-tail sequence of a single reduced word.

    Level m is the projection of ``w`` to indices <= m, so from the word's
    own maximal index on, every level equals ``w``.
    """
    if depth < w.max_index():
        raise DepthTooSmall(
            f"depth {depth} is below the word's maximal index {w.max_index()}"
        )
    if depth < 1:
        raise DepthTooSmall("depth must be >= 1")
    return TruncatedCoherentSequence(tuple(project(w, m) for m in range(1, depth + 1)))


def seq_multiply(
    a: TruncatedCoherentSequence, b: TruncatedCoherentSequence
) -> TruncatedCoherentSequence:
    """Level-wise group product."""
    if a.depth != b.depth:
        raise DepthMismatch(f"depths differ: {a.depth} vs {b.depth}")
    return TruncatedCoherentSequence(
        tuple(multiply_reduced(x, y) for x, y in zip(a.levels, b.levels))
    )


def seq_invert(a: TruncatedCoherentSequence) -> TruncatedCoherentSequence:
    """Level-wise inverse."""
    from .words import invert

    return TruncatedCoherentSequence(tuple(invert(w) for w in a.levels))


def commutator_tower(depth: int) -> TruncatedCoherentSequence:
    """The stock non-stabilizing element: w1 empty, w(n+1) = wn * [g(n+1), g1].

    Every level is coherent, yet the g1 count grows by two at each level,
    so no truncation of this family ever stabilizes at index 1.
    """
    levels: list[Word] = [EMPTY]
    for n in range(2, depth + 1):
        levels.append(multiply_reduced(levels[-1], commutator(gen(n), gen(1))))
    return TruncatedCoherentSequence(tuple(levels[:depth]))


@dataclass(frozen=True)
class CountRow:
    """Occurrence counts of one generator index across the levels it can
    appear in, plus the start of the final constancy plateau if the row
    has settled within the truncation."""

    index: int
    first_level: int
    counts: tuple[int, ...]  # counts at levels first_level..depth
    witness: Optional[int]


@dataclass(frozen=True, eq=True)
class StabilizationReport:
    depth: int
    rows: tuple[CountRow, ...]  # one row per generator index 1..depth

    def row(self, k: int) -> CountRow:
        return self.rows[k - 1]


def stabilization_report(a: TruncatedCoherentSequence) -> StabilizationReport:
    """Per generator index, the count sequence across levels and the least
    level from which the counts are constant.

    Counts below level k are structurally zero (level words cannot use
    index k there), and those zeros take part in locating the plateau.  A
    row gets a witness only when its final value is corroborated: either
    the count did not change at the last step, or the row has a single
    observable level (k equals the depth).  This keeps the verdict exact
    about the truncation: a row that was still moving at the deepest level
    carries no stabilization evidence.
    """
    depth = a.depth
    rows = []
    for k in range(1, depth + 1):
        counts = tuple(occurrence_count(a.level(n), k) for n in range(k, depth + 1))
        full = (0,) * (k - 1) + counts
        final = full[-1]
        start = depth
        while start > 1 and full[start - 2] == final:
            start -= 1
        witness: Optional[int] = start
        if start == depth and k < depth:
            witness = None  # count changed at the very last level
        rows.append(CountRow(index=k, first_level=k, counts=counts, witness=witness))
    return StabilizationReport(depth=depth, rows=tuple(rows))


@dataclass(frozen=True)
class MembershipVerdict:
    """Truncation-exact verdict of the occurrence-count criterion.

    ``consistent-with-membership`` means every generator index has a
    constancy witness inside the truncation.  ``not-stabilized`` lists the
    indices whose counts were still changing at the deepest level.  Neither
    verdict decides membership for the untruncated element.
    """

    depth: int
    unstable: tuple[int, ...]
    witnesses: tuple[tuple[int, int], ...]  # (index, witness level) pairs

    @property
    def consistent(self) -> bool:
        return not self.unstable

    @property
    def kind(self) -> str:
        return "consistent-with-membership" if self.consistent else "not-stabilized"

    def witness_map(self) -> dict[int, int]:
        return dict(self.witnesses)


def in_image_up_to_depth(a: TruncatedCoherentSequence) -> MembershipVerdict:
    """Apply the eventual-constancy test to the stored truncation."""
    report = stabilization_report(a)
    unstable = tuple(row.index for row in report.rows if row.witness is None)
    witnesses = tuple(
        (row.index, row.witness) for row in report.rows if row.witness is not None
    )
    return MembershipVerdict(depth=a.depth, unstable=unstable, witnesses=witnesses)
