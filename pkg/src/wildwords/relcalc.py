"""Decidable equivalence relations over a point universe, and the free
group over such a relation.

Coset equality modulo the normal subgroup generated by x^-1 y (for related
x, y) is decided entirely through normal forms: delete the leftmost
adjacent pair of opposite signs with related points until none remains,
then compare length, signs, and pointwise relatedness.  The normal
subgroup itself is never materialized.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import gcd
from typing import Optional, Union


class UniverseMismatch(ValueError):
    pass


class NotNormal(ValueError):
    pass


class NoCanonicalRep(ValueError):
    pass


# ---------------------------------------------------------------------------
# Points


@dataclass(frozen=True)
class Atom:
    ident: str

    def __post_init__(self):
        if not self.ident:
            raise ValueError("atom id must be nonempty")


@dataclass(frozen=True)
class SeqPoint:
    """An eventually periodic binary sequence, stored as (prefix, period).

    Normalized on construction to the shortest prefix and the primitive
    period, so structural equality decides sequence equality.
    """

    prefix: str
    period: str

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        if any(b not in "01" for b in self.prefix + self.period):
            raise ValueError("prefix and period must be binary strings")
        prefix, period = _normalize_eventually_periodic(self.prefix, self.period)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def bit(self, i: int) -> int:
        if i < len(self.prefix):
            return int(self.prefix[i])
        return int(self.period[(i - len(self.prefix)) % len(self.period)])


def _normalize_eventually_periodic(prefix: str, period: str) -> tuple[str, str]:
    # primitive period: the shortest block whose repetition gives the period
    n = len(period)
    for d in range(1, n + 1):
        if n % d == 0 and period == period[:d] * (n // d):
            period = period[:d]
            break
    # absorb a prefix tail that already follows the cycle
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = period[-1] + period[:-1]
    return prefix, period


Point = Union[Atom, SeqPoint]


def point_to_text(x: Point) -> str:
    if isinstance(x, Atom):
        return f"'{x.ident}'"
    return f"seq({x.prefix},{x.period})"


# ---------------------------------------------------------------------------
# Relations


class EquivRelation:
    """A decidable equivalence predicate over a declared point universe."""

    variant: str = "abstract"

    def check_point(self, x: Point) -> None:
        raise NotImplementedError

    def related(self, x: Point, y: Point) -> bool:
        raise NotImplementedError

    def representative(self, x: Point) -> Point:
        raise NotImplementedError


@dataclass(frozen=True)
class IdentityRelation(EquivRelation):
    """Equality of points; every point belongs to the universe."""

    variant = "identity"

    def check_point(self, x: Point) -> None:
        if not isinstance(x, (Atom, SeqPoint)):
            raise UniverseMismatch(f"not a point: {x!r}")

    def related(self, x: Point, y: Point) -> bool:
        self.check_point(x)
        self.check_point(y)
        return x == y

    def representative(self, x: Point) -> Point:
        self.check_point(x)
        return x


@dataclass(frozen=True)
class FinitePartition(EquivRelation):
    """Finitely many disjoint blocks of atoms; related = same block."""

    blocks: tuple[frozenset[str], ...]
    _block_of: dict = field(default=None, compare=False, repr=False)

    variant = "finite-partition"

    def __post_init__(self):
        block_of: dict[str, int] = {}
        for i, block in enumerate(self.blocks):
            if not block:
                raise ValueError("partition blocks must be nonempty")
            for ident in block:
                if ident in block_of:
                    raise ValueError(f"atom {ident!r} appears in two blocks")
                block_of[ident] = i
        object.__setattr__(self, "_block_of", block_of)

    def check_point(self, x: Point) -> None:
        if not isinstance(x, Atom) or x.ident not in self._block_of:
            raise UniverseMismatch(f"point {x!r} is outside the partition universe")

    def related(self, x: Point, y: Point) -> bool:
        self.check_point(x)
        self.check_point(y)
        return self._block_of[x.ident] == self._block_of[y.ident]

    def representative(self, x: Point) -> Point:
        self.check_point(x)
        return Atom(min(self.blocks[self._block_of[x.ident]]))


@dataclass(frozen=True)
class EventualAgreement(EquivRelation):
    """Eventual pointwise agreement of eventually periodic binary
    sequences.  Decided by comparing the tails beyond both prefixes over
    one least common multiple of the periods."""

    variant = "e0"

    def check_point(self, x: Point) -> None:
        if not isinstance(x, SeqPoint):
            raise UniverseMismatch(f"point {x!r} is not a binary sequence")

    def related(self, x: Point, y: Point) -> bool:
        self.check_point(x)
        self.check_point(y)
        start = max(len(x.prefix), len(y.prefix))
        window = len(x.period) * len(y.period) // gcd(len(x.period), len(y.period))
        return all(x.bit(i) == y.bit(i) for i in range(start, start + window))

    def representative(self, x: Point) -> Point:
        raise NoCanonicalRep(
            "eventual-agreement classes have no computable canonical member"
        )


def full_relation(idents) -> FinitePartition:
    """All given atoms related: the one-block partition."""
    return FinitePartition((frozenset(idents),))


def e_related(relation: EquivRelation, x: Point, y: Point) -> bool:
    """Decide x related-to y, checking both points against the universe."""
    return relation.related(x, y)


def relation_to_json(relation: EquivRelation) -> dict:
    if isinstance(relation, FinitePartition):
        return {
            "variant": "finite-partition",
            "blocks": [sorted(block) for block in relation.blocks],
        }
    if isinstance(relation, IdentityRelation):
        return {"variant": "identity"}
    if isinstance(relation, EventualAgreement):
        return {"variant": "e0"}
    raise ValueError(f"unknown relation {relation!r}")


def relation_from_json(doc: Union[str, dict]) -> EquivRelation:
    data = json.loads(doc) if isinstance(doc, str) else doc
    variant = data.get("variant")
    if variant == "finite-partition":
        return FinitePartition(tuple(frozenset(block) for block in data["blocks"]))
    if variant == "identity":
        return IdentityRelation()
    if variant == "e0":
        return EventualAgreement()
    raise ValueError(f"unknown relation variant {variant!r}")


# ---------------------------------------------------------------------------
# Words over points


@dataclass(frozen=True)
class XLetter:
    point: Point
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign}")

    def inverse(self) -> XLetter:
        return XLetter(self.point, -self.sign)


@dataclass(frozen=True)
class XWord:
    letters: tuple[XLetter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)


XEMPTY = XWord()


def xword(*pairs: tuple[Point, int]) -> XWord:
    return XWord(tuple(XLetter(p, s) for p, s in pairs))


def atom_word(text: str) -> XWord:
    """Convenience: 'a b~ c' builds a word of positive/inverted atoms."""
    letters = []
    for chunk in text.split():
        if chunk.endswith("~"):
            letters.append(XLetter(Atom(chunk[:-1]), -1))
        else:
            letters.append(XLetter(Atom(chunk), 1))
    return XWord(tuple(letters))


def embed_point(x: Point) -> XWord:
    """The length-one positive word on a point."""
    return XWord((XLetter(x, 1),))


def fx_invert(u: XWord) -> XWord:
    return XWord(tuple(l.inverse() for l in reversed(u.letters)))


def fx_multiply(u: XWord, v: XWord) -> XWord:
    """Concatenate and cancel only exactly equal adjacent inverse pairs.

    Exact cancellation is point equality, not relatedness: the ambient
    group is free on the points themselves.
    """
    out = list(u.letters)
    for letter in v.letters:
        if out and out[-1].point == letter.point and out[-1].sign == -letter.sign:
            out.pop()
        else:
            out.append(letter)
    return XWord(tuple(out))


def _check_word(relation: EquivRelation, w: XWord) -> None:
    for letter in w.letters:
        relation.check_point(letter.point)


def _deletable(relation: EquivRelation, a: XLetter, b: XLetter) -> bool:
    return a.sign == -b.sign and relation.related(a.point, b.point)


def is_normal(relation: EquivRelation, w: XWord) -> bool:
    """No adjacent opposite-sign pair of related points."""
    ls = w.letters
    return all(not _deletable(relation, ls[i], ls[i + 1]) for i in range(len(ls) - 1))


def e_normal_form(relation: EquivRelation, w: XWord) -> XWord:
    """Delete the leftmost cancelling pair, repeat until none remains."""
    _check_word(relation, w)
    letters = list(w.letters)
    i = 0
    while i < len(letters) - 1:
        if _deletable(relation, letters[i], letters[i + 1]):
            del letters[i : i + 2]
            i = max(i - 1, 0)
        else:
            i += 1
    return XWord(tuple(letters))


def _pointwise_equal(relation: EquivRelation, u: XWord, v: XWord) -> bool:
    if len(u) != len(v):
        return False
    return all(
        a.sign == b.sign and relation.related(a.point, b.point)
        for a, b in zip(u.letters, v.letters)
    )


def fe_equivalent(relation: EquivRelation, u: XWord, v: XWord) -> bool:
    """Coset equality modulo the relation: normal forms must have the same
    length, identical signs, and pointwise related points."""
    _check_word(relation, u)
    _check_word(relation, v)
    return _pointwise_equal(
        relation, e_normal_form(relation, u), e_normal_form(relation, v)
    )


def product_view_equal(relation: EquivRelation, u: XWord, v: XWord) -> bool:
    """Equality in the level-wise product view of normal words: same
    length, and letterwise (related point, equal sign).

    This is the independent definition that must agree with fe_equivalent
    on normal forms; inputs that are not normal are rejected.
    """
    _check_word(relation, u)
    _check_word(relation, v)
    for w in (u, v):
        if not is_normal(relation, w):
            raise NotNormal(f"word is not in normal form: {w}")
    return _pointwise_equal(relation, u, v)


def quotient_word(relation: EquivRelation, w: XWord) -> XWord:
    """Normal form with each point replaced by its class representative.

    Two words are equivalent exactly when their quotient words are equal.
    Only relations with computable representatives support this
    (eventual-agreement does not).
    """
    nf = e_normal_form(relation, w)
    return XWord(
        tuple(XLetter(relation.representative(l.point), l.sign) for l in nf.letters)
    )
