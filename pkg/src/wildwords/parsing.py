"""Textual word syntax shared by the library and the command line.

    g3          generator 3             'a'        atom point
    g3~ g3^-1   inverse                 seq(01,10) eventually periodic point
    u v, u*v    concatenation           [u,v]      commutator sugar
    (u)         grouping                e          the empty word

Inverse markers are postfix; ``^`` takes any nonzero integer exponent.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from . import earring
from .relcalc import Atom, Point, SeqPoint, XLetter, XWord, point_to_text
from .words import Letter, Word


class WordSyntaxError(ValueError):
    def __init__(self, offset: int, expected: str):
        super().__init__(f"at offset {offset}: expected {expected}")
        self.offset = offset
        self.expected = expected


# Flattened symbol: ("gen", index, sign) | ("atom", ident, sign) | ("seq", (pre, per), sign)
Symbol = tuple


@dataclass(frozen=True)
class WordExpr:
    """Parsed word expression, stored as its flattened letter sequence."""

    symbols: tuple[Symbol, ...]

    def is_generator_word(self) -> bool:
        return all(kind == "gen" for kind, _, _ in self.symbols)

    def is_point_word(self) -> bool:
        return all(kind in ("atom", "seq") for kind, _, _ in self.symbols)

    def to_word(self) -> Word:
        if not self.is_generator_word():
            raise ValueError("expression mixes point literals into a generator word")
        return Word(tuple(Letter(payload, sign) for _, payload, sign in self.symbols))

    def to_xword(self) -> XWord:
        letters = []
        for kind, payload, sign in self.symbols:
            if kind == "atom":
                letters.append(XLetter(Atom(payload), sign))
            elif kind == "seq":
                letters.append(XLetter(SeqPoint(*payload), sign))
            else:
                raise ValueError("expression mixes generators into a point word")
        return XWord(tuple(letters))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: str):
        raise WordSyntaxError(self.pos, expected)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n\r":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.error(f"'{ch}'")
        self.pos += 1

    def parse(self) -> tuple[Symbol, ...]:
        symbols = self.parse_sequence()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("end of input")
        return symbols

    def parse_sequence(self) -> tuple[Symbol, ...]:
        out: list[Symbol] = []
        first = True
        while True:
            self.skip_ws()
            ch = self.peek()
            if ch == "*":
                if first:
                    self.error("a word factor")
                self.pos += 1
                self.skip_ws()
                ch = self.peek()
            if not ch or ch in "),]":
                if first:
                    self.error("a word factor")
                return tuple(out)
            out.extend(self.parse_factor())
            first = False

    def parse_factor(self) -> tuple[Symbol, ...]:
        base = self.parse_primary()
        while True:
            self.skip_ws()
            if self.peek() == "~":
                self.pos += 1
                base = _invert(base)
            elif self.peek() == "^":
                self.pos += 1
                base = _power(base, self.parse_int())
            else:
                return base

    def parse_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if not self.peek().isdigit():
            self.error("an integer exponent")
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def parse_primary(self) -> tuple[Symbol, ...]:
        self.skip_ws()
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_sequence()
            self.skip_ws()
            self.expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            u = self.parse_sequence()
            self.skip_ws()
            self.expect(",")
            v = self.parse_sequence()
            self.skip_ws()
            self.expect("]")
            return u + v + _invert(u) + _invert(v)
        if ch == "'":
            return (self.parse_atom(),)
        if ch == "g":
            return (self.parse_generator(),)
        if ch == "s":
            return (self.parse_seq_point(),)
        if ch == "e":
            self.pos += 1
            return ()
        self.error("a generator, point literal, '(', '[', or 'e'")

    def parse_generator(self) -> Symbol:
        start = self.pos
        self.expect("g")
        if not self.peek().isdigit():
            self.error("a generator index")
        digits_start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        index = int(self.text[digits_start : self.pos])
        if index < 1:
            self.pos = start
            self.error("a generator index >= 1")
        return ("gen", index, 1)

    def parse_atom(self) -> Symbol:
        self.expect("'")
        start = self.pos
        while self.peek() and self.peek() != "'":
            self.pos += 1
        if self.peek() != "'":
            self.error("a closing quote")
        ident = self.text[start : self.pos]
        self.pos += 1
        if not ident:
            self.pos = start
            self.error("a nonempty atom id")
        return ("atom", ident, 1)

    def parse_seq_point(self) -> Symbol:
        for ch in "seq(":
            self.expect(ch)
        prefix = self.parse_bits(allow_empty=True)
        self.expect(",")
        period = self.parse_bits(allow_empty=False)
        self.expect(")")
        return ("seq", (prefix, period), 1)

    def parse_bits(self, allow_empty: bool) -> str:
        start = self.pos
        while self.peek() in "01":
            self.pos += 1
        bits = self.text[start : self.pos]
        if not bits and not allow_empty:
            self.error("a nonempty bit string")
        return bits


def _invert(symbols: tuple[Symbol, ...]) -> tuple[Symbol, ...]:
    return tuple((k, p, -s) for k, p, s in reversed(symbols))


def _power(symbols: tuple[Symbol, ...], exponent: int) -> tuple[Symbol, ...]:
    if exponent >= 0:
        return symbols * exponent
    return _invert(symbols) * (-exponent)


def parse_word(text: str) -> WordExpr:
    """Parse the shared word syntax; errors carry the byte offset and the
    expected token class."""
    return WordExpr(_Parser(text).parse())


def parse_generator_word(text: str) -> Word:
    return parse_word(text).to_word()


def parse_point_word(text: str) -> XWord:
    return parse_word(text).to_xword()


def _format_symbol(kind: str, payload, sign: int) -> str:
    if kind == "gen":
        body = f"g{payload}"
    elif kind == "atom":
        body = f"'{payload}'"
    else:
        body = f"seq({payload[0]},{payload[1]})"
    return body + ("~" if sign < 0 else "")


def format_word(w: Union[Word, XWord]) -> str:
    """Canonical text: letters separated by spaces, '~' for inverses, 'e'
    for the empty word."""
    parts = []
    for letter in w.letters:
        if isinstance(letter, Letter):
            parts.append(_format_symbol("gen", letter.index, letter.sign))
        else:
            point: Point = letter.point
            if isinstance(point, Atom):
                parts.append(_format_symbol("atom", point.ident, letter.sign))
            else:
                parts.append(
                    _format_symbol("seq", (point.prefix, point.period), letter.sign)
                )
    return " ".join(parts) if parts else "e"


def format_point(x: Point) -> str:
    return point_to_text(x)


# ---------------------------------------------------------------------------
# JSON forms built on the word syntax


def sequence_to_json(a: earring.TruncatedCoherentSequence) -> dict:
    return {"depth": a.depth, "levels": [format_word(w) for w in a.levels]}


def sequence_from_json(doc: Union[str, dict]) -> earring.TruncatedCoherentSequence:
    data = json.loads(doc) if isinstance(doc, str) else doc
    levels = [parse_generator_word(text) for text in data["levels"]]
    if "depth" in data and data["depth"] != len(levels):
        raise ValueError(
            f"declared depth {data['depth']} does not match {len(levels)} levels"
        )
    return earring.validate_coherent(levels)
