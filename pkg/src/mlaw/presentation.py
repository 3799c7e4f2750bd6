"""Group presentations ``<g1,...,gk | r1, r2, ...>``: syntax tree, parser, printer.

Relator grammar::

    relation := word ('=' word)*          u = v means u v^-1
    word     := factor*                   juxtaposition is product
    factor   := atom ('^' integer)?
    atom     := generator | '1' | '(' word ')' | '[' word ',' word ']'

``[u, v]`` is the commutator ``u v u^-1 v^-1``. Generator symbols are
identifiers; inside words the longest declared symbol wins.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

Word = tuple[tuple[str, int], ...]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class PresentationError(ValueError):
    """Syntax error or undeclared symbol; ``pos`` is the offending offset."""

    def __init__(self, message: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        if pos is not None and text is not None:
            message = f"{message} at position {pos}: {text[:pos]}<<HERE>>{text[pos:]}"
        super().__init__(message)


def reduce_word(letters: Iterable[tuple[str, int]]) -> Word:
    """Merge adjacent powers of the same symbol and drop zero exponents."""
    out: list[tuple[str, int]] = []
    for sym, e in letters:
        if e == 0:
            continue
        if out and out[-1][0] == sym:
            e += out.pop()[1]
            if e == 0:
                continue
        out.append((sym, e))
    return tuple(out)


def invert_word(w: Word) -> Word:
    return tuple((s, -e) for s, e in reversed(w))


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator symbol")
        known = set(self.generators)
        for r in self.relators:
            for sym, e in r:
                if sym not in known:
                    raise PresentationError(f"undeclared generator {sym!r}")
                if e == 0:
                    raise PresentationError("zero exponent in relator")

    def __str__(self) -> str:
        return format_presentation(self)


def format_word(w: Word, spaced: bool = False) -> str:
    if not w:
        return "1"
    parts = [s if e == 1 else f"{s}^{e}" for s, e in w]
    return (" " if spaced else "").join(parts)


def format_presentation(p: Presentation) -> str:
    spaced = any(len(g) > 1 for g in p.generators)
    rels = ", ".join(format_word(r, spaced) for r in p.relators)
    return f"<{','.join(p.generators)} | {rels}>"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.gens: list[str] = []

    def error(self, msg: str, pos: int | None = None):
        raise PresentationError(msg, self.pos if pos is None else pos, self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Presentation:
        self.expect("<")
        if self.peek() != "|":
            while True:
                self.skip()
                m = _IDENT.match(self.text, self.pos)
                if not m:
                    self.error("expected generator symbol")
                if m.group() in self.gens:
                    self.error(f"duplicate generator {m.group()!r}")
                self.gens.append(m.group())
                self.pos = m.end()
                if self.peek() != ",":
                    break
                self.pos += 1
        self.expect("|")
        relators: list[Word] = []
        if self.peek() != ">":
            while True:
                relators.extend(self.relation())
                if self.peek() != ",":
                    break
                self.pos += 1
        self.expect(">")
        if self.peek():
            self.error("trailing input")
        return Presentation(tuple(self.gens), tuple(relators))

    def relation(self) -> list[Word]:
        sides = [self.word()]
        while self.peek() == "=":
            self.pos += 1
            sides.append(self.word())
        if len(sides) == 1:
            return [sides[0]]
        return [reduce_word(u + invert_word(v)) for u, v in zip(sides, sides[1:])]

    def word(self) -> Word:
        letters: list[tuple[str, int]] = []
        while True:
            ch = self.peek()
            if not ch or ch in ",=|>)]":
                break
            start = self.pos
            atom = self.atom()
            if self.peek() == "^":
                self.pos += 1
                k = self.integer()
                if k < 0:
                    atom = invert_word(atom)
                atom = atom * abs(k)
            letters.extend(atom)
            if self.pos == start:
                self.error("unexpected character")
        return reduce_word(letters)

    def atom(self) -> Word:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            w = self.word()
            self.expect(")")
            return w
        if ch == "[":
            self.pos += 1
            u = self.word()
            self.expect(",")
            v = self.word()
            self.expect("]")
            return reduce_word(u + v + invert_word(u) + invert_word(v))
        if ch == "1":
            self.pos += 1
            return ()
        if ch.isalpha() or ch == "_":
            best = None
            for g in self.gens:
                if self.text.startswith(g, self.pos) and (best is None or len(g) > len(best)):
                    best = g
            if best is None:
                m = _IDENT.match(self.text, self.pos)
                self.error(f"undeclared generator {m.group() if m else ch!r}")
            self.pos += len(best)
            return ((best, 1),)
        self.error(f"unexpected character {ch!r}")

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"[+-]?\d+").match(self.text, self.pos)
        if not m:
            self.error("expected integer exponent")
        self.pos = m.end()
        return int(m.group())


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).parse()
