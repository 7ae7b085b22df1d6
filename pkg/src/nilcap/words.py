"""Words in generators and commutators, and the textual element grammar.

Grammar (whitespace separates terms)::

    expr := term*
    term := atom ("^" sint)?
    atom := gen | "[" entry ("," entry)+ "]"
    entry := atom | gen "^" sint

``e`` alone denotes the identity.  Powers of generators inside brackets are
only needed for labels such as ``[x2^2,x1]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Protocol, Sequence, Union

from .basiccomm import CommutatorTree, Leaf, Node


@dataclass(frozen=True)
class GenPower:
    """``x_index ** exponent`` used as a bracket entry."""

    index: int
    exponent: int

    @property
    def weight(self) -> int:
        return 1

    def generators(self) -> frozenset:
        return frozenset((self.index,))

    def __str__(self):
        return f"x{self.index}^{self.exponent}"


Atom = Union[CommutatorTree, GenPower]
Word = tuple  # tuple[tuple[Atom, int], ...]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_INT = re.compile(r"[+-]?\d+")
_GEN = re.compile(r"x(\d+)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str):
        if self._peek() != ch:
            found = self._peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def _int(self) -> int:
        self._skip()
        m = _INT.match(self.text, self.pos)
        if not m:
            raise ParseError("expected an integer", self.pos)
        self.pos = m.end()
        return int(m.group())

    def _gen(self) -> int:
        self._skip()
        m = _GEN.match(self.text, self.pos)
        if not m:
            raise ParseError("expected a generator like x1", self.pos)
        index = int(m.group(1))
        if index < 1:
            raise ParseError("generator indices start at 1", self.pos)
        self.pos = m.end()
        return index

    def _atom(self, in_bracket: bool):
        ch = self._peek()
        if ch == "[":
            self.pos += 1
            entries = [self._atom(True)]
            while self._peek() == ",":
                self.pos += 1
                entries.append(self._atom(True))
            if len(entries) < 2:
                raise ParseError("a bracket needs at least two entries", self.pos)
            self._expect("]")
            t = entries[0]
            for entry in entries[1:]:
                t = Node(t, entry)
            return t
        if ch == "x":
            index = self._gen()
            if in_bracket and self._peek() == "^":
                self.pos += 1
                n = self._int()
                return Leaf(index) if n == 1 else GenPower(index, n)
            return Leaf(index)
        raise ParseError(f"unexpected {ch or 'end of input'!r}", self.pos)

    def parse(self) -> Word:
        terms = []
        while True:
            ch = self._peek()
            if not ch:
                break
            if ch == "*":
                self.pos += 1
                continue
            if ch == "e" and not self.text[self.pos + 1 : self.pos + 2].isalnum():
                self.pos += 1
                continue
            atom = self._atom(False)
            exp = 1
            if self._peek() == "^":
                self.pos += 1
                exp = self._int()
            terms.append((atom, exp))
        return tuple(terms)


def parse_word(text: str) -> Word:
    """Parse an expression into a word of ``(atom, exponent)`` pairs."""
    return _Parser(text).parse()


def max_generator(word: Word) -> int:
    def walk(a) -> int:
        if isinstance(a, Leaf):
            return a.index
        if isinstance(a, GenPower):
            return a.index
        return max(walk(a.left), walk(a.right))

    return max((walk(a) for a, _ in word), default=0)


def format_atom(a: Atom) -> str:
    if isinstance(a, Leaf):
        return f"x{a.index}"
    if isinstance(a, GenPower):
        return str(a)
    spine = []
    while isinstance(a, Node):
        spine.append(a.right)
        a = a.left
    spine.append(a)
    spine.reverse()
    return "[" + ",".join(format_atom(s) for s in spine) + "]"


def format_word(word: Word) -> str:
    parts = []
    for atom, exp in word:
        s = format_atom(atom)
        parts.append(s if exp == 1 else f"{s}^{exp}")
    return " ".join(parts)


class GroupOps(Protocol):
    identity: object

    def generator(self, i: int): ...

    def mul(self, a, b): ...

    def pow(self, a, n: int): ...

    def comm(self, a, b): ...


def evaluate(word: Word, group: GroupOps):
    """Evaluate ``word`` with the group operations of ``group``."""

    def atom_value(a):
        if isinstance(a, Leaf):
            return group.generator(a.index)
        if isinstance(a, GenPower):
            return group.pow(group.generator(a.index), a.exponent)
        return group.comm(atom_value(a.left), atom_value(a.right))

    result = group.identity
    for atom, exp in word:
        result = group.mul(result, group.pow(atom_value(atom), exp))
    return result


def letters(word: Word) -> list[tuple[int, int]]:
    """Expand a word into a flat list of ``(generator, +1 or -1)`` letters."""

    def inverse(ls):
        return [(g, -s) for g, s in reversed(ls)]

    def atom_letters(a):
        if isinstance(a, Leaf):
            return [(a.index, 1)]
        if isinstance(a, GenPower):
            base = [(a.index, 1)] if a.exponent >= 0 else [(a.index, -1)]
            return base * abs(a.exponent)
        u, v = atom_letters(a.left), atom_letters(a.right)
        return inverse(u) + inverse(v) + u + v

    out: list[tuple[int, int]] = []
    for atom, exp in word:
        ls = atom_letters(atom)
        if exp < 0:
            ls, exp = inverse(ls), -exp
        out.extend(ls * exp)
    return out


def relator_words(texts: Sequence[str]) -> list[Word]:
    return [parse_word(t) for t in texts]
