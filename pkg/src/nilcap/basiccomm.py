"""Commutator trees and Hall basic commutators.

A commutator tree is either a generator ``Leaf(i)`` (``x_i``, 1-based) or a
bracket ``Node(left, right)`` standing for ``[left, right]``.  Trees are
immutable and hash-consed, so structurally equal trees are the same object.

Basic commutators are ordered by weight first; within a weight,
``[x1, y1] < [x2, y2]`` iff ``y1 < y2``, or ``y1 == y2`` and ``x1 < x2``.
"""

from __future__ import annotations

import functools
import json
import threading
from dataclasses import dataclass
from typing import Union

MAX_GENERATORS = 16
MAX_CLASS = 10

_intern: dict = {}
_intern_lock = threading.Lock()


class CommutatorTree:
    __slots__ = ()
    weight: int

    def __lt__(self, other: "CommutatorTree") -> bool:
        return _cmp(self, other) < 0

    def __le__(self, other: "CommutatorTree") -> bool:
        return _cmp(self, other) <= 0

    def __gt__(self, other: "CommutatorTree") -> bool:
        return _cmp(self, other) > 0

    def __ge__(self, other: "CommutatorTree") -> bool:
        return _cmp(self, other) >= 0


@dataclass(frozen=True, eq=False, repr=False)
class Leaf(CommutatorTree):
    index: int

    def __new__(cls, index: int):
        if not isinstance(index, int) or index < 1:
            raise ValueError(f"generator index must be a positive integer, got {index!r}")
        key = ("L", index)
        with _intern_lock:
            obj = _intern.get(key)
            if obj is None:
                obj = object.__new__(cls)
                object.__setattr__(obj, "index", index)
                _intern[key] = obj
        return obj

    def __init__(self, index: int):
        pass

    @property
    def weight(self) -> int:
        return 1

    def generators(self) -> frozenset:
        return frozenset((self.index,))

    def __repr__(self):
        return f"x{self.index}"


@dataclass(frozen=True, eq=False, repr=False)
class Node(CommutatorTree):
    left: CommutatorTree
    right: CommutatorTree
    weight: int

    def __new__(cls, left: CommutatorTree, right: CommutatorTree, weight: int | None = None):
        key = ("N", left, right)
        with _intern_lock:
            obj = _intern.get(key)
            if obj is None:
                obj = object.__new__(cls)
                object.__setattr__(obj, "left", left)
                object.__setattr__(obj, "right", right)
                object.__setattr__(obj, "weight", left.weight + right.weight)
                _intern[key] = obj
        return obj

    def __init__(self, left, right, weight=None):
        pass

    def generators(self) -> frozenset:
        return self.left.generators() | self.right.generators()

    def __repr__(self):
        return format_tree(self)


Tree = Union[Leaf, Node]


def bracket(*items: CommutatorTree) -> CommutatorTree:
    """Left-normed commutator ``[a, b, c, ...] = [[a, b], c, ...]``."""
    if len(items) < 2:
        raise ValueError("a bracket needs at least two entries")
    t = items[0]
    for item in items[1:]:
        t = Node(t, item)
    return t


def format_tree(t: CommutatorTree) -> str:
    """Render with left-normed flattening, e.g. ``[x2,x1,x1]``."""
    if isinstance(t, Leaf):
        return f"x{t.index}"
    spine = []
    while isinstance(t, Node):
        spine.append(t.right)
        t = t.left
    spine.append(t)
    spine.reverse()
    return "[" + ",".join(format_tree(s) for s in spine) + "]"


def _cmp(a: CommutatorTree, b: CommutatorTree) -> int:
    if a is b:
        return 0
    if a.weight != b.weight:
        return -1 if a.weight < b.weight else 1
    if isinstance(a, Leaf):
        return (a.index > b.index) - (a.index < b.index)
    c = _cmp(a.right, b.right)
    if c:
        return c
    return _cmp(a.left, b.left)


def is_basic(t: CommutatorTree) -> bool:
    if isinstance(t, Leaf):
        return True
    x, y = t.left, t.right
    if not (is_basic(x) and is_basic(y) and _cmp(x, y) > 0):
        return False
    if isinstance(x, Node) and _cmp(y, x.right) < 0:
        return False
    return True


def compare(a: CommutatorTree, b: CommutatorTree) -> int:
    """Three-way comparison of two basic commutators (-1, 0 or 1)."""
    for t in (a, b):
        if not is_basic(t):
            raise ValueError(f"{format_tree(t)} is not a basic commutator")
    return _cmp(a, b)


def _check_bounds(r: int, k: int) -> None:
    if not 1 <= r <= MAX_GENERATORS:
        raise ValueError(f"number of generators must be in 1..{MAX_GENERATORS}, got {r}")
    if not 1 <= k <= MAX_CLASS:
        raise ValueError(f"class must be in 1..{MAX_CLASS}, got {k}")


@functools.lru_cache(maxsize=None)
def _by_weight(r: int, k: int) -> tuple[tuple[CommutatorTree, ...], ...]:
    layers: list[list[CommutatorTree]] = [[], [Leaf(i) for i in range(1, r + 1)]]
    for n in range(2, k + 1):
        found = []
        for wy in range(1, n // 2 + 1):
            wx = n - wy
            for x in layers[wx]:
                for y in layers[wy]:
                    if _cmp(x, y) <= 0:
                        continue
                    if isinstance(x, Node) and _cmp(y, x.right) < 0:
                        continue
                    found.append(Node(x, y))
        found.sort(key=functools.cmp_to_key(_cmp))
        layers.append(found)
    return tuple(tuple(layer) for layer in layers)


def enumerate_basic(r: int, k: int) -> tuple[CommutatorTree, ...]:
    """All basic commutators of weight ``<= k`` on ``r`` generators, in order."""
    _check_bounds(r, k)
    return tuple(c for layer in _by_weight(r, k) for c in layer)


def witt_count(r: int, n: int) -> int:
    """Number of basic commutators of weight exactly ``n`` on ``r`` generators."""
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += _mobius(d) * r ** (n // d)
    return total // n


def _mobius(n: int) -> int:
    result, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    return -result if n > 1 else result


@dataclass(frozen=True)
class Shape:
    """Decomposition ``c = [[x2, x1], w, c4, ..., cr]`` of a two-generator basic commutator."""

    prefix: Leaf
    tail: tuple[CommutatorTree, ...]


def two_generator_shape(c: CommutatorTree) -> Shape:
    if not is_basic(c):
        raise ValueError(f"{format_tree(c)} is not a basic commutator")
    if not c.generators() <= {1, 2}:
        raise ValueError("commutator involves generators other than x1, x2")
    if c.weight < 3:
        raise ValueError("shape is defined for weight >= 3")
    spine = []
    t = c
    while isinstance(t, Node):
        spine.append(t.right)
        t = t.left
    spine.reverse()
    # spine[0] is x1 (the right entry of [x2, x1]); the rest follow it.
    return Shape(prefix=spine[1], tail=tuple(spine[2:]))


def basics_json(r: int, k: int) -> str:
    rows = [
        {"index": i, "weight": c.weight, "expr": format_tree(c)}
        for i, c in enumerate(enumerate_basic(r, k), start=1)
    ]
    return json.dumps(rows, separators=(",", ":"))
