"""Collection in the free nilpotent group of class ``k`` on ``r`` generators.

Elements are exponent vectors over the basic commutators ``c_1 < c_2 < ...``
of weight ``<= k``; the vector ``(a_1, ..., a_n)`` stands for
``c_1^a_1 c_2^a_2 ... c_n^a_n``.

Multiplication collects from the left.  Moving ``c_i^e`` to its place past
the collected tail ``t`` (all letters above ``i``) uses
``t c_i^e = c_i^e t^(c_i^e)``, and conjugation by ``c_i`` is an automorphism
of the subgroup generated by ``c_{i+1}, ...``, fixed by the images
``c_j^(c_i) = c_j [c_j, c_i]``.  Those conjugates are memoised per
``(i, e, j)``.  The table of commutators ``[c_j, c_i]`` comes from the basic
commutator itself when ``[c_j, c_i]`` is basic, and otherwise from the exact
Magnus embedding; everything of weight above ``k`` is dropped.
"""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass

from .basiccomm import CommutatorTree, Leaf, Node, _check_bounds, enumerate_basic, format_tree
from .magnus import MagnusNormalizer
from .valuation import INF
from .words import Word, evaluate, max_generator, parse_word

_groups: dict = {}
_groups_lock = threading.Lock()


class FreeNilpotentGroup:
    """The free nilpotent group of class ``k`` on ``r`` generators."""

    def __init__(self, r: int, k: int):
        _check_bounds(r, k)
        self.r, self.k = r, k
        self.basis: tuple[CommutatorTree, ...] = enumerate_basic(r, k)
        self.n = len(self.basis)
        self.weights = tuple(c.weight for c in self.basis)
        self.index = {c: i for i, c in enumerate(self.basis)}
        self._table = self._commutator_table()
        # active[i]: letters j > i that do not commute with c_i.
        self.active = tuple(
            frozenset(j for j in range(i + 1, self.n) if self._table.get((j, i)))
            for i in range(self.n)
        )
        self.identity = FreeNilElement(self, (0,) * self.n)

    @classmethod
    def get(cls, r: int, k: int) -> "FreeNilpotentGroup":
        with _groups_lock:
            g = _groups.get((r, k))
        if g is None:
            g = cls(r, k)
            with _groups_lock:
                g = _groups.setdefault((r, k), g)
        return g

    def _commutator_table(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """``[c_j, c_i]`` for ``j > i`` as a sparse vector, omitting trivial ones."""
        table: dict[tuple[int, int], tuple[int, ...]] = {}
        magnus = None
        for j in range(self.n):
            for i in range(j):
                if self.weights[i] + self.weights[j] > self.k:
                    continue
                cj, ci = self.basis[j], self.basis[i]
                t = Node(cj, ci)
                if not isinstance(cj, Node) or ci >= cj.right:
                    vec = [0] * self.n
                    vec[self.index[t]] = 1
                else:
                    if magnus is None:
                        magnus = MagnusNormalizer(self.r, self.k)
                    series = magnus.alg.comm(magnus.basis_image(j), magnus.basis_image(i))
                    vec = list(magnus.normal_form(series, self.weights[i] + self.weights[j]))
                if any(vec):
                    table[(j, i)] = tuple(vec)
        return table

    def commutator_entry(self, j: int, i: int) -> tuple[int, ...]:
        """Normal form of ``[c_j, c_i]`` for basis indices ``j > i``."""
        return self._table.get((j, i), (0,) * self.n)

    # -- element construction ------------------------------------------------

    def element(self, exps) -> "FreeNilElement":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(exps)}")
        return FreeNilElement(self, exps)

    def basis_element(self, idx: int) -> "FreeNilElement":
        vec = [0] * self.n
        vec[idx] = 1
        return FreeNilElement(self, tuple(vec))

    def generator(self, i: int) -> "FreeNilElement":
        if not 1 <= i <= self.r:
            raise ValueError(f"generator x{i} out of range 1..{self.r}")
        return self.basis_element(i - 1)

    # -- core arithmetic on raw vectors -----------------------------------------

    @functools.lru_cache(maxsize=None)
    def _conj(self, i: int, e: int, j: int) -> tuple[int, ...]:
        """``c_j^(c_i^e)`` for ``j > i``."""
        if j not in self.active[i]:
            vec = [0] * self.n
            vec[j] = 1
            return tuple(vec)
        if e == 1:
            vec = list(self._table[(j, i)])
            vec[j] += 1
            return tuple(vec)
        if e == -1:
            # psi = phi^-1 with phi(c_j) = c_j w: psi(c_j) = c_j psi(w)^-1.
            w = self._table[(j, i)]
            u = self._inverse(self._apply(i, -1, w))
            vec = list(u)
            vec[j] += 1
            return tuple(vec)
        half = e // 2
        unit = [0] * self.n
        unit[j] = 1
        return self._apply(i, half, self._apply(i, e - half, tuple(unit)))

    def _apply(self, i: int, e: int, x: tuple[int, ...]) -> tuple[int, ...]:
        """Image of ``x`` (supported above ``i``) under conjugation by ``c_i^e``."""
        result = (0,) * self.n
        act = self.active[i]
        for j in range(i + 1, self.n):
            a = x[j]
            if not a:
                continue
            if j in act:
                factor = self._power(self._conj(i, e, j), a)
            else:
                vec = [0] * self.n
                vec[j] = a
                factor = tuple(vec)
            result = self._mul(result, factor)
        return result

    def _mul_letter(self, g: tuple[int, ...], i: int, e: int) -> tuple[int, ...]:
        """``g * c_i^e``."""
        act = self.active[i]
        nontrivial = False
        for j in act:
            if g[j]:
                nontrivial = True
                break
        if not nontrivial:
            out = list(g)
            out[i] += e
            return tuple(out)
        tail = (0,) * (i + 1) + g[i + 1 :]
        moved = self._apply(i, e, tail)
        out = list(g[: i + 1]) + list(moved[i + 1 :])
        out[i] += e
        return tuple(out)

    def _mul(self, g: tuple[int, ...], h: tuple[int, ...]) -> tuple[int, ...]:
        for i, e in enumerate(h):
            if e:
                g = self._mul_letter(g, i, e)
        return g

    def _inverse(self, g: tuple[int, ...]) -> tuple[int, ...]:
        result = (0,) * self.n
        for i in range(self.n - 1, -1, -1):
            if g[i]:
                result = self._mul_letter(result, i, -g[i])
        return result

    def _power(self, g: tuple[int, ...], n: int) -> tuple[int, ...]:
        if n < 0:
            g, n = self._inverse(g), -n
        # A single basis letter is a plain power.
        nz = [i for i, a in enumerate(g) if a]
        if len(nz) == 1:
            out = [0] * self.n
            out[nz[0]] = g[nz[0]] * n
            return tuple(out)
        result = (0,) * self.n
        while n:
            if n & 1:
                result = self._mul(result, g)
            n >>= 1
            if n:
                g = self._mul(g, g)
        return result

    # -- public operations ---------------------------------------------------------

    def mul(self, a: "FreeNilElement", b: "FreeNilElement") -> "FreeNilElement":
        return FreeNilElement(self, self._mul(a.exps, b.exps))

    def inv(self, a: "FreeNilElement") -> "FreeNilElement":
        return FreeNilElement(self, self._inverse(a.exps))

    def pow(self, a: "FreeNilElement", n: int) -> "FreeNilElement":
        return FreeNilElement(self, self._power(a.exps, n))

    def comm(self, a: "FreeNilElement", b: "FreeNilElement") -> "FreeNilElement":
        """``[a, b] = a^-1 b^-1 a b``."""
        ab = self._mul(a.exps, b.exps)
        ba = self._mul(b.exps, a.exps)
        return FreeNilElement(self, self._mul(self._inverse(ba), ab))

    def collect(self, word: Word | str) -> "FreeNilElement":
        if isinstance(word, str):
            word = parse_word(word)
        if max_generator(word) > self.r:
            raise ValueError(f"word uses a generator beyond x{self.r}")
        return evaluate(word, self)

    def format(self, a: "FreeNilElement") -> str:
        parts = []
        for c, e in zip(self.basis, a.exps):
            if e:
                s = format_tree(c)
                parts.append(s if e == 1 else f"{s}^{e}")
        return " ".join(parts)


@dataclass(frozen=True)
class FreeNilElement:
    group: FreeNilpotentGroup
    exps: tuple[int, ...]

    def __mul__(self, other: "FreeNilElement") -> "FreeNilElement":
        return self.group.mul(self, other)

    def __pow__(self, n: int) -> "FreeNilElement":
        return self.group.pow(self, n)

    def __invert__(self) -> "FreeNilElement":
        return self.group.inv(self)

    def __eq__(self, other):
        return isinstance(other, FreeNilElement) and self.group is other.group and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __str__(self):
        return self.group.format(self) or "e"


def free_group(r: int, k: int) -> FreeNilpotentGroup:
    return FreeNilpotentGroup.get(r, k)


def collect(word: Word | str, r: int, k: int) -> FreeNilElement:
    """Collected normal form of ``word`` in the free nilpotent group of class ``k``."""
    return free_group(r, k).collect(word)


def multiply(a: FreeNilElement, b: FreeNilElement) -> FreeNilElement:
    return a.group.mul(a, b)


def inverse(a: FreeNilElement) -> FreeNilElement:
    return a.group.inv(a)


def power(a: FreeNilElement, n: int) -> FreeNilElement:
    return a.group.pow(a, n)


def commutator(a: FreeNilElement, b: FreeNilElement) -> FreeNilElement:
    return a.group.comm(a, b)


def expand_power_commutator(x: FreeNilElement, y: FreeNilElement, n: int) -> FreeNilElement:
    """``[x^n, y]`` computed from the definition."""
    return x.group.comm(x.group.pow(x, n), y)


def weight_of(a: FreeNilElement):
    """Largest ``w`` with ``a`` in the ``w``-th lower central term; ``INF`` for ``e``."""
    for e, w in zip(a.exps, a.group.weights):
        if e:
            return w
    return INF
