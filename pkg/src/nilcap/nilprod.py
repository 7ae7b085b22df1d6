"""Nilpotent products of cyclic groups with Struik normal forms.

A :class:`GroupSpec` names the ``k``-nilpotent product of cyclic groups of
the given orders (``0`` means infinite cyclic).  Three regimes exist:

``generic``
    Every prime dividing an order is at least ``k`` (no restriction for
    ``k <= 2``).  Elements are exponent vectors over the basic commutators of
    weight ``<= k``; the exponent of ``c`` is reduced modulo the gcd of the
    orders of the generators occurring in ``c``.  Products are computed in
    the free nilpotent group and reduced.
``special_2_3``
    ``k = 3`` and every order a power of two.  The basis is ``x_i``,
    ``[x_j,x_i]``, ``[x_j,x_i^2]``, ``[x_j^2,x_i]`` (``i < j``) and
    ``[x_j,x_i,x_k]``, ``[x_k,x_i,x_j]`` (``i < j < k``), with the moduli and
    multiplication polynomials of the class-3 2-group normal form.
``abelian``
    ``k = 1``.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
import threading
from dataclasses import dataclass, field

from .basiccomm import MAX_CLASS, MAX_GENERATORS, Leaf, Node, bracket, format_tree
from .collector import free_group
from .valuation import choose2, is_prime
from .words import Word, evaluate, max_generator, parse_word

REGIMES = ("generic", "special_2_3", "abelian")


class RegimeError(ValueError):
    """The requested orders/class fall outside the regime's hypotheses."""


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _sort_key(order: int):
    return (order == 0, order)


@dataclass(frozen=True)
class GroupSpec:
    """``class_k``-nilpotent product of cyclic groups of the given orders.

    Orders are sorted (infinite last) on construction; ``permutation[i]`` is
    the position in the caller's list of the ``i``-th sorted generator.
    """

    class_k: int
    orders: tuple[int, ...]
    regime: str = "generic"
    permutation: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        orders = tuple(int(m) for m in self.orders)
        if not orders:
            raise ValueError("at least one generator is required")
        if any(m < 0 for m in orders):
            raise ValueError("orders must be non-negative (0 means infinite)")
        perm = tuple(sorted(range(len(orders)), key=lambda i: _sort_key(orders[i])))
        object.__setattr__(self, "orders", tuple(orders[i] for i in perm))
        object.__setattr__(self, "permutation", perm)
        if self.regime == "special23":
            object.__setattr__(self, "regime", "special_2_3")
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}")

    @property
    def r(self) -> int:
        return len(self.orders)

    def primes(self) -> list[int]:
        ps: set[int] = set()
        for m in self.orders:
            if m > 1:
                ps.update(prime_factors(m))
        return sorted(ps)


def validate(spec: GroupSpec) -> None:
    k, r = spec.class_k, spec.r
    if not 1 <= k <= MAX_CLASS:
        raise ValueError(f"class must be in 1..{MAX_CLASS}, got {k}")
    if r > MAX_GENERATORS:
        raise ValueError(f"at most {MAX_GENERATORS} generators are supported")
    if spec.regime == "abelian":
        if k != 1:
            raise RegimeError("the abelian regime requires class 1")
    elif spec.regime == "generic":
        small = [p for p in spec.primes() if p < k]
        if small:
            raise RegimeError(
                f"generic normal form needs every prime >= class {k}; order divisible by {small[0]}"
            )
    else:
        if k != 3:
            raise RegimeError("the special 2-group regime has class 3")
        for m in spec.orders:
            if m < 2 or m & (m - 1):
                raise RegimeError("the special 2-group regime needs orders 2^a with a >= 1")


def alpha(m: int) -> int:
    """Exponent ``a`` with ``m == 2**a`` (``m`` a power of two)."""
    return m.bit_length() - 1


_groups: dict = {}
_groups_lock = threading.Lock()


def make_group(spec: GroupSpec, top_moduli: dict | None = None) -> "NilpotentProduct":
    """Build (or fetch) the group for ``spec``.

    ``top_moduli`` optionally maps basis labels of top weight to smaller
    moduli, i.e. forms the quotient by powers of those central items.
    """
    key = (spec, tuple(sorted((top_moduli or {}).items())))
    with _groups_lock:
        g = _groups.get(key)
    if g is None:
        g = NilpotentProduct(spec, top_moduli)
        with _groups_lock:
            g = _groups.setdefault(key, g)
    return g


class NilpotentProduct:
    def __init__(self, spec: GroupSpec, top_moduli: dict | None = None):
        validate(spec)
        self.spec = spec
        self.r, self.k = spec.r, spec.class_k
        if spec.regime == "special_2_3":
            self._build_special()
        else:
            self._build_generic()
        self.moduli = list(self.moduli)
        for label, m in (top_moduli or {}).items():
            idx = self.labels.index(label)
            if self.weights[idx] != self.k:
                raise ValueError(f"{label} is not of top weight")
            base = self.moduli[idx]
            if m < 1 or (base and base % m) or (not base and m == 0):
                raise ValueError(f"modulus {m} does not divide {base} for {label}")
            self.moduli[idx] = m
        self.top_moduli = dict(top_moduli or {})
        self.moduli = tuple(self.moduli)
        self.n = len(self.labels)
        self.finite = all(self.moduli)
        self.order = math.prod(self.moduli) if self.finite else 0
        self.identity = NilElement(self, (0,) * self.n)
        self._label_index = {s: i for i, s in enumerate(self.labels)}

    # -- construction -----------------------------------------------------------

    def _build_generic(self):
        self.free = free_group(self.r, self.k)
        self.trees = self.free.basis
        self.labels = tuple(format_tree(c) for c in self.trees)
        self.weights = self.free.weights
        mods = []
        for c in self.trees:
            mods.append(functools.reduce(math.gcd, (self.spec.orders[i - 1] for i in c.generators())))
        self.moduli = tuple(mods)

    def _build_special(self):
        r = self.r
        a = [alpha(m) for m in self.spec.orders]
        labels, weights, mods = [], [], []
        idx: dict = {}
        for i in range(1, r + 1):
            idx[("x", i)] = len(labels)
            labels.append(f"x{i}")
            weights.append(1)
            mods.append(2 ** a[i - 1])
        pairs = [(i, j) for i in range(1, r + 1) for j in range(i + 1, r + 1)]
        for i, j in pairs:
            idx[("ji", j, i)] = len(labels)
            labels.append(f"[x{j},x{i}]")
            weights.append(2)
            mods.append(2 ** (a[i - 1] + 1))
        for i, j in pairs:
            ai, aj = a[i - 1], a[j - 1]
            idx[("jii", j, i)] = len(labels)
            labels.append(f"[x{j},x{i}^2]")
            weights.append(3)
            mods.append(2 ** (ai - 1))
            idx[("jij", j, i)] = len(labels)
            labels.append(f"[x{j}^2,x{i}]")
            weights.append(3)
            mods.append(2 ** (ai - 1) if ai == aj else 2**ai)
        for i, j, k in itertools.combinations(range(1, r + 1), 3):
            ai = a[i - 1]
            idx[("jik", j, i, k)] = len(labels)
            labels.append(f"[x{j},x{i},x{k}]")
            weights.append(3)
            mods.append(2**ai)
            idx[("kij", k, i, j)] = len(labels)
            labels.append(f"[x{k},x{i},x{j}]")
            weights.append(3)
            mods.append(2**ai)
        self.labels = tuple(labels)
        self.weights = tuple(weights)
        self.moduli = tuple(mods)
        self.special_index = idx
        self.trees = None

    # -- elements ------------------------------------------------------------------

    def reduce(self, exps) -> tuple[int, ...]:
        return tuple(e % m if m else e for e, m in zip(exps, self.moduli))

    def element(self, exps) -> "NilElement":
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.n:
            raise ValueError(f"expected {self.n} exponents, got {len(exps)}")
        return NilElement(self, self.reduce(exps))

    def basis_element(self, idx: int) -> "NilElement":
        vec = [0] * self.n
        vec[idx] = 1
        return self.element(vec)

    def generator(self, i: int) -> "NilElement":
        if not 1 <= i <= self.r:
            raise ValueError(f"generator x{i} out of range 1..{self.r}")
        return self.basis_element(i - 1)

    @property
    def generators(self) -> list["NilElement"]:
        return [self.generator(i) for i in range(1, self.r + 1)]

    def elements(self, cap: int | None = None):
        """All elements in ascending exponent order."""
        if not self.finite:
            raise ValueError("the group is infinite")
        if cap is not None and self.order > cap:
            raise CapExceeded(self.order, cap)
        for exps in itertools.product(*(range(m) for m in self.moduli)):
            yield NilElement(self, exps)

    def random_element(self, rng: random.Random) -> "NilElement":
        return NilElement(
            self, tuple(rng.randrange(m) if m else rng.randint(-5, 5) for m in self.moduli)
        )

    # -- arithmetic ---------------------------------------------------------------

    def _mul_raw(self, a: tuple, b: tuple) -> tuple:
        if self.trees is None:
            return self.reduce(_special_mul(self, a, b))
        return self.reduce(self.free._mul(a, b))

    def mul(self, a: "NilElement", b: "NilElement") -> "NilElement":
        return NilElement(self, self._mul_raw(a.exps, b.exps))

    def inv(self, a: "NilElement") -> "NilElement":
        if self.trees is not None:
            return NilElement(self, self.reduce(self.free._inverse(a.exps)))
        # Solve a * y = e letter by letter: y = c_n^-a_n ... c_1^-a_1.
        result = self.identity.exps
        for i in range(self.n - 1, -1, -1):
            if a.exps[i]:
                vec = [0] * self.n
                vec[i] = -a.exps[i]
                result = self._mul_raw(result, self.reduce(vec))
        return NilElement(self, result)

    def pow(self, a: "NilElement", n: int) -> "NilElement":
        if n < 0:
            a, n = self.inv(a), -n
        result, base = self.identity.exps, a.exps
        while n:
            if n & 1:
                result = self._mul_raw(result, base)
            n >>= 1
            if n:
                base = self._mul_raw(base, base)
        return NilElement(self, result)

    def comm(self, a: "NilElement", b: "NilElement") -> "NilElement":
        """``[a, b] = a^-1 b^-1 a b``."""
        ab = self._mul_raw(a.exps, b.exps)
        ba = self._mul_raw(b.exps, a.exps)
        return NilElement(self, self._mul_raw(self.inv(NilElement(self, ba)).exps, ab))

    def element_order(self, a: "NilElement") -> int:
        """Order of ``a``; ``0`` if it has infinite order."""
        bound = 1
        for w in set(self.weights):
            finite = [m for m, ww in zip(self.moduli, self.weights) if ww == w and m]
            bound *= math.lcm(*finite) if finite else 1
        if self.pow(a, bound) != self.identity:
            return 0
        n = bound
        for p in prime_factors(bound):
            while n % p == 0 and self.pow(a, n // p) == self.identity:
                n //= p
        return n

    def commutes(self, a: "NilElement", b: "NilElement") -> bool:
        return self._mul_raw(a.exps, b.exps) == self._mul_raw(b.exps, a.exps)

    # -- text --------------------------------------------------------------------------

    def parse(self, text: str | Word) -> "NilElement":
        word = parse_word(text) if isinstance(text, str) else text
        if max_generator(word) > self.r:
            raise ValueError(f"expression uses a generator beyond x{self.r}")
        return evaluate(word, self)

    def format(self, a: "NilElement") -> str:
        parts = []
        for label, e in zip(self.labels, a.exps):
            if e:
                parts.append(label if e == 1 else f"{label}^{e}")
        return " ".join(parts)

    def label_index(self, label: str) -> int:
        return self._label_index[label]

    def __repr__(self):
        s = self.spec
        return f"NilpotentProduct(class={s.class_k}, orders={s.orders}, regime={s.regime})"


class CapExceeded(RuntimeError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"group of order {size} exceeds the enumeration cap {cap}")
        self.size, self.cap = size, cap


@dataclass(frozen=True, order=True)
class NilElement:
    group: NilpotentProduct = field(compare=False)
    exps: tuple[int, ...]

    def __mul__(self, other: "NilElement") -> "NilElement":
        return self.group.mul(self, other)

    def __pow__(self, n: int) -> "NilElement":
        return self.group.pow(self, n)

    def __invert__(self) -> "NilElement":
        return self.group.inv(self)

    def __eq__(self, other):
        return isinstance(other, NilElement) and self.group is other.group and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)

    def __str__(self):
        return self.group.format(self) or "e"

    def __repr__(self):
        return f"NilElement({self})"


# -- module-level operations ------------------------------------------------------


def reduce(group: NilpotentProduct, exps) -> NilElement:
    return group.element(exps)


def mul(a: NilElement, b: NilElement) -> NilElement:
    return a.group.mul(a, b)


def inv(a: NilElement) -> NilElement:
    return a.group.inv(a)


def pow(a: NilElement, n: int) -> NilElement:  # noqa: A001 - mirrors the group operation name
    return a.group.pow(a, n)


def comm(a: NilElement, b: NilElement) -> NilElement:
    return a.group.comm(a, b)


def element_order(a: NilElement) -> int:
    return a.group.element_order(a)


def parse(group: NilpotentProduct, text: str) -> NilElement:
    return group.parse(text)


def format_element(a: NilElement) -> str:
    return a.group.format(a)


# -- closed multiplication formulas --------------------------------------------------


def _generic_index(group: NilpotentProduct, *gens: int) -> int:
    t = Leaf(gens[0]) if len(gens) == 1 else bracket(*(Leaf(g) for g in gens))
    return group.free.index[t]


def mul_formula(a: NilElement, b: NilElement) -> NilElement:
    """Product from the closed class-2 or class-3 polynomials (generic regime)."""
    g = a.group
    if g.trees is None or g.k not in (1, 2, 3):
        raise RegimeError("closed formulas cover the generic regime with class <= 3")
    r = g.r
    x, y = a.exps, b.exps
    out = [u + v for u, v in zip(x, y)]

    def ix(*gens):
        return _generic_index(g, *gens)

    if g.k >= 2:
        for i in range(1, r + 1):
            for j in range(i + 1, r + 1):
                out[ix(j, i)] += x[j - 1] * y[i - 1]
    if g.k == 3:
        for i in range(1, r + 1):
            for j in range(i + 1, r + 1):
                aji = x[ix(j, i)]
                ai, aj = x[i - 1], x[j - 1]
                bi, bj = y[i - 1], y[j - 1]
                out[ix(j, i, i)] += aji * bi + aj * choose2(bi)
                out[ix(j, i, j)] += aji * bj + bi * choose2(aj) + aj * bi * bj
        for i, j, k in itertools.combinations(range(1, r + 1), 3):
            aji, aki, akj = x[ix(j, i)], x[ix(k, i)], x[ix(k, j)]
            aj, ak = x[j - 1], x[k - 1]
            bi, bj, bk = y[i - 1], y[j - 1], y[k - 1]
            out[ix(j, i, k)] += aji * bk + aj * bi * bk + aj * ak * bi - akj * bi
            out[ix(k, i, j)] += aki * bj + ak * bi * bj + akj * bi
    return g.element(out)


def _special_mul(g: NilpotentProduct, c: tuple, d: tuple) -> list:
    idx = g.special_index
    r = g.r
    f = [u + v for u, v in zip(c, d)]

    def A(j, i):
        return c[idx[("ji", j, i)]] + 2 * c[idx[("jii", j, i)]] + 2 * c[idx[("jij", j, i)]]

    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            cj = c[j - 1]
            di, dj = d[i - 1], d[j - 1]
            aji = A(j, i)
            f[idx[("ji", j, i)]] += (
                cj * di
                - 2 * aji * di
                - 2 * aji * dj
                - 2 * cj * choose2(di)
                - 2 * di * choose2(cj)
                - 2 * cj * di * dj
            )
            f[idx[("jii", j, i)]] += aji * di + cj * choose2(di)
            f[idx[("jij", j, i)]] += aji * dj + cj * di * dj + di * choose2(cj)
    for i, j, k in itertools.combinations(range(1, r + 1), 3):
        cj, ck = c[j - 1], c[k - 1]
        di, dj, dk = d[i - 1], d[j - 1], d[k - 1]
        f[idx[("jik", j, i, k)]] += A(j, i) * dk + cj * di * dk + cj * ck * di - A(k, j) * di
        f[idx[("kij", k, i, j)]] += A(k, i) * dj + ck * di * dj + A(k, j) * di
    return f


def mul_special_2_3(a: NilElement, b: NilElement) -> NilElement:
    if a.group.trees is not None:
        raise RegimeError("mul_special_2_3 needs a special_2_3 group")
    return a.group.mul(a, b)


def special_f_ji(c: dict, d: dict) -> int:
    """Unreduced ``[x2,x1]`` exponent of a product in the two-generator special group.

    ``c`` and ``d`` map ``"1"``, ``"2"``, ``"21"``, ``"211"``, ``"212"`` to exponents.
    """
    a21 = c["21"] + 2 * c["211"] + 2 * c["212"]
    cj, di, dj = c["2"], d["1"], d["2"]
    return (
        c["21"] + d["21"] + cj * di
        - 2 * a21 * di - 2 * a21 * dj
        - 2 * cj * choose2(di) - 2 * di * choose2(cj) - 2 * cj * di * dj
    )
