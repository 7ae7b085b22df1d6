"""Subgroups, centers, lower central series and quotients of finite groups.

Two kinds of finite group are handled with the same duck-typed interface
(``identity``, ``generators``, ``mul``, ``inv``, ``pow``, ``comm``,
``elements``, ``order``):

* :class:`~nilcap.nilprod.NilpotentProduct` (elements are exponent vectors);
* :class:`TableGroup`, a group given by its Cayley table, which is what
  quotients and coset enumeration produce.

Brute-force routines enumerate elements and refuse to run above ``cap``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import lattice
from .nilprod import CapExceeded, NilpotentProduct, RegimeError
from .valuation import is_prime
from .words import Word, evaluate, letters, parse_word

DEFAULT_CAP = 2**20


class NoClosedForm(ValueError):
    """No closed-form center is known for this group."""


class NotCentral(ValueError):
    pass


class LowerCentralMismatch(AssertionError):
    """The lower central term differs from the span of basic commutators."""


# -- table groups ---------------------------------------------------------------------


class TableGroup:
    """Finite group on ``0..n-1`` given by right multiplication by generators.

    ``actions[g][a]`` is ``a * x_{g+1}``; the generators must generate.
    """

    def __init__(self, actions: Sequence[Sequence[int]], identity: int = 0, name: str = ""):
        self.actions = [np.asarray(a, dtype=np.int64) for a in actions]
        self.order = len(self.actions[0]) if self.actions else 1
        self.r = len(self.actions)
        self.identity = identity
        self.name = name
        self.finite = True
        self._table = None
        self._inverse = None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            n = self.order
            table = np.full((n, n), -1, dtype=np.int64)
            table[:, self.identity] = np.arange(n)
            seen = {self.identity}
            queue = deque([self.identity])
            while queue:
                b = queue.popleft()
                for act in self.actions:
                    c = int(act[b])
                    if c not in seen:
                        seen.add(c)
                        table[:, c] = act[table[:, b]]
                        queue.append(c)
            if len(seen) != n:
                raise ValueError("generators do not generate the table group")
            self._table = table
        return self._table

    @property
    def generators(self) -> list[int]:
        return [int(a[self.identity]) for a in self.actions]

    def generator(self, i: int) -> int:
        if not 1 <= i <= self.r:
            raise ValueError(f"generator x{i} out of range 1..{self.r}")
        return int(self.actions[i - 1][self.identity])

    def elements(self, cap: int | None = None):
        if cap is not None and self.order > cap:
            raise CapExceeded(self.order, cap)
        return iter(range(self.order))

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        if self._inverse is None:
            self._inverse = np.argmax(self.table == self.identity, axis=1)
        return int(self._inverse[a])

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        result = self.identity
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def comm(self, a: int, b: int) -> int:
        return self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))

    def commutes(self, a: int, b: int) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            n += 1
        return n

    def parse(self, text: str | Word) -> int:
        word = parse_word(text) if isinstance(text, str) else text
        return evaluate(word, self)

    def __repr__(self):
        return f"TableGroup(order={self.order}{', ' + self.name if self.name else ''})"


def _commutes(group, a, b) -> bool:
    return group.commutes(a, b)


# -- coset enumeration ---------------------------------------------------------------


def todd_coxeter(ngens: int, relators: Iterable[Word | str], max_cosets: int = 200_000) -> TableGroup:
    """Regular representation of ``<x1..x_ngens | relators>`` by HLT coset enumeration."""
    rels = []
    for rel in relators:
        word = parse_word(rel) if isinstance(rel, str) else rel
        rels.append([2 * (g - 1) + (0 if s > 0 else 1) for g, s in letters(word)])
    ncols = 2 * ngens

    def inv(x: int) -> int:
        return x ^ 1

    table: list[list[int | None]] = [[None] * ncols]
    p = [0]

    def rep(c: int) -> int:
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def define(c: int, x: int) -> None:
        if len(table) >= max_cosets:
            raise CapExceeded(len(table), max_cosets)
        new = len(table)
        table.append([None] * ncols)
        p.append(new)
        table[c][x] = new
        table[new][inv(x)] = c

    def merge(a: int, b: int, queue: list[int]) -> None:
        a, b = rep(a), rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            p[hi] = lo
            queue.append(hi)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(ncols):
                d = table[g][x]
                if d is None:
                    continue
                table[d][inv(x)] = None
                mu, nu = rep(g), rep(d)
                if table[mu][x] is not None:
                    merge(nu, table[mu][x], queue)
                elif table[nu][inv(x)] is not None:
                    merge(mu, table[nu][inv(x)], queue)
                else:
                    table[mu][x] = nu
                    table[nu][inv(x)] = mu

    def scan_and_fill(a: int, w: list[int]) -> None:
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]] is not None:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != a:
                    coincidence(f, a)
                return
            while j >= i and table[b][inv(w[j])] is not None:
                b = table[b][inv(w[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv(w[i])] = f
                return
            define(f, w[i])

    a = 0
    while a < len(table):
        if p[a] == a:
            for w in rels:
                if w:
                    scan_and_fill(a, w)
                if p[a] != a:
                    break
            if p[a] == a:
                for x in range(ncols):
                    if table[a][x] is None:
                        define(a, x)
        a += 1

    live = [c for c in range(len(table)) if p[c] == c]
    new_index = {c: i for i, c in enumerate(live)}
    actions = []
    for g in range(ngens):
        act = [new_index[rep(table[c][2 * g])] for c in live]
        actions.append(act)
    return TableGroup(actions, identity=0)


# -- subgroups -------------------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    group: object = field(repr=False)
    elements: tuple
    generators: tuple = ()

    def __len__(self):
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._set

    @property
    def _set(self) -> frozenset:
        s = self.__dict__.get("_cached_set")
        if s is None:
            s = frozenset(self.elements)
            object.__setattr__(self, "_cached_set", s)
        return s

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)


def closure(group, gens: Iterable, cap: int = DEFAULT_CAP) -> Subgroup:
    """Subgroup generated by ``gens`` (breadth-first right multiplication)."""
    gens = [g for g in gens if g != group.identity]
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = group.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    if len(seen) > cap:
                        raise CapExceeded(len(seen), cap)
                    nxt.append(b)
        frontier = nxt
    return Subgroup(group, tuple(sorted(seen)), tuple(gens))


def normal_closure(group, gens: Iterable, cap: int = DEFAULT_CAP, within: Sequence | None = None) -> Subgroup:
    """Normal closure of ``gens`` in the group, or in the subgroup generated by ``within``."""
    gens = list(gens)
    conjugators = group.generators if within is None else list(within)
    while True:
        sub = closure(group, gens, cap)
        new = []
        for h in gens:
            for x in conjugators:
                c = group.mul(group.mul(group.inv(x), h), x)
                if c not in sub and c not in new:
                    new.append(c)
        if not new:
            return sub
        gens.extend(new)


def is_normal(group, sub: Subgroup) -> bool:
    return all(
        group.mul(group.mul(group.inv(x), h), x) in sub for h in sub.generators for x in group.generators
    )


def lower_central(group, i: int, cap: int = DEFAULT_CAP, check_basis: bool = True) -> Subgroup:
    """``G_i``, with ``G_1 = G`` and ``G_{i+1} = [G_i, G]``."""
    if i < 1:
        raise ValueError("lower central terms are indexed from 1")
    term = closure(group, group.generators, cap)
    gens = list(group.generators)
    for _ in range(1, i):
        comms = [group.comm(a, x) for a in gens for x in group.generators]
        term = normal_closure(group, comms, cap)
        gens = list(term.generators) or [group.identity]
    if check_basis and isinstance(group, NilpotentProduct) and group.trees is not None:
        span = closure(group, [group.basis_element(j) for j, w in enumerate(group.weights) if w >= i], cap)
        if span.elements != term.elements:
            extra = sorted(set(term.elements) ^ set(span.elements))[:1]
            raise LowerCentralMismatch(
                f"G_{i} has order {len(term)} but basic commutators of weight >= {i} span "
                f"{len(span)}; differing element {extra}"
            )
    return term


def lower_central_series(group, cap: int = DEFAULT_CAP) -> list[Subgroup]:
    series = [closure(group, group.generators, cap)]
    while len(series[-1]) > 1:
        prev = series[-1]
        comms = [group.comm(a, x) for a in prev.generators for x in group.generators]
        nxt = normal_closure(group, comms, cap)
        if nxt.elements == prev.elements:
            break
        series.append(nxt)
    return series


def subgroup_lower_central(group, gens: Sequence, i: int, cap: int = DEFAULT_CAP) -> Subgroup:
    """``<gens>_i``: the ``i``-th lower central term of the subgroup generated by ``gens``."""
    if i < 1:
        raise ValueError("lower central terms are indexed from 1")
    gens = list(gens)
    term = closure(group, gens, cap)
    for _ in range(1, i):
        comms = [group.comm(a, x) for a in (term.generators or [group.identity]) for x in gens]
        term = normal_closure(group, comms, cap, within=gens)
    return term


def nilpotency_class(group, cap: int = DEFAULT_CAP) -> int:
    series = lower_central_series(group, cap)
    if len(series[-1]) > 1:
        raise ValueError("group is not nilpotent")
    return len(series) - 1


def exponent_of(group, sub: Subgroup | Iterable) -> int:
    elements = sub.elements if isinstance(sub, Subgroup) else list(sub)
    result = 1
    for x in elements:
        result = math.lcm(result, group.element_order(x))
    return result


# -- centers -------------------------------------------------------------------------------


def center_bruteforce(group, cap: int = DEFAULT_CAP) -> Subgroup:
    """Elements commuting with every generator (hence with every element)."""
    gens = group.generators
    found = [a for a in group.elements(cap) if all(group.commutes(a, x) for x in gens)]
    return Subgroup(group, tuple(sorted(found)), tuple(found))


def center_by_definition(group, cap: int = DEFAULT_CAP) -> Subgroup:
    """Elements commuting with every element; quadratic, for small groups."""
    els = list(group.elements(cap))
    found = [a for a in els if all(group.commutes(a, b) for b in els)]
    return Subgroup(group, tuple(sorted(found)), tuple(found))


def _single_prime(group: NilpotentProduct) -> tuple[int, list[int]]:
    orders = group.spec.orders
    primes = group.spec.primes()
    if any(m == 0 for m in orders) or len(primes) != 1:
        raise NoClosedForm("no closed form: orders are not powers of a single prime")
    p = primes[0]
    alphas = []
    for m in orders:
        a = 0
        while m % p == 0:
            m //= p
            a += 1
        if m != 1:
            raise NoClosedForm("no closed form: orders are not powers of a single prime")
        alphas.append(a)
    return p, alphas


def center_formula_generators(group) -> list:
    """Generators of the center predicted by the closed formulas.

    * generic, single prime ``p >= k``: ``x_r^(p^a_{r-1})`` and the top-weight
      basic commutators;
    * special 2-groups of class 3: ``x_r^(2^(a_{r-1}+1))``, ``G_3`` and
      ``[x_j,x_i]^(2^a_i)``.
    """
    if not isinstance(group, NilpotentProduct):
        raise NoClosedForm("no closed form for this group type")
    if group.top_moduli:
        raise NoClosedForm("no closed form for quotients of nilpotent products")
    p, alphas = _single_prime(group)
    r, k = group.r, group.k
    prev = alphas[r - 2] if r >= 2 else 0
    xr = group.generator(r)
    if group.spec.regime == "special_2_3":
        gens = [group.pow(xr, 2 ** (prev + 1))]
        for i in range(1, r + 1):
            for j in range(i + 1, r + 1):
                cji = group.comm(group.generator(j), group.generator(i))
                gens.append(group.pow(cji, 2 ** alphas[i - 1]))
                for m in range(1, r + 1):
                    gens.append(group.comm(cji, group.generator(m)))
        return [g for g in dict.fromkeys(gens) if g != group.identity]
    if p < k:
        raise NoClosedForm(f"no closed form for p={p} < class {k}")
    gens = [group.pow(xr, p**prev)]
    gens += [group.basis_element(j) for j, w in enumerate(group.weights) if w == k]
    return [g for g in gens if g != group.identity]


def center_formula(group, cap: int = DEFAULT_CAP) -> Subgroup:
    return closure(group, center_formula_generators(group), cap)


# -- exact layered computations for large generic groups ------------------------------------


def _layer_coords(group: NilpotentProduct, x, w: int) -> list[int]:
    for e, ww in zip(x.exps, group.weights):
        if ww < w and e:
            raise ArithmeticError("element is not in the expected layer")
    return [e for e, ww in zip(x.exps, group.weights) if ww == w]


def _layer_moduli(group: NilpotentProduct, w: int) -> list[int]:
    return [m for m, ww in zip(group.moduli, group.weights) if ww == w]


def _check_layered(group) -> None:
    if not isinstance(group, NilpotentProduct) or group.trees is None:
        raise RegimeError("layered computations need a generic nilpotent product")
    if not group.finite:
        raise ValueError("layered computations need a finite group")


def _product(group, gens: list, exps: Sequence[int]):
    out = group.identity
    for g, e in zip(gens, exps):
        if e:
            out = group.mul(out, group.pow(g, e))
    return out


@dataclass
class LayeredCenter:
    generators: list
    relations: list[list[int]]
    order: int

    def contains(self, group, x) -> bool:
        return all(group.commutes(x, g) for g in group.generators)


def center_layered(group) -> LayeredCenter:
    """Exact center of a finite generic nilpotent product without enumeration.

    Works down the weight filtration ``H_w``: ``Z(H/H_{w+1})`` is the kernel
    of the homomorphism ``g -> ([g, x_j] mod H_{w+1})_j`` on the preimage of
    ``Z(H/H_w)``, which is linear in exponent coordinates.
    """
    _check_layered(group)
    gens = list(group.generators)
    rel = [[m if a == b else 0 for b in range(group.r)] for a, m in enumerate(_layer_moduli(group, 1))]
    for w in range(2, group.k + 1):
        mods_w = _layer_moduli(group, w)
        layer_items = [group.basis_element(j) for j, ww in enumerate(group.weights) if ww == w]
        chi = []
        for h in gens:
            vec: list[int] = []
            for x in group.generators:
                vec += _layer_coords(group, group.comm(h, x), w)
            chi.append(vec)
        kernel = lattice.kernel_mod(chi, mods_w * group.r)
        new_gens = [_product(group, gens, e) for e in kernel]
        # Relations among the new generators and the weight-w basis items.
        lifted = lattice.preimage(kernel, rel) if kernel else []
        s, nw = len(new_gens), len(layer_items)
        new_rel = []
        for f in lifted:
            a = _layer_coords(group, _product(group, new_gens, f), w)
            new_rel.append(list(f) + [-x for x in a])
        for c, m in enumerate(mods_w):
            row = [0] * (s + nw)
            row[s + c] = m
            new_rel.append(row)
        gens = new_gens + layer_items
        rel = lattice.hermite_rows(new_rel, s + nw)
    order = lattice.index(rel, len(gens)) if gens else 1
    return LayeredCenter(gens, rel, order)


def abelian_subgroup_order(group, gens: list) -> int:
    """Order of the subgroup generated by pairwise commuting ``gens``."""
    _check_layered(group)
    for a in gens:
        for b in gens:
            if not group.commutes(a, b):
                raise ValueError("generators do not commute")
    m = len(gens)
    if m == 0:
        return 1
    lat = [[int(i == j) for j in range(m)] for i in range(m)]
    for w in range(1, group.k + 1):
        mods = _layer_moduli(group, w)
        images = [_layer_coords(group, _product(group, gens, e), w) for e in lat]
        combos = lattice.kernel_mod(images, mods)
        lat = lattice.hermite_rows(
            [[sum(c[t] * lat[t][j] for t in range(len(lat))) for j in range(m)] for c in combos], m
        )
    return lattice.index(lat, m)


# -- quotients --------------------------------------------------------------------------------


class QuotientGroup(TableGroup):
    """``parent / kernel`` as a table group; coset ``i`` has representative ``reps[i]``."""

    def __init__(self, parent, kernel: Subgroup, cap: int = DEFAULT_CAP):
        coset_of: dict = {}
        reps = []
        for g in parent.elements(cap):
            if g in coset_of:
                continue
            idx = len(reps)
            reps.append(g)
            for n in kernel.elements:
                coset_of[parent.mul(g, n)] = idx
        actions = []
        for x in parent.generators:
            actions.append([coset_of[parent.mul(g, x)] for g in reps])
        super().__init__(actions, identity=coset_of[parent.identity])
        self.parent = parent
        self.kernel = kernel
        self.reps = reps
        self.coset_of = coset_of

    def project(self, g) -> int:
        return self.coset_of[g]


def quotient(group, kernel: Subgroup, cap: int = DEFAULT_CAP) -> QuotientGroup:
    if not is_normal(group, kernel):
        raise ValueError("kernel is not a normal subgroup")
    return QuotientGroup(group, kernel, cap)


def quotient_by_central(group, kernel: Subgroup, cap: int = DEFAULT_CAP) -> QuotientGroup:
    """Quotient by a central subgroup; raises :class:`NotCentral` otherwise."""
    for h in kernel.generators or kernel.elements:
        for x in group.generators:
            if not group.commutes(h, x):
                raise NotCentral("kernel is not central")
    return QuotientGroup(group, kernel, cap)


def matches_presentation(q, relations: Sequence[Word | str], expected_order: int) -> bool:
    """Whether the generators of ``q`` satisfy ``relations``, generate ``q`` and
    ``|q| == expected_order``; with the order of the presented group equal to
    ``expected_order`` this identifies ``q`` with it."""
    if q.order != expected_order:
        return False
    for rel in relations:
        word = parse_word(rel) if isinstance(rel, str) else rel
        if evaluate(word, q) != q.identity:
            return False
    return len(closure(q, q.generators, cap=max(q.order, 1))) == q.order


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1 and is_prime(p)
