"""Verification suites: exhaustive and randomized checks of the identities,
bounds and theorems the library relies on.

Every suite is a function ``(recorder, config) -> None`` registered in
:data:`SUITES` together with a header naming the result it exercises.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field

from . import capability as cap_mod
from . import grouptools as gt
from .basiccomm import Leaf, Node, enumerate_basic, is_basic
from .collector import free_group, weight_of
from .nilprod import GroupSpec, make_group, special_f_ji
from .valuation import (
    binom,
    binom_sum_divisibility,
    carries_base_p,
    choose2,
    floor_log,
    hall_bound,
    is_prime,
    max_s_bound,
    ord_p,
    prime_power_binom_valuation,
)


@dataclass
class SuiteConfig:
    seed: int = 0
    cap: int = gt.DEFAULT_CAP
    max_order: int = 3**8
    samples: int = 2000


@dataclass
class SuiteReport:
    name: str
    header: str
    seed: int
    cases: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, case: str, ok: bool, expected=None, actual=None) -> bool:
        self.cases += 1
        if not ok:
            self.failures.append({"case": case, "expected": str(expected), "actual": str(actual)})
        return ok

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "suite": self.name,
            "header": self.header,
            "seed": self.seed,
            "cases": self.cases,
            "failures": sorted(self.failures, key=lambda f: f["case"]),
        }
        if timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out


# -- helpers --------------------------------------------------------------------------------


def _free_random(g, rng: random.Random, lo: int = 1, spread: int = 3):
    """Random element of the free nilpotent group ``g`` lying in ``G_lo``."""
    exps = [rng.randint(-spread, spread) if w >= lo else 0 for w in g.weights]
    return g.element(exps)


def _free_random_exact(g, rng: random.Random, w: int, spread: int = 3):
    """Random element of weight exactly ``w``."""
    while True:
        x = _free_random(g, rng, w, spread)
        if any(e for e, ww in zip(x.exps, g.weights) if ww == w):
            return x


def _congruent(g, a, b, w: int) -> bool:
    """``a == b`` modulo ``G_w``."""
    d = g.mul(g.inv(a), b)
    return all(e == 0 for e, ww in zip(d.exps, g.weights) if ww < w)


def _alphas(p: int, top: int, r: int):
    return [a for a in itertools.combinations_with_replacement(range(1, top + 1), r)]


def _center_specs(k: int, max_order: int):
    for p in (3, 5):
        if p < k:
            continue
        for r in (2, 3):
            for al in _alphas(p, 2, r):
                spec = GroupSpec(k, tuple(p**a for a in al))
                if make_group(spec).order <= max_order:
                    yield spec


def special_specs(max_alpha: int = 3, max_order: int = 2**12, gens=(2, 3)):
    for r in gens:
        for al in _alphas(2, max_alpha, r):
            spec = GroupSpec(3, tuple(2**a for a in al), "special_2_3")
            if make_group(spec).order <= max_order:
                yield spec


def _hall_polynomial_ok(values: list, degree: int) -> bool:
    """Whether ``values[n]`` (n = 0, 1, ...) is ``sum_j a_j C(n, j)`` with ``j <= degree``:
    forward differences beyond ``degree`` vanish (integrality is automatic)."""
    diffs = list(values)
    for _ in range(degree + 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    return all(d == 0 for d in diffs)


# -- valuation -----------------------------------------------------------------------------


def suite_kummer(rep: SuiteReport, cfg: SuiteConfig) -> None:
    for p in (2, 3, 5, 7):
        for n in range(201):
            for m in range(n + 1):
                rep.check(
                    f"kummer p={p} n={n} m={m}",
                    ord_p(p, binom(n, m)) == carries_base_p(p, n - m, m),
                    carries_base_p(p, n - m, m),
                    ord_p(p, binom(n, m)),
                )
    for p in (2, 3, 5):
        for n in range(7):
            top = p**n
            c = 1
            for a in range(1, top + 1):
                c = c * (top - a + 1) // a
                rep.check(
                    f"prime-power binomial p={p} n={n} a={a}",
                    prime_power_binom_valuation(p, n, a) == ord_p(p, c),
                    ord_p(p, c),
                    prime_power_binom_valuation(p, n, a),
                )
    rng = random.Random(cfg.seed)
    for p in (2, 3, 5):
        for n in range(1, 6):
            top = p**n
            binoms = [binom(top, i) for i in range(top + 1)]
            bounds = [None] + [binom_sum_divisibility(p, n, m) for m in range(1, top + 1)]
            low = None
            for m in range(1, top + 1):
                v = ord_p(p, binoms[m])
                low = v if low is None else min(low, v)
                rep.check(f"binomial-sum bound is the minimum p={p} n={n} m={m}", low == bounds[m], bounds[m], low)
            for trial in range(100):
                s = 0
                bad = None
                for m in range(1, top + 1):
                    s += rng.randint(-50, 50) * binoms[m]
                    if ord_p(p, s) < bounds[m]:
                        bad = m
                        break
                rep.check(f"binomial-sum divisibility p={p} n={n} trial={trial}", bad is None, "none", bad)
    for p in range(2, 1000):
        if is_prime(p):
            rep.check(f"floor log_p 2 p={p}", floor_log(p, 2) == 1 // (p - 1), 1 // (p - 1), floor_log(p, 2))


def suite_maxs(rep: SuiteReport, cfg: SuiteConfig) -> None:
    for k in range(1, 51):
        for n in range(2, 12):

            def term(s):
                return (k - s) // (n - 1) + floor_log(n, s + 1)

            best = max(term(s) for s in range(1, k + 1))
            rep.check(f"max k={k} n={n}", best == max_s_bound(k, n), max_s_bound(k, n), best)
            rep.check(f"attained at n-1 k={k} n={n}", term(n - 1) == max_s_bound(k, n), max_s_bound(k, n), term(n - 1))


# -- collector ------------------------------------------------------------------------------


def suite_axioms(rep: SuiteReport, cfg: SuiteConfig) -> None:
    rng = random.Random(cfg.seed)
    specs = [
        GroupSpec(2, (2, 2)),
        GroupSpec(2, (3, 3)),
        GroupSpec(2, (3, 9)),
        GroupSpec(3, (3, 3)),
        GroupSpec(3, (5, 5)),
        GroupSpec(3, (2, 2), "special_2_3"),
        GroupSpec(3, (2, 4), "special_2_3"),
    ]
    for spec in specs:
        g = make_group(spec)
        check_group_axioms(rep, g, rng, cfg.samples, str(spec.orders) + spec.regime)
    for r, k in [(2, 3), (2, 5), (3, 3), (3, 4)]:
        f = free_group(r, k)
        for t in range(min(cfg.samples, 500)):
            a, b, c = (_free_random(f, rng) for _ in range(3))
            rep.check(f"free assoc r={r} k={k} #{t}", (a * b) * c == a * (b * c))
            rep.check(f"free inverse r={r} k={k} #{t}", a * ~a == f.identity and ~a * a == f.identity)
            rep.check(f"free identity r={r} k={k} #{t}", a * f.identity == a == f.identity * a)
    for bits in range(1, 4):
        for di in range(-8, 9):
            for c in _special_samples(bits, rng):
                d = {"1": di, "2": rng.randint(-8, 8), "21": 0, "211": 0, "212": 0}
                shifted = dict(d, **{"1": di + 2**bits})
                m = 2 ** (bits + 1)
                rep.check(
                    f"special well-defined a1={bits} d1={di}",
                    (special_f_ji(c, d) - special_f_ji(c, shifted)) % m == 0,
                )


def _special_samples(bits: int, rng: random.Random):
    for _ in range(4):
        yield {key: rng.randint(-8, 8) for key in ("1", "2", "21", "211", "212")}


def check_group_axioms(rep: SuiteReport, g, rng: random.Random, samples: int, tag: str) -> None:
    els = list(g.elements())
    rep.check(f"{tag} bijection", len(set(els)) == g.order == len(els), g.order, len(set(els)))
    for x in els[: min(len(els), 4096)]:
        if g.element(x.exps) != x:
            rep.check(f"{tag} normal form round trip", False, x, g.element(x.exps))
            break
    if g.order <= 64:
        triples = itertools.product(els, repeat=3)
    else:
        triples = ((rng.choice(els), rng.choice(els), rng.choice(els)) for _ in range(samples))
    bad = None
    count = 0
    for a, b, c in triples:
        count += 1
        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)):
            bad = (a, b, c)
            break
    rep.check(f"{tag} associativity ({count} triples)", bad is None, "associative", bad)
    for a in els[:512]:
        ok = g.mul(a, g.inv(a)) == g.identity and g.mul(a, g.identity) == a
        if not ok:
            rep.check(f"{tag} inverse/identity", False, g.identity, a)
            break
    else:
        rep.check(f"{tag} inverse/identity", True)


def suite_identities(rep: SuiteReport, cfg: SuiteConfig) -> None:
    rng = random.Random(cfg.seed)
    for r, k in [(2, 4), (3, 3), (3, 4), (2, 5)]:
        f = free_group(r, k)
        c = f.comm
        for t in range(min(cfg.samples, 300)):
            x, y, z = (_free_random(f, rng) for _ in range(3))
            lhs = c(x * y, z)
            rhs = c(x, z) * c(c(x, z), y) * c(y, z)
            rep.check(f"[xy,z] r={r} k={k} #{t}", lhs == rhs, rhs, lhs)
            lhs = c(x, y * z)
            rhs = c(x, z) * c(z, c(y, x)) * c(x, y)
            rep.check(f"[x,yz] r={r} k={k} #{t}", lhs == rhs, rhs, lhs)
        # Collecting is confluent: any split of a word gives the same product.
        for t in range(min(cfg.samples, 100)):
            letters = [(rng.randint(1, r), rng.choice((-2, -1, 1, 2))) for _ in range(rng.randint(1, 12))]
            word = " ".join(f"x{i}^{e}" for i, e in letters)
            whole = f.collect(word)
            cut = rng.randint(0, len(letters))
            left = f.collect(" ".join(f"x{i}^{e}" for i, e in letters[:cut]) or "e")
            right = f.collect(" ".join(f"x{i}^{e}" for i, e in letters[cut:]) or "e")
            rep.check(f"confluence r={r} k={k} #{t}", left * right == whole, whole, left * right)
    # Relabelling identities between the two conventions for class-3 triples.
    for g in (free_group(3, 3), make_group(GroupSpec(3, (3, 9, 9))), make_group(GroupSpec(3, (5, 5, 25)))):
        x = [g.generator(i) for i in range(1, 4)]
        cm = g.comm
        for i, j, k in itertools.combinations(range(3), 3):
            xi, xj, xk = x[i], x[j], x[k]
            lhs = cm(cm(xj, xi), xk)
            rhs = g.inv(cm(cm(xi, xj), xk))
            rep.check(f"[xj,xi,xk] {g!r}", lhs == rhs, rhs, lhs)
            lhs = cm(cm(xk, xj), xi)
            rhs = g.mul(g.inv(cm(cm(xj, xi), xk)), cm(cm(xk, xi), xj))
            rep.check(f"[xk,xj,xi] {g!r}", lhs == rhs, rhs, lhs)


def suite_class3_power_commutator(rep: SuiteReport, cfg: SuiteConfig) -> None:
    rng = random.Random(cfg.seed)
    f = free_group(2, 3)
    c = f.comm
    pairs = [(f.generator(1), f.generator(2)), (f.generator(2), f.generator(1))]
    pairs += [(_free_random(f, rng), _free_random(f, rng)) for _ in range(4)]
    for n, (a, b) in enumerate(pairs):
        ab = c(a, b)
        for r in range(-6, 7):
            for s in range(-6, 7):
                lhs = c(a**r, b**s)
                rhs = ab ** (r * s) * c(ab, a) ** (s * choose2(r)) * c(ab, b) ** (r * choose2(s))
                rep.check(f"pair {n} r={r} s={s}", lhs == rhs, rhs, lhs)


def suite_hall_power(rep: SuiteReport, cfg: SuiteConfig) -> None:
    rng = random.Random(cfg.seed)
    for r, k in [(2, 3), (2, 5), (3, 4)]:
        f = free_group(r, k)
        for t in range(min(cfg.samples, 100)):
            a = _free_random(f, rng)
            prod = f.identity
            for n in range(9):
                rep.check(f"a^{n} r={r} k={k} #{t}", a**n == prod, prod, a**n)
                rep.check(f"a^-{n} r={r} k={k} #{t}", a**-n == ~prod)
                prod = prod * a
        # (x1...xs)^n: exponents are integer combinations of C(n, j), j <= k.
        x = f.identity
        for i in range(1, r + 1):
            x = x * f.generator(i)
        values = [(x**n).exps for n in range(k + 3)]
        for idx in range(f.n):
            rep.check(
                f"power polynomial r={r} k={k} coord {idx}",
                _hall_polynomial_ok([v[idx] for v in values], k),
            )


def suite_power_commutator(rep: SuiteReport, cfg: SuiteConfig) -> None:
    rng = random.Random(cfg.seed)
    for r, k in [(2, 3), (2, 4), (2, 5), (3, 4)]:
        f = free_group(r, k)
        for t in range(min(cfg.samples, 40)):
            x, y = _free_random(f, rng), _free_random(f, rng)
            xy = f.comm(x, y)
            vals = []
            for n in range(k + 3):
                lhs = f.comm(x**n, y)
                vals.append(lhs.exps)
                rep.check(f"[x^n,y] = [x,y]^n mod G_3 r={r} k={k} n={n} #{t}", _congruent(f, lhs, xy**n, 3))
            for idx in range(f.n):
                rep.check(
                    f"[x^n,y] polynomial r={r} k={k} #{t} coord {idx}",
                    _hall_polynomial_ok([v[idx] for v in vals], k),
                )
            # Pulling an exponent out of a commutator changes it only in higher weight.
            z = _free_random(f, rng)
            for n in range(-4, 5):
                lhs = f.comm(f.comm(x, y**n), z)
                rhs = f.comm(f.comm(x, y), z) ** n
                rep.check(f"pull exponent r={r} k={k} n={n} #{t}", _congruent(f, lhs, rhs, 4))


def suite_jacobi_w(rep: SuiteReport, cfg: SuiteConfig) -> None:
    rng = random.Random(cfg.seed)
    for r, k in [(2, 4), (2, 5), (3, 4), (3, 5)]:
        f = free_group(r, k)
        cm = f.comm
        for t in range(min(cfg.samples, 60)):
            w1, w2 = rng.randint(1, k - 1), rng.randint(1, k - 1)
            a, b = _free_random_exact(f, rng, w1), _free_random_exact(f, rng, w2)
            wc = weight_of(cm(a, b))
            rep.check(f"W([a,b]) r={r} k={k} #{t}", wc >= w1 + w2, f">= {w1 + w2}", wc)
            if w1 + w2 <= k:
                As = [_free_random_exact(f, rng, w1) for _ in range(2)]
                Bs = [_free_random_exact(f, rng, w2) for _ in range(2)]
                al = [rng.randint(-3, 3) for _ in As]
                be = [rng.randint(-3, 3) for _ in Bs]
                lhs = cm(As[0] ** al[0] * As[1] ** al[1], Bs[0] ** be[0] * Bs[1] ** be[1])
                rhs = f.identity
                for ai, ea in zip(As, al):
                    for bj, eb in zip(Bs, be):
                        rhs = rhs * cm(ai, bj) ** (ea * eb)
                rep.check(f"bilinear r={r} k={k} #{t}", _congruent(f, lhs, rhs, w1 + w2 + 1), rhs, lhs)
                # Changing a, b modulo the next term does not change [a,b] modulo its next term.
                a2 = a * _free_random(f, rng, w1 + 1)
                b2 = b * _free_random(f, rng, w2 + 1)
                rep.check(f"well-defined mod r={r} k={k} #{t}", _congruent(f, cm(a, b), cm(a2, b2), w1 + w2 + 1))
            w3 = rng.randint(1, k)
            c = _free_random_exact(f, rng, w3)
            j = cm(cm(a, b), c) * cm(cm(b, c), a) * cm(cm(c, a), b)
            rep.check(f"jacobi r={r} k={k} #{t}", _congruent(f, j, f.identity, w1 + w2 + w3 + 1))
        # Brackets of top basic commutators of weight k-1 with the last generator.
        xr = Leaf(r)
        gr = f.generator(r)
        top = [c for c in f.basis if c.weight == k - 1 and isinstance(c, Node)]
        for c in top:
            u, v = c.left, c.right
            if v <= xr:
                rep.check(f"[u,v,x_r] basic {c}", is_basic(Node(c, xr)))
            else:
                t1, t2 = Node(Node(v, xr), u), Node(Node(u, xr), v)
                rep.check(f"[v,x_r,u],[u,x_r,v] basic {c}", is_basic(t1) and is_basic(t2))
                lhs = cm(f.basis_element(f.index[c]), gr)
                rhs = ~f.basis_element(f.index[t1]) * f.basis_element(f.index[t2])
                rep.check(f"[u,v,x_r] expansion {c}", lhs == rhs, rhs, lhs)
        for t in range(min(cfg.samples, 20)):
            alphas = [rng.randint(-4, 4) for _ in top]
            g = f.identity
            expected = f.identity
            for c, e in zip(top, alphas):
                g = g * f.basis_element(f.index[c]) ** e
                u, v = c.left, c.right
                if v <= xr:
                    d, fi = f.basis_element(f.index[Node(c, xr)]), f.identity
                else:
                    d = ~f.basis_element(f.index[Node(Node(v, xr), u)])
                    fi = f.basis_element(f.index[Node(Node(u, xr), v)])
                expected = expected * d**e * fi**e
            got = cm(g, gr)
            rep.check(f"[g,x_r] expansion r={r} k={k} #{t}", got == expected, expected, got)


# -- centers --------------------------------------------------------------------------------


def _check_center(rep: SuiteReport, g, cfg: SuiteConfig) -> None:
    tag = f"{g.spec.class_k}:{g.spec.orders}:{g.spec.regime}"
    brute = gt.center_bruteforce(g, cfg.cap)
    formula = gt.center_formula(g, cfg.cap)
    rep.check(f"center {tag}", brute.elements == formula.elements, formula.order, brute.order)
    rep.check(f"lagrange {tag}", g.order % brute.order == 0)
    if g.order <= 512:
        rep.check(f"generator test {tag}", gt.center_by_definition(g, cfg.cap).elements == brute.elements)
    if g.trees is not None:
        layered = gt.center_layered(g)
        rep.check(f"layered center order {tag}", layered.order == brute.order, brute.order, layered.order)


def suite_center_2(rep: SuiteReport, cfg: SuiteConfig) -> None:
    for spec in _center_specs(2, cfg.max_order):
        g = make_group(spec)
        _check_center(rep, g, cfg)
        z = gt.center_bruteforce(g, cfg.cap)
        orders = spec.orders
        for a in itertools.product(*(range(m) for m in orders)):
            x = g.identity
            for i, e in enumerate(a, start=1):
                x = g.mul(x, g.pow(g.generator(i), e))
            cond = all(
                a[i] % math.gcd(orders[i], orders[j]) == 0
                for i in range(len(orders))
                for j in range(len(orders))
                if i != j
            )
            rep.check(f"divisibility criterion {orders} {a}", cond == (x in z), cond, x in z)
    # Equal top orders: the center is exactly the derived subgroup.
    for orders in [(2, 2), (4, 4), (2, 4, 4), (2, 6, 6), (3, 9, 9)]:
        g = make_group(GroupSpec(2, orders))
        z = gt.center_bruteforce(g, cfg.cap)
        k2 = gt.lower_central(g, 2, cfg.cap)
        rep.check(f"Z(K) = K_2 for {orders}", z.elements == k2.elements, k2.order, z.order)


def suite_center_3(rep: SuiteReport, cfg: SuiteConfig) -> None:
    for spec in _center_specs(3, cfg.max_order):
        _check_center(rep, make_group(spec), cfg)
    g = make_group(GroupSpec(3, (3, 9)))
    z = gt.center_bruteforce(g, cfg.cap)
    want = gt.closure(g, [g.pow(g.generator(2), 3)] + [g.basis_element(j) for j, w in enumerate(g.weights) if w == 3])
    rep.check("Z = <x2^3, G_3> for (3,9)", z.elements == want.elements, want.order, z.order)


def suite_center_k(rep: SuiteReport, cfg: SuiteConfig) -> None:
    specs = [GroupSpec(4, (5, 5)), GroupSpec(4, (5, 25)), GroupSpec(4, (5, 5, 5)), GroupSpec(5, (5, 5)),
             GroupSpec(5, (7, 49)), GroupSpec(4, (7, 7)), GroupSpec(3, (3, 9, 27))]
    for spec in specs:
        g = make_group(spec)
        tag = f"{spec.class_k}:{spec.orders}"
        layered = gt.center_layered(g)
        gens = gt.center_formula_generators(g)
        rep.check(f"formula generators central {tag}", all(layered.contains(g, x) for x in gens))
        n = gt.abelian_subgroup_order(g, gens)
        rep.check(f"center order {tag}", n == layered.order, layered.order, n)
    for spec in _center_specs(2, 3**6):
        g = make_group(spec)
        brute = gt.center_bruteforce(g, cfg.cap)
        rep.check(f"layered = brute {spec.orders}", gt.center_layered(g).order == brute.order)


def suite_center_special(rep: SuiteReport, cfg: SuiteConfig) -> None:
    for spec in special_specs(3, min(cfg.max_order, 2**12)):
        _check_center(rep, make_group(spec), cfg)


# -- power maps and exponents of two-generator subgroups -------------------------------------


def _minimal_level(g, y, z, p: int) -> int | None:
    """Least ``a >= 1`` with ``[z, y^(p^i), y] = [z, y^(p^i), z] = e`` for all ``i >= a``."""
    top = 1
    while g.pow(y, p**top) != g.identity:
        top += 1
    level = None
    for i in range(top, 0, -1):
        c = g.comm(z, g.pow(y, p**i))
        if g.comm(c, y) == g.identity and g.comm(c, z) == g.identity:
            level = i
        else:
            break
    return level


def exponent_specs():
    for spec in special_specs(3, 2**16, gens=(2,)):
        if spec.orders[0] <= 4:
            yield spec, 2
    for orders in [(3, 3), (3, 9), (9, 9), (5, 25)]:
        spec = GroupSpec(3, orders)
        yield spec, spec.primes()[0]


def suite_exponent_lemmas(rep: SuiteReport, cfg: SuiteConfig) -> None:
    for spec, p in exponent_specs():
        g = make_group(spec)
        tag = f"{spec.orders}:{spec.regime}"
        for y, z in itertools.permutations(g.generators, 2):
            a = _minimal_level(g, y, z, p)
            if a is None:
                continue
            if g.order <= cfg.cap:
                s3 = gt.subgroup_lower_central(g, [y, z], 3, cfg.cap)
                s2 = gt.subgroup_lower_central(g, [y, z], 2, cfg.cap)
                e3, e2 = gt.exponent_of(g, s3), gt.exponent_of(g, s2)
                rep.check(f"exponent of <y,z>_3 {tag} a={a}", (p**a) % e3 == 0, f"divides {p**a}", e3)
                bound = p ** (a + 1 // (p - 1))
                rep.check(f"exponent of <y,z>_2 {tag} a={a}", bound % e2 == 0, f"divides {bound}", e2)
            # G has class 3 = k + 1 with k = 2.
            n = a + hall_bound(2, p)
            for big in (n, n + 1):
                q = p**big
                lhs = g.comm(g.pow(z, q), y)
                mid = g.pow(g.comm(z, y), q)
                rhs = g.comm(z, g.pow(y, q))
                rep.check(f"[z^q,y]=[z,y]^q=[z,y^q] {tag} N={big}", lhs == mid == rhs, mid, (lhs, rhs))


# -- capability -----------------------------------------------------------------------------


def capability_cases():
    """Targets covered by the capability round trip."""
    for p in (3, 5):
        for r in (1, 2, 3):
            for al in _alphas(p, 2, r):
                yield GroupSpec(2, tuple(p**a for a in al))
    for a1 in (1, 2):
        for a2 in range(a1, 4):
            yield GroupSpec(2, (2**a1, 2**a2))
    for orders in abelian_order_lists(16):
        yield GroupSpec(1, orders, "abelian")


def abelian_order_lists(limit: int):
    """Invariant-factor chains ``d1 | d2 | ...`` with product at most ``limit`` (d1 > 1)."""

    def extend(chain, prod):
        yield tuple(chain)
        last = chain[-1] if chain else 1
        for d in range(2, limit + 1):
            if chain and d % last:
                continue
            if prod * d > limit:
                break
            yield from extend(chain + [d], prod * d)

    yield from (c for c in extend([], 1) if c)


def decide(spec: GroupSpec) -> cap_mod.CapabilityVerdict:
    if spec.regime == "abelian":
        return cap_mod.baer_abelian(spec.orders)
    return cap_mod.capable_nilprod(spec)


def suite_capability(rep: SuiteReport, cfg: SuiteConfig) -> None:
    for spec in capability_cases():
        v = decide(spec)
        tag = f"{spec.class_k}:{spec.orders}"
        if v.decision == cap_mod.Decision.CAPABLE:
            target = cap_mod.abelian_target(spec.orders) if spec.regime == "abelian" else spec
            rep.check(f"witness {tag}", cap_mod.verify_witness(target, v), True, False)
            if spec.regime != "abelian":
                p = spec.primes()[0]
                al = [ord_p(p, m) for m in spec.orders]
                rep.check(f"necessary condition {tag}", cap_mod.necessary_condition(p, spec.class_k, al))
    examples = [
        (cap_mod.baer_abelian([2, 4]), cap_mod.Decision.NOT_CAPABLE, "C2+C4"),
        (cap_mod.capable_nilprod(GroupSpec(2, (3, 9))), cap_mod.Decision.NOT_CAPABLE, "k=2 (3,9)"),
        (cap_mod.baer_abelian([0, 0]), cap_mod.Decision.CAPABLE, "Z+Z"),
        (cap_mod.capable_nilprod(GroupSpec(3, (3, 3))), cap_mod.Decision.UNDECIDED, "k=3 (3,3)"),
    ]
    for verdict, want, tag in examples:
        rep.check(f"verdict {tag}", verdict.decision == want, want.value, verdict.decision.value)
    for t in range(1, 5):
        for orders in itertools.combinations_with_replacement(range(1, 65), t):
            a = cap_mod._baer_by_factors(orders)
            b = cap_mod._baer_by_primes(orders)
            if a != b:
                rep.check(f"baer paths {orders}", False, a, b)
        rep.check(f"baer paths agree, {t} factors", True)
    for pres in class2_presentations(3, 2):
        v = cap_mod.capable_class2_2gen(pres)
        tag = f"{pres}"
        want = pres.alpha == pres.beta
        rep.check(f"class2 decision {tag}", (v.decision == cap_mod.Decision.CAPABLE) == want, want, v.decision.value)
        q = cap_mod.presentation_group(pres)
        rep.check(f"class2 order {tag}", q.order == pres.order, pres.order, q.order)
        if v.witness is not None:
            rep.check(f"class2 witness {tag}", cap_mod.verify_witness(pres, v))
    for p in (3, 5):
        e = cap_mod.extraspecial_p5(p)
        z = gt.center_bruteforce(e, cfg.cap)
        rep.check(f"extraspecial p^5 order p={p}", e.order == p**5, p**5, e.order)
        rep.check(f"extraspecial p^5 center p={p}", z.order == p, p, z.order)
        rep.check(f"extraspecial p^5 passes the necessary condition p={p}",
                  cap_mod.necessary_condition(p, 2, [1, 1, 1, 1]))


def class2_presentations(p: int, top: int):
    for a, b, g, s in itertools.product(range(top + 1), repeat=4):
        try:
            yield cap_mod.Class2Presentation(p, a, b, g, s)
        except ValueError:
            continue


def suite_dihedral(rep: SuiteReport, cfg: SuiteConfig) -> None:
    for k in (2, 3):
        info = cap_mod.dihedral_tightness(k, cfg.cap)
        rep.check(f"D_(2^{k + 1}) = D_(2^{k + 2}) / Z", info["matches"], True, info)
        rep.check(f"class k={k}", info["class"] == k, k, info["class"])
        rep.check(f"exponents (1,{k})", info["alphas"] == [1, k], [1, k], info["alphas"])
        rep.check(f"bound attained k={k}", info["tight"])


SUITES = {
    "kummer": (suite_kummer, "binomial valuations: Kummer's carries theorem and sums of C(p^n, i)"),
    "maxs": (suite_maxs, "max over s of floor((k-s)/(n-1)) + floor(log_n(s+1)) = floor(k/(n-1))"),
    "axioms": (suite_axioms, "normal forms of nilpotent products: uniqueness and group axioms"),
    "identities": (suite_identities, "commutator expansions [xy,z] and [x,yz]; relabelling of class-3 triples"),
    "struik-lemma2": (suite_class3_power_commutator, "[a^r,b^s] = [a,b]^(rs) [a,b,a]^(s C(r,2)) [a,b,b]^(r C(s,2)) in class 3"),
    "hall-power": (suite_hall_power, "Hall's power formula: exponents of (x1...xs)^n are integer binomial polynomials"),
    "jacobi-w": (suite_jacobi_w, "weight identities, the Jacobi variant and [g,x_r] for top basic commutators"),
    "center-2": (suite_center_2, "center of a 2-nilpotent product of cyclic groups"),
    "center-3": (suite_center_3, "center of a 3-nilpotent product: Z(G) = <x_r^(p^a_(r-1)), G_3>"),
    "center-k": (suite_center_k, "center of a k-nilpotent product, p >= k: Z(G) = <x_r^(p^a_(r-1)), G_k>"),
    "center-2-3special": (suite_center_special, "center of a 3-nilpotent product of cyclic 2-groups"),
    "exponent-lemmas": (suite_exponent_lemmas, "[z^(p^N),y] = [z,y]^(p^N) = [z,y^(p^N)] and exponents of <y,z>_i"),
    "power-commutator": (suite_power_commutator, "[x^n,y] = [x,y]^n c_1^f_1(n) ... with binomial polynomials f_i"),
    "capability": (suite_capability, "capability verdicts and verified witnesses H with H/Z(H) = G"),
    "dihedral-tightness": (suite_dihedral, "tightness of a_r <= a_(r-1) + floor((k-1)/(p-1)) via dihedral groups"),
}


def run_suite(name: str, cfg: SuiteConfig | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = cfg or SuiteConfig()
    fn, header = SUITES[name]
    rep = SuiteReport(name, header, cfg.seed)
    start = time.perf_counter()
    fn(rep, cfg)
    rep.wall_time = time.perf_counter() - start
    return rep
