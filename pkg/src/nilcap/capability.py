"""Capability decisions and witness groups.

A group ``G`` is capable when ``G = H / Z(H)`` for some group ``H``.  This
module decides capability for the families where a closed criterion is
known, checks the general necessary condition, and builds witness groups
``H`` that can be verified with :mod:`nilcap.grouptools`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import grouptools as gt
from .basiccomm import enumerate_basic, format_tree
from .nilprod import CapExceeded, GroupSpec, make_group, prime_factors
from .valuation import hall_bound, is_prime


class Decision(str, enum.Enum):
    CAPABLE = "Capable"
    NOT_CAPABLE = "NotCapable"
    UNDECIDED = "Undecided"


# Citation tags name the result a verdict rests on.
BAER = "baer: finitely generated abelian groups"
COPRIME = "coprime reduction: a direct product of groups of coprime orders"
NECESSITY = "necessity: r > 1 and a_r <= a_(r-1) + floor((k-1)/(p-1))"
NILPROD_P_GT_K = "k-nilpotent products of cyclic p-groups with p > k"
NILPROD_2_2 = "2-nilpotent products of cyclic 2-groups"
CLASS2_2GEN = "two-generator p-groups of class 2 (p odd)"
OPEN_P_LE_K = "open: k-nilpotent products of cyclic p-groups with p <= k"


@dataclass(frozen=True)
class Witness:
    """``H`` = nilpotent product ``spec`` with optional reduced top moduli,
    followed by successive quotients by the subgroups generated by each entry
    of ``kernels`` (expressions in the generators of the current group)."""

    spec: GroupSpec
    top_moduli: tuple = ()
    kernels: tuple = ()

    def to_json(self) -> dict:
        return {
            "class": self.spec.class_k,
            "orders": list(self.spec.orders),
            "regime": self.spec.regime,
            "top_moduli": {label: m for label, m in self.top_moduli},
            "kernels": [list(k) for k in self.kernels],
        }

    def describe(self) -> str:
        s = f"{self.spec.class_k}-nilpotent product of orders {','.join(map(str, self.spec.orders))}"
        if self.spec.regime == "special_2_3":
            s += " (2-group normal form)"
        for label, m in self.top_moduli:
            s += f", {label}^{m} = e"
        for ker in self.kernels:
            s += " / <" + "; ".join(ker) + ">"
        return s


@dataclass(frozen=True)
class CapabilityVerdict:
    decision: Decision
    reason: str
    citation: str
    witness: Witness | None = None
    # The decision is proved, but the witness construction is not (verify it).
    heuristic: bool = False

    def to_json(self, verified: bool | None = None) -> dict:
        return {
            "decision": self.decision.value,
            "reason": self.reason,
            "citation": self.citation,
            "witness": self.witness.to_json() if self.witness else None,
            "heuristic_witness": self.heuristic,
            "verified": verified,
        }


@dataclass(frozen=True)
class Class2Presentation:
    """``<a, b | a^(p^alpha) = b^(p^beta) = [b,a]^(p^gamma) = e, class 2,
    a^(p^(alpha+sigma-gamma)) [b,a]^(p^sigma) = e>``."""

    p: int
    alpha: int
    beta: int
    gamma: int
    sigma: int

    def __post_init__(self):
        p, a, b, g, s = self.p, self.alpha, self.beta, self.gamma, self.sigma
        if not is_prime(p) or p == 2:
            raise ValueError("p must be an odd prime")
        problems = []
        if not a + s >= 2 * g:
            problems.append("alpha + sigma >= 2 gamma")
        if not b >= g >= 1:
            problems.append("beta >= gamma >= 1")
        if not a >= g:
            problems.append("alpha >= gamma")
        if not 0 <= s <= g:
            problems.append("0 <= sigma <= gamma")
        if s == g and not a >= b:
            problems.append("alpha >= beta when sigma = gamma")
        if problems:
            raise ValueError("presentation constraints violated: " + ", ".join(problems))

    @property
    def order(self) -> int:
        return self.p ** (self.alpha + self.beta + self.sigma)

    def relations(self) -> list[str]:
        p, a, b, g, s = self.p, self.alpha, self.beta, self.gamma, self.sigma
        return [
            f"x1^{p**a}",
            f"x2^{p**b}",
            f"[x2,x1]^{p**g}",
            "[x1,x2,x1]",
            "[x1,x2,x2]",
            f"x1^{p ** (a + s - g)} [x2,x1]^{p**s}",
        ]


# -- decisions ----------------------------------------------------------------------------


def necessary_condition(p: int, k: int, alphas) -> bool:
    """``r > 1`` and ``a_r <= a_(r-1) + floor((k-1)/(p-1))``; false means not capable."""
    alphas = sorted(alphas)
    if len(alphas) < 2:
        return False
    return alphas[-1] <= alphas[-2] + hall_bound(k, p)


def _prime_power(m: int) -> tuple[int, int]:
    ps = prime_factors(m)
    if len(ps) != 1:
        raise ValueError(f"{m} is not a prime power")
    p, a = ps[0], 0
    while m % p == 0:
        m //= p
        a += 1
    return p, a


def invariant_factors(orders) -> tuple[list[int], int]:
    """Invariant factors ``d_1 | d_2 | ...`` of the torsion part and the free rank."""
    free = sum(1 for m in orders if m == 0)
    by_prime: dict[int, list[int]] = {}
    for m in orders:
        if m > 1:
            for p in prime_factors(m):
                a = 0
                while m % p == 0:
                    m //= p
                    a += 1
                by_prime.setdefault(p, []).append(a)
    t = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * t
    for p, exps in by_prime.items():
        exps = sorted(exps)
        for i, a in enumerate(reversed(exps)):
            factors[t - 1 - i] *= p**a
    return factors, free


def _baer_by_factors(orders) -> bool:
    factors, free = invariant_factors(orders)
    chain = factors + [0] * free
    if not chain:
        return True
    return len(chain) >= 2 and chain[-1] == chain[-2]


def _baer_by_primes(orders) -> bool:
    by_prime: dict[int, list[int]] = {}
    for m in orders:
        if m > 1:
            for p in prime_factors(m):
                a = 0
                while m % p == 0:
                    m //= p
                    a += 1
                by_prime.setdefault(p, []).append(a)
    for exps in by_prime.values():
        exps.sort()
        if len(exps) < 2 or exps[-1] != exps[-2]:
            return False
    return True


def baer_abelian(orders) -> CapabilityVerdict:
    """Capability of the abelian group ``C_m1 + ... + C_mr`` (``0`` = infinite cyclic)."""
    orders = [int(m) for m in orders]
    if any(m < 0 for m in orders):
        raise ValueError("orders must be non-negative")
    capable = _baer_by_factors(orders)
    if all(m != 0 for m in orders):
        if _baer_by_primes(orders) != capable:
            raise AssertionError("invariant-factor and per-prime decisions disagree")
    factors, free = invariant_factors(orders)
    chain = factors + [0] * free
    if not capable:
        return CapabilityVerdict(
            Decision.NOT_CAPABLE,
            f"invariant factors {chain}: the two largest differ or there is only one",
            BAER,
        )
    if not chain:
        witness = Witness(GroupSpec(1, (1,), "abelian"))
        return CapabilityVerdict(Decision.CAPABLE, "trivial group", BAER, witness)
    witness = Witness(GroupSpec(2, tuple(chain)))
    return CapabilityVerdict(
        Decision.CAPABLE,
        f"invariant factors {chain}: the two largest agree",
        BAER,
        witness,
    )


def capable_nilprod(spec: GroupSpec) -> CapabilityVerdict:
    """Decide capability of a nilpotent product of cyclic p-groups."""
    if spec.class_k == 1 or spec.regime == "abelian":
        return baer_abelian(spec.orders)
    if any(m == 0 for m in spec.orders):
        raise ValueError("nilpotent-product capability needs finite orders")
    if any(m == 1 for m in spec.orders):
        raise ValueError("drop trivial factors before deciding capability")
    primes = spec.primes()
    if len(primes) != 1:
        raise ValueError("mixed primes: apply the coprime reduction first")
    p, k = primes[0], spec.class_k
    alphas = [_prime_power(m)[1] for m in spec.orders]
    r = len(alphas)
    if spec.regime == "special_2_3":
        if not necessary_condition(p, k, alphas):
            return CapabilityVerdict(Decision.NOT_CAPABLE, "necessary condition fails", NECESSITY)
        return CapabilityVerdict(Decision.UNDECIDED, "no criterion for class 3 with p = 2", OPEN_P_LE_K)
    if p > k:
        if r > 1 and alphas[-1] == alphas[-2]:
            witness = Witness(GroupSpec(k + 1, spec.orders))
            return CapabilityVerdict(
                Decision.CAPABLE,
                f"r = {r} > 1 and the two largest exponents agree",
                NILPROD_P_GT_K,
                witness,
            )
        return CapabilityVerdict(
            Decision.NOT_CAPABLE,
            "r = 1" if r == 1 else f"a_r = {alphas[-1]} differs from a_(r-1) = {alphas[-2]}",
            NILPROD_P_GT_K,
        )
    if p == 2 and k == 2:
        if r > 1 and alphas[-1] <= alphas[-2] + 1:
            witness = Witness(GroupSpec(3, spec.orders, "special_2_3"))
            # Equal generator orders in the witness are only proved for exponent p > class.
            return CapabilityVerdict(
                Decision.CAPABLE, "r > 1 and a_r <= a_(r-1) + 1", NILPROD_2_2, witness, heuristic=True
            )
        return CapabilityVerdict(
            Decision.NOT_CAPABLE,
            "r = 1" if r == 1 else "a_r > a_(r-1) + 1",
            NILPROD_2_2,
        )
    if not necessary_condition(p, k, alphas):
        return CapabilityVerdict(Decision.NOT_CAPABLE, "necessary condition fails", NECESSITY)
    return CapabilityVerdict(
        Decision.UNDECIDED,
        f"necessary condition holds but no criterion is proved for p = {p}, k = {k}",
        OPEN_P_LE_K,
    )


def capable_class2_2gen(pres: Class2Presentation) -> CapabilityVerdict:
    """Two-generator class-2 p-groups: capable iff ``alpha == beta``."""
    p, a, b, g, s = pres.p, pres.alpha, pres.beta, pres.gamma, pres.sigma
    if a != b:
        return CapabilityVerdict(
            Decision.NOT_CAPABLE, f"alpha = {a} differs from beta = {b}", CLASS2_2GEN
        )
    spec = GroupSpec(3, (p**a, p**a))
    top = (("[x2,x1,x1]", p**g), ("[x2,x1,x2]", p**g))
    if s == g:
        witness = Witness(spec, top)
    else:
        top = (("[x2,x1,x1]", p**s), ("[x2,x1,x2]", p**g))
        kernels = ((f"[x2,x1]^{p ** (a + s - g)} [x2,x1,x2]^{-(p**s)}",),)
        witness = Witness(spec, top, kernels)
    return CapabilityVerdict(Decision.CAPABLE, f"alpha = beta = {a}", CLASS2_2GEN, witness)


# -- groups built from descriptions --------------------------------------------------------


def presentation_group(pres: Class2Presentation, cap: int = gt.DEFAULT_CAP) -> gt.TableGroup:
    """The group of ``pres`` as a table group with generators ``(a, b)``."""
    p, a, b, g, s = pres.p, pres.alpha, pres.beta, pres.gamma, pres.sigma
    k2 = make_group(GroupSpec(2, (p**a, p**b)))
    # Sorting puts the generator of smaller order first.
    ia, ib = (1, 2) if a <= b else (2, 1)
    xa, xb = k2.generator(ia), k2.generator(ib)
    c = k2.comm(xb, xa)
    q1 = gt.quotient_by_central(k2, gt.closure(k2, [k2.pow(c, p**g)], cap), cap)
    ya, yc = q1.project(xa), q1.project(c)
    rel = q1.mul(q1.pow(ya, p ** (a + s - g)), q1.pow(yc, p**s))
    q2 = gt.quotient_by_central(q1, gt.closure(q1, [rel], cap), cap)
    return gt.TableGroup([q2.actions[ia - 1], q2.actions[ib - 1]], q2.identity, name=str(pres))


def build_witness(witness: Witness, cap: int = gt.DEFAULT_CAP):
    group = make_group(witness.spec, dict(witness.top_moduli))
    for kernel in witness.kernels:
        sub = gt.closure(group, [group.parse(expr) for expr in kernel], cap)
        group = gt.quotient_by_central(group, sub, cap)
    return group


def abelian_target(orders) -> GroupSpec:
    """The abelian group on ``orders`` rewritten on its invariant factors."""
    factors, free = invariant_factors(orders)
    chain = factors + [0] * free
    return GroupSpec(1, tuple(chain) or (1,), "abelian")


def target_presentation(target) -> tuple[list[str], int]:
    """Defining relations (in ``x1, x2, ...``) and order of ``target``."""
    if isinstance(target, Class2Presentation):
        return target.relations(), target.order
    spec = target
    rels = [f"x{i}^{m}" for i, m in enumerate(spec.orders, start=1)]
    k = spec.class_k
    rels += [format_tree(c) for c in enumerate_basic(spec.r, k + 1) if c.weight == k + 1]
    return rels, make_group(spec).order


def _target_class(target) -> int:
    return 2 if isinstance(target, Class2Presentation) else target.class_k


def _target_rank(target) -> int:
    return 2 if isinstance(target, Class2Presentation) else target.r


BRUTE_CAP = 2**15


def verify_witness(target, verdict: CapabilityVerdict, brute_cap: int = BRUTE_CAP) -> bool:
    """Check that ``H / Z(H)`` realizes ``target`` for the verdict's witness ``H``.

    Small witnesses: the center is found by brute force and the quotient is
    checked to have the target's order, to satisfy its relations and to have
    class at most that of the target.  Larger witnesses that are nilpotent
    products use the exact layered center: the relations must evaluate into
    ``Z(H)``, ``H`` must have class at most one above the target, and
    ``|H| / |Z(H)|`` must equal ``|G|``.  Either way ``H / Z(H)`` is then a
    quotient of the target of the same order.
    """
    if verdict.decision != Decision.CAPABLE or verdict.witness is None:
        raise ValueError("only Capable verdicts with a witness can be verified")
    if any(m == 0 for m in verdict.witness.spec.orders):
        raise ValueError("witness is infinite")
    rels, order = target_presentation(target)
    if order == 0:
        raise ValueError("target is infinite")
    k = _target_class(target)
    if verdict.witness.spec.r != _target_rank(target) and order > 1:
        return False
    h = build_witness(verdict.witness, brute_cap)
    if h.order <= brute_cap:
        z = gt.center_bruteforce(h, brute_cap)
        q = gt.quotient_by_central(h, z, brute_cap)
        if order == 1:
            return q.order == 1
        return gt.matches_presentation(q, rels, order) and gt.nilpotency_class(q, brute_cap) <= k
    if isinstance(h, gt.TableGroup) or h.trees is None:
        raise CapExceeded(h.order, brute_cap)
    if h.k > k + 1:
        return False
    center = gt.center_layered(h)
    if h.order != order * center.order:
        return False
    return all(center.contains(h, h.parse(rel)) for rel in rels)


def dihedral(order: int) -> gt.TableGroup:
    """Dihedral group of the given order from ``<s, t | s^2, t^(n), (s t)^2>``."""
    n = order // 2
    return gt.todd_coxeter(2, ["x1^2", f"x2^{n}", "x1 x2 x1 x2"])


def dihedral_tightness(k: int, cap: int = gt.DEFAULT_CAP) -> dict:
    """Realize ``D_(2^(k+1))`` as ``D_(2^(k+2)) / Z`` and report its invariants."""
    big = dihedral(2 ** (k + 2))
    z = gt.center_bruteforce(big, cap)
    q = gt.quotient_by_central(big, z, cap)
    small_rels = ["x1^2", f"x2^{2**k}", "x1 x2 x1 x2"]
    orders = sorted(q.element_order(x) for x in q.generators)
    alphas = [int(math.log2(m)) for m in orders]
    return {
        "k": k,
        "witness_order": big.order,
        "center_order": z.order,
        "quotient_order": q.order,
        "matches": gt.matches_presentation(q, small_rels, 2 ** (k + 1)),
        "class": gt.nilpotency_class(q, cap),
        "alphas": alphas,
        "tight": alphas[-1] == alphas[-2] + hall_bound(k, 2),
    }


def extraspecial_p5(p: int) -> gt.TableGroup:
    """The extraspecial group of order ``p^5`` used as an insufficiency example."""
    rels = [f"x{i}^{p}" for i in range(1, 5)]
    rels += ["[x3,x1] [x3,x2]^-1", "[x3,x1] [x4,x1]^-1", "[x4,x2]", "[x4,x3]", "[x2,x1]"]
    rels += [f"[x{i},x{j},x{m}]" for i in range(1, 5) for j in range(1, 5) for m in range(1, 5) if i != j]
    return gt.todd_coxeter(4, rels)
