"""Exact p-adic valuations, binomial coefficients and the small integer bounds
used throughout the nilpotent-product code.

Everything here is integer-only; no floating point logarithms are used.
"""

from __future__ import annotations

from functools import total_ordering


@total_ordering
class _Infinity:
    """The valuation of zero; larger than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("nilcap.INF")

    def __repr__(self):
        return "INF"

    __str__ = __repr__


INF = _Infinity()


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def ord_p(p: int, a: int):
    """Exponent of the largest power of ``p`` dividing ``a``; ``INF`` for ``a == 0``."""
    _check_prime(p)
    if a == 0:
        return INF
    a = abs(a)
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def binom(n: int, m: int) -> int:
    """Binomial coefficient for ``n >= 0``; zero when ``m > n`` or ``m < 0``."""
    if n < 0:
        raise ValueError("binom requires n >= 0")
    if m < 0 or m > n:
        return 0
    m = min(m, n - m)
    num = 1
    for i in range(1, m + 1):
        num = num * (n - m + i) // i
    return num


def choose2(r: int) -> int:
    """``r(r-1)/2``, valid for negative ``r`` as well."""
    return r * (r - 1) // 2


def digits(p: int, a: int) -> list[int]:
    """Base-``p`` digits of ``a >= 0``, least significant first."""
    if a < 0:
        raise ValueError("digits requires a >= 0")
    out = []
    while a:
        a, d = divmod(a, p)
        out.append(d)
    return out


def carries_base_p(p: int, a: int, b: int) -> int:
    """Number of carries when adding ``a`` and ``b`` in base ``p``."""
    _check_prime(p)
    if a < 0 or b < 0:
        raise ValueError("carries_base_p requires non-negative summands")
    carries = carry = 0
    while a or b or carry:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        carry = 1 if da + db + carry >= p else 0
        carries += carry
    return carries


def prime_power_binom_valuation(p: int, n: int, a: int) -> int:
    """``ord_p`` of ``binom(p**n, a)`` for ``1 <= a <= p**n``, i.e. ``n - ord_p(a)``."""
    _check_prime(p)
    if n < 0 or not 1 <= a <= p**n:
        raise ValueError(f"need 1 <= a <= {p}^{n}, got a={a}")
    return n - ord_p(p, a)


def floor_log(base: int, m: int) -> int:
    """Largest ``e`` with ``base**e <= m`` (for ``m >= 1``)."""
    if base < 2 or m < 1:
        raise ValueError("floor_log requires base >= 2 and m >= 1")
    e, power = 0, base
    while power <= m:
        power *= base
        e += 1
    return e


def binom_sum_divisibility(p: int, n: int, m: int) -> int:
    """Guaranteed ``p``-power dividing ``sum_{i<=m} a_i binom(p**n, i)`` for integer ``a_i``."""
    _check_prime(p)
    if n < 0 or not 1 <= m <= p**n:
        raise ValueError(f"need 1 <= m <= {p}^{n}, got m={m}")
    return n - floor_log(p, m)


def hall_bound(k: int, p: int) -> int:
    """``floor((k-1)/(p-1))``: the extra order allowed for the last generator."""
    _check_prime(p)
    if k < 1:
        raise ValueError("class must be >= 1")
    return (k - 1) // (p - 1)


def max_s_bound(k: int, n: int) -> int:
    """Closed form of ``max_{1<=s<=k} floor((k-s)/(n-1)) + floor(log_n(s+1))``."""
    if k < 1 or n < 2:
        raise ValueError("need k >= 1 and n >= 2")
    return k // (n - 1)
