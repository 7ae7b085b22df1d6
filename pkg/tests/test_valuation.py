import random

import pytest

from nilcap.valuation import (
    INF,
    binom,
    binom_sum_divisibility,
    carries_base_p,
    choose2,
    digits,
    floor_log,
    hall_bound,
    is_prime,
    max_s_bound,
    ord_p,
    prime_power_binom_valuation,
)


def pascal(n):
    rows = [[1]]
    for _ in range(n):
        prev = rows[-1]
        rows.append([1] + [a + b for a, b in zip(prev, prev[1:])] + [1])
    return rows


PASCAL = pascal(60)


def test_ord_p_examples():
    assert ord_p(2, 8) == 3
    assert ord_p(3, 0) is INF
    assert ord_p(5, 28) == 0
    assert ord_p(3, -54) == 3


def test_ord_p_rejects_composite():
    with pytest.raises(ValueError):
        ord_p(4, 8)
    with pytest.raises(ValueError):
        ord_p(1, 8)


def test_infinity_ordering():
    assert INF > 10**100
    assert not INF < 5
    assert INF == INF
    assert max(3, INF) is INF
    assert sorted([INF, 2, 0]) == [0, 2, INF]


def test_binom_examples():
    assert binom(8, 2) == 28
    assert binom(4, 0) == 1
    assert binom(30, 15) == 155117520
    assert binom(3, 5) == 0
    assert binom(3, -1) == 0


def test_binom_matches_pascal():
    for n, row in enumerate(PASCAL):
        for m, value in enumerate(row):
            assert binom(n, m) == value


def test_choose2_negative():
    assert choose2(-3) == 6
    assert choose2(0) == choose2(1) == 0
    assert choose2(5) == 10


def test_digits():
    assert digits(2, 6) == [0, 1, 1]
    assert digits(3, 0) == []


def test_carries_examples():
    assert carries_base_p(2, 6, 2) == 2
    assert carries_base_p(3, 1, 1) == 0
    assert carries_base_p(2, 1, 1) == 1


def test_kummer_against_pascal():
    # Oracle: Pascal's triangle and naive valuation by repeated division.
    def naive_val(p, a):
        v = 0
        while a % p == 0:
            a //= p
            v += 1
        return v

    for p in (2, 3, 5, 7):
        for n, row in enumerate(PASCAL):
            for m, value in enumerate(row):
                assert naive_val(p, value) == carries_base_p(p, n - m, m)


def test_prime_power_binom_valuation_examples():
    assert prime_power_binom_valuation(2, 3, 2) == 2
    assert prime_power_binom_valuation(3, 2, 9) == 0
    assert prime_power_binom_valuation(5, 1, 1) == 1
    with pytest.raises(ValueError):
        prime_power_binom_valuation(2, 3, 9)


def test_prime_power_binom_valuation_exhaustive_small():
    for p in (2, 3, 5):
        for n in range(4):
            for a in range(1, p**n + 1):
                assert prime_power_binom_valuation(p, n, a) == ord_p(p, binom(p**n, a))


def test_floor_log():
    assert floor_log(2, 1) == 0
    assert floor_log(2, 8) == 3
    assert floor_log(3, 8) == 1
    assert floor_log(10, 999) == 2
    with pytest.raises(ValueError):
        floor_log(1, 5)


def test_binom_sum_divisibility_examples():
    assert binom_sum_divisibility(2, 4, 2) == 3
    assert binom_sum_divisibility(3, 5, 1) == 5
    assert binom_sum_divisibility(2, 3, 8) == 0


def test_binom_sum_divisibility_random():
    rng = random.Random(7)
    for p in (2, 3):
        for n in range(1, 5):
            for m in range(1, p**n + 1):
                s = sum(rng.randint(-9, 9) * binom(p**n, i) for i in range(1, m + 1))
                assert ord_p(p, s) >= binom_sum_divisibility(p, n, m)


def test_hall_bound_examples():
    assert hall_bound(2, 3) == 0
    assert hall_bound(3, 2) == 2
    assert hall_bound(1, 2) == 0
    assert hall_bound(5, 3) == 2


def test_max_s_bound_examples():
    assert max_s_bound(6, 3) == 3
    assert max_s_bound(1, 2) == 1
    assert max_s_bound(4, 5) == 1


def test_max_s_bound_brute_force():
    for k in range(1, 51):
        for n in range(2, 12):
            brute = max((k - s) // (n - 1) + floor_log(n, s + 1) for s in range(1, k + 1))
            assert max_s_bound(k, n) == brute


def test_floor_log_two_matches_reciprocal():
    for p in filter(is_prime, range(2, 200)):
        assert floor_log(p, 2) == 1 // (p - 1)
