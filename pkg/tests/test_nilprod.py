import itertools
import random

import pytest

from nilcap.collector import free_group
from nilcap.nilprod import (
    GroupSpec,
    RegimeError,
    element_order,
    format_element,
    make_group,
    mul_formula,
    mul_special_2_3,
    parse,
    special_f_ji,
)


def G(k, orders, regime="generic", top=None):
    return make_group(GroupSpec(k, orders, regime), top)


def test_moduli_examples():
    assert G(2, (3, 9)).moduli == (3, 9, 3)
    g = G(3, (2, 2), "special_2_3")
    assert g.labels == ("x1", "x2", "[x2,x1]", "[x2,x1^2]", "[x2^2,x1]")
    assert g.moduli == (2, 2, 4, 1, 1)
    with pytest.raises(RegimeError):
        G(3, (2, 2))


def test_spec_sorts_orders():
    spec = GroupSpec(2, (9, 0, 3))
    assert spec.orders == (3, 9, 0)
    assert spec.permutation == (2, 0, 1)
    assert GroupSpec(3, (4, 2), "special23").regime == "special_2_3"


def test_reduce_examples():
    g = G(2, (3, 9))
    assert g.element((3, 0, 0)).exps == (0, 0, 0)
    assert g.element((0, 0, 5)).exps == (0, 0, 2)
    assert g.element((-1, 0, 0)).exps == (2, 0, 0)


def test_mul_examples():
    d8 = G(2, (2, 2))
    x1, x2 = d8.generators
    assert format_element(x2 * x1) == "x1 x2 [x2,x1]"
    assert format_element((x1 * x2) ** 2) == "[x2,x1]"
    assert (x1 * x2) ** 4 == d8.identity
    g = G(3, (3, 3))
    y1, y2 = g.generators
    assert format_element(y2**2 * y1) == "x1 x2^2 [x2,x1]^2 [x2,x1,x2]"


def test_special_mul_examples():
    g = G(3, (2, 2), "special_2_3")
    x1, x2 = g.generators
    assert mul_special_2_3(x2, x2) == g.identity
    assert format_element(mul_special_2_3(x2, x1)) == "x1 x2 [x2,x1]"
    c2 = g.parse("[x2,x1]^2")
    assert mul_special_2_3(c2, c2) == g.identity


def test_pow_inv_comm_examples():
    d8 = G(2, (2, 2))
    assert d8.inv(d8.identity) == d8.identity
    g = G(2, (3, 9))
    assert g.comm(g.generator(2), g.generator(1)).exps == (0, 0, 1)


def test_element_order_examples():
    d8 = G(2, (2, 2))
    assert element_order(d8.parse("x1 x2")) == 4
    assert element_order(d8.identity) == 1
    assert element_order(G(3, (2, 2), "special_2_3").parse("[x2,x1]")) == 4
    inf = G(2, (3, 0))
    assert element_order(inf.generator(2)) == 0
    assert element_order(inf.generator(1)) == 3


def test_parse_examples():
    g = G(2, (3, 9))
    assert parse(g, "x2^2 [x2,x1]^3").exps == (0, 2, 0)
    assert parse(g, "") == g.identity
    h = G(3, (5, 5))
    assert parse(h, "[x2,x1,x1]").exps == (0, 0, 0, 1, 0)
    with pytest.raises(ValueError):
        parse(g, "x3")


def test_order_and_elements():
    g = G(2, (2, 4))
    assert g.order == 2 * 4 * 2
    els = list(g.elements())
    assert len(set(els)) == g.order
    assert not G(2, (2, 0)).finite


def test_top_moduli_override():
    g = G(3, (9, 9), top={"[x2,x1,x1]": 3})
    assert g.moduli[g.label_index("[x2,x1,x1]")] == 3
    with pytest.raises(ValueError):
        G(3, (9, 9), top={"[x2,x1]": 3})
    with pytest.raises(ValueError):
        G(3, (9, 9), top={"[x2,x1,x1]": 2})


def brute_assoc(g):
    els = list(g.elements())
    for a, b, c in itertools.product(els, repeat=3):
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


@pytest.mark.parametrize("orders", [(2, 2), (2, 4)])
def test_special_is_a_group(orders):
    g = G(3, orders, "special_2_3")
    if g.order <= 64:
        brute_assoc(g)
    for a in g.elements():
        assert g.mul(a, g.inv(a)) == g.identity


def test_special_structure():
    # Oracle: the structure the normal form claims, measured by brute force.
    import nilcap.grouptools as gt

    for orders in [(2, 2), (2, 4), (4, 4), (2, 2, 2)]:
        g = G(3, orders, "special_2_3")
        for i, m in enumerate(orders, start=1):
            assert g.element_order(g.generator(i)) == m
        assert gt.nilpotency_class(g) <= 3
        assert len(gt.closure(g, g.generators)) == g.order
        # Each label evaluates to its own basis vector.
        for idx, label in enumerate(g.labels):
            if g.moduli[idx] > 1:
                assert g.parse(label) == g.basis_element(idx)


def test_special_formula_well_defined():
    # Shifting d_1 by 2^a1 changes f_21 only by a multiple of 2^(a1+1).
    rng = random.Random(0)
    for a1 in range(1, 4):
        for _ in range(200):
            c = {key: rng.randint(-10, 10) for key in ("1", "2", "21", "211", "212")}
            d = {key: rng.randint(-10, 10) for key in ("1", "2", "21", "211", "212")}
            shifted = dict(d, **{"1": d["1"] + 2**a1})
            assert (special_f_ji(c, d) - special_f_ji(c, shifted)) % 2 ** (a1 + 1) == 0


@pytest.mark.parametrize(
    "k,orders",
    [(2, (2, 2)), (2, (3, 9)), (2, (2, 4, 6)), (2, (3, 0)), (3, (3, 3)), (3, (3, 9)), (3, (5, 5, 25)), (3, (9, 9)), (3, (3, 0))],
)
def test_closed_formulas_match_collector(k, orders):
    g = G(k, orders)
    rng = random.Random(len(orders) * 10 + k)
    for _ in range(300):
        a, b = g.random_element(rng), g.random_element(rng)
        assert mul_formula(a, b) == g.mul(a, b)


def test_generic_mul_lifts_free_product():
    # Reduction commutes with multiplication: lifting any residue is sound.
    g = G(3, (3, 9))
    f = free_group(2, 3)
    rng = random.Random(4)
    for _ in range(100):
        a, b = g.random_element(rng), g.random_element(rng)
        shift = [rng.randint(-2, 2) * m for m in g.moduli]
        lifted = f.element([x + s for x, s in zip(a.exps, shift)])
        assert g.element((lifted * f.element(b.exps)).exps) == g.mul(a, b)


def test_translation_identities_class_three():
    g = G(3, (3, 9, 9))
    x = g.generators
    c = g.comm
    for i, j, k in itertools.permutations(range(3), 3):
        if not i < j < k:
            continue
        assert c(c(x[j], x[i]), x[k]) == g.inv(c(c(x[i], x[j]), x[k]))
        assert c(c(x[k], x[j]), x[i]) == g.inv(c(c(x[j], x[i]), x[k])) * c(c(x[k], x[i]), x[j])


def test_dihedral_eight():
    d8 = G(2, (2, 2))
    assert d8.order == 8
    assert any(d8.element_order(a) == 4 for a in d8.elements())
    assert not d8.commutes(*d8.generators)
