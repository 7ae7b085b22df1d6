import pytest

import nilcap.grouptools as gt
from nilcap.nilprod import CapExceeded, GroupSpec, make_group


def G(k, orders, regime="generic"):
    return make_group(GroupSpec(k, orders, regime))


D8_RELS = ["x1^2", "x2^2", "x1 x2 x1 x2 x1 x2 x1 x2"]


def test_closure_examples():
    d8 = G(2, (2, 2))
    assert gt.closure(d8, []).order == 1
    assert gt.closure(d8, [d8.parse("[x2,x1]")]).order == 2
    assert gt.closure(d8, d8.generators).order == 8


def test_closure_cap():
    with pytest.raises(CapExceeded):
        gt.closure(G(2, (9, 9)), G(2, (9, 9)).generators, cap=100)


def test_lower_central_examples():
    g = G(3, (3, 3))
    assert gt.lower_central(g, 1).order == g.order
    assert gt.lower_central(g, 3).order == 9
    assert gt.lower_central(G(2, (2, 2)), 3).order == 1


def test_lower_central_matches_basic_span():
    for spec in [GroupSpec(3, (3, 9)), GroupSpec(2, (2, 4, 4)), GroupSpec(3, (5, 5))]:
        g = make_group(spec)
        for i in range(1, spec.class_k + 2):
            gt.lower_central(g, i)


def test_nilpotency_class():
    assert gt.nilpotency_class(G(3, (3, 3))) == 3
    assert gt.nilpotency_class(G(1, (2, 4), "abelian")) == 1
    assert gt.nilpotency_class(G(3, (2, 4), "special_2_3")) == 3


def test_center_examples():
    d8 = G(2, (2, 2))
    z = gt.center_bruteforce(d8)
    assert z.order == 2
    assert z.elements == gt.lower_central(d8, 2).elements
    ab = G(1, (2, 4), "abelian")
    assert gt.center_bruteforce(ab).order == ab.order
    sp = G(3, (2, 2), "special_2_3")
    assert gt.center_bruteforce(sp).elements == gt.closure(sp, [sp.parse("[x2,x1]^2")]).elements


def test_center_formula_examples():
    g = G(2, (3, 3))
    assert gt.center_formula(g).elements == gt.lower_central(g, 2).elements
    with pytest.raises(gt.NoClosedForm):
        gt.center_formula(G(2, (2, 3)))


@pytest.mark.parametrize(
    "k,orders,regime",
    [(2, (3, 3), "generic"), (2, (3, 9), "generic"), (2, (3, 3, 9), "generic"), (3, (3, 9), "generic"),
     (3, (5, 5), "generic"), (3, (2, 4), "special_2_3"), (3, (4, 4), "special_2_3")],
)
def test_center_paths_agree(k, orders, regime):
    g = G(k, orders, regime)
    brute = gt.center_bruteforce(g)
    assert gt.center_formula(g).elements == brute.elements
    if g.order <= 512:
        assert gt.center_by_definition(g).elements == brute.elements
    if regime == "generic":
        lay = gt.center_layered(g)
        assert lay.order == brute.order
        assert all(lay.contains(g, x) for x in lay.generators)


def test_center_three_nine():
    g = G(3, (3, 9))
    want = gt.closure(g, [g.parse("x2^3"), g.parse("[x2,x1,x1]"), g.parse("[x2,x1,x2]")])
    assert gt.center_bruteforce(g).elements == want.elements


def test_abelian_subgroup_order():
    g = G(3, (5, 25))
    gens = gt.center_formula_generators(g)
    assert gt.abelian_subgroup_order(g, gens) == gt.center_bruteforce(g).order
    with pytest.raises(ValueError):
        gt.abelian_subgroup_order(g, g.generators)


def test_quotient_examples():
    g = G(3, (3, 3))
    q = gt.quotient_by_central(g, gt.lower_central(g, 3))
    assert q.order == 27
    rels = ["x1^3", "x2^3", "[x2,x1]^3", "[x2,x1,x1]", "[x2,x1,x2]"]
    assert gt.matches_presentation(q, rels, 27)
    # The quotient table matches the 2-nilpotent product under x_i -> x_i.
    k2 = G(2, (3, 3))
    for a in g.elements():
        for x in g.generators:
            lhs = q.project(g.mul(a, x))
            image = k2.element(a.exps[:3])
            assert q.reps[lhs].exps[:3] == k2.mul(image, k2.element(x.exps[:3])).exps
    triv = gt.quotient_by_central(g, gt.closure(g, []))
    assert triv.order == g.order


def test_special_quotient_is_d8():
    sp = G(3, (2, 2), "special_2_3")
    q = gt.quotient_by_central(sp, gt.center_bruteforce(sp))
    assert q.order == 8
    assert gt.matches_presentation(q, D8_RELS, 8)
    assert not gt.matches_presentation(q, D8_RELS, 16)


def test_quotient_requires_central_kernel():
    g = G(2, (3, 3))
    with pytest.raises(gt.NotCentral):
        gt.quotient_by_central(g, gt.closure(g, [g.generator(1)]))
    with pytest.raises(ValueError):
        gt.quotient(g, gt.closure(g, [g.generator(1)]))


def test_exponent_examples():
    g = G(3, (3, 3))
    assert gt.exponent_of(g, gt.closure(g, [])) == 1
    assert gt.exponent_of(g, gt.lower_central(g, 3)) == 3
    h = G(2, (2, 4))
    assert gt.exponent_of(h, gt.lower_central(h, 2)) == 2


def test_todd_coxeter_dihedral():
    for n in (4, 8, 16):
        t = gt.todd_coxeter(2, ["x1^2", f"x2^{n}", "x1 x2 x1 x2"])
        assert t.order == 2 * n
        assert gt.center_bruteforce(t).order == 2


def test_todd_coxeter_quaternion_and_trivial():
    q8 = gt.todd_coxeter(2, ["x1^4", "x1^2 x2^-2", "x2^-1 x1 x2 x1"])
    assert q8.order == 8
    assert sum(1 for a in q8.elements() if q8.element_order(a) == 2) == 1
    assert gt.todd_coxeter(1, ["x1"]).order == 1


def test_table_group_ops():
    t = gt.todd_coxeter(2, ["x1^2", "x2^3", "x1 x2 x1 x2"])
    assert t.order == 6
    for a in t.elements():
        assert t.mul(a, t.inv(a)) == t.identity
    assert t.element_order(t.generator(2)) == 3
    assert gt.nilpotency_class is not None
    with pytest.raises(ValueError):
        gt.nilpotency_class(t)


def test_subgroup_lower_central():
    g = G(3, (3, 3))
    y, z = g.generators
    assert gt.subgroup_lower_central(g, [y, z], 3).elements == gt.lower_central(g, 3).elements
    assert gt.subgroup_lower_central(g, [y], 2).order == 1


def test_lagrange():
    g = G(3, (3, 9))
    for i in (1, 2, 3):
        assert g.order % gt.lower_central(g, i).order == 0
    assert g.order % gt.center_bruteforce(g).order == 0
