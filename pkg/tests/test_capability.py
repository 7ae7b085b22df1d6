import dataclasses

import pytest

import nilcap.capability as cap
import nilcap.grouptools as gt
from nilcap.nilprod import CapExceeded, GroupSpec
from nilcap.valuation import ord_p

C, N, U = cap.Decision.CAPABLE, cap.Decision.NOT_CAPABLE, cap.Decision.UNDECIDED


def test_necessary_condition_examples():
    assert not cap.necessary_condition(3, 2, (1, 2))
    assert cap.necessary_condition(2, 3, (1, 1, 2))
    assert not cap.necessary_condition(5, 4, (3,))
    assert cap.necessary_condition(2, 4, (1, 4))
    assert not cap.necessary_condition(2, 4, (1, 5))


def test_invariant_factors():
    assert cap.invariant_factors([2, 3]) == ([6], 0)
    assert cap.invariant_factors([4, 6, 0]) == ([2, 12], 1)
    assert cap.invariant_factors([1, 1]) == ([], 0)


@pytest.mark.parametrize(
    "orders,want",
    [((2, 2), C), ((2, 4), N), ((0, 0), C), ((0,), N), ((6,), N), ((2, 3), N), ((6, 6), C),
     ((2, 3, 6), C), ((4, 6, 6), N), ((1,), C), ((2, 2, 0), N), ((), C)],
)
def test_baer_examples(orders, want):
    assert cap.baer_abelian(orders).decision == want


def test_baer_rejects_negative():
    with pytest.raises(ValueError):
        cap.baer_abelian([-2, 2])


@pytest.mark.parametrize(
    "k,orders,regime,want",
    [(2, (3, 3), "generic", C), (2, (3, 9), "generic", N), (2, (9,), "generic", N),
     (2, (5, 25, 25), "generic", C), (2, (2, 4), "generic", C), (2, (2, 8), "generic", N),
     (2, (2,), "generic", N), (3, (3, 3), "generic", U), (3, (3, 27), "generic", N),
     (3, (2, 4), "special_2_3", U), (3, (2, 16), "special_2_3", N), (1, (2, 4), "abelian", N),
     (4, (5, 5), "generic", C), (4, (5, 25), "generic", N)],
)
def test_nilprod_decisions(k, orders, regime, want):
    v = cap.capable_nilprod(GroupSpec(k, orders, regime))
    assert v.decision == want
    if want == C:
        assert v.witness is not None


def test_nilprod_rejects_bad_input():
    for orders in [(3, 5), (3, 1), (3, 0)]:
        with pytest.raises(ValueError):
            cap.capable_nilprod(GroupSpec(2, orders))


def test_capable_implies_necessary_condition():
    for orders in [(3, 3), (3, 9, 9), (2, 4), (2, 2), (5, 5, 25)]:
        v = cap.capable_nilprod(GroupSpec(2, orders))
        p = 2 if orders[0] == 2 else (3 if orders[0] % 3 == 0 else 5)
        al = [ord_p(p, m) for m in orders]
        if v.decision == C:
            assert cap.necessary_condition(p, 2, al)


@pytest.mark.parametrize(
    "target",
    [GroupSpec(2, (3, 3)), GroupSpec(2, (2, 2)), GroupSpec(2, (2, 4)), GroupSpec(2, (4, 8)),
     GroupSpec(2, (3, 3, 3)), GroupSpec(2, (9, 9))],
)
def test_witness_round_trip(target):
    v = cap.capable_nilprod(target)
    assert v.decision == C
    assert cap.verify_witness(target, v)


@pytest.mark.parametrize("orders", [(2, 2), (3, 3), (2, 4, 4), (0, 0), (6, 6)])
def test_abelian_witnesses(orders):
    v = cap.baer_abelian(orders)
    target = cap.abelian_target(orders)
    if 0 in orders:
        assert v.witness.spec.orders == (0, 0)
        return
    assert cap.verify_witness(target, v)


def test_trivial_abelian_witness():
    assert cap.verify_witness(cap.abelian_target([1]), cap.baer_abelian([1]))


def test_forged_witness_is_rejected():
    target = GroupSpec(2, (3, 3))
    v = cap.capable_nilprod(target)
    # (3, 9) with class 3 really does work: its center is <x2^3, H_3>.
    assert cap.verify_witness(target, dataclasses.replace(v, witness=cap.Witness(GroupSpec(3, (3, 9)))))
    for spec in [GroupSpec(3, (5, 5)), GroupSpec(3, (3, 3, 3)), GroupSpec(3, (9, 9))]:
        forged = dataclasses.replace(v, witness=cap.Witness(spec))
        assert not cap.verify_witness(target, forged)
    wrong_class = dataclasses.replace(v, witness=cap.Witness(GroupSpec(2, (3, 3))))
    assert not cap.verify_witness(target, wrong_class)


def test_verify_needs_a_witness():
    v = cap.capable_nilprod(GroupSpec(2, (3, 9)))
    with pytest.raises(ValueError):
        cap.verify_witness(GroupSpec(2, (3, 9)), v)


def test_presentation_constraints():
    with pytest.raises(ValueError):
        cap.Class2Presentation(3, 1, 1, 1, 0)
    with pytest.raises(ValueError):
        cap.Class2Presentation(2, 1, 1, 1, 1)
    with pytest.raises(ValueError):
        cap.Class2Presentation(3, 1, 2, 1, 1)


def test_presentation_groups():
    g = cap.presentation_group(cap.Class2Presentation(3, 1, 1, 1, 1))
    assert g.order == 27
    assert all(g.element_order(x) in (1, 3) for x in g.elements())
    assert gt.nilpotency_class(g) == 2
    assert cap.presentation_group(cap.Class2Presentation(3, 2, 2, 1, 0)).order == 81
    h = cap.presentation_group(cap.Class2Presentation(3, 2, 1, 1, 0))
    assert h.order == 27
    assert h.element_order(h.generator(1)) == 9
    assert h.element_order(h.generator(2)) == 3


@pytest.mark.parametrize("params", [(3, 1, 1, 1, 1), (3, 2, 2, 1, 0), (3, 2, 2, 1, 1), (3, 2, 2, 2, 2)])
def test_class2_witnesses(params):
    pres = cap.Class2Presentation(*params)
    v = cap.capable_class2_2gen(pres)
    assert v.decision == C
    assert cap.verify_witness(pres, v)


def test_class2_not_capable():
    v = cap.capable_class2_2gen(cap.Class2Presentation(3, 2, 1, 1, 1))
    assert v.decision == N
    assert v.witness is None


def test_extraspecial_regression():
    e = cap.extraspecial_p5(3)
    assert e.order == 243
    assert gt.center_bruteforce(e).order == 3
    assert gt.nilpotency_class(e) == 2


def test_dihedral_tightness():
    for k in (2, 3):
        info = cap.dihedral_tightness(k)
        assert info["matches"] and info["tight"]
        assert info["witness_order"] == 2 ** (k + 2)
        assert info["center_order"] == 2
        assert info["alphas"] == [1, k]


def test_large_witness_uses_layered_center():
    target = GroupSpec(2, (9, 9, 9))
    v = cap.capable_nilprod(target)
    assert cap.verify_witness(target, v, brute_cap=2**10)


def test_json_shapes():
    v = cap.capable_class2_2gen(cap.Class2Presentation(3, 2, 2, 1, 0))
    out = v.to_json(verified=True)
    assert out["decision"] == "Capable" and out["verified"] is True
    assert out["witness"]["class"] == 3
    assert out["witness"]["kernels"] == [["[x2,x1]^3 [x2,x1,x2]^-1"]]
    assert "/" in v.witness.describe()


def test_build_witness_cap():
    v = cap.capable_nilprod(GroupSpec(2, (9, 9)))
    with pytest.raises(CapExceeded):
        gt.closure(cap.build_witness(v.witness), cap.build_witness(v.witness).generators, cap=10)


def test_forged_verdict_for_non_capable_target():
    target = GroupSpec(2, (3, 9))
    forged = cap.CapabilityVerdict(C, "forged", cap.NILPROD_P_GT_K, cap.Witness(GroupSpec(3, (3, 9))))
    assert not cap.verify_witness(target, forged)


def test_heuristic_flag():
    v = cap.capable_nilprod(GroupSpec(2, (2, 4)))
    assert v.heuristic and v.to_json()["heuristic_witness"] is True
    assert not cap.capable_nilprod(GroupSpec(2, (3, 3))).heuristic
    assert not cap.baer_abelian([2, 2]).heuristic
