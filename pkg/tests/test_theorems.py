import json

import pytest

from costlr.corpus import (
    DOUBLE, FUSION_BAD, FUSION_EMPTY, FUSION_GOOD, FUSION_K, MONO_F, SHAPE_INSTANCES, SLOW,
    fusion_costly_k,
)
from costlr.semantics import Costed, VNat, app_cost, capp, cpair, eval_cost, strip
from costlr.stdlib import STDLIB
from costlr.syntax import NatTy, parse_term, parse_type
from costlr.theorems import (
    Shape, Verdict, check_free_theorem, cons_builder, negative_control, shortcut_check, sqsubseteq,
)
from costlr.typecheck import Ctx, TypeCheckError, typecheck

P, T = parse_term, parse_type
NAT = NatTy()


def run(shape, f, g, *args, tau1="Nat", tau2="Nat"):
    return check_free_theorem(shape, P(f), P(g), [P(a) for a in args], T(tau1), T(tau2))


def test_sqsubseteq():
    assert sqsubseteq(Costed(VNat(2), 3), Costed(VNat(2), 4))
    assert not sqsubseteq(Costed(VNat(2), 4), Costed(VNat(2), 3))
    assert not sqsubseteq(Costed(VNat(2), 3), Costed(VNat(5), 9))


def test_proj_example():
    r = run(Shape.PROJ, r"\x:a.\y:a. x", r"\n:Nat. n+n", "1", "2")
    assert (r.lhs, r.rhs) == (Costed(VNat(2), 3), Costed(VNat(2), 4))
    assert r.delta == 1 and r.verdict is Verdict.HOLDS
    assert r.witness["appCost(g,t1)"] == 1
    # equal appCosts: both elements are reported as matching
    assert r.witness["matched"] == [1, 2]
    assert sqsubseteq(r.lhs, r.rhs)


def test_proj_reports_the_matching_side():
    r = run(Shape.PROJ, r"\x:a.\y:a. y", SLOW, "3", "0")
    g = eval_cost({}, P(SLOW))
    assert r.predicted == (app_cost(g, Costed(VNat(3), 0)), app_cost(g, Costed(VNat(0), 0))) == (4, 1)
    # the rhs pays for g on the discarded first argument
    assert r.delta == 4 and r.witness["matched"] == [1]


def test_const_nat_example():
    r = run(Shape.CONST_NAT, r"\x:a. 7", DOUBLE, "3")
    assert r.lhs.val == r.rhs.val == VNat(7)
    assert r.delta == 1 and r.verdict is Verdict.HOLDS


def test_dup_delta_is_mappair_overhead():
    r = run(Shape.DUP, r"\x:a. (x, x)", DOUBLE, "3")
    g = eval_cost({}, P(DOUBLE))
    t = Costed(VNat(3), 0)
    mp = capp(STDLIB.map_pair_sem, cpair(g, g))
    assert r.delta == app_cost(mp, cpair(t, t)) - app_cost(g, t) == 3
    assert r.verdict is Verdict.HOLDS and r.delta > 0


def test_list_to_list_reverse():
    rev = r"\xs:[a]. lfold(\x:a. \acc:[a]. lfold(\y:a. \r:[a]. y : r, x : nil[a], acc), nil[a], xs)"
    r = run(Shape.LIST_TO_LIST, rev, SLOW, "1 : 2 : 3 : 4 : nil[Nat]")
    assert r.witness["indices"] == [4, 3, 2, 1]
    assert set(r.witness["multiplicities"].values()) == {1}
    assert r.witness["valueClause"] and r.verdict is Verdict.HOLDS
    assert r.delta == 0


def test_list_to_list_duplicating():
    r = run(Shape.LIST_TO_LIST, r"\xs:[a]. lcase xs {nil -> nil[a]; h:t -> h : h : h : nil[a]}", SLOW, "4 : 1 : nil[Nat]")
    assert r.witness["indices"] == [1, 1, 1] and r.witness["multiplicities"] == {"1": 3}
    # three copies of the head are mapped instead of one pass over the input
    assert r.delta < 0 and r.verdict is Verdict.HOLDS


@pytest.mark.parametrize("inst", SHAPE_INSTANCES, ids=lambda i: f"{i.shape.value}:{i.f[:24]}")
def test_corpus_instances_hold(inst):
    r = check_free_theorem(inst.shape, *inst.terms())
    assert r.value_equal and r.verdict is Verdict.HOLDS
    assert r.delta in r.predicted
    if inst.shape is not Shape.LIST_TO_LIST:
        assert sqsubseteq(r.lhs, r.rhs)
    assert strip(r.lhs.val) == strip(r.rhs.val)


def test_at_least_three_instances_per_shape():
    for shape in Shape:
        assert sum(i.shape is shape for i in SHAPE_INSTANCES) >= 3


def test_report_json_schema():
    r = run(Shape.PROJ, r"\x:a.\y:a. x", DOUBLE, "1", "2")
    j = json.loads(json.dumps(r.to_json()))
    assert {"shape", "lhs", "rhs", "delta", "witness", "verdict"} <= set(j)
    assert j["lhs"] == {"value": 2, "cost": 3} and j["verdict"] == "holds"


@pytest.mark.parametrize(
    "shape, f, g, args",
    [
        (Shape.PROJ, r"\x:a. x", DOUBLE, ("1", "2")),
        (Shape.PROJ, r"\x:Nat.\y:Nat. x", DOUBLE, ("1", "2")),
        (Shape.CONST_NAT, r"\x:a. 7", r"\n:[Nat]. n", ("1",)),
        (Shape.LIST_LEN, r"\xs:[a]. 0", DOUBLE, ("1",)),
        (Shape.PROJ, r"\x:a.\y:a. x", DOUBLE, ("1",)),
    ],
)
def test_bad_instances_raise(shape, f, g, args):
    with pytest.raises((TypeCheckError, ValueError)):
        run(shape, f, g, *args)


def test_non_closed_tau_rejected():
    with pytest.raises(TypeCheckError):
        run(Shape.PROJ, r"\x:a.\y:a. x", DOUBLE, "1", "2", tau1="a")


# ---------------------------------------------------------------- negative control


def test_negative_control_violated():
    r = negative_control(P(MONO_F), P(DOUBLE), P("4"), P("0"))
    assert r.verdict is Verdict.VIOLATED
    assert r.delta == 5 and r.delta not in r.predicted
    assert r.witness["monomorphic"] is True


def test_negative_control_zero_iterations_still_flagged():
    r = negative_control(P(MONO_F), P(DOUBLE), P("0"), P("3"))
    assert r.witness["monomorphic"] is True and r.notes


def test_negative_control_polymorphic_holds():
    r = negative_control(P(r"\x:a.\y:a. x"), P(DOUBLE), P("4"), P("0"))
    assert r.verdict is Verdict.HOLDS and r.witness["monomorphic"] is False


@pytest.mark.parametrize("t1", [2, 3, 5, 9])
def test_negative_control_family(t1):
    r = negative_control(P(MONO_F), P(DOUBLE), P(str(t1)), P("0"))
    assert r.verdict is Verdict.VIOLATED and r.delta == t1 + 1


# ---------------------------------------------------------------- short-cut fusion


def fusion(g, k, z="0"):
    return shortcut_check(P(g), P(k), P(z), NAT, NAT)


def test_cons_builder():
    assert typecheck(Ctx(), cons_builder(NAT)) == T("Nat -> [Nat] -> [Nat]")


def test_fusion_good():
    r = fusion(FUSION_GOOD, FUSION_K)
    assert r.value_equal and r.improvement_holds
    assert (r.lhs_cost, r.rhs_cost, r.intermediate_length) == (10, 6, 2)
    assert r.lhs.val == VNat(3)


def test_fusion_empty_producer():
    r = fusion(FUSION_EMPTY, FUSION_K)
    assert r.value_equal and r.lhs_cost == r.rhs_cost == 2


@pytest.mark.parametrize("n", [0, 1, 10, 100])
def test_fusion_counterexample(n):
    r = fusion(FUSION_BAD, fusion_costly_k(n))
    assert r.value_equal
    assert r.lhs_cost == 5 and r.rhs_cost == 5 + n
    assert r.improvement_holds == (n == 0)


def test_fusion_counterexample_grows():
    gaps = [fusion(FUSION_BAD, fusion_costly_k(n)) for n in (10, 100, 1000)]
    assert len({r.lhs_cost for r in gaps}) == 1
    d = [r.rhs_cost - r.lhs_cost for r in gaps]
    assert d[0] < d[1] < d[2]


def test_fusion_signature_checked():
    with pytest.raises(TypeCheckError):
        fusion(FUSION_GOOD, r"\x:Nat. x")
    with pytest.raises(TypeCheckError):
        shortcut_check(P(r"\k:Nat -> Nat -> Nat. \z:Nat. z"), P(FUSION_K), P("0"), NAT, NAT)


def test_fusion_json():
    j = fusion(FUSION_GOOD, FUSION_K).to_json()
    assert {"valueEqual", "lhsCost", "rhsCost", "improvementHolds", "intermediateLength"} <= set(j)
