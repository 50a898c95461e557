"""Acceptance criteria 1-11. Each test prints one PASS/FAIL line."""

import random
from collections import Counter

import pytest

from costlr.corpus import (
    DOUBLE, FUSION_BAD, FUSION_GOOD, FUSION_K, GROUND, MONO_F, NAT_FUNS, POLY, SHAPE_INSTANCES,
    fusion_costly_k,
)
from costlr.grid import lifting_grid
from costlr.oracle import beta_count_oracle
from costlr.paramtest import ParamTestConfig, run_param_test
from costlr.semantics import (
    Costed, VList, VNat, VPair, add_cost, capp, ccons, cpair, eval_cost, from_py, strip,
)
from costlr.syntax import NatTy, children, parse_term, subst_type_in_term
from costlr.theorems import Shape, Verdict, check_free_theorem, negative_control, shortcut_check

import witness_grids

LENGTH_12 = r"(\xs:[Nat]. lfold(\x:Nat. \y:Nat. 1 + y, 0, xs)) (1 : 2 : nil[Nat])"
CONSTRUCTORS = {
    "Var", "NatLit", "NatCase", "Add", "Nil", "Cons", "ListCase", "PairLit", "PairCase",
    "Lam", "App", "LFold", "IFold",
}


@pytest.fixture
def report(capsys):
    def emit(n: int, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n[criterion {n:2d}] {'PASS' if ok else 'FAIL'} {detail}")
        assert ok, detail

    return emit


def _constructors(t) -> set[str]:
    out = {type(t).__name__}
    for c in children(t):
        out |= _constructors(c)
    return out


def test_c01_length_golden_trace(report):
    t = parse_term(LENGTH_12)
    c = eval_cost({}, t)
    value, count = beta_count_oracle({}, t)
    report(1, c == Costed(VNat(2), 5) and count == 5 and value == VNat(2), f"eval={c.val}/{c.cost} oracle={count}")


def test_c02_identity_costs_one(report):
    ident = eval_cost({}, parse_term(r"\x:a. x"))
    probes = [0, 1, 42, [], [1, 2, 3], (1, [2]), ([0], (3, 4)), [[1], []]]
    bad = [p for p in probes if capp(ident, Costed(from_py(p), 0)) != Costed(from_py(p), 1)]
    report(2, not bad, f"{len(probes)} probes, mismatches={bad}")


def test_c03_oracle_agreement(report):
    covered = set().union(*(_constructors(e.term) for e in GROUND))
    bad = []
    for e in GROUND:
        value, count = beta_count_oracle({}, e.term)
        c = eval_cost({}, e.term)
        if (c.cost, strip(c.val)) != (count, value):
            bad.append(e.name)
    ok = len(GROUND) >= 30 and covered == CONSTRUCTORS and not bad
    report(3, ok, f"{len(GROUND)} terms, {len(covered)}/{len(CONSTRUCTORS)} constructors, disagreements={bad}")


def _rand_value(rng: random.Random, depth: int = 2):
    kind = rng.randrange(3 if depth else 1)
    if kind == 0:
        return VNat(rng.randrange(10))
    if kind == 1:
        return VList(tuple(VNat(rng.randrange(10)) for _ in range(rng.randrange(4))))
    return VPair(_rand_value(rng, depth - 1), _rand_value(rng, depth - 1))


def _rand_list(rng: random.Random):
    return Costed(VList(tuple(_rand_value(rng, 1) for _ in range(rng.randrange(4)))), rng.randint(-50, 50))


def test_c04_cost_algebra_laws(report):
    rng = random.Random(0)
    funs = [eval_cost({}, f.term) for f in NAT_FUNS]
    n, failures = 1000, Counter()
    for _ in range(n):
        c = rng.randint(-50, 50)
        x = Costed(_rand_value(rng), rng.randint(-50, 50))
        y = Costed(_rand_value(rng), rng.randint(-50, 50))
        xs = _rand_list(rng)
        f = add_cost(rng.randint(-50, 50), rng.choice(funs))
        k = Costed(VNat(rng.randrange(10)), rng.randint(-50, 50))
        d = rng.randint(-50, 50)
        if add_cost(c, add_cost(d, x)) != add_cost(c + d, x):
            failures["compose"] += 1
        if not (add_cost(c, ccons(x, xs)) == ccons(add_cost(c, x), xs) == ccons(x, add_cost(c, xs))):
            failures["cons"] += 1
        if not (add_cost(c, cpair(x, y)) == cpair(add_cost(c, x), y) == cpair(x, add_cost(c, y))):
            failures["pair"] += 1
        if not (add_cost(c, capp(f, k)) == capp(add_cost(c, f), k) == capp(f, add_cost(c, k))):
            failures["app"] += 1
    report(4, not failures, f"{n} triples per law, failures={dict(failures)}")


def test_c05_lifting_grid(report):
    res = lifting_grid()
    report(5, res.checked > 0 and not res.discrepancies, f"checked={res.checked} discrepancies={len(res.discrepancies)}")


def test_c06_witness_grids(report):
    results = {g.__name__: g() for g in (witness_grids.base_grid, witness_grids.pair_grid, witness_grids.list_grid)}
    ok = all(r.members and not r.discrepancies and not r.replay_failures for r in results.values())
    detail = " ".join(
        f"{k}:{r.checked}/{r.members}/{len(r.discrepancies)}/{len(r.replay_failures)}" for k, r in results.items()
    )
    report(6, ok, f"checked/members/discrepancies/replay-failures {detail}")


def test_c07_param_test(report):
    clean = run_param_test(ParamTestConfig(seed=0, iters=1000))
    mutated = run_param_test(ParamTestConfig(seed=0, iters=200, mutate=True))
    bad, caught = len(clean.failures), len(mutated.failures)
    ok = clean.iterations >= 1000 and bad == 0 and caught > 0
    report(7, ok, f"seed 0: {bad}/{clean.iterations} failures; beta=2 mutation: {caught}/{mutated.iterations}")


def test_c08_free_theorem_shapes(report):
    per_shape, bad = Counter(), []
    for inst in SHAPE_INSTANCES:
        r = check_free_theorem(inst.shape, *inst.terms())
        if r.verdict is Verdict.HOLDS and r.value_equal and r.delta in r.predicted:
            per_shape[inst.shape] += 1
        else:
            bad.append((inst.shape.value, inst.f))
    ok = not bad and all(per_shape[s] >= 3 for s in Shape)
    report(8, ok, f"holds per shape={ {s.value: per_shape[s] for s in Shape} } bad={bad}")


def test_c09_negative_control(report):
    results = {t1: negative_control(parse_term(MONO_F), parse_term(DOUBLE), parse_term(str(t1)), parse_term("0"))
               for t1 in (2, 3, 4)}
    ok = all(r.verdict is Verdict.VIOLATED for r in results.values())
    report(9, ok, " ".join(f"t1={t}:{r.verdict.value}(delta={r.delta})" for t, r in results.items()))


def test_c10_shortcut_fusion(report):
    nat = NatTy()
    fam = [shortcut_check(parse_term(FUSION_BAD), parse_term(fusion_costly_k(n)), parse_term("0"), nat, nat)
           for n in (10, 100, 1000)]
    good = shortcut_check(parse_term(FUSION_GOOD), parse_term(FUSION_K), parse_term("0"), nat, nat)
    gaps = [r.rhs_cost - r.lhs_cost for r in fam]
    ok = (
        all(r.value_equal and not r.improvement_holds for r in fam)
        and gaps[0] < gaps[1] < gaps[2]
        and len({r.lhs_cost for r in fam}) == 1
        and good.value_equal and good.improvement_holds
    )
    report(10, ok, f"gaps={gaps} lhs={[r.lhs_cost for r in fam]} good={good.lhs_cost}->{good.rhs_cost}")


def test_c11_type_substitution_invariance(report):
    entries = [p for p in POLY if len(p.type_vars) == 1]
    bad = []
    for e in entries:
        fn = eval_cost({}, e.term)
        inst = eval_cost({}, subst_type_in_term(e.term, e.type_vars[0], NatTy()))
        for p in e.probe_terms:
            arg = eval_cost({}, p)
            fn, inst = capp(fn, arg), capp(inst, arg)
            if fn.cost != inst.cost:
                bad.append(e.name)
                break
        else:
            if fn != inst:
                bad.append(e.name)
    report(11, bool(entries) and not bad, f"{len(entries)} terms, mismatches={bad}")
