"""Exhaustive grids comparing the witness procedures with brute-force lifting membership."""

import itertools
from dataclasses import dataclass, field

from costlr.relations import graph_rel, witness_base, witness_list, witness_pair
from costlr.semantics import Costed, VList, VNat, VPair, add_cost, app_cost, capp, clist, cpair, eval_cost
from costlr.stdlib import STDLIB
from costlr.syntax import parse_term

import bruteforce

COSTS = range(-2, 3)
DOUBLE = eval_cost({}, parse_term(r"\n:Nat. n + n"))
SUCC = eval_cost({}, parse_term(r"\n:Nat. n + 1"))
SLOW = eval_cost({}, parse_term(r"\n:Nat. ifold(\k:Nat. k + 1, n, n)"))


def nat(n, c=0):
    return Costed(VNat(n), c)


@dataclass
class GridResult:
    checked: int = 0
    members: int = 0
    discrepancies: list = field(default_factory=list)
    replay_failures: list = field(default_factory=list)


def base_grid() -> GridResult:
    # one point carries its own cost so the appCost bookkeeping is exercised
    r = graph_rel(SLOW, [nat(1), nat(2), nat(3, 1)])
    res = GridResult()
    vals = [VNat(n) for n in range(0, 7)]
    for v, w in itertools.product(vals, repeat=2):
        for cx, cy in itertools.product(COSTS, repeat=2):
            x, y = Costed(v, cx), Costed(w, cy)
            wit = witness_base(r, x, y)
            truth = bruteforce.cost_lift(r.rel, x, y)
            res.checked += 1
            res.members += truth
            if (wit is not None) != truth:
                res.discrepancies.append((x, y))
            if wit is not None:
                xi = r.points[wit.index - 1]
                ac = app_cost(r.g, xi)
                ok = x == add_cost(wit.c, add_cost(ac, xi)) and y == add_cost(wit.c, capp(r.g, xi))
                if not (ok and wit.consequence and capp(r.g, x) == add_cost(ac, y)):
                    res.replay_failures.append((x, y, wit))
    return res


def pair_grid() -> GridResult:
    rg = graph_rel(DOUBLE, [nat(1), nat(2)])
    rh = graph_rel(SLOW, [nat(0), nat(3)])
    fn = capp(STDLIB.map_pair_sem, cpair(rg.g, rh.g))
    res = GridResult()
    ps = [VPair(VNat(a), VNat(b)) for a in (1, 2, 5) for b in (0, 3, 5)]
    qs = [VPair(VNat(a), VNat(b)) for a in (2, 4, 5) for b in (0, 6, 5)]
    for v, w in itertools.product(ps, qs):
        for cp, cq in itertools.product(COSTS, repeat=2):
            p, q = Costed(v, cp), Costed(w, cq)
            wit = witness_pair(rg, rh, p, q)
            truth = bruteforce.pair_lift(rg.rel, rh.rel, p, q)
            res.checked += 1
            res.members += truth
            if (wit is not None) != truth:
                res.discrepancies.append((p, q))
            if wit is not None:
                arg = cpair(rg.points[wit.i - 1], rh.points[wit.j - 1])
                ac = app_cost(fn, arg)
                ok = p == add_cost(wit.c, add_cost(ac, arg)) and q == add_cost(wit.c, capp(fn, arg))
                if not (ok and wit.consequence and capp(fn, p) == add_cost(ac, q)):
                    res.replay_failures.append((p, q, wit))
    return res


def _lists(elems, max_len=3):
    out = []
    for n in range(max_len + 1):
        out.extend(VList(c) for c in itertools.product(elems, repeat=n))
    return out


def list_grid() -> GridResult:
    r = graph_rel(DOUBLE, [nat(10), nat(20)])
    ml = capp(STDLIB.map_list_sem, r.g)
    res = GridResult()
    xs_vals = _lists([VNat(10), VNat(20)])
    ys_vals = _lists([VNat(20), VNat(40), VNat(10)])
    for v, w in itertools.product(xs_vals, ys_vals):
        if len(v.elems) != len(w.elems):
            # lengths differ: never related, checked once at cost zero
            costs = [(0, 0)]
        else:
            costs = list(itertools.product(COSTS, repeat=2))
        for cx, cy in costs:
            xs, ys = Costed(v, cx), Costed(w, cy)
            wit = witness_list(r, xs, ys)
            truth = bruteforce.list_lift(r.rel, xs, ys)
            res.checked += 1
            res.members += truth
            if (wit is not None) != truth:
                res.discrepancies.append((xs, ys))
            if wit is not None:
                sel = clist(*(r.points[i - 1] for i in wit.indices))
                ac = app_cost(ml, sel)
                ok = xs == add_cost(wit.c, add_cost(ac, sel)) and ys == add_cost(wit.c, capp(ml, sel))
                if not (ok and wit.consequence and wit.value_clause and capp(ml, xs) == add_cost(ac, ys)):
                    res.replay_failures.append((xs, ys, wit))
    return res
