"""Standard and cost-instrumented denotational evaluators.

Values are shared between the two semantics for the ground constructors
(``VNat``, ``VList``, ``VPair``); only functions differ.  A standard function
is a ``VFun`` mapping values to values, a costed function is a ``CFun``
mapping cost-free values to ``Costed`` results.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Union

from .syntax import (
    Add, App, Cons, IFold, Lam, LFold, ListCase, NatCase, NatLit, Nil, PairCase, PairLit, Term,
    Var,
)


@dataclass(frozen=True)
class VNat:
    n: int


@dataclass(frozen=True)
class VList:
    elems: tuple = ()


@dataclass(frozen=True)
class VPair:
    fst: object
    snd: object


@dataclass(frozen=True, eq=False)
class VFun:
    fn: Callable[["Value"], "Value"]

    def __call__(self, v):
        return self.fn(v)


@dataclass(frozen=True, eq=False)
class CFun:
    fn: Callable[["CostVal"], "Costed"]

    def __call__(self, v):
        return self.fn(v)


Value = Union[VNat, VList, VPair, VFun]
CostVal = Union[VNat, VList, VPair, CFun]


@dataclass(frozen=True)
class Costed:
    val: CostVal
    cost: int


class GroundnessError(ValueError):
    pass


class ShapeError(RuntimeError):
    """Evaluation reached a value of the wrong shape; only possible on ill-typed input."""


# ---------------------------------------------------------------- cost algebra


def get_val(x: Costed) -> CostVal:
    return x.val


def get_cost(x: Costed) -> int:
    return x.cost


def add_cost(c: int, x: Costed) -> Costed:
    return Costed(x.val, c + x.cost)


def ccons(x: Costed, xs: Costed) -> Costed:
    if not isinstance(xs.val, VList):
        raise ShapeError(f"cons onto non-list {xs.val!r}")
    return Costed(VList((x.val,) + xs.val.elems), x.cost + xs.cost)


def cpair(x: Costed, y: Costed) -> Costed:
    return Costed(VPair(x.val, y.val), x.cost + y.cost)


def capp(f: Costed, x: Costed) -> Costed:
    if not isinstance(f.val, CFun):
        raise ShapeError(f"application of non-function {f.val!r}")
    return add_cost(f.cost + x.cost, f.val(x.val))


def app_cost(f: Costed, x: Costed) -> int:
    """Cost of applying ``f`` to ``x``, not counting the cost already carried by ``x``."""
    return capp(f, x).cost - x.cost


def clist(*xs: Costed) -> Costed:
    """``x1 (+) ... (+) xn (+) ([], 0)``."""
    out = Costed(VList(()), 0)
    for x in reversed(xs):
        out = ccons(x, out)
    return out


def is_ground(v) -> bool:
    match v:
        case VNat():
            return True
        case VList(elems):
            return all(is_ground(e) for e in elems)
        case VPair(a, b):
            return is_ground(a) and is_ground(b)
    return False


def strip(v: CostVal) -> Value:
    """Convert a ground costed-semantics value to a standard one."""
    match v:
        case VNat():
            return v
        case VList(elems):
            return VList(tuple(strip(e) for e in elems))
        case VPair(a, b):
            return VPair(strip(a), strip(b))
    raise GroundnessError(f"value embeds a function: {v!r}")


def nat(n: int) -> VNat:
    return VNat(n)


def from_py(x):
    """Build a ground value from ints, lists and 2-tuples."""
    if isinstance(x, bool):
        raise TypeError("booleans are not values")
    if isinstance(x, int):
        return VNat(x)
    if isinstance(x, list):
        return VList(tuple(from_py(e) for e in x))
    if isinstance(x, tuple) and len(x) == 2:
        return VPair(from_py(x[0]), from_py(x[1]))
    raise TypeError(f"cannot convert {x!r}")


def to_py(v):
    match v:
        case VNat(n):
            return n
        case VList(elems):
            return [to_py(e) for e in elems]
        case VPair(a, b):
            return (to_py(a), to_py(b))
    raise GroundnessError(f"value embeds a function: {v!r}")


# ---------------------------------------------------------------- cost model


@dataclass(frozen=True)
class CostModel:
    """Cost charged per construct.  Only beta steps cost by default."""

    beta: int = 1
    cons: int = 0
    pair: int = 0
    case: int = 0


UNIT = CostModel()


# ---------------------------------------------------------------- evaluators


def _nat(v) -> int:
    if not isinstance(v, VNat):
        raise ShapeError(f"expected a natural, got {v!r}")
    return v.n


def _list(v) -> tuple:
    if not isinstance(v, VList):
        raise ShapeError(f"expected a list, got {v!r}")
    return v.elems


def _pair(v) -> VPair:
    if not isinstance(v, VPair):
        raise ShapeError(f"expected a pair, got {v!r}")
    return v


def _fun(v):
    if not isinstance(v, (VFun, CFun)):
        raise ShapeError(f"expected a function, got {v!r}")
    return v


def eval_std(env: Mapping[str, Value], t: Term) -> Value:
    env = dict(env)
    match t:
        case Var(x):
            if x not in env:
                raise ShapeError(f"unbound variable {x}")
            return env[x]
        case NatLit(n):
            return VNat(n)
        case NatCase(s, z, x, p):
            v = eval_std(env, s)
            if _nat(v) == 0:
                return eval_std(env, z)
            return eval_std({**env, x: v}, p)
        case Add(l, r):
            return VNat(_nat(eval_std(env, l)) + _nat(eval_std(env, r)))
        case Nil():
            return VList(())
        case Cons(h, tl):
            hv = eval_std(env, h)
            return VList((hv,) + _list(eval_std(env, tl)))
        case ListCase(s, n, x, xs, c):
            elems = _list(eval_std(env, s))
            if not elems:
                return eval_std(env, n)
            return eval_std({**env, x: elems[0], xs: VList(elems[1:])}, c)
        case PairLit(a, b):
            return VPair(eval_std(env, a), eval_std(env, b))
        case PairCase(s, x, y, b):
            p = _pair(eval_std(env, s))
            return eval_std({**env, x: p.fst, y: p.snd}, b)
        case Lam(x, _, body):
            return VFun(lambda v: eval_std({**env, x: v}, body))
        case App(f, a):
            fv = _fun(eval_std(env, f))
            return fv(eval_std(env, a))
        case LFold(step, init, xs):
            g = _fun(eval_std(env, step))
            acc = eval_std(env, init)
            for v in reversed(_list(eval_std(env, xs))):
                acc = _fun(g(v))(acc)
            return acc
        case IFold(step, init, n):
            g = _fun(eval_std(env, step))
            acc = eval_std(env, init)
            for _ in range(_nat(eval_std(env, n))):
                acc = g(acc)
            return acc
    raise TypeError(f"not a term: {t!r}")


def eval_cost(env: Mapping[str, CostVal], t: Term, model: CostModel = UNIT) -> Costed:
    """Evaluate ``t`` to a value paired with the number of beta steps it took.

    Environment entries carry no cost of their own.
    """
    env = dict(env)

    def ev(t, env=env):
        return eval_cost(env, t, model)

    match t:
        case Var(x):
            if x not in env:
                raise ShapeError(f"unbound variable {x}")
            return Costed(env[x], 0)
        case NatLit(n):
            return Costed(VNat(n), 0)
        case NatCase(s, z, x, p):
            sv = ev(s)
            if _nat(sv.val) == 0:
                return add_cost(sv.cost + model.case, ev(z))
            return add_cost(sv.cost + model.case, ev(p, {**env, x: sv.val}))
        case Add(l, r):
            lv, rv = ev(l), ev(r)
            return Costed(VNat(_nat(lv.val) + _nat(rv.val)), lv.cost + rv.cost)
        case Nil():
            return Costed(VList(()), 0)
        case Cons(h, tl):
            hv, tv = ev(h), ev(tl)
            _list(tv.val)
            return add_cost(model.cons, ccons(hv, tv))
        case ListCase(s, n, x, xs, c):
            sv = ev(s)
            elems = _list(sv.val)
            if not elems:
                return add_cost(sv.cost + model.case, ev(n))
            inner = {**env, x: elems[0], xs: VList(elems[1:])}
            return add_cost(sv.cost + model.case, ev(c, inner))
        case PairLit(a, b):
            return add_cost(model.pair, cpair(ev(a), ev(b)))
        case PairCase(s, x, y, b):
            sv = ev(s)
            p = _pair(sv.val)
            return add_cost(sv.cost + model.case, ev(b, {**env, x: p.fst, y: p.snd}))
        case Lam(x, _, body):
            return Costed(CFun(lambda v: add_cost(model.beta, ev(body, {**env, x: v}))), 0)
        case App(f, a):
            fv, av = ev(f), ev(a)
            _fun(fv.val)
            return capp(fv, av)
        case LFold(step, init, xs):
            gv = ev(step)
            g = _fun(gv.val)
            acc = ev(init)
            lv = ev(xs)
            for v in reversed(_list(lv.val)):
                partial = g(v)
                _fun(partial.val)
                acc = capp(partial, acc)
            return add_cost(gv.cost + lv.cost, acc)
        case IFold(step, init, n):
            gv = ev(step)
            g = Costed(_fun(gv.val), 0)
            acc = ev(init)
            nv = ev(n)
            for _ in range(_nat(nv.val)):
                acc = capp(g, acc)
            return add_cost(gv.cost + nv.cost, acc)
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------- JSON encoding


def value_to_json(v):
    match v:
        case VNat(n):
            return n
        case VList(elems):
            return [value_to_json(e) for e in elems]
        case VPair(a, b):
            return {"fst": value_to_json(a), "snd": value_to_json(b)}
        case VFun() | CFun():
            return {"fun": "<opaque>"}
    raise TypeError(f"not a value: {v!r}")


def value_from_json(j):
    if isinstance(j, bool):
        raise ValueError("booleans are not values")
    if isinstance(j, int):
        return VNat(j)
    if isinstance(j, list):
        return VList(tuple(value_from_json(e) for e in j))
    if isinstance(j, dict) and set(j) == {"fst", "snd"}:
        return VPair(value_from_json(j["fst"]), value_from_json(j["snd"]))
    raise ValueError(f"cannot decode value {j!r}")


def costed_to_json(x: Costed) -> dict:
    return {"value": value_to_json(x.val), "cost": x.cost}


def show_value(v) -> str:
    match v:
        case VNat(n):
            return str(n)
        case VList(elems):
            return "[" + ", ".join(show_value(e) for e in elems) + "]"
        case VPair(a, b):
            return f"({show_value(a)}, {show_value(b)})"
    return "<fun>"
