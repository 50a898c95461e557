"""Logical relations over finite ground relations, graph relations and their witnesses.

Three type-indexed relations are implemented:

* ``member_std``: the cost-free relation over standard values,
* ``member_embedded``: costs appear only in function results, which must
  agree exactly,
* ``member_lifted``: every object carries its own cost.

Relations assigned to type variables are finite sets of ground pairs, so
membership at base types is decidable.  At arrow types the universal
quantifier ranges over a bounded enumeration of the argument relation
(see ``Bounds``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .semantics import (
    CFun, Costed, CostModel, GroundnessError, UNIT, VFun, VList, VNat, VPair, add_cost,
    app_cost, capp, clist, cpair, eval_cost, eval_std, is_ground, value_to_json,
)
from .stdlib import STDLIB
from .syntax import ArrowTy, ListTy, NatTy, PairTy, Term, Ty, TyVar, pretty_ty
from .typecheck import Ctx, typecheck


class UnboundTypeVar(KeyError):
    pass


class PreconditionViolation(ValueError):
    """The environments handed to ``param_check`` are not related at their declared types."""


@dataclass(frozen=True)
class Rel:
    pairs: frozenset = frozenset()

    def __post_init__(self):
        pairs = frozenset(self.pairs)
        for a, b in pairs:
            if not (is_ground(a) and is_ground(b)):
                raise GroundnessError(f"relation pair embeds a function: {(a, b)!r}")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, *pairs) -> "Rel":
        from .semantics import from_py

        return cls(frozenset((from_py(a), from_py(b)) for a, b in pairs))

    @classmethod
    def identity(cls, values: Iterable) -> "Rel":
        return cls(frozenset((v, v) for v in values))

    def __contains__(self, pair) -> bool:
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def sorted_pairs(self) -> list:
        return sorted(self.pairs, key=lambda p: repr(p))

    def to_json(self) -> dict:
        return {"pairs": [[value_to_json(a), value_to_json(b)] for a, b in self.sorted_pairs()]}


RelEnv = Mapping[str, Rel]


@dataclass(frozen=True)
class Bounds:
    """Finite carriers used wherever a relation has to be enumerated."""

    nats: tuple[int, ...] = (0, 1, 2)
    max_list: int = 2
    # costs attached to enumerated arguments of the fully lifted relation
    costs: tuple[int, ...] = (0, 1)
    # result costs of synthesised probe functions
    fun_costs: tuple[int, ...] = (0, 1)
    max_enum: int = 40
    max_funs: int = 12
    # closed terms offered as extra function candidates, keyed by their type
    supply: tuple[tuple[Ty, Term], ...] = field(default=(), compare=True)


DEFAULT_BOUNDS = Bounds()


def _rho_key(rho: RelEnv) -> tuple:
    return tuple(sorted(rho.items(), key=lambda kv: kv[0]))


def _lookup(rho, name: str) -> Rel:
    try:
        return rho[name]
    except KeyError:
        raise UnboundTypeVar(f"type variable {name} has no relation") from None


def _cap(items: list, limit: int) -> list:
    if len(items) <= limit:
        return items
    step = len(items) / limit
    return [items[int(i * step)] for i in range(limit)]


def _lists_of(pairs: list, max_len: int, build) -> list:
    out = []
    for n in range(max_len + 1):
        for combo in itertools.product(pairs, repeat=n):
            out.append(build(combo))
    return out


# ---------------------------------------------------------------- enumerations


def related_std(ty: Ty, rho: RelEnv, bounds: Bounds = DEFAULT_BOUNDS) -> list:
    """Bounded enumeration of the standard relation at ``ty``."""
    return list(_related_std(ty, _rho_key(rho), bounds))


@lru_cache(maxsize=4096)
def _related_std(ty, rho_key, b):
    rho = dict(rho_key)
    match ty:
        case TyVar(name):
            return tuple(_lookup(rho, name).sorted_pairs())
        case NatTy():
            return tuple((VNat(n), VNat(n)) for n in b.nats)
        case ListTy(e):
            elems = list(_related_std(e, rho_key, b))
            build = lambda c: (VList(tuple(p[0] for p in c)), VList(tuple(p[1] for p in c)))
            return tuple(_cap(_lists_of(elems, b.max_list, build), b.max_enum))
        case PairTy(l, r):
            prod = [
                (VPair(a1, a2), VPair(b1, b2))
                for (a1, b1), (a2, b2) in itertools.product(
                    _related_std(l, rho_key, b), _related_std(r, rho_key, b)
                )
            ]
            return tuple(_cap(prod, b.max_enum))
        case ArrowTy():
            cands = function_candidates(ty, rho, b, mode="std")
            return tuple(_cap([c for c in cands if member_std(ty, rho, *c, bounds=b)], b.max_funs))
    raise TypeError(f"not a type: {ty!r}")


def related_embedded(ty: Ty, rho: RelEnv, bounds: Bounds = DEFAULT_BOUNDS) -> list:
    """Bounded enumeration of the embedded-cost relation at ``ty``."""
    return list(_related_embedded(ty, _rho_key(rho), bounds))


@lru_cache(maxsize=4096)
def _related_embedded(ty, rho_key, b):
    rho = dict(rho_key)
    match ty:
        case TyVar(name):
            return tuple(_lookup(rho, name).sorted_pairs())
        case NatTy():
            return tuple((VNat(n), VNat(n)) for n in b.nats)
        case ListTy(e):
            elems = list(_related_embedded(e, rho_key, b))
            build = lambda c: (VList(tuple(p[0] for p in c)), VList(tuple(p[1] for p in c)))
            return tuple(_cap(_lists_of(elems, b.max_list, build), b.max_enum))
        case PairTy(l, r):
            prod = [
                (VPair(a1, a2), VPair(b1, b2))
                for (a1, b1), (a2, b2) in itertools.product(
                    _related_embedded(l, rho_key, b), _related_embedded(r, rho_key, b)
                )
            ]
            return tuple(_cap(prod, b.max_enum))
        case ArrowTy():
            cands = function_candidates(ty, rho, b, mode="cost")
            keep = [c for c in cands if member_embedded(ty, rho, *c, bounds=b)]
            return tuple(_cap(keep, b.max_funs))
    raise TypeError(f"not a type: {ty!r}")


def related_lifted(ty: Ty, rho: RelEnv, bounds: Bounds = DEFAULT_BOUNDS) -> list:
    """Bounded enumeration of the fully lifted relation at ``ty``, built by its own comprehension."""
    return list(_related_lifted(ty, _rho_key(rho), bounds))


def _dedupe(pairs):
    seen, out = set(), []
    for p in pairs:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


@lru_cache(maxsize=4096)
def _related_lifted(ty, rho_key, b):
    rho = dict(rho_key)
    match ty:
        case TyVar(name):
            base = _lookup(rho, name).sorted_pairs()
            return tuple((Costed(x, c), Costed(y, c)) for x, y in base for c in b.costs)
        case NatTy():
            return tuple((Costed(VNat(n), c), Costed(VNat(n), c)) for n in b.nats for c in b.costs)
        case ListTy(e):
            elems = list(_related_lifted(e, rho_key, b))
            build = lambda c: (clist(*(p[0] for p in c)), clist(*(p[1] for p in c)))
            return tuple(_cap(_dedupe(_lists_of(elems, b.max_list, build)), b.max_enum))
        case PairTy(l, r):
            prod = [
                (cpair(x1, x2), cpair(y1, y2))
                for (x1, y1), (x2, y2) in itertools.product(
                    _related_lifted(l, rho_key, b), _related_lifted(r, rho_key, b)
                )
            ]
            return tuple(_cap(_dedupe(prod), b.max_enum))
        case ArrowTy():
            out = []
            for f, g in function_candidates(ty, rho, b, mode="cost"):
                for c in b.costs:
                    x, y = Costed(f, c), Costed(g, c)
                    if member_lifted(ty, rho, x, y, bounds=b):
                        out.append((x, y))
            return tuple(_cap(out, b.max_funs * len(b.costs)))
    raise TypeError(f"not a type: {ty!r}")


def function_candidates(ty: ArrowTy, rho: RelEnv, bounds: Bounds = DEFAULT_BOUNDS, mode="cost"):
    """Pairs of probe functions at ``ty``; not all of them are related.

    Candidates are constant functions, the identity (when domain and codomain
    coincide), lookup tables sending the i-th related argument pair to a
    related result pair, and the denotations of any supply terms of type ``ty``.
    """
    b = bounds
    dom, cod = ty.dom, ty.cod
    enum = related_std if mode == "std" else related_embedded
    dom_pairs = enum(dom, rho, b)
    cod_pairs = enum(cod, rho, b)

    def mk(fn, cost):
        if mode == "std":
            return VFun(fn)
        return CFun(lambda v: Costed(fn(v), cost))

    out = []
    for y1, y2 in cod_pairs[:3]:
        for k in b.fun_costs:
            out.append((mk(lambda v, y=y1: y, k), mk(lambda v, y=y2: y, k)))
    if dom == cod:
        for k in b.fun_costs:
            ident = mk(lambda v: v, k)
            out.append((ident, ident))
    if dom_pairs and cod_pairs:
        lefts = [p[0] for p in dom_pairs]
        rights = [p[1] for p in dom_pairs]
        for shift in range(min(len(cod_pairs), 3)):
            for k in b.fun_costs:
                out.append(
                    (
                        _table(lefts, [p[0] for p in cod_pairs], shift, k, mode),
                        _table(rights, [p[1] for p in cod_pairs], shift, k, mode),
                    )
                )
    for sty, term in b.supply:
        if sty == ty:
            f = eval_std({}, term) if mode == "std" else eval_cost({}, term).val
            out.append((f, f))
    return out


def _table(keys, results, shift, base_cost, mode):
    n = len(results)

    def lookup(v):
        for i, key in enumerate(keys):
            if key == v:
                return i
        return None

    if mode == "std":
        def fn(v):
            i = lookup(v)
            return results[0] if i is None else results[(i + shift) % n]
        return VFun(fn)

    def cfn(v):
        i = lookup(v)
        if i is None:
            return Costed(results[0], base_cost)
        # argument-dependent cost, identical for both sides of a related pair
        return Costed(results[(i + shift) % n], base_cost + i % 2)

    return CFun(cfn)


# ---------------------------------------------------------------- membership


def member_std(ty: Ty, rho: RelEnv, x, y, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    match ty:
        case TyVar(name):
            return (x, y) in _lookup(rho, name)
        case NatTy():
            return isinstance(x, VNat) and x == y
        case ListTy(e):
            return (
                isinstance(x, VList) and isinstance(y, VList)
                and len(x.elems) == len(y.elems)
                and all(member_std(e, rho, a, b, bounds) for a, b in zip(x.elems, y.elems))
            )
        case PairTy(l, r):
            return (
                isinstance(x, VPair) and isinstance(y, VPair)
                and member_std(l, rho, x.fst, y.fst, bounds)
                and member_std(r, rho, x.snd, y.snd, bounds)
            )
        case ArrowTy(dom, cod):
            if not (isinstance(x, VFun) and isinstance(y, VFun)):
                return False
            return all(
                member_std(cod, rho, x(a), y(b), bounds) for a, b in related_std(dom, rho, bounds)
            )
    raise TypeError(f"not a type: {ty!r}")


def member_embedded(ty: Ty, rho: RelEnv, x, y, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    match ty:
        case TyVar(name):
            return (x, y) in _lookup(rho, name)
        case NatTy():
            return isinstance(x, VNat) and x == y
        case ListTy(e):
            return (
                isinstance(x, VList) and isinstance(y, VList)
                and len(x.elems) == len(y.elems)
                and all(member_embedded(e, rho, a, b, bounds) for a, b in zip(x.elems, y.elems))
            )
        case PairTy(l, r):
            return (
                isinstance(x, VPair) and isinstance(y, VPair)
                and member_embedded(l, rho, x.fst, y.fst, bounds)
                and member_embedded(r, rho, x.snd, y.snd, bounds)
            )
        case ArrowTy(dom, cod):
            if not (isinstance(x, CFun) and isinstance(y, CFun)):
                return False
            for a, b in related_embedded(dom, rho, bounds):
                fx, gy = x(a), y(b)
                if fx.cost != gy.cost or not member_embedded(cod, rho, fx.val, gy.val, bounds):
                    return False
            return True
    raise TypeError(f"not a type: {ty!r}")


def member_cost_lift(ty: Ty, rho: RelEnv, x: Costed, y: Costed, bounds=DEFAULT_BOUNDS) -> bool:
    """Cost-lifting of the embedded relation: equal costs and related values."""
    return x.cost == y.cost and member_embedded(ty, rho, x.val, y.val, bounds)


def member_lifted(ty: Ty, rho: RelEnv, x: Costed, y: Costed, bounds: Bounds = DEFAULT_BOUNDS) -> bool:
    match ty:
        case TyVar(name):
            return x.cost == y.cost and (x.val, y.val) in _lookup(rho, name)
        case NatTy():
            return isinstance(x.val, VNat) and x == y
        case ListTy() | PairTy():
            return (y.cost - x.cost) in _cost_gaps(ty, rho, x.val, y.val, bounds)
        case ArrowTy(dom, cod):
            if x.cost != y.cost or not (isinstance(x.val, CFun) and isinstance(y.val, CFun)):
                return False
            return all(
                member_lifted(cod, rho, capp(x, a), capp(y, b), bounds)
                for a, b in related_lifted(dom, rho, bounds)
            )
    raise TypeError(f"not a type: {ty!r}")


def _minkowski(a: frozenset, b: frozenset) -> frozenset:
    return frozenset(i + j for i in a for j in b)


def _cost_gaps(ty, rho, v, w, bounds) -> frozenset:
    """All d such that ((v, 0), (w, d)) is in the lifted relation at ``ty``.

    List and pair liftings relate x1 (+) ... (+) xn to y1 (+) ... (+) yn when the
    components are related, so the admissible total cost differences are sums
    of per-component differences.  Every lifted relation is closed under adding
    the same cost to both sides, which makes the decomposition of the total
    costs irrelevant.
    """
    match ty:
        case ListTy(e):
            if not (isinstance(v, VList) and isinstance(w, VList)) or len(v.elems) != len(w.elems):
                return frozenset()
            gaps = frozenset({0})
            for a, b in zip(v.elems, w.elems):
                gaps = _minkowski(gaps, _cost_gaps(e, rho, a, b, bounds))
                if not gaps:
                    break
            return gaps
        case PairTy(l, r):
            if not (isinstance(v, VPair) and isinstance(w, VPair)):
                return frozenset()
            return _minkowski(
                _cost_gaps(l, rho, v.fst, w.fst, bounds), _cost_gaps(r, rho, v.snd, w.snd, bounds)
            )
    # variables, naturals and arrows relate equal costs only
    ok = member_lifted(ty, rho, Costed(v, 0), Costed(w, 0), bounds)
    return frozenset({0}) if ok else frozenset()


# ---------------------------------------------------------------- graph relations


@dataclass(frozen=True)
class GraphRel:
    g: Costed
    points: tuple[Costed, ...]
    results: tuple[Costed, ...]
    app_costs: tuple[int, ...]
    rel: Rel

    def __len__(self):
        return len(self.points)


def graph_rel(g: Costed, points: Sequence[Costed]) -> GraphRel:
    """Finite part of the graph of ``g`` through the given points."""
    if not isinstance(g.val, CFun):
        raise TypeError("graph relation needs a function")
    points = tuple(points)
    results = tuple(capp(g, x) for x in points)
    rel = Rel(frozenset((x.val, r.val) for x, r in zip(points, results)))
    return GraphRel(g, points, results, tuple(app_cost(g, x) for x in points), rel)


@dataclass(frozen=True)
class BaseWitness:
    index: int  # 1-based, into r.points
    c: int
    consequence: bool  # g (*) x == appCost(g, x_i) ~> y


def witness_base(r: GraphRel, x: Costed, y: Costed) -> BaseWitness | None:
    """Find i, c with x = c ~> appCost(g,x_i) ~> x_i and y = c ~> (g (*) x_i)."""
    for i, (xi, gxi, ac) in enumerate(zip(r.points, r.results, r.app_costs), start=1):
        c = y.cost - gxi.cost
        if x == add_cost(c, add_cost(ac, xi)) and y == add_cost(c, gxi):
            return BaseWitness(i, c, capp(r.g, x) == add_cost(ac, y))
    return None


@dataclass(frozen=True)
class PairWitness:
    i: int
    j: int
    c: int
    consequence: bool


def _map_pair_fn(rg: GraphRel, rh: GraphRel, map_pair: Costed | None) -> Costed:
    mp = map_pair if map_pair is not None else STDLIB.map_pair_sem
    return capp(mp, cpair(rg.g, rh.g))


def witness_pair(
    rg: GraphRel, rh: GraphRel, p: Costed, q: Costed, map_pair: Costed | None = None
) -> PairWitness | None:
    """Find i, j, c relating p and q through mapPair (g, h) applied to (x_i, y_j)."""
    fn = _map_pair_fn(rg, rh, map_pair)
    for i, xi in enumerate(rg.points, start=1):
        for j, yj in enumerate(rh.points, start=1):
            arg = cpair(xi, yj)
            out = capp(fn, arg)
            ac = out.cost - arg.cost
            c = q.cost - out.cost
            if p == add_cost(c, add_cost(ac, arg)) and q == add_cost(c, out):
                return PairWitness(i, j, c, capp(fn, p) == add_cost(ac, q))
    return None


@dataclass(frozen=True)
class ListWitness:
    indices: tuple[int, ...]
    c: int
    consequence: bool
    value_clause: bool  # getVal <x_i1, ..., x_im> == getVal xs


def witness_list(
    r: GraphRel, xs: Costed, ys: Costed, map_list: Costed | None = None
) -> ListWitness | None:
    """Find the lexicographically least i1..im (and c) relating xs and ys through mapList g."""
    if not (isinstance(xs.val, VList) and isinstance(ys.val, VList)):
        return None
    if len(xs.val.elems) != len(ys.val.elems):
        return None
    ml = capp(map_list if map_list is not None else STDLIB.map_list_sem, r.g)
    per_pos = []
    for a, b in zip(xs.val.elems, ys.val.elems):
        cands = [
            i for i, (xi, gxi) in enumerate(zip(r.points, r.results), start=1)
            if xi.val == a and gxi.val == b
        ]
        if not cands:
            return None
        per_pos.append(cands)
    for combo in itertools.product(*per_pos):
        sel = clist(*(r.points[i - 1] for i in combo))
        out = capp(ml, sel)
        ac = out.cost - sel.cost
        c = ys.cost - out.cost
        if xs == add_cost(c, add_cost(ac, sel)) and ys == add_cost(c, out):
            return ListWitness(
                tuple(combo), c, capp(ml, xs) == add_cost(ac, ys), sel.val == xs.val
            )
    return None


# ---------------------------------------------------------------- parametricity


def param_check(
    ctx: Ctx,
    t: Term,
    rho: RelEnv,
    env1: Mapping,
    env2: Mapping,
    bounds: Bounds = DEFAULT_BOUNDS,
    models: tuple[CostModel, CostModel] = (UNIT, UNIT),
) -> bool:
    """Check that ``t`` evaluated under related environments yields related results.

    Raises ``PreconditionViolation`` when the environments themselves are not
    related; a ``False`` result on valid input means the evaluator is broken.
    """
    ty = typecheck(ctx, t)
    missing = ctx.type_vars - set(rho)
    if missing:
        raise UnboundTypeVar(f"no relation for {sorted(missing)}")
    seen = set()
    for x, xty in reversed(ctx.term_vars):
        if x in seen:
            continue
        seen.add(x)
        if x not in env1 or x not in env2:
            raise PreconditionViolation(f"environment lacks {x}")
        if not member_lifted(xty, rho, Costed(env1[x], 0), Costed(env2[x], 0), bounds):
            raise PreconditionViolation(f"{x} is not related at {pretty_ty(xty)}")
    lhs = eval_cost(env1, t, models[0])
    rhs = eval_cost(env2, t, models[1])
    return member_lifted(ty, rho, lhs, rhs, bounds)
