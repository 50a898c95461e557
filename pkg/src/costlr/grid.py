"""Exhaustive small grids of types, relations and values for brute-force checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .relations import Bounds, Rel, RelEnv, function_candidates, member_embedded, member_lifted
from .semantics import CFun, Costed, VList, VNat, VPair
from .syntax import ArrowTy, ListTy, NatTy, PairTy, Ty, TyVar


@dataclass(frozen=True)
class GridConfig:
    type_depth: int = 2
    rel_size: int = 3
    max_list: int = 3
    costs: tuple[int, ...] = (-2, -1, 0, 1, 2)
    nats: tuple[int, ...] = (0, 1, 2)
    max_values: int = 8
    # bounds for the arrow quantifier inside the relations being compared
    bounds: Bounds = Bounds(nats=(0, 1, 2), max_list=1, max_enum=12, max_funs=6)


GRID = GridConfig()


def small_types(depth: int, tyvar: str = "a") -> list[Ty]:
    """All types over {tyvar, Nat} built with at most ``depth`` nested constructors."""
    level = [TyVar(tyvar), NatTy()]
    seen = list(level)
    for _ in range(depth):
        nxt = []
        for t in seen:
            nxt.append(ListTy(t))
        for a, b in itertools.product(seen, repeat=2):
            nxt.append(PairTy(a, b))
            nxt.append(ArrowTy(a, b))
        seen = list(dict.fromkeys(seen + nxt))
    return seen


def small_relations(cfg: GridConfig = GRID) -> list[Rel]:
    """A spread of relations over naturals with at most ``cfg.rel_size`` pairs."""
    n = cfg.nats
    rels = [
        Rel(),
        Rel.of((n[1], n[1])),
        Rel.of((n[0], n[1]), (n[1], n[2])),
        Rel.of((n[0], n[0]), (n[0], n[1]), (n[2], n[2])),
    ]
    return [r for r in rels if len(r) <= cfg.rel_size]


def _carrier(rho: RelEnv, name: str, cfg: GridConfig) -> list:
    vals = {v for p in rho[name].pairs for v in p}
    # one value outside the relation, so unrelated pairs are exercised too
    vals.add(VNat(max(cfg.nats) + 1))
    return sorted(vals, key=repr)


def _spread(items: list, k: int) -> list:
    if len(items) <= k:
        return items
    step = len(items) / k
    return [items[int(i * step)] for i in range(k)]


def value_pairs(ty: Ty, rho: RelEnv, cfg: GridConfig = GRID) -> list[tuple]:
    """Related and unrelated pairs of cost-free values at ``ty``."""
    match ty:
        case ArrowTy():
            cands = function_candidates(ty, rho, cfg.bounds, mode="cost")
            out = list(cands)
            # crossed candidates, and a copy whose every result costs one more
            for (f1, _), (_, g2) in zip(cands, cands[1:]):
                out.append((f1, g2))
            for f, g in cands[:2]:
                out.append((f, _delayed(g)))
            return _spread(out, cfg.max_values)
    vals = values_of(ty, rho, cfg)
    return _spread(list(itertools.product(vals, repeat=2)), cfg.max_values * 2)


def _delayed(f: CFun) -> CFun:
    return CFun(lambda v: (lambda r: Costed(r.val, r.cost + 1))(f(v)))


def values_of(ty: Ty, rho: RelEnv, cfg: GridConfig = GRID) -> list:
    match ty:
        case TyVar(name):
            return _carrier(rho, name, cfg)
        case NatTy():
            return [VNat(n) for n in cfg.nats]
        case ListTy(e):
            elems = values_of(e, rho, cfg)[:2]
            out = []
            for n in range(min(cfg.max_list, 2) + 1):
                out.extend(VList(c) for c in itertools.product(elems, repeat=n))
            return _spread(out, cfg.max_values)
        case PairTy(l, r):
            prod = [VPair(a, b) for a, b in itertools.product(values_of(l, rho, cfg), values_of(r, rho, cfg))]
            return _spread(prod, cfg.max_values)
        case ArrowTy():
            return [f for f, _ in function_candidates(ty, rho, cfg.bounds, mode="cost")][: cfg.max_values]
    raise TypeError(ty)


@dataclass
class LiftingGridResult:
    checked: int
    discrepancies: list


def lifting_grid(cfg: GridConfig = GRID, types: list[Ty] | None = None) -> LiftingGridResult:
    """Compare the lifted relation with the cost lifting of the embedded relation over the grid."""
    types = small_types(cfg.type_depth) if types is None else types
    checked, bad = 0, []
    for ty in types:
        for rel in small_relations(cfg):
            rho = {"a": rel}
            for v, w in value_pairs(ty, rho, cfg):
                emb = member_embedded(ty, rho, v, w, cfg.bounds)
                for cx, cy in itertools.product(cfg.costs, repeat=2):
                    lifted = member_lifted(ty, rho, Costed(v, cx), Costed(w, cy), cfg.bounds)
                    checked += 1
                    if lifted != (cx == cy and emb):
                        bad.append((ty, rel, v, w, cx, cy))
    return LiftingGridResult(checked, bad)
