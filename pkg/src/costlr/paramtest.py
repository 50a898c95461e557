"""Randomized parametricity checks over the bundled corpus.

Each iteration picks a corpus term, interprets every type variable as the
graph relation of a randomly chosen calculus function over a few random
points, draws related environments for free term variables, and checks that
the two evaluations are related by the fully lifted relation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cache

from .corpus import NAT_FUNS, OPEN, POLY, default_bounds
from .relations import Bounds, Rel, graph_rel, param_check, related_embedded
from .semantics import UNIT, CostModel, Costed, VNat, capp, clist, cpair, eval_cost
from .stdlib import STDLIB
from .syntax import pretty_ty
from .typecheck import Ctx

# the deliberate evaluator bug used to show the driver is sensitive: lambdas cost 2
MUTANT = CostModel(beta=2)


@dataclass(frozen=True)
class ParamTestConfig:
    seed: int = 0
    iters: int = 100
    mutate: bool = False
    max_points: int = 3
    max_nat: int = 4
    bounds: Bounds | None = None


@dataclass
class ParamTestResult:
    seed: int
    iterations: int
    failures: list[dict] = field(default_factory=list)
    by_term: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "iterations": self.iterations,
            "failures": len(self.failures),
            "failed": self.failures[:10],
            "byTerm": dict(sorted(self.by_term.items())),
        }


@cache
def _nat_funs() -> list[tuple[str, Costed]]:
    return [(e.name, eval_cost({}, e.term)) for e in NAT_FUNS]


def random_relation(rng: random.Random, cfg: ParamTestConfig) -> tuple[Rel, str]:
    """Graph relation of a random definable function over random small values."""
    funs = _nat_funs()
    name, g = rng.choice(funs)
    k = rng.randint(1, cfg.max_points)
    carrier = rng.choice(("nat", "nat", "list", "pair"))
    if carrier == "nat":
        pts = [Costed(VNat(n), 0) for n in rng.sample(range(cfg.max_nat + 1), k)]
        fn, label = g, name
    elif carrier == "list":
        pts = []
        for _ in range(k):
            n = rng.randint(0, 2)
            pts.append(clist(*(Costed(VNat(rng.randint(0, cfg.max_nat)), 0) for _ in range(n))))
        fn, label = capp(STDLIB.map_list_sem, g), f"mapList {name}"
    else:
        name2, h = rng.choice(funs)
        pts = [
            cpair(Costed(VNat(rng.randint(0, cfg.max_nat)), 0), Costed(VNat(rng.randint(0, cfg.max_nat)), 0))
            for _ in range(k)
        ]
        fn, label = capp(STDLIB.map_pair_sem, cpair(g, h)), f"mapPair ({name}, {name2})"
    pts = list(dict.fromkeys(pts))
    return graph_rel(fn, pts).rel, label


def _cases():
    out = [(p.name, Ctx(frozenset(p.type_vars)), p.term) for p in POLY]
    out += [(o.name, o.ctx, o.term) for o in OPEN]
    return out


def run_param_test(cfg: ParamTestConfig = ParamTestConfig()) -> ParamTestResult:
    rng = random.Random(cfg.seed)
    bounds = cfg.bounds or default_bounds()
    models = (MUTANT, UNIT) if cfg.mutate else (UNIT, UNIT)
    cases = _cases()
    result = ParamTestResult(cfg.seed, cfg.iters)
    for it in range(cfg.iters):
        name, ctx, term = rng.choice(cases)
        rho, labels = {}, {}
        for a in sorted(ctx.type_vars):
            rho[a], labels[a] = random_relation(rng, cfg)
        env1, env2 = {}, {}
        for x, ty in ctx.term_vars:
            pairs = related_embedded(ty, rho, bounds)
            if not pairs:
                break
            env1[x], env2[x] = rng.choice(pairs)
        else:
            result.by_term[name] = result.by_term.get(name, 0) + 1
            if not param_check(ctx, term, rho, env1, env2, bounds, models):
                result.failures.append(
                    {
                        "iteration": it,
                        "term": name,
                        "relations": labels,
                        "env": {x: pretty_ty(ty) for x, ty in ctx.term_vars},
                    }
                )
            continue
        # no related environment exists under this interpretation; nothing to check
        result.by_term[f"{name} (skipped)"] = result.by_term.get(f"{name} (skipped)", 0) + 1
    return result

