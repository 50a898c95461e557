"""Cost-aware logical relations for a small polymorphic lambda calculus."""

from .semantics import Costed, CostModel, eval_cost, eval_std
from .syntax import parse_term, parse_type, pretty
from .typecheck import Ctx, typecheck

__all__ = ["Costed", "CostModel", "Ctx", "eval_cost", "eval_std", "parse_term", "parse_type", "pretty", "typecheck"]
