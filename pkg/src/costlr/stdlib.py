"""Library terms used by the free-theorem harness, with their expected types."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .semantics import Costed, eval_cost
from .syntax import Term, parse_term, parse_type

MAP_LIST_SRC = r"\g:a -> b. \ys:[a]. lfold(\x:a. \xs:[b]. (g x) : xs, nil[b], ys)"
MAP_PAIR_SRC = (
    r"\p:(a -> c, b -> d). \q:(a, b). "
    r"pcase p {(f1, f2) -> pcase q {(x1, x2) -> (f1 x1, f2 x2)}}"
)
LENGTH_SRC = r"\xs:[a]. lfold(\x:a. \y:Nat. 1 + y, 0, xs)"


@dataclass(frozen=True)
class StdLib:
    map_list: Term
    map_pair: Term
    length: Term

    map_list_ty = parse_type("(a -> b) -> [a] -> [b]")
    map_pair_ty = parse_type("(a -> c, b -> d) -> (a, b) -> (c, d)")
    length_ty = parse_type("[a] -> Nat")

    @cached_property
    def map_list_sem(self) -> Costed:
        return eval_cost({}, self.map_list)

    @cached_property
    def map_pair_sem(self) -> Costed:
        return eval_cost({}, self.map_pair)


STDLIB = StdLib(parse_term(MAP_LIST_SRC), parse_term(MAP_PAIR_SRC), parse_term(LENGTH_SRC))

