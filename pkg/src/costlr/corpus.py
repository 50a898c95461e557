"""Bundled terms: ground programs, polymorphic functions, theorem instances."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .relations import Bounds
from .stdlib import LENGTH_SRC, MAP_LIST_SRC, MAP_PAIR_SRC
from .syntax import Term, Ty, parse_term, parse_type
from .theorems import Shape
from .typecheck import Ctx, typecheck


@dataclass(frozen=True)
class Entry:
    name: str
    src: str

    @cached_property
    def term(self) -> Term:
        return parse_term(self.src)


# closed, ground-typed programs; together they use every term constructor
GROUND = [
    Entry("id-app", r"(\x:Nat. x) 5"),
    Entry("length-12", r"(\xs:[Nat]. lfold(\x:Nat. \y:Nat. 1 + y, 0, xs)) (1 : 2 : nil[Nat])"),
    Entry("ifold-succ", r"ifold(\x:Nat. x + 1, 0, 3)"),
    Entry("sum3", r"1 + 2 + 3"),
    Entry("ncase-zero", r"ncase 0 {0 -> 7; n -> n}"),
    Entry("ncase-pos", r"ncase 4 {0 -> 0; n -> n + n}"),
    Entry("lcase-nil", r"lcase nil[Nat] {nil -> 0; h:t -> h}"),
    Entry("lcase-cons", r"lcase 3 : 4 : nil[Nat] {nil -> 0; h:t -> h + 1}"),
    Entry("pcase-lit", r"pcase (1, 2) {(x, y) -> y + x}"),
    Entry("swap-app", r"(\p:(Nat, Nat). pcase p {(x, y) -> (y, x)}) (3, 4)"),
    Entry(
        "map-double",
        r"(\g:Nat -> Nat. \ys:[Nat]. lfold(\x:Nat. \xs:[Nat]. (g x) : xs, nil[Nat], ys))"
        r" (\n:Nat. n + n) (1 : 2 : 3 : nil[Nat])",
    ),
    Entry(
        "reverse",
        r"lfold(\x:Nat. \acc:[Nat]. lfold(\y:Nat. \r:[Nat]. y : r, x : nil[Nat], acc),"
        r" nil[Nat], 1 : 2 : 3 : nil[Nat])",
    ),
    Entry("lsum", r"lfold(\x:Nat. \y:Nat. x + y, 0, 5 : 6 : nil[Nat])"),
    Entry("mult", r"(\m:Nat. \n:Nat. ifold(\acc:Nat. acc + m, 0, n)) 3 4"),
    Entry(
        "factorial",
        r"pcase ifold(\p:(Nat, Nat). pcase p {(i, acc) -> (i + 1, ifold(\s:Nat. s + acc, 0, i + 1))},"
        r" (0, 1), 4) {(i, r) -> r}",
    ),
    Entry("pred", r"pcase ifold(\p:(Nat, Nat). pcase p {(a, b) -> (b, b + 1)}, (0, 0), 5) {(a, b) -> a}"),
    Entry("twice", r"(\f:Nat -> Nat. f (f 1)) (\x:Nat. x + 3)"),
    Entry(
        "compose",
        r"(\f:Nat -> Nat. \g:Nat -> Nat. \x:Nat. f (g x)) (\x:Nat. x + 1) (\x:Nat. x + x) 5",
    ),
    Entry("nested-list", r"(1 : nil[Nat]) : nil[[Nat]]"),
    Entry("pair-list", r"(1, 2) : (3, 4) : nil[(Nat, Nat)]"),
    Entry(
        "with-double",
        r"lfold(\x:Nat. \acc:[(Nat, Nat)]. (x, x + x) : acc, nil[(Nat, Nat)], 1 : 2 : nil[Nat])",
    ),
    Entry(
        "concat",
        r"lfold(\xs:[Nat]. \acc:[Nat]. lfold(\y:Nat. \r:[Nat]. y : r, acc, xs), nil[Nat],"
        r" (1 : 2 : nil[Nat]) : (3 : nil[Nat]) : nil[[Nat]])",
    ),
    Entry(
        "filter-nonzero",
        r"lfold(\x:Nat. \acc:[Nat]. ncase x {0 -> acc; n -> n : acc}, nil[Nat], 0 : 1 : 0 : 2 : nil[Nat])",
    ),
    Entry("head-or", r"(\xs:[Nat]. lcase xs {nil -> 0; h:t -> h}) (9 : 8 : nil[Nat])"),
    Entry("tail", r"(\xs:[Nat]. lcase xs {nil -> nil[Nat]; h:t -> t}) (1 : 2 : 3 : nil[Nat])"),
    Entry("id-list", r"(\x:[Nat]. x) nil[Nat]"),
    Entry(
        "map-pair",
        r"(\p:(Nat -> Nat, Nat -> Nat). \q:(Nat, Nat). pcase p {(f1, f2) -> pcase q {(x1, x2) -> (f1 x1, f2 x2)}})"
        r" ((\n:Nat. n + n), (\n:Nat. n + 1)) (3, 4)",
    ),
    Entry("ifold-fun", r"ifold(\f:Nat -> Nat. \x:Nat. f (f x), \x:Nat. x + 1, 2) 0"),
    Entry("ncase-app", r"ncase (\x:Nat. x) 0 {0 -> 1; n -> 2}"),
    Entry("lam-pair", r"(\x:Nat. (x, x : nil[Nat])) 2"),
    Entry("pcase-list", r"pcase (1 : nil[Nat], 2) {(xs, y) -> y : xs}"),
    Entry("beta-arg", r"(\y:Nat. y + y) ((\z:Nat. z + 1) 2)"),
    Entry(
        "cps-sum",
        r"lfold(\x:Nat. \k:Nat -> Nat. \a:Nat. k (a + x), \a:Nat. a, 1 : 2 : 3 : nil[Nat]) 0",
    ),
    Entry("literal", r"42"),
    Entry("nested-ncase", r"ncase 2 {0 -> 0; n -> ncase n + 0 {0 -> 1; m -> m + n}}"),
    Entry("empty-ifold", r"ifold(\x:[Nat]. 1 : x, nil[Nat], 0)"),
]


@dataclass(frozen=True)
class PolyEntry:
    """A closed term over type variables, with probe arguments for its Nat instance."""

    name: str
    src: str
    probes: tuple[str, ...] = ()
    type_vars: tuple[str, ...] = ("a",)

    @cached_property
    def term(self) -> Term:
        return parse_term(self.src)

    @cached_property
    def ty(self) -> Ty:
        return typecheck(Ctx(frozenset(self.type_vars)), self.term)

    @cached_property
    def probe_terms(self) -> tuple[Term, ...]:
        return tuple(parse_term(p) for p in self.probes)


POLY = [
    PolyEntry("id", r"\x:a. x", ("5",)),
    PolyEntry("fst2", r"\x:a. \y:a. x", ("1", "2")),
    PolyEntry("snd2", r"\x:a. \y:a. y", ("1", "2")),
    PolyEntry("dup", r"\x:a. (x, x)", ("3",)),
    PolyEntry("swap", r"\p:(a, a). pcase p {(x, y) -> (y, x)}", ("(1, 2)",)),
    PolyEntry("pfst", r"\p:(a, a). pcase p {(x, y) -> x}", ("(1, 2)",)),
    PolyEntry("const7", r"\x:a. 7", ("4",)),
    PolyEntry("length", LENGTH_SRC, ("1 : 2 : 3 : nil[Nat]",)),
    PolyEntry(
        "reverse",
        r"\xs:[a]. lfold(\x:a. \acc:[a]. lfold(\y:a. \r:[a]. y : r, x : nil[a], acc), nil[a], xs)",
        ("1 : 2 : 3 : nil[Nat]",),
    ),
    PolyEntry("tail", r"\xs:[a]. lcase xs {nil -> nil[a]; h:t -> t}", ("1 : 2 : nil[Nat]",)),
    PolyEntry("head-or", r"\d:a. \xs:[a]. lcase xs {nil -> d; h:t -> h}", ("0", "7 : nil[Nat]")),
    PolyEntry("dup-list", r"\xs:[a]. lfold(\x:a. \acc:[a]. x : x : acc, nil[a], xs)", ("1 : 2 : nil[Nat]",)),
    PolyEntry("singleton", r"\x:a. x : nil[a]", ("8",)),
    PolyEntry("replicate", r"\n:Nat. \x:a. ifold(\acc:[a]. x : acc, nil[a], n)", ("3", "1")),
    PolyEntry("twice", r"\f:a -> a. \x:a. f (f x)", (r"\n:Nat. n + 1", "3")),
    PolyEntry("apply-n", r"\n:Nat. \f:a -> a. \x:a. ifold(f, x, n)", ("2", r"\n:Nat. n + n", "1")),
    PolyEntry(
        "slow-length",
        r"\xs:[a]. ifold(\k:Nat. k + 1, 0, lfold(\x:a. \y:Nat. 1 + y, 0, xs))",
        ("4 : 5 : nil[Nat]",),
    ),
    PolyEntry("append", r"\xs:[a]. \ys:[a]. lfold(\x:a. \acc:[a]. x : acc, ys, xs)", ("1 : nil[Nat]", "2 : nil[Nat]")),
    PolyEntry(
        "unzip-fst",
        r"\ps:[(a, a)]. lfold(\p:(a, a). \acc:[a]. pcase p {(x, y) -> x : acc}, nil[a], ps)",
        ("(1, 2) : (3, 4) : nil[(Nat, Nat)]",),
    ),
    PolyEntry("choose", r"\n:Nat. \x:a. \y:a. ncase n {0 -> x; m -> y}", ("1", "5", "6")),
    PolyEntry(
        "rev-cps",
        r"\xs:[a]. lfold(\x:a. \k:[a] -> [a]. \acc:[a]. k (x : acc), \acc:[a]. acc, xs) nil[a]",
        ("1 : 2 : 3 : nil[Nat]",),
    ),
    PolyEntry("map-list", MAP_LIST_SRC, (r"\n:Nat. n + 1", "1 : 2 : nil[Nat]"), ("a", "b")),
    PolyEntry(
        "map-pair", MAP_PAIR_SRC, (r"((\n:Nat. n + 1), (\n:Nat. n))", "(1, 2)"), ("a", "b", "c", "d")
    ),
]


@dataclass(frozen=True)
class OpenEntry:
    """A term with free term variables, for parametricity checks under environments."""

    name: str
    src: str
    type_vars: tuple[str, ...]
    term_vars: tuple[tuple[str, str], ...]

    @cached_property
    def term(self) -> Term:
        return parse_term(self.src)

    @cached_property
    def ctx(self) -> Ctx:
        return Ctx(frozenset(self.type_vars), tuple((x, parse_type(t)) for x, t in self.term_vars))


OPEN = [
    OpenEntry("apply-twice", r"f (f x)", ("a",), (("f", "a -> a"), ("x", "a"))),
    OpenEntry(
        "map-open", r"lfold(\y:a. \acc:[a]. (g y) : acc, nil[a], xs)", ("a",),
        (("g", "a -> a"), ("xs", "[a]")),
    ),
    OpenEntry("swap-open", r"pcase p {(x, y) -> (y, x)}", ("a",), (("p", "(a, a)"),)),
    OpenEntry("replicate-open", r"ifold(\acc:[a]. x : acc, nil[a], n)", ("a",), (("x", "a"), ("n", "Nat"))),
    OpenEntry("pick", r"ncase n {0 -> x; m -> y}", ("a",), (("n", "Nat"), ("x", "a"), ("y", "a"))),
]


# Nat -> Nat functions used to build graph relations
NAT_FUNS = [
    Entry("double", r"\n:Nat. n + n"),
    Entry("succ", r"\n:Nat. n + 1"),
    Entry("const3", r"\n:Nat. 3"),
    Entry("slow-id", r"\n:Nat. ifold(\k:Nat. k + 1, 0, n)"),
    Entry("is-zero", r"\n:Nat. ncase n {0 -> 1; m -> 0}"),
    Entry("square", r"\n:Nat. ifold(\s:Nat. s + n, 0, n)"),
]

DOUBLE = r"\n:Nat. n + n"
# application cost grows with the argument, so the two predicted deltas differ
SLOW = r"\n:Nat. ifold(\k:Nat. k + 1, n, n)"


@dataclass(frozen=True)
class ShapeInstance:
    shape: Shape
    f: str
    g: str
    args: tuple[str, ...]
    tau1: str = "Nat"
    tau2: str = "Nat"

    def terms(self):
        return (
            parse_term(self.f), parse_term(self.g), [parse_term(a) for a in self.args],
            parse_type(self.tau1), parse_type(self.tau2),
        )


SHAPE_INSTANCES = [
    ShapeInstance(Shape.CONST_NAT, r"\x:a. 7", DOUBLE, ("3",)),
    ShapeInstance(Shape.CONST_NAT, r"\x:a. (\y:a. 3) x", SLOW, ("4",)),
    ShapeInstance(
        Shape.CONST_NAT, r"\x:a. ifold(\n:Nat. n + 1, 0, 2)", r"\xs:[Nat]. lfold(\x:Nat. \y:Nat. 1 + y, 0, xs)",
        ("1 : 2 : 3 : nil[Nat]",), "[Nat]", "Nat",
    ),
    ShapeInstance(Shape.CONST_NAT, r"\x:a. 0", r"\n:Nat. (n, n)", ("(\\z:Nat. z) 2",), "Nat", "(Nat, Nat)"),
    ShapeInstance(Shape.PROJ, r"\x:a. \y:a. x", DOUBLE, ("1", "2")),
    ShapeInstance(Shape.PROJ, r"\x:a. \y:a. y", SLOW, ("3", "0")),
    ShapeInstance(Shape.PROJ, r"\x:a. \y:a. (\z:a. z) y", SLOW, ("1", "4")),
    ShapeInstance(Shape.PROJ, r"\x:a. \y:a. pcase (x, y) {(u, v) -> u}", SLOW, ("2", "5")),
    ShapeInstance(
        Shape.PROJ, r"\x:a. \y:a. x", r"\xs:[Nat]. lfold(\x:Nat. \y:Nat. x + y, 0, xs)",
        ("1 : 2 : nil[Nat]", "nil[Nat]"), "[Nat]", "Nat",
    ),
    ShapeInstance(Shape.DUP, r"\x:a. (x, x)", DOUBLE, ("3",)),
    ShapeInstance(Shape.DUP, r"\x:a. pcase (x, x) {(u, v) -> (v, u)}", SLOW, ("2",)),
    ShapeInstance(Shape.DUP, r"\x:a. (\y:a. (y, x)) x", SLOW, ("(\\z:Nat. z + 1) 3",)),
    ShapeInstance(Shape.PAIR_CONSUME, r"\p:(a, a). pcase p {(x, y) -> x}", SLOW, ("(2, 5)",)),
    ShapeInstance(Shape.PAIR_CONSUME, r"\p:(a, a). pcase p {(x, y) -> y}", SLOW, ("(2, 5)",)),
    ShapeInstance(Shape.PAIR_CONSUME, r"\p:(a, a). pcase p {(x, y) -> (\z:a. z) y}", DOUBLE, ("(1, 4)",)),
    ShapeInstance(Shape.LIST_LEN, LENGTH_SRC, DOUBLE, ("1 : 2 : 3 : nil[Nat]",)),
    ShapeInstance(Shape.LIST_LEN, r"\xs:[a]. lcase xs {nil -> 0; h:t -> 1}", SLOW, ("1 : 2 : nil[Nat]",)),
    ShapeInstance(
        Shape.LIST_LEN, r"\xs:[a]. ifold(\k:Nat. k + 1, 0, lfold(\x:a. \y:Nat. 1 + y, 0, xs))",
        SLOW, ("3 : 1 : nil[Nat]",),
    ),
    ShapeInstance(Shape.LIST_LEN, LENGTH_SRC, DOUBLE, ("nil[Nat]",)),
    ShapeInstance(
        Shape.LIST_TO_LIST,
        r"\xs:[a]. lfold(\x:a. \acc:[a]. lfold(\y:a. \r:[a]. y : r, x : nil[a], acc), nil[a], xs)",
        SLOW, ("1 : 2 : 3 : nil[Nat]",),
    ),
    ShapeInstance(Shape.LIST_TO_LIST, r"\xs:[a]. lcase xs {nil -> nil[a]; h:t -> t}", SLOW, ("1 : 2 : 3 : nil[Nat]",)),
    ShapeInstance(
        Shape.LIST_TO_LIST, r"\xs:[a]. lfold(\x:a. \acc:[a]. x : x : acc, nil[a], xs)", SLOW,
        ("2 : 0 : nil[Nat]",),
    ),
    ShapeInstance(
        Shape.LIST_TO_LIST, r"\xs:[a]. lcase xs {nil -> nil[a]; h:t -> h : h : h : nil[a]}", SLOW,
        ("4 : 1 : nil[Nat]",),
    ),
    ShapeInstance(
        Shape.LIST_TO_LIST,
        r"\xs:[a]. lfold(\x:a. \k:[a] -> [a]. \acc:[a]. k (x : acc), \acc:[a]. acc, xs) nil[a]",
        DOUBLE, ("1 : 2 : 3 : nil[Nat]",),
    ),
]

# monomorphic f: counts down its first argument before returning the second
MONO_F = r"\x:Nat. \y:Nat. ifold(\z:Nat. z, y, x)"

FUSION_GOOD = r"\k:Nat -> a -> a. \z:a. k 1 (k 2 z)"
FUSION_BAD = r"\k:Nat -> a -> a. \z:a. (\x:a. z) (k 5 z)"
FUSION_EMPTY = r"\k:Nat -> a -> a. \z:a. z"
FUSION_K = r"\x:Nat. \acc:Nat. x + acc"


def fusion_costly_k(n: int) -> str:
    """A consumer step whose every application spends ``n`` extra beta steps."""
    return rf"\x:Nat. \acc:Nat. ifold(\w:Nat. w, acc, {n})"


def default_bounds() -> Bounds:
    supply = [(parse_type("Nat -> Nat"), e.term) for e in NAT_FUNS]
    for p in POLY:
        if p.type_vars == ("a",):
            supply.append((p.ty, p.term))
    return Bounds(supply=tuple(supply))
