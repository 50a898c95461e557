from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from costlr.corpus import GROUND, NAT_FUNS, OPEN, POLY, SHAPE_INSTANCES
from costlr.stdlib import MAP_LIST_SRC
from costlr.syntax import (
    Add, App, ArrowTy, Cons, IFold, Lam, LFold, ListTy, NatLit, NatTy, Nil, PairTy, ParseError,
    TyVar, Var, parse_term, parse_type, pretty, subst_type_in_term, term_ty_vars,
)
from costlr.typecheck import Ctx, typecheck

from strategies import raw_terms, types

CORPUS_DIR = Path(__file__).resolve().parents[1] / "corpus"


def all_sources():
    srcs = [e.src for e in GROUND + POLY + OPEN + NAT_FUNS]
    for si in SHAPE_INSTANCES:
        srcs += [si.f, si.g, *si.args]
    srcs += [p.read_text() for p in sorted(CORPUS_DIR.glob("*.lam"))]
    return srcs


def test_parse_lambda():
    assert parse_term(r"\x:Nat. x + 1") == Lam("x", NatTy(), Add(Var("x"), NatLit(1)))


def test_parse_nil():
    assert parse_term("nil[Nat]") == Nil(NatTy())


def test_parse_length_body():
    t = parse_term(r"lfold(\x:a. \y:Nat. 1 + y, 0, xs)")
    assert isinstance(t, LFold)
    assert t.init == NatLit(0) and t.list == Var("xs")
    assert t.step == Lam("x", TyVar("a"), Lam("y", NatTy(), Add(NatLit(1), Var("y"))))


def test_precedence():
    # application binds tightest, then +, then right-associative cons
    t = parse_term("f x + 1 : y : nil[Nat]")
    assert t == Cons(Add(App(Var("f"), Var("x")), NatLit(1)), Cons(Var("y"), Nil(NatTy())))
    assert parse_term("f x y") == App(App(Var("f"), Var("x")), Var("y"))
    assert parse_term("1 + 2 + 3") == Add(Add(NatLit(1), NatLit(2)), NatLit(3))


def test_types():
    assert parse_type("Nat -> a -> b") == ArrowTy(NatTy(), ArrowTy(TyVar("a"), TyVar("b")))
    assert parse_type("(Nat -> a) -> b") == ArrowTy(ArrowTy(NatTy(), TyVar("a")), TyVar("b"))
    assert parse_type("[(Nat, a)]") == ListTy(PairTy(NatTy(), TyVar("a")))
    assert parse_type("((Nat))") == NatTy()


def test_ifold_parses():
    assert parse_term(r"ifold(\x:Nat. x, 0, 3)") == IFold(Lam("x", NatTy(), Var("x")), NatLit(0), NatLit(3))


def test_pretty_examples():
    assert pretty(Lam("x", NatTy(), Var("x"))) == r"\x:Nat. x"
    assert pretty(Nil(ListTy(NatTy()))) == "nil[[Nat]]"
    assert pretty(parse_type("(a -> b) -> [a] -> [b]")) == "(a -> b) -> [a] -> [b]"


def test_comments_are_skipped():
    assert parse_term("-- a comment\n1 + -- another\n 2") == Add(NatLit(1), NatLit(2))


@pytest.mark.parametrize(
    "text",
    [
        "", r"\x. x", r"\x:Nat x", "(1, 2", "ncase 1 {1 -> 2; n -> n}", r"\nil:Nat. 1",
        r"\X:Nat. X", "lfold(1, 2)", "1 +", "x_y", "nil", "pcase p {(x, y) -> x", "3 )",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError) as info:
        parse_term(text)
    assert 0 <= info.value.span.start <= info.value.span.end <= len(text)


def test_parse_error_span_points_at_problem():
    with pytest.raises(ParseError) as info:
        parse_term("1 + )")
    assert info.value.span.start == 4


def test_keywords_reserved_in_types():
    with pytest.raises(ParseError):
        parse_type("lfold")


def test_spans_attached():
    t = parse_term("  1 + 22")
    assert (t.span.start, t.span.end) == (2, 8)
    assert (t.right.span.start, t.right.span.end) == (6, 8)
    # spans never affect equality
    assert t == Add(NatLit(1), NatLit(22))


def test_natlit_rejects_negative():
    with pytest.raises(ValueError):
        NatLit(-1)


@pytest.mark.parametrize("src", all_sources())
def test_corpus_round_trip(src):
    t = parse_term(src)
    assert parse_term(pretty(t)) == t


@settings(max_examples=300)
@given(raw_terms())
def test_round_trip_random_terms(t):
    assert parse_term(pretty(t)) == t


@settings(max_examples=300)
@given(types())
def test_round_trip_random_types(ty):
    assert parse_type(pretty(ty)) == ty


def test_subst_examples():
    assert subst_type_in_term(parse_term(r"\x:a. x"), "a", NatTy()) == parse_term(r"\x:Nat. x")
    assert subst_type_in_term(parse_term("nil[a]"), "b", NatTy()) == parse_term("nil[a]")
    ml = subst_type_in_term(parse_term(MAP_LIST_SRC), "a", NatTy())
    assert typecheck(Ctx(frozenset({"b"})), ml) == parse_type("(Nat -> b) -> [Nat] -> [b]")


closed_types = types(tyvars=())


@settings(max_examples=200)
@given(raw_terms(tyvars=("a",)), closed_types)
def test_subst_absent_variable_is_identity(t, tau):
    assert "b" not in term_ty_vars(t)
    assert subst_type_in_term(t, "b", tau) == t


@settings(max_examples=200)
@given(raw_terms(), closed_types, closed_types)
def test_subst_commutes(t, tau1, tau2):
    ab = subst_type_in_term(subst_type_in_term(t, "a", tau1), "b", tau2)
    ba = subst_type_in_term(subst_type_in_term(t, "b", tau2), "a", tau1)
    assert ab == ba


@given(raw_terms(), closed_types)
def test_subst_removes_variable(t, tau):
    assert "a" not in term_ty_vars(subst_type_in_term(t, "a", tau))


@given(st.integers(0, 10**30))
def test_big_literals(n):
    assert parse_term(str(n)) == NatLit(n)
