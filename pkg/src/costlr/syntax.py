"""Object-language types and terms, the concrete-syntax parser and printer."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Union

KEYWORDS = frozenset({"ncase", "lcase", "pcase", "lfold", "ifold", "nil", "Nat"})


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError(f"bad span {self.start}..{self.end}")


def _span():
    return field(default=None, compare=False, repr=False)


# ---------------------------------------------------------------- types


@dataclass(frozen=True)
class TyVar:
    name: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class NatTy:
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class PairTy:
    left: Ty
    right: Ty
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class ListTy:
    elem: Ty
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class ArrowTy:
    dom: Ty
    cod: Ty
    span: SourceSpan | None = _span()


Ty = Union[TyVar, NatTy, PairTy, ListTy, ArrowTy]


# ---------------------------------------------------------------- terms


@dataclass(frozen=True)
class Var:
    name: str
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class NatLit:
    n: int
    span: SourceSpan | None = _span()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("natural literal must be nonnegative")


@dataclass(frozen=True)
class NatCase:
    scrutinee: Term
    zero_branch: Term
    binder: str
    pos_branch: Term
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Add:
    left: Term
    right: Term
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Nil:
    elem_ty: Ty
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Cons:
    head: Term
    tail: Term
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class ListCase:
    scrutinee: Term
    nil_branch: Term
    head_binder: str
    tail_binder: str
    cons_branch: Term
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class PairLit:
    fst: Term
    snd: Term
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class PairCase:
    scrutinee: Term
    fst_binder: str
    snd_binder: str
    body: Term
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class Lam:
    binder: str
    binder_ty: Ty
    body: Term
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class App:
    fun: Term
    arg: Term
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class LFold:
    step: Term
    init: Term
    list: Term
    span: SourceSpan | None = _span()


@dataclass(frozen=True)
class IFold:
    step: Term
    init: Term
    count: Term
    span: SourceSpan | None = _span()


Term = Union[
    Var, NatLit, NatCase, Add, Nil, Cons, ListCase, PairLit, PairCase, Lam, App, LFold, IFold
]


def arrows(*tys: Ty) -> Ty:
    """Right-nested arrow type ``t1 -> t2 -> ... -> tn``."""
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = ArrowTy(t, out)
    return out


def apply(f: Term, *args: Term) -> Term:
    for a in args:
        f = App(f, a)
    return f


# ---------------------------------------------------------------- type utilities


def ty_vars(ty: Ty) -> frozenset[str]:
    match ty:
        case TyVar(name):
            return frozenset({name})
        case NatTy():
            return frozenset()
        case PairTy(l, r) | ArrowTy(l, r):
            return ty_vars(l) | ty_vars(r)
        case ListTy(e):
            return ty_vars(e)
    raise TypeError(f"not a type: {ty!r}")


def subst_ty(ty: Ty, alpha: str, tau: Ty) -> Ty:
    match ty:
        case TyVar(name):
            return tau if name == alpha else ty
        case NatTy():
            return ty
        case PairTy(l, r):
            return PairTy(subst_ty(l, alpha, tau), subst_ty(r, alpha, tau), ty.span)
        case ListTy(e):
            return ListTy(subst_ty(e, alpha, tau), ty.span)
        case ArrowTy(d, c):
            return ArrowTy(subst_ty(d, alpha, tau), subst_ty(c, alpha, tau), ty.span)
    raise TypeError(f"not a type: {ty!r}")


def term_ty_vars(t: Term) -> frozenset[str]:
    """Type variables mentioned in the annotations of ``t``."""
    out: set[str] = set()

    def go(t):
        match t:
            case Lam(_, ty, body):
                out.update(ty_vars(ty))
                go(body)
            case Nil(ty):
                out.update(ty_vars(ty))
            case _:
                for child in children(t):
                    go(child)

    go(t)
    return frozenset(out)


def children(t: Term) -> tuple[Term, ...]:
    match t:
        case Var() | NatLit() | Nil():
            return ()
        case NatCase(s, z, _, p):
            return (s, z, p)
        case Add(l, r) | Cons(l, r) | PairLit(l, r) | App(l, r):
            return (l, r)
        case ListCase(s, n, _, _, c):
            return (s, n, c)
        case PairCase(s, _, _, b):
            return (s, b)
        case Lam(_, _, b):
            return (b,)
        case LFold(a, b, c) | IFold(a, b, c):
            return (a, b, c)
    raise TypeError(f"not a term: {t!r}")


def subst_type_in_term(t: Term, alpha: str, tau: Ty) -> Term:
    """Replace the type variable ``alpha`` by ``tau`` in every annotation of ``t``.

    The calculus has no type binders, so the substitution cannot capture.
    """

    def go(t):
        match t:
            case Var() | NatLit():
                return t
            case Nil(ty):
                return replace(t, elem_ty=subst_ty(ty, alpha, tau))
            case Lam(x, ty, body):
                return replace(t, binder_ty=subst_ty(ty, alpha, tau), body=go(body))
            case NatCase(s, z, x, p):
                return replace(t, scrutinee=go(s), zero_branch=go(z), pos_branch=go(p))
            case Add(l, r):
                return replace(t, left=go(l), right=go(r))
            case Cons(h, tl):
                return replace(t, head=go(h), tail=go(tl))
            case ListCase(s, n, _, _, c):
                return replace(t, scrutinee=go(s), nil_branch=go(n), cons_branch=go(c))
            case PairLit(a, b):
                return replace(t, fst=go(a), snd=go(b))
            case PairCase(s, _, _, b):
                return replace(t, scrutinee=go(s), body=go(b))
            case App(f, a):
                return replace(t, fun=go(f), arg=go(a))
            case LFold(s, i, xs):
                return replace(t, step=go(s), init=go(i), list=go(xs))
            case IFold(s, i, n):
                return replace(t, step=go(s), init=go(i), count=go(n))
        raise TypeError(f"not a term: {t!r}")

    return go(t)


# ---------------------------------------------------------------- parser


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} at {span.start}..{span.end}")
        self.message = message
        self.span = span


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|--[^\n]*)
  | (?P<arrow>->)
  | (?P<nat>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9]*)
  | (?P<punct>[\\:.,;()\[\]{}+])
    """,
    re.VERBOSE,
)

_IDENT = re.compile(r"[a-z][A-Za-z0-9]*\Z")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "nat" | "ident" | "kw" | "sym" | "eof"
    text: str
    start: int
    end: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(pos, pos + 1))
        kind = m.lastgroup
        word = m.group()
        if kind == "ident":
            if word in KEYWORDS:
                kind = "kw"
            elif not _IDENT.match(word):
                raise ParseError(f"bad identifier {word!r}", SourceSpan(m.start(), m.end()))
        elif kind in ("arrow", "punct"):
            kind = "sym"
        if kind != "ws":
            toks.append(_Tok(kind, word, m.start(), m.end()))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), len(text)))
    return toks


# Tokens that can begin an Atom; used to decide whether an application continues.
_ATOM_START_SYMS = frozenset({"("})
_ATOM_START_KWS = frozenset({"nil", "ncase", "lcase", "pcase", "lfold", "ifold"})


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def _err(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        return ParseError(f"{msg}, found {found!r}", SourceSpan(tok.start, tok.end))

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "kw") and self.tok.text == text

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            raise self._err(f"expected {text!r}")
        tok = self.tok
        self.i += 1
        return tok

    def ident(self) -> str:
        tok = self.tok
        if tok.kind != "ident":
            raise self._err("expected identifier")
        self.i += 1
        return tok.text

    def span_from(self, start: int) -> SourceSpan:
        return SourceSpan(start, self.toks[self.i - 1].end)

    def done(self):
        if self.tok.kind != "eof":
            raise self._err("unexpected trailing input")

    # types

    def ty(self) -> Ty:
        start = self.tok.start
        dom = self.aty()
        if self.at("->"):
            self.i += 1
            cod = self.ty()
            return ArrowTy(dom, cod, self.span_from(start))
        return dom

    def aty(self) -> Ty:
        tok = self.tok
        start = tok.start
        if self.at("Nat"):
            self.i += 1
            return NatTy(self.span_from(start))
        if tok.kind == "ident":
            self.i += 1
            return TyVar(tok.text, self.span_from(start))
        if self.at("["):
            self.i += 1
            elem = self.ty()
            self.expect("]")
            return ListTy(elem, self.span_from(start))
        if self.at("("):
            self.i += 1
            first = self.ty()
            if self.at(","):
                self.i += 1
                second = self.ty()
                self.expect(")")
                return PairTy(first, second, self.span_from(start))
            self.expect(")")
            return first
        raise self._err("expected a type")

    # terms

    def term(self) -> Term:
        if self.at("\\"):
            start = self.tok.start
            self.i += 1
            x = self.ident()
            self.expect(":")
            ty = self.ty()
            self.expect(".")
            body = self.term()
            return Lam(x, ty, body, self.span_from(start))
        return self.cons()

    def cons(self) -> Term:
        start = self.tok.start
        head = self.sum()
        if self.at(":"):
            self.i += 1
            tail = self.cons()
            return Cons(head, tail, self.span_from(start))
        return head

    def sum(self) -> Term:
        start = self.tok.start
        left = self.app()
        while self.at("+"):
            self.i += 1
            right = self.app()
            left = Add(left, right, self.span_from(start))
        return left

    def _atom_starts(self) -> bool:
        tok = self.tok
        if tok.kind in ("ident", "nat"):
            return True
        if tok.kind == "sym":
            return tok.text in _ATOM_START_SYMS
        if tok.kind == "kw":
            return tok.text in _ATOM_START_KWS
        return False

    def app(self) -> Term:
        start = self.tok.start
        fun = self.atom()
        while self._atom_starts():
            arg = self.atom()
            fun = App(fun, arg, self.span_from(start))
        return fun

    def atom(self) -> Term:
        tok = self.tok
        start = tok.start
        if tok.kind == "ident":
            self.i += 1
            return Var(tok.text, self.span_from(start))
        if tok.kind == "nat":
            self.i += 1
            return NatLit(int(tok.text), self.span_from(start))
        if self.at("nil"):
            self.i += 1
            self.expect("[")
            ty = self.ty()
            self.expect("]")
            return Nil(ty, self.span_from(start))
        if self.at("("):
            self.i += 1
            first = self.term()
            if self.at(","):
                self.i += 1
                second = self.term()
                self.expect(")")
                return PairLit(first, second, self.span_from(start))
            self.expect(")")
            return first
        if self.at("ncase"):
            self.i += 1
            scrut = self.term()
            self.expect("{")
            if not (self.tok.kind == "nat" and self.tok.text == "0"):
                raise self._err("expected '0'")
            self.i += 1
            self.expect("->")
            zero = self.term()
            self.expect(";")
            x = self.ident()
            self.expect("->")
            pos = self.term()
            self.expect("}")
            return NatCase(scrut, zero, x, pos, self.span_from(start))
        if self.at("lcase"):
            self.i += 1
            scrut = self.term()
            self.expect("{")
            self.expect("nil")
            self.expect("->")
            nil_b = self.term()
            self.expect(";")
            x = self.ident()
            self.expect(":")
            xs = self.ident()
            self.expect("->")
            cons_b = self.term()
            self.expect("}")
            return ListCase(scrut, nil_b, x, xs, cons_b, self.span_from(start))
        if self.at("pcase"):
            self.i += 1
            scrut = self.term()
            self.expect("{")
            self.expect("(")
            x = self.ident()
            self.expect(",")
            y = self.ident()
            self.expect(")")
            self.expect("->")
            body = self.term()
            self.expect("}")
            return PairCase(scrut, x, y, body, self.span_from(start))
        if self.at("lfold") or self.at("ifold"):
            kind = LFold if tok.text == "lfold" else IFold
            self.i += 1
            self.expect("(")
            a = self.term()
            self.expect(",")
            b = self.term()
            self.expect(",")
            c = self.term()
            self.expect(")")
            return kind(a, b, c, self.span_from(start))
        raise self._err("expected a term")


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.done()
    return t


def parse_type(text: str) -> Ty:
    p = _Parser(text)
    ty = p.ty()
    p.done()
    return ty


# ---------------------------------------------------------------- printer

# precedence levels: 0 lambda, 1 cons, 2 sum, 3 application, 4 atom
_LAM, _CONS, _SUM, _APP, _ATOM = range(5)


def pretty_ty(ty: Ty, arrow_ok: bool = True) -> str:
    match ty:
        case TyVar(name):
            return name
        case NatTy():
            return "Nat"
        case ListTy(e):
            return f"[{pretty_ty(e)}]"
        case PairTy(l, r):
            return f"({pretty_ty(l)}, {pretty_ty(r)})"
        case ArrowTy(d, c):
            s = f"{pretty_ty(d, arrow_ok=False)} -> {pretty_ty(c)}"
            return s if arrow_ok else f"({s})"
    raise TypeError(f"not a type: {ty!r}")


def _pt(t: Term, level: int) -> str:
    match t:
        case Var(name):
            return name
        case NatLit(n):
            return str(n)
        case Nil(ty):
            return f"nil[{pretty_ty(ty)}]"
        case PairLit(a, b):
            return f"({_pt(a, _LAM)}, {_pt(b, _LAM)})"
        case NatCase(s, z, x, p):
            return f"ncase {_pt(s, _LAM)} {{0 -> {_pt(z, _LAM)}; {x} -> {_pt(p, _LAM)}}}"
        case ListCase(s, n, x, xs, c):
            return (
                f"lcase {_pt(s, _LAM)} {{nil -> {_pt(n, _LAM)}; "
                f"{x}:{xs} -> {_pt(c, _LAM)}}}"
            )
        case PairCase(s, x, y, b):
            return f"pcase {_pt(s, _LAM)} {{({x}, {y}) -> {_pt(b, _LAM)}}}"
        case LFold(a, b, c):
            return f"lfold({_pt(a, _LAM)}, {_pt(b, _LAM)}, {_pt(c, _LAM)})"
        case IFold(a, b, c):
            return f"ifold({_pt(a, _LAM)}, {_pt(b, _LAM)}, {_pt(c, _LAM)})"
        case App(f, a):
            s, own = f"{_pt(f, _APP)} {_pt(a, _ATOM)}", _APP
        case Add(l, r):
            s, own = f"{_pt(l, _SUM)} + {_pt(r, _APP)}", _SUM
        case Cons(h, tl):
            s, own = f"{_pt(h, _SUM)} : {_pt(tl, _CONS)}", _CONS
        case Lam(x, ty, body):
            s, own = f"\\{x}:{pretty_ty(ty)}. {_pt(body, _LAM)}", _LAM
        case _:
            raise TypeError(f"not a term: {t!r}")
    return s if own >= level else f"({s})"


def pretty(t: Term | Ty) -> str:
    if isinstance(t, (TyVar, NatTy, PairTy, ListTy, ArrowTy)):
        return pretty_ty(t)
    return _pt(t, _LAM)
