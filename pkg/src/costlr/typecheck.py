"""The typing judgment ``ctx |- t :: ty`` for the explicitly typed calculus."""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    Add, App, ArrowTy, Cons, IFold, Lam, LFold, ListCase, ListTy, NatCase, NatLit, NatTy,
    Nil, PairCase, PairLit, PairTy, SourceSpan, Term, Ty, Var, pretty_ty, ty_vars,
)


@dataclass(frozen=True)
class Ctx:
    type_vars: frozenset[str] = frozenset()
    term_vars: tuple[tuple[str, Ty], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "type_vars", frozenset(self.type_vars))
        object.__setattr__(self, "term_vars", tuple(self.term_vars))
        for x, ty in self.term_vars:
            unbound = ty_vars(ty) - self.type_vars
            if unbound:
                raise ValueError(f"type of {x} mentions undeclared {sorted(unbound)}")

    @classmethod
    def of(cls, type_vars=(), **term_vars: Ty | str) -> "Ctx":
        from .syntax import parse_type

        return cls(
            frozenset(type_vars),
            tuple((x, parse_type(t) if isinstance(t, str) else t) for x, t in term_vars.items()),
        )

    def lookup(self, x: str) -> Ty | None:
        for name, ty in reversed(self.term_vars):
            if name == x:
                return ty
        return None

    def extend(self, *bindings: tuple[str, Ty]) -> "Ctx":
        # bypass the well-formedness check; annotations were checked by the caller
        new = object.__new__(Ctx)
        object.__setattr__(new, "type_vars", self.type_vars)
        object.__setattr__(new, "term_vars", self.term_vars + tuple(bindings))
        return new


class TypeCheckError(Exception):
    """A typing failure at ``span``; ``expected``/``found`` are types or descriptions."""

    def __init__(self, span: SourceSpan | None, expected, found, what: str = ""):
        self.span = span
        self.expected = expected
        self.found = found
        exp = pretty_ty(expected) if not isinstance(expected, str) else expected
        fnd = pretty_ty(found) if not isinstance(found, str) else found
        where = f" at {span.start}..{span.end}" if span else ""
        lead = f"{what}: " if what else ""
        super().__init__(f"type error{where}: {lead}expected {exp}, found {fnd}")


def _check_wf(ctx: Ctx, ty: Ty, t: Term):
    unbound = ty_vars(ty) - ctx.type_vars
    if unbound:
        raise TypeCheckError(
            t.span, "declared type variables " + (",".join(sorted(ctx.type_vars)) or "(none)"),
            "type variable " + ",".join(sorted(unbound)), "annotation",
        )


def _want(t: Term, expected: Ty, found: Ty, what: str):
    if expected != found:
        raise TypeCheckError(t.span, expected, found, what)


def typecheck(ctx: Ctx, t: Term) -> Ty:
    match t:
        case Var(x):
            ty = ctx.lookup(x)
            if ty is None:
                raise TypeCheckError(t.span, "a bound variable", f"unbound variable {x}")
            return ty
        case NatLit():
            return NatTy()
        case Nil(ty):
            _check_wf(ctx, ty, t)
            return ListTy(ty)
        case Add(l, r):
            _want(l, NatTy(), typecheck(ctx, l), "left operand of +")
            _want(r, NatTy(), typecheck(ctx, r), "right operand of +")
            return NatTy()
        case NatCase(s, z, x, p):
            _want(s, NatTy(), typecheck(ctx, s), "ncase scrutinee")
            ty = typecheck(ctx, z)
            _want(p, ty, typecheck(ctx.extend((x, NatTy())), p), "ncase branch")
            return ty
        case Cons(h, tl):
            hty = typecheck(ctx, h)
            _want(tl, ListTy(hty), typecheck(ctx, tl), "tail of cons")
            return ListTy(hty)
        case ListCase(s, n, x, xs, c):
            sty = typecheck(ctx, s)
            if not isinstance(sty, ListTy):
                raise TypeCheckError(s.span, "a list type", sty, "lcase scrutinee")
            ty = typecheck(ctx, n)
            cty = typecheck(ctx.extend((x, sty.elem), (xs, sty)), c)
            _want(c, ty, cty, "lcase branch")
            return ty
        case PairLit(a, b):
            return PairTy(typecheck(ctx, a), typecheck(ctx, b))
        case PairCase(s, x, y, b):
            sty = typecheck(ctx, s)
            if not isinstance(sty, PairTy):
                raise TypeCheckError(s.span, "a pair type", sty, "pcase scrutinee")
            return typecheck(ctx.extend((x, sty.left), (y, sty.right)), b)
        case Lam(x, ty, body):
            _check_wf(ctx, ty, t)
            return ArrowTy(ty, typecheck(ctx.extend((x, ty)), body))
        case App(f, a):
            fty = typecheck(ctx, f)
            if not isinstance(fty, ArrowTy):
                raise TypeCheckError(f.span, "a function type", fty, "applied term")
            _want(a, fty.dom, typecheck(ctx, a), "argument")
            return fty.cod
        case LFold(step, init, xs):
            ity = typecheck(ctx, init)
            lty = typecheck(ctx, xs)
            if not isinstance(lty, ListTy):
                raise TypeCheckError(xs.span, "a list type", lty, "lfold list")
            _want(step, ArrowTy(lty.elem, ArrowTy(ity, ity)), typecheck(ctx, step), "lfold step")
            return ity
        case IFold(step, init, n):
            ity = typecheck(ctx, init)
            _want(n, NatTy(), typecheck(ctx, n), "ifold count")
            _want(step, ArrowTy(ity, ity), typecheck(ctx, step), "ifold step")
            return ity
    raise TypeError(f"not a term: {t!r}")
