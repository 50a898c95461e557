"""Cost-blind reference interpreter that counts lambda-body entries.

Written separately from ``semantics.eval_cost``: closures are explicit
records, environments are linked frames, and the only cost notion is a
counter bumped when a closure is applied.  Used as the independent check
that the cost semantics charges exactly one unit per beta step.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import syntax as s
from .semantics import VFun, VList, VNat, VPair


@dataclass(frozen=True)
class _Frame:
    name: str
    value: object
    parent: "_Frame | None"

    def find(self, name):
        frame = self
        while frame is not None:
            if frame.name == name:
                return frame.value
            frame = frame.parent
        raise KeyError(name)


@dataclass(frozen=True, eq=False)
class Closure:
    param: str
    body: s.Term
    frame: _Frame | None


class BetaCounter:
    def __init__(self):
        self.count = 0

    def bind(self, frame, name, value):
        return _Frame(name, value, frame)

    def apply(self, fn, arg):
        if not isinstance(fn, Closure):
            raise RuntimeError(f"oracle: applying {fn!r}")
        self.count += 1
        return self.run(fn.body, self.bind(fn.frame, fn.param, arg))

    def run(self, t, frame):
        if isinstance(t, s.Var):
            if frame is None:
                raise RuntimeError(f"oracle: unbound {t.name}")
            return frame.find(t.name)
        if isinstance(t, s.NatLit):
            return t.n
        if isinstance(t, s.Add):
            return self.run(t.left, frame) + self.run(t.right, frame)
        if isinstance(t, s.NatCase):
            n = self.run(t.scrutinee, frame)
            if n == 0:
                return self.run(t.zero_branch, frame)
            return self.run(t.pos_branch, self.bind(frame, t.binder, n))
        if isinstance(t, s.Nil):
            return []
        if isinstance(t, s.Cons):
            head = self.run(t.head, frame)
            return [head] + self.run(t.tail, frame)
        if isinstance(t, s.ListCase):
            xs = self.run(t.scrutinee, frame)
            if not xs:
                return self.run(t.nil_branch, frame)
            inner = self.bind(self.bind(frame, t.head_binder, xs[0]), t.tail_binder, xs[1:])
            return self.run(t.cons_branch, inner)
        if isinstance(t, s.PairLit):
            return ("pair", self.run(t.fst, frame), self.run(t.snd, frame))
        if isinstance(t, s.PairCase):
            _, a, b = self.run(t.scrutinee, frame)
            inner = self.bind(self.bind(frame, t.fst_binder, a), t.snd_binder, b)
            return self.run(t.body, inner)
        if isinstance(t, s.Lam):
            return Closure(t.binder, t.body, frame)
        if isinstance(t, s.App):
            fn = self.run(t.fun, frame)
            arg = self.run(t.arg, frame)
            return self.apply(fn, arg)
        if isinstance(t, s.LFold):
            step = self.run(t.step, frame)
            acc = self.run(t.init, frame)
            items = self.run(t.list, frame)
            for item in items[::-1]:
                acc = self.apply(self.apply(step, item), acc)
            return acc
        if isinstance(t, s.IFold):
            step = self.run(t.step, frame)
            acc = self.run(t.init, frame)
            n = self.run(t.count, frame)
            for _ in range(n):
                acc = self.apply(step, acc)
            return acc
        raise TypeError(f"not a term: {t!r}")


def _export(v, counter):
    if isinstance(v, bool):
        raise TypeError(v)
    if isinstance(v, int):
        return VNat(v)
    if isinstance(v, list):
        return VList(tuple(_export(e, counter) for e in v))
    if isinstance(v, tuple):
        return VPair(_export(v[1], counter), _export(v[2], counter))
    # functions leave the oracle as opaque standard functions (uncounted)
    return VFun(lambda arg: _export(BetaCounter().apply(v, _import(arg)), counter))


def _import(v):
    match v:
        case VNat(n):
            return n
        case VList(elems):
            return [_import(e) for e in elems]
        case VPair(a, b):
            return ("pair", _import(a), _import(b))
    raise TypeError(f"oracle cannot import {v!r}")


def beta_count_oracle(env, t: s.Term):
    """Evaluate ``t`` and return ``(value, number of beta steps)``.

    ``env`` maps names to ground standard values.
    """
    counter = BetaCounter()
    frame = None
    for name, v in env.items():
        frame = counter.bind(frame, name, _import(v))
    result = counter.run(t, frame)
    return _export(result, counter), counter.count
