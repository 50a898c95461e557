"""Direct, search-based membership in the liftings of graph relations.

These deliberately avoid the witness equations: a pair is in a lifting when
some explicit decomposition of its costs puts every component in the cost
lifting of the underlying relation.
"""

from costlr.semantics import Costed, VList, VPair

SPLIT = range(-3, 4)


def cost_lift(rel, x: Costed, y: Costed) -> bool:
    return x.cost == y.cost and (x.val, y.val) in rel


def pair_lift(rel1, rel2, p: Costed, q: Costed) -> bool:
    if not (isinstance(p.val, VPair) and isinstance(q.val, VPair)):
        return False
    for a in SPLIT:
        for b in SPLIT:
            x1, x2 = Costed(p.val.fst, a), Costed(p.val.snd, p.cost - a)
            y1, y2 = Costed(q.val.fst, b), Costed(q.val.snd, q.cost - b)
            if cost_lift(rel1, x1, y1) and cost_lift(rel2, x2, y2):
                return True
    return False


def list_lift(rel, xs: Costed, ys: Costed) -> bool:
    if not (isinstance(xs.val, VList) and isinstance(ys.val, VList)):
        return False
    a, b = xs.val.elems, ys.val.elems
    if len(a) != len(b):
        return False
    if not a:
        # empty lists relate at any shared cost (shift closure of the nil case)
        return xs.cost == ys.cost
    n = len(a)

    def go(i, rest_x, rest_y):
        if i == n - 1:
            return cost_lift(rel, Costed(a[i], rest_x), Costed(b[i], rest_y))
        for c in SPLIT:
            for d in SPLIT:
                if cost_lift(rel, Costed(a[i], c), Costed(b[i], d)) and go(i + 1, rest_x - c, rest_y - d):
                    return True
        return False

    return go(0, xs.cost, ys.cost)
