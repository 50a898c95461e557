"""Sweep the costly-consumer fusion family and print the cost gap per N."""

import argparse

from costlr.corpus import FUSION_BAD, FUSION_GOOD, FUSION_K, fusion_costly_k
from costlr.syntax import NatTy, parse_term
from costlr.theorems import shortcut_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ns", nargs="*", type=int, default=[0, 1, 10, 100, 1000])
    args = ap.parse_args()
    nat = NatTy()
    good = shortcut_check(parse_term(FUSION_GOOD), parse_term(FUSION_K), parse_term("0"), nat, nat)
    print(f"{'producer':<14}{'lhs':>8}{'rhs':>8}{'gap':>8}  improvement")
    print(f"{'good':<14}{good.lhs_cost:>8}{good.rhs_cost:>8}{good.rhs_cost - good.lhs_cost:>8}  {good.improvement_holds}")
    for n in args.ns:
        r = shortcut_check(parse_term(FUSION_BAD), parse_term(fusion_costly_k(n)), parse_term("0"), nat, nat)
        gap = r.rhs_cost - r.lhs_cost
        print(f"{'bad N=' + str(n):<14}{r.lhs_cost:>8}{r.rhs_cost:>8}{gap:>8}  {r.improvement_holds}")


if __name__ == "__main__":
    main()
