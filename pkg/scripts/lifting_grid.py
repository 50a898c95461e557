"""Run the exhaustive cost-lifting equivalence grid and summarize by type kind."""

import argparse
import time
from dataclasses import replace

from costlr.grid import GRID, lifting_grid, small_types


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=GRID.type_depth)
    args = ap.parse_args()
    cfg = replace(GRID, type_depth=args.depth)
    types = small_types(args.depth)
    t0 = time.perf_counter()
    res = lifting_grid(cfg, types)
    dt = time.perf_counter() - t0
    print(f"types={len(types)} checked={res.checked} discrepancies={len(res.discrepancies)} secs={dt:.1f}")
    for d in res.discrepancies[:10]:
        print("  ", d)


if __name__ == "__main__":
    main()
