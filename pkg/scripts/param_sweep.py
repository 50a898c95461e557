"""Run the randomized parametricity check over several seeds, clean and mutated."""

import argparse
import time

from costlr.paramtest import ParamTestConfig, run_param_test


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--iters", type=int, default=1000)
    args = ap.parse_args()
    print(f"{'seed':>5}{'mutate':>8}{'iters':>7}{'failures':>10}{'secs':>7}")
    for seed in range(args.seeds):
        for mutate in (False, True):
            t0 = time.perf_counter()
            r = run_param_test(ParamTestConfig(seed=seed, iters=args.iters, mutate=mutate))
            dt = time.perf_counter() - t0
            print(f"{seed:>5}{str(mutate):>8}{r.iterations:>7}{len(r.failures):>10}{dt:>7.2f}")


if __name__ == "__main__":
    main()
