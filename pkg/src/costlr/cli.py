"""Command-line front end.

Exit codes: 0 success or theorem holds, 1 type error, 2 parse error,
3 theorem violated or parametricity failure, 4 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corpus import FUSION_GOOD, FUSION_K, FUSION_BAD, fusion_costly_k
from .paramtest import ParamTestConfig, run_param_test
from .semantics import GroundnessError, ShapeError, costed_to_json, eval_cost, eval_std, show_value, value_to_json
from .syntax import ParseError, parse_term, parse_type, pretty_ty
from .theorems import Shape, Verdict, check_free_theorem, negative_control, shortcut_check
from .typecheck import Ctx, TypeCheckError, typecheck

EXIT_OK, EXIT_TYPE, EXIT_PARSE, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str):
    try:
        return parse_term(_read(path))
    except ParseError as e:
        raise ParseError(f"{path}: {e.message}", e.span) from None


def _tyvars(spec: str | None) -> frozenset[str]:
    if not spec:
        return frozenset()
    return frozenset(v.strip() for v in spec.split(",") if v.strip())


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), sort_keys=False)


def cmd_typecheck(args, out) -> int:
    t = _load(args.file)
    print(pretty_ty(typecheck(Ctx(_tyvars(args.tyvars)), t)), file=out)
    return EXIT_OK


def cmd_eval(args, out) -> int:
    t = _load(args.file)
    typecheck(Ctx(_tyvars(args.tyvars)), t)
    if args.std:
        v = eval_std({}, t)
        print(_dump({"value": value_to_json(v)}) if args.json else show_value(v), file=out)
    else:
        print(_dump(costed_to_json(eval_cost({}, t))), file=out)
    return EXIT_OK


def _print_report(rep, out, as_json):
    if as_json:
        print(_dump(rep.to_json()), file=out)
        return
    print(f"shape    {rep.shape.value}", file=out)
    print(f"lhs      {show_value(rep.lhs.val)} @ {rep.lhs.cost}", file=out)
    print(f"rhs      {show_value(rep.rhs.val)} @ {rep.rhs.cost}", file=out)
    print(f"delta    {rep.delta} (predicted {', '.join(map(str, rep.predicted))})", file=out)
    print(f"witness  {_dump(rep.witness)}", file=out)
    for n in rep.notes:
        print(f"note     {n}", file=out)
    print(f"verdict  {rep.verdict.value}", file=out)


def cmd_free_theorem(args, out) -> int:
    f, g = _load(args.f), _load(args.g)
    targs = [_load(a) for a in args.args]
    if args.monomorphic:
        if len(targs) != 2:
            raise UsageError("--monomorphic needs exactly two --args")
        rep = negative_control(f, g, *targs)
    else:
        rep = check_free_theorem(Shape(args.shape), f, g, targs, parse_type(args.tau1), parse_type(args.tau2))
    _print_report(rep, out, args.json)
    return EXIT_OK if rep.verdict is Verdict.HOLDS else EXIT_VIOLATED


def cmd_param_test(args, out) -> int:
    seed = args.seed
    env = os.environ.get("COSTLR_SEED")
    if env is not None:
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"COSTLR_SEED is not an integer: {env!r}") from None
    if args.iters < 0:
        raise UsageError("--iters must be nonnegative")
    res = run_param_test(ParamTestConfig(seed=seed, iters=args.iters, mutate=args.mutate))
    if args.json:
        print(_dump(res.to_json()), file=out)
    else:
        tag = " (mutant evaluator)" if args.mutate else ""
        print(f"param-test seed={seed} iterations={res.iterations} failures={len(res.failures)}{tag}", file=out)
        for fail in res.failures[:5]:
            print(f"  FAIL {_dump(fail)}", file=out)
    return EXIT_OK if res.ok else EXIT_VIOLATED


def cmd_fusion_demo(args, out) -> int:
    n = args.counterexample
    if n < 0:
        raise UsageError("--counterexample must be nonnegative")
    nat = parse_type("Nat")
    zero = parse_term("0")
    rows = [
        ("good", shortcut_check(parse_term(FUSION_GOOD), parse_term(FUSION_K), zero, nat, nat)),
        (f"counterexample N={n}", shortcut_check(parse_term(FUSION_BAD), parse_term(fusion_costly_k(n)), zero, nat, nat)),
    ]
    if args.json:
        print(_dump({name: rep.to_json() for name, rep in rows}), file=out)
    else:
        print(f"{'case':<24}{'lhsCost':>9}{'rhsCost':>9}  valueEqual  improvementHolds", file=out)
        for name, rep in rows:
            print(
                f"{name:<24}{rep.lhs_cost:>9}{rep.rhs_cost:>9}  {str(rep.value_equal):<10}  {rep.improvement_holds}",
                file=out,
            )
    # losing the improvement is the expected outcome; only a value mismatch is a failure
    return EXIT_OK if all(rep.value_equal for _, rep in rows) else EXIT_VIOLATED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="costlr", description="Cost-aware parametricity toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    tc = sub.add_parser("typecheck", help="print the type of a term file")
    tc.add_argument("file")
    tc.add_argument("--tyvars", help="comma-separated type variables in scope")
    tc.set_defaults(run=cmd_typecheck)

    ev = sub.add_parser("eval", help="evaluate a closed term file")
    ev.add_argument("file")
    mode = ev.add_mutually_exclusive_group()
    mode.add_argument("--cost", action="store_true", help="cost semantics (default)")
    mode.add_argument("--std", action="store_true", help="standard semantics")
    ev.add_argument("--json", action="store_true")
    ev.add_argument("--tyvars", help="comma-separated type variables in scope")
    ev.set_defaults(run=cmd_eval)

    ft = sub.add_parser("free-theorem", help="check a quantitative free theorem")
    ft.add_argument("--shape", choices=[s.value for s in Shape], default="proj")
    ft.add_argument("--f", required=True)
    ft.add_argument("--g", required=True)
    ft.add_argument("--args", nargs="+", required=True)
    ft.add_argument("--tau1", default="Nat")
    ft.add_argument("--tau2", default="Nat")
    ft.add_argument("--monomorphic", action="store_true", help="run the projection obligation on a Nat-typed f")
    ft.add_argument("--json", action="store_true")
    ft.set_defaults(run=cmd_free_theorem)

    pt = sub.add_parser("param-test", help="randomized parametricity checks")
    pt.add_argument("--seed", type=int, default=0)
    pt.add_argument("--iters", type=int, default=100)
    pt.add_argument("--mutate", action="store_true", help="charge 2 per beta step on one side")
    pt.add_argument("--json", action="store_true")
    pt.set_defaults(run=cmd_param_test)

    fd = sub.add_parser("fusion-demo", help="short-cut fusion costs")
    fd.add_argument("--counterexample", type=int, default=10, metavar="N")
    fd.add_argument("--json", action="store_true")
    fd.set_defaults(run=cmd_fusion_demo)
    return p


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        return args.run(args, out)
    except UsageError as e:
        print(f"usage error: {e}", file=err)
        return EXIT_USAGE
    except ParseError as e:
        print(f"parse error: {e}", file=err)
        return EXIT_PARSE
    except TypeCheckError as e:
        print(str(e), file=err)
        return EXIT_TYPE
    except (GroundnessError, ShapeError) as e:
        print(f"error: {e}", file=err)
        return EXIT_TYPE


def main(argv=None) -> int:
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
