"""Command line front end.

Every subcommand is a thin shell over one library call: read exact input
(model or curve JSON, tree text, series JSON), invoke the operation, and
print the result with exact arithmetic rendered as strings.  Rationals
print as "p/q", big integers in full decimal; the only floating-point
output comes from the `asymptotics` subcommand, whose report records the
working precision it used.  Identical invocations print identical bytes.

Exit codes: 0 when the requested computation succeeds (and, for checking
subcommands, the verified identity holds), 1 when a verification check
leaves a nonzero residual, 2 for unusable input.

The --threads flag (or the TREEINVERSE_THREADS variable) is accepted for
interface stability and currently ignored: all computations here are
deterministic single-threaded exact arithmetic, and results never depend
on it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import mpmath

from . import asymptotics as asym
from . import loday as loday_mod
from . import morph as morph_mod
from .graft import check_skeleton_sum
from .rings import ConsistencyError, InputError
from .series import series_from_json, series_to_json
from .solve import invert, solve, verify_identity
from .spin import model_from_json, partition, restricted_partition
from .trees import enumerate_general, enumerate_k_regular, tree_from_text


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_model(path):
    return model_from_json(_load_json(path))


def _emit_json(data):
    print(json.dumps(data, indent=2, sort_keys=True))


# -- subcommand bodies: each returns the process exit code ----------------


def _cmd_solve(args):
    system = solve(_load_model(args.model), args.order)
    _emit_json(system.to_json())
    return 0


def _cmd_verify(args):
    system = solve(_load_model(args.model), args.order)
    report = verify_identity(system)
    if report.verified:
        print(f"verified: g(g~(X)) = g~(g(X)) = X through degree {args.order}")
        return 0
    print("FAILED: composites differ from X")
    print(f"  g(g~(X)) - X = {report.left.to_text()}")
    print(f"  g~(g(X)) - X = {report.right.to_text()}")
    return 1


def _cmd_partition(args):
    model = _load_model(args.model)
    tree = tree_from_text(args.tree)
    if args.root_spin is not None:
        value = restricted_partition(tree, args.root_spin, model, order=args.order)
    else:
        value = partition(tree, model, order=args.order)
    print(value.to_text())
    return 0


def _cmd_enumerate(args):
    if (args.k is None) == (args.degrees is None):
        raise InputError("pass exactly one of --k or --degrees")
    if args.k is not None:
        if args.max_leaves is None:
            raise InputError("--k needs --max-leaves")
        trees = enumerate_k_regular(args.k, args.max_leaves)
    else:
        if args.max_vertices is None:
            raise InputError("--degrees needs --max-vertices")
        degrees = [int(d) for d in args.degrees.split(",") if d.strip()]
        trees = enumerate_general(degrees, args.max_vertices)
    count = 0
    for tree in trees:
        count += 1
        if not args.count:
            print(tree.to_text())
    if args.count:
        print(count)
    return 0


def _cmd_graft_check(args):
    model = _load_model(args.model)
    tree = tree_from_text(args.tree)
    residual = check_skeleton_sum(tree, model, alpha=args.alpha, order=args.order)
    if residual.is_zero():
        print("skeleton sum vanishes: grafted partition functions cancel")
        return 0
    print(f"FAILED: skeleton sum = {residual.to_text()}")
    return 1


def _cmd_invert(args):
    series = series_from_json(_load_json(args.series))
    _emit_json(series_to_json(invert(series, method=args.method, order=args.order)))
    return 0


def _parse_family(text):
    if text == "all":
        return "all"
    raw = text[1:] if text.startswith("k") else text
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"unknown family {text!r}: use k2, k3, ... or all") from None


def _cmd_morph(args):
    if (args.tree is None) == (args.family is None):
        raise InputError("pass exactly one of a tree or --family")
    if args.tree is not None:
        tree = tree_from_text(args.tree)
        if args.surjective:
            print(morph_mod.surjective(tree))
        else:
            if args.m is None:
                raise InputError("counting labelings of a tree needs --m")
            print(morph_mod.gamma_recursive(tree, args.m, restricted=args.restricted))
        return 0
    family = _parse_family(args.family)
    if args.sequence == "comparable-pairs":
        values = morph_mod.comparable_pairs_sequence(family, args.terms)
    else:
        if args.m is None:
            raise InputError("a family sequence needs --m")
        values = morph_mod.morphism_sequence(
            family, args.m, restricted=args.restricted, terms=args.terms
        )
    print(" ".join(str(v) for v in values))
    return 0


def _cmd_loday(args):
    failures = 0
    series = loday_mod.loday_series(args.order)
    coeffs = series.x_coeffs()[1:]
    print(" ".join(str(c) for c in coeffs))
    if args.check_minpoly:
        residual = loday_mod.minpoly_check(series)
        if residual.is_zero():
            print(f"minimal polynomial satisfied through t^{args.order}")
        else:
            print(f"FAILED: P(y(t), t) = {residual.to_text()}")
            failures += 1
    if args.transpose_check:
        residual = loday_mod.transposition_check(args.order)
        if residual.is_zero():
            print(
                "transposed equation satisfied by the complementary series "
                f"through u^{args.order}"
            )
        else:
            print(f"FAILED: P(u, y~(u)) = {residual.to_text()}")
            failures += 1
    return 1 if failures else 0


def _cmd_asymptotics(args):
    if args.curve is not None:
        curve = loday_mod.curve_from_json(_load_json(args.curve))
    else:
        curve = loday_mod.load_curve()
    report = asym.singularity_report(curve, tuple(args.hint), digits=args.digits)
    if args.predict is not None:
        bp = asym.branch_point(curve, tuple(args.hint), digits=args.digits)
        value = asym.predict_coefficients(bp, args.predict)
        report["predict"] = {
            "n": args.predict,
            "value": mpmath.nstr(value, args.digits, strip_zeros=False),
        }
    _emit_json(report)
    return 0


# -- parser wiring ---------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="treeinverse",
        description="exact inversion of power series through spin models on trees",
    )
    default_threads = int(os.environ.get("TREEINVERSE_THREADS", "0") or 0)
    parser.add_argument(
        "--threads",
        type=int,
        default=default_threads,
        help="reserved; accepted for compatibility and currently ignored",
    )
    subs = parser.add_subparsers(dest="command", metavar="SUBCOMMAND")

    p = subs.add_parser("solve", help="solve the fixed-point system of a model")
    p.add_argument("--model", required=True, help="model JSON file")
    p.add_argument("--order", type=int, required=True, help="truncation order")
    p.set_defaults(func=_cmd_solve)

    p = subs.add_parser("verify", help="check g(g~(X)) = g~(g(X)) = X for a model")
    p.add_argument("--model", required=True)
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_cmd_verify)

    p = subs.add_parser("partition", help="partition function of a tree in a model")
    p.add_argument("--model", required=True)
    p.add_argument("--tree", required=True, help='tree text, e.g. "((L L) L)"')
    p.add_argument("--root-spin", default=None, help="restrict the root letter")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=_cmd_partition)

    p = subs.add_parser("enumerate", help="list planar trees")
    p.add_argument("--k", type=int, default=None, help="arity for regular trees")
    p.add_argument("--max-leaves", type=int, default=None)
    p.add_argument(
        "--degrees", default=None, help="comma-separated interior arities, e.g. 2,3"
    )
    p.add_argument("--max-vertices", type=int, default=None)
    p.add_argument("--count", action="store_true", help="print only the count")
    p.set_defaults(func=_cmd_enumerate)

    p = subs.add_parser(
        "graft-check", help="check that signed grafted partition functions cancel"
    )
    p.add_argument("--model", required=True)
    p.add_argument("--tree", required=True)
    p.add_argument("--alpha", default=None, help="restrict the graft letter")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=_cmd_graft_check)

    p = subs.add_parser("invert", help="compositional inverse of a series")
    p.add_argument("--series", required=True, help="series JSON file")
    p.add_argument("--method", choices=("tree", "newton"), default="newton")
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=_cmd_invert)

    p = subs.add_parser("morph", help="order-preserving labeling counts")
    p.add_argument("tree", nargs="?", default=None, help="tree text (count one tree)")
    p.add_argument("--family", default=None, help="k2, k3, ... or all")
    p.add_argument("--m", type=int, default=None, help="number of label values")
    p.add_argument("--restricted", action="store_true", help="leaves take the top label")
    p.add_argument("--surjective", action="store_true", help="count onto labelings")
    p.add_argument("--terms", type=int, default=8)
    p.add_argument("--sequence", choices=("comparable-pairs",), default=None)
    p.set_defaults(func=_cmd_morph)

    p = subs.add_parser("loday", help="the nine-letter model's series and its curve")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--check-minpoly", action="store_true")
    p.add_argument("--transpose-check", action="store_true")
    p.set_defaults(func=_cmd_loday)

    p = subs.add_parser("asymptotics", help="singularity analysis of a curve")
    p.add_argument("--curve", default=None, help="curve JSON file (default: built-in)")
    p.add_argument("--digits", type=int, default=asym.DEFAULT_DIGITS)
    p.add_argument("--predict", type=int, default=None, metavar="N")
    p.add_argument(
        "--hint",
        nargs=2,
        default=("-0.1413", "-0.1412"),
        metavar=("LO", "HI"),
        help="interval isolating the dominant branch point",
    )
    p.set_defaults(func=_cmd_asymptotics)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
