"""Command-line front end: root, eig, psd, and bench subcommands.

All numeric input and output is exact "p/q" text; --decimal adds a correctly
rounded 20-digit decimal rendering alongside the rational, never replacing it.
Reports are JSON on standard output.  Exit codes: 0 success (or PSD true),
1 PSD false, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import decimal
import json
import sys
from typing import Optional

from gmpy2 import mpq

from .accel import accel_root, choose_k, write_trace_csv
from .bench import records_to_csv, run_sweep, summarize
from .detpoly import load_matrix
from .eigen import is_approx_psd, top_eigenvalue
from .normalize import denormalize_root, normalize_poly
from .oracle import explicit_oracle, read_coefficients, with_counter
from .scalar import format_rational, parse_rational


def _decimal20(q: mpq) -> str:
    with decimal.localcontext() as ctx:
        ctx.prec = 20
        ctx.rounding = decimal.ROUND_HALF_EVEN
        return str(decimal.Decimal(int(q.numerator)) / decimal.Decimal(int(q.denominator)))


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True))


def _add_decimal(report: dict, value: mpq, enabled: bool) -> None:
    if enabled:
        report["result_decimal"] = _decimal20(value)


def cmd_root(args) -> int:
    coeffs = read_coefficients(args.poly_file)
    bound = parse_rational(args.bound)
    eps = parse_rational(args.eps)
    if bound <= 0:
        raise ValueError("--bound must be positive")
    if eps <= 0:
        raise ValueError("--eps must be positive")
    oracle = explicit_oracle(coeffs)
    counted, log = with_counter(oracle)
    normalized, root_map = normalize_poly(counted, bound)
    eps_scaled = min(mpq(1, 2), eps / (4 * bound))
    k = choose_k(oracle.degree) if args.k is None else args.k
    mu, trace = accel_root(normalized, eps_scaled, k)
    result = denormalize_root(mu, root_map)
    if args.trace:
        write_trace_csv(trace, args.trace)
    report = {
        "command": "root",
        "inputs": {
            "poly_file": args.poly_file,
            "degree": oracle.degree,
            "bound": format_rational(bound),
            "eps": format_rational(eps),
            "eps_scaled": format_rational(eps_scaled),
            "k": k,
        },
        "result": format_rational(result),
        "queries": log.count,
        "max_query_bits": log.max_query_bits,
        "iterations": trace.iterations,
        "trace_path": args.trace,
    }
    _add_decimal(report, result, args.decimal)
    _emit(report)
    return 0


def cmd_eig(args) -> int:
    A = load_matrix(args.matrix_file)
    eps = parse_rational(args.eps)
    res = top_eigenvalue(A, eps)
    if args.trace:
        write_trace_csv(res.trace, args.trace)
    report = {
        "command": "eig",
        "inputs": {
            "matrix_file": args.matrix_file,
            "n": A.n,
            "eps": format_rational(eps),
            "eps_scaled": format_rational(res.trace.config.eps),
            "k": res.trace.config.k,
        },
        "result": format_rational(res.lambda_max),
        "queries": res.queries,
        "max_query_bits": res.trace.query_log.max_query_bits,
        "iterations": res.trace.iterations,
        "trace_path": args.trace,
    }
    _add_decimal(report, res.lambda_max, args.decimal)
    _emit(report)
    return 0


def cmd_psd(args) -> int:
    A = load_matrix(args.matrix_file)
    eps = parse_rational(args.eps)
    verdict = is_approx_psd(A, eps)
    report = {
        "command": "psd",
        "inputs": {
            "matrix_file": args.matrix_file,
            "n": A.n,
            "eps": format_rational(eps),
        },
        "result": bool(verdict),
    }
    _emit(report)
    return 0 if verdict else 1


def _parse_list(text: str, kind):
    items = [part.strip() for part in text.split(",") if part.strip()]
    return [kind(part) for part in items]


def cmd_bench(args) -> int:
    ns = _parse_list(args.n, int)
    if not ns:
        raise ValueError("--n needs at least one degree")
    eps_values = _parse_list(args.eps, parse_rational)
    if not eps_values:
        raise ValueError("--eps needs at least one value")
    ks = [k if k == "auto" else int(k) for k in _parse_list(args.k, str)]
    methods = _parse_list(args.methods, str)
    records = run_sweep(args.family, ns, eps_values, ks=ks, seed=args.seed,
                        methods=methods, oracle_kind=args.oracle_kind)
    csv_text = records_to_csv(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    summary = summarize(records)
    summary["seed"] = args.seed
    summary["family"] = args.family
    if args.out:
        _emit(summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toproot",
        description="Largest root of a real-rooted polynomial from black-box "
                    "evaluations; top eigenvalue / approximate-PSD status of "
                    "symmetric rational matrices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_root = sub.add_parser("root", help="largest root of a polynomial file")
    p_root.add_argument("poly_file")
    p_root.add_argument("--bound", required=True,
                        help="rational upper bound on |roots| (original units)")
    p_root.add_argument("--eps", required=True,
                        help="additive accuracy in original units")
    group = p_root.add_mutually_exclusive_group()
    group.add_argument("--k", type=int, default=None, help="iteration depth")
    group.add_argument("--auto-k", action="store_true",
                       help="use ceil(log2 n) (default)")
    p_root.add_argument("--trace", default=None, help="write iteration CSV here")
    p_root.add_argument("--decimal", action="store_true",
                        help="also print a 20-digit decimal rendering")
    p_root.set_defaults(func=cmd_root)

    p_eig = sub.add_parser("eig", help="top eigenvalue of a symmetric matrix file")
    p_eig.add_argument("matrix_file")
    p_eig.add_argument("--eps", required=True)
    p_eig.add_argument("--trace", default=None)
    p_eig.add_argument("--decimal", action="store_true")
    p_eig.set_defaults(func=cmd_eig)

    p_psd = sub.add_parser("psd", help="check A >= -eps*I (exit 0 yes, 1 no)")
    p_psd.add_argument("matrix_file")
    p_psd.add_argument("--eps", required=True)
    p_psd.set_defaults(func=cmd_psd)

    p_bench = sub.add_parser("bench", help="query-count sweeps")
    p_bench.add_argument("--family", default="random-roots",
                         choices=["random-roots", "clustered-top-roots",
                                  "point-mass", "kn-adjacency"])
    p_bench.add_argument("--n", required=True, help="comma-separated degrees")
    p_bench.add_argument("--eps", default="1/1024", help="comma-separated accuracies")
    p_bench.add_argument("--k", default="auto", help="comma-separated depths or 'auto'")
    p_bench.add_argument("--methods", default="accel",
                         help="comma-separated subset of classic,accel,power")
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--oracle-kind", default="roots",
                         choices=["roots", "explicit"], dest="oracle_kind")
    p_bench.add_argument("--out", default=None, help="CSV output path")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
