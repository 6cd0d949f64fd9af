"""Command-line front end: solve, table1, matrix, verify, empirical.

Every subcommand is a pure function of its flags (randomized checks use a
fixed default seed), writes to standard output unless ``--out`` is given,
and follows one exit-code contract: 0 on success or all checks passing,
1 on a computation or verification failure, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from benford2 import analytic, empirical, transition
from benford2.dyadic import MAX_DENSE_DEPTH, MAX_VECTOR_DEPTH, block_string
from benford2.solver import (
    ConvergenceError,
    benford_reference,
    convergence_table,
    solve,
)

MAX_DUMP_DEPTH = 8  # matrix dumps materialize 4^k rows


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(",") if part)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_out(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", metavar="PATH", default=None, help="write output to PATH instead of stdout")


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="benford2",
        description="Leading-block probabilities in base 2: fixed-point solver, "
        "identity verification, and sequence statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="stationary block distribution at one depth")
    p.add_argument("--k", type=int, required=True, help="bits after the leading 1")
    p.add_argument("--tolerance", type=float, default=1e-14)
    p.add_argument("--max-iterations", type=int, default=100_000)
    p.add_argument("--backend", choices=("dense", "fast"), default="fast")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_out(p)
    p.set_defaults(handler=_cmd_solve)

    p = sub.add_parser("table1", help="convergence table of the leading-pair probability")
    p.add_argument("--kmax", type=int, required=True, help="largest depth to tabulate")
    p.add_argument("--tolerance", type=float, default=1e-14)
    p.add_argument("--backend", choices=("dense", "fast"), default="fast")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_out(p)
    p.set_defaults(handler=_cmd_table1)

    p = sub.add_parser("matrix", help="dump the scaled-probability transition matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_out(p)
    p.set_defaults(handler=_cmd_matrix)

    p = sub.add_parser("verify", help="run the analytic identity checks")
    p.add_argument("--suite", choices=analytic.SUITES + ("all",), default="all")
    p.add_argument("--riemann-depths", type=_int_list, default=(10, 12, 14, 16))
    p.add_argument("--series-length", type=int, default=12)
    p.add_argument("--harmonic-levels", type=_int_list, default=(10, 16, 20))
    p.add_argument("--oracle-depth", type=int, default=6)
    p.add_argument("--oracle-paddings", type=_int_list, default=(8, 16, 24))
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=analytic.DEFAULT_SEED)
    _add_out(p)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("empirical", help="leading-block frequencies of a sequence family")
    p.add_argument("--family", choices=empirical.FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True, help="number of terms")
    p.add_argument("--bits", type=int, default=1, help="digits kept after the leading one")
    p.add_argument("--base", type=int, default=2)
    _add_out(p)
    p.set_defaults(handler=_cmd_empirical)

    return parser


def _cmd_solve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cap = MAX_DENSE_DEPTH if args.backend == "dense" else MAX_VECTOR_DEPTH
    if not 1 <= args.k <= cap:
        parser.error(f"--k must be in [1, {cap}] for the {args.backend} backend")
    if args.tolerance <= 0:
        parser.error("--tolerance must be positive")
    if args.max_iterations < 1:
        parser.error("--max-iterations must be >= 1")
    report = solve(args.k, tolerance=args.tolerance, max_iterations=args.max_iterations, backend=args.backend)
    reference = benford_reference("10", 2)
    rel_err = abs(report.p10 - reference) / reference
    blocks = [block_string(i, args.k) for i in range(report.probabilities.size)]
    if args.format == "json":
        payload = {
            "k": report.depth,
            "backend": report.backend,
            "iterations": report.iterations,
            "residual": report.residual,
            "p10": report.p10,
            "p11": report.p11,
            "benford_p10": reference,
            "rel_err": rel_err,
            "probabilities": [
                {"block": block, "p": float(p)} for block, p in zip(blocks, report.probabilities)
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = ["block,p"]
        lines += [f"{block},{float(p)!r}" for block, p in zip(blocks, report.probabilities)]
        lines.append(
            f"k={report.depth} backend={report.backend} iterations={report.iterations} "
            f"residual={report.residual!r} p10={report.p10!r} p11={report.p11!r} "
            f"benford_p10={reference!r} rel_err={rel_err!r}"
        )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_table1(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    cap = MAX_DENSE_DEPTH if args.backend == "dense" else MAX_VECTOR_DEPTH
    if not 1 <= args.kmax <= cap:
        parser.error(f"--kmax must be in [1, {cap}] for the {args.backend} backend")
    if args.tolerance <= 0:
        parser.error("--tolerance must be positive")
    rows = convergence_table(args.kmax, tolerance=args.tolerance, backend=args.backend)
    if args.format == "json":
        payload = [
            {"k": row.depth, "p10": row.p10, "benford_p10": row.reference, "rel_err": row.rel_err}
            for row in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = ["k,p10,benford_p10,rel_err"]
        lines += [f"{row.depth},{row.p10:.6f},{row.reference!r},{row.rel_err!r}" for row in rows]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_matrix(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if not 1 <= args.k <= MAX_DUMP_DEPTH:
        parser.error(f"--k must be in [1, {MAX_DUMP_DEPTH}] for a dump (4^k rows)")
    matrix = transition.build_dense(args.k)
    n = matrix.size
    if args.format == "json":
        payload = {
            "k": args.k,
            "entries": [
                {
                    "x_bits": block_string(x, args.k),
                    "alpha_bits": block_string(a, args.k),
                    "value": float(matrix.entries[x, a]),
                }
                for x in range(n)
                for a in range(n)
            ],
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = ["x_bits,alpha_bits,value"]
        lines += [
            f"{block_string(x, args.k)},{block_string(a, args.k)},{float(matrix.entries[x, a])!r}"
            for x in range(n)
            for a in range(n)
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.series_length < 1 or args.oracle_depth < 1 or args.samples < 0:
        parser.error("--series-length and --oracle-depth must be >= 1, --samples >= 0")
    if not args.riemann_depths or not args.harmonic_levels or not args.oracle_paddings:
        parser.error("budget lists must not be empty")
    reports = analytic.run_suite(
        args.suite,
        riemann_depths=args.riemann_depths,
        series_length=args.series_length,
        harmonic_levels=args.harmonic_levels,
        oracle_depth=args.oracle_depth,
        oracle_paddings=args.oracle_paddings,
        samples=args.samples,
        seed=args.seed,
    )
    text = "\n".join(report.line() for report in reports) + "\n"
    _emit(text, args.out)
    return 0 if all(report.passed for report in reports) else 1


def _cmd_empirical(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.bits < 0:
        parser.error("--bits must be >= 0")
    if not 2 <= args.base <= 36:
        parser.error("--base must be in [2, 36]")
    if args.family == "rearranged":
        if args.n < 4:
            parser.error("--n must be >= 4 for the rearranged demonstration")
        natural, rearranged = empirical.rearrangement_demo(args.n)
        text = f"sequence,multiple_of_four_freq\nnatural,{natural!r}\nrearranged,{rearranged!r}\n"
        _emit(text, args.out)
        return 0
    if args.n < 1:
        parser.error("--n must be >= 1")
    spec = empirical.SequenceSpec(family=args.family, count=args.n, block_bits=args.bits, base=args.base)
    report = empirical.frequency_report(empirical.generate_blocks(spec), args.bits, args.base)
    lines = ["block,observed_count,observed_freq,expected_freq,abs_dev"]
    lines += [
        f"{block},{count},{obs!r},{exp!r},{dev!r}" for block, count, obs, exp, dev in report.rows()
    ]
    lines.append(f"chi2={report.chi_square!r} dof={report.dof} max_dev={report.max_deviation!r}")
    text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, parser)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
