"""Command line interface for the convergence-rate certification.

Usage:
    python src/cli.py bound --n 2..10 [--format json]
    python src/cli.py distance --n 5 [--case frechet --gamma 2] [--strict]
    python src/cli.py sweep --log 2..1e6 --points 25 [--strict] [--out rows.csv]
    python src/cli.py simulate --n 2 --case gumbel --samples 1000000 --seed 7
    python src/cli.py crossing --n 100 [--case weibull --gamma -2]

Exit codes: 0 success, 1 a certification check failed, 2 usage error, 3 I/O error.
"""

import argparse
import logging
import sys

from bounds import C0, PRINTED_C0, bound_breakdown
from distributions import CASE_NAMES, ExtremeCase
from errors import DomainError, NumericalError
from metrics import (QUAD_TOL, SCAN_POINTS, bound_chain, crossing_point,
                     distance_in_original_coordinates, ks_scan_oracle, ks_tv_exact,
                     recorded_steps, tv_quadrature_oracle)
from montecarlo import DEFAULT_CONFIDENCE, empirical_ks
from sweep import parse_int, parse_n_grid, run_sweep, summarise, write_records, write_rows

EXIT_OK = 0
EXIT_CERTIFICATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

RULE = "=" * 60

BOUND_COLUMNS = ["n", "c0", "c0_quoted", "g1", "g1_minus_1", "series_value",
                 "series_tail_bound", "f2_value", "geometric_bound", "lemma_bound",
                 "theorem_bound", "f1_holds", "f2_holds", "geometric_holds", "lemma_holds"]


def _single_n(args) -> int:
    return parse_int(args.n)


def _case(args):
    """The ExtremeCase named on the command line, or None for the reduced form."""
    if args.case is None:
        if getattr(args, "gamma", None) is not None:
            raise DomainError("--gamma needs --case")
        return None
    return ExtremeCase.from_name(args.case, args.gamma)


def cmd_bound(args) -> int:
    """Lemma and theorem bounds with their verdicts for every n in the range.

    F2 is reported per row; only F1, the geometric tail bound and the lemma
    decide the exit code.
    """
    ns = parse_n_grid(args.n, args.log, args.points)
    breakdowns = [bound_breakdown(n) for n in ns]
    records = []
    for b in breakdowns:
        records.append({
            "n": b.n, "c0": C0, "c0_quoted": f"{PRINTED_C0:.6f}", "g1": b.g1,
            "g1_minus_1": b.g1_minus_1, "series_value": b.series_value,
            "series_tail_bound": b.series_tail_bound, "f2_value": b.f2_value,
            "geometric_bound": b.geometric_bound, "lemma_bound": b.lemma_bound,
            "theorem_bound": b.theorem_bound, "f1_holds": b.f1_holds,
            "f2_holds": b.f2_holds, "geometric_holds": b.geometric_holds,
            "lemma_holds": b.lemma_holds,
        })
    write_records(records, args.format, args.out, columns=BOUND_COLUMNS)
    return EXIT_OK if all(b.all_hold for b in breakdowns) else EXIT_CERTIFICATION


def _print_distance(result, chain, recorded, case, extra):
    pieces = result.pieces
    crossing = result.crossing
    print(RULE)
    print(f"DISTANCE AT n = {result.n}")
    print(RULE)
    print(f"  Kolmogorov distance:     {result.ks:.17g}")
    print(f"  Total variation:         {result.tv:.17g}")
    print(f"  Crossing point y*:       {crossing.y_star:.17g}")
    print(f"    residual |h(y*)|:      {crossing.residual:.3e}")
    print(f"    bracket width:         {crossing.bracket_width:.3e}")
    if case is not None:
        print(f"  Case:                    {case}")
        print(f"    crossing point x*:     {extra['x_star']:.17g}")
        print(f"    scan in x coordinate:  {extra['ks_original_scan']:.17g}")
    if "tv_quadrature" in extra:
        print(f"  Quadrature oracle (tv):  {extra['tv_quadrature']:.17g}")
        print(f"  Grid scan oracle (ks):   {extra['ks_scan']:.17g}")

    print("-" * 60)
    print("Proof pieces:")
    print(f"  mass left of support:    {pieces.mass_left:.17g}")
    print(f"  a_n(alpha, 1):           {pieces.a1:.17g}")
    print(f"  a_n(alpha, 2):           {pieces.a2:.17g}")
    print(f"  alpha_n(3):              {pieces.alpha_n3:.17g}")
    print(f"  alpha_n(3), tight form:  {pieces.alpha_n3_tight:.17g}")
    print(f"  sup of ell:              {pieces.ell_sup:.17g}")

    print("-" * 60)
    print("Bound chain:")
    for step in chain:
        verdict = "OK" if step.holds else "VIOLATED"
        print(f"  {step.name:20s} {step.lhs:.17g} <= {step.rhs:.17g}  {verdict}")
    print("Recorded (not part of the verdict):")
    for step in recorded:
        print(f"  {step.name:20s} {step.lhs:.17g} <= {step.rhs:.17g}  {step.holds}")


def cmd_distance(args) -> int:
    """Exact distance, crossing point, proof pieces and bound-chain verdicts at n."""
    n = _single_n(args)
    case = _case(args)
    result = ks_tv_exact(n)
    chain = bound_chain(n)
    recorded = recorded_steps(n)

    extra = {}
    if case is not None:
        extra["x_star"] = result.crossing.x_star(case)
        extra["ks_original_scan"] = distance_in_original_coordinates(n, case, args.grid_size)
    if args.strict:
        extra["tv_quadrature"] = tv_quadrature_oracle(n, args.tol)
        extra["ks_scan"] = ks_scan_oracle(n, args.grid_size)

    chain_pass = all(step.holds for step in chain)
    if args.format == "text":
        _print_distance(result, chain, recorded, case, extra)
    else:
        record = {
            "n": n,
            "case": str(case) if case is not None else "reduced",
            "ks": result.ks,
            "tv": result.tv,
            "y_star": result.crossing.y_star,
            "residual": result.crossing.residual,
            "bracket_width": result.crossing.bracket_width,
            "mass_left": result.pieces.mass_left,
            "a1": result.pieces.a1,
            "a2": result.pieces.a2,
            "alpha_n3": result.pieces.alpha_n3,
            "alpha_n3_tight": result.pieces.alpha_n3_tight,
            "ell_sup": result.pieces.ell_sup,
        }
        record.update(extra)
        record.update({f"chain_{step.name}": step.holds for step in chain})
        record["chain_pass"] = chain_pass
        write_records([record], args.format, args.out)
    return EXIT_OK if chain_pass else EXIT_CERTIFICATION


def cmd_sweep(args) -> int:
    """One certification row per n; the summary goes to stderr."""
    ns = parse_n_grid(args.n, args.log, args.points)
    rows = run_sweep(ns, strict=args.strict, tol=args.tol, grid_size=args.grid_size,
                     n_jobs=args.jobs)
    write_rows(rows, args.format, args.out)

    summary = summarise(rows)
    print(f"rows: {summary.rows}  min ratio: {summary.min_ratio:.6g}  "
          f"max ratio: {summary.max_ratio:.6g}  "
          f"all pass: {'yes' if summary.all_pass else 'NO'}", file=sys.stderr)
    return EXIT_OK if summary.all_pass else EXIT_CERTIFICATION


def cmd_simulate(args) -> int:
    """Monte Carlo KS statistic against the exact distance, gated by DKW."""
    n = _single_n(args)
    case = _case(args)
    result = empirical_ks(n, case, args.samples, args.seed, confidence=args.confidence,
                          stream=args.stream, n_jobs=args.jobs)
    if args.format == "text":
        print(RULE)
        print(f"MONTE CARLO CHECK: n = {result.n}, case = {result.case}")
        print(RULE)
        print(f"  samples:        {result.samples}")
        print(f"  seed / stream:  {result.seed} / {result.stream}")
        print(f"  empirical KS:   {result.empirical_ks:.17g}")
        print(f"  exact KS:       {result.exact_ks:.17g}")
        print(f"  DKW epsilon:    {result.dkw_epsilon:.17g} ({result.confidence:.0%})")
        print(f"  pass:           {result.passed}")
    else:
        write_records([{
            "n": result.n, "case": str(result.case), "samples": result.samples,
            "seed": result.seed, "stream": result.stream, "confidence": result.confidence,
            "empirical_ks": result.empirical_ks, "dkw_epsilon": result.dkw_epsilon,
            "exact_ks": result.exact_ks, "pass": result.passed,
        }], args.format, args.out)
    return EXIT_OK if result.passed else EXIT_CERTIFICATION


def cmd_crossing(args) -> int:
    """The crossing point y*, and x* in the original coordinate when a case is given."""
    n = _single_n(args)
    case = _case(args)
    crossing = crossing_point(n)
    record = {
        "n": crossing.n,
        "y_star": crossing.y_star,
        "residual": crossing.residual,
        "bracket_width": crossing.bracket_width,
    }
    if case is not None:
        record["case"] = str(case)
        record["x_star"] = crossing.x_star(case)

    if args.format == "text":
        for key, value in record.items():
            text = f"{value:.17g}" if isinstance(value, float) else str(value)
            print(f"{key:15s} {text}")
    else:
        write_records([record], args.format, args.out)
    return EXIT_OK


def _add_output(parser, formats, default):
    parser.add_argument("--format", choices=formats, default=default)
    parser.add_argument("--out", metavar="PATH", help="write to PATH instead of stdout")


def _add_case(parser, required=False):
    parser.add_argument("--case", choices=CASE_NAMES, required=required)
    parser.add_argument("--gamma", type=float, default=None,
                        help="extreme value index (default 1 for frechet, -1 for weibull)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="extreme-rates",
        description="Exact distances and certified convergence bounds for "
                    "representations of sample extremes.")
    parser.add_argument("--verbose", action="store_true", help="log debug diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="lemma and theorem bounds")
    p.add_argument("--n", help="n, a range a..b or a comma list")
    p.add_argument("--log", help="log-spaced range a..b")
    p.add_argument("--points", type=int, default=25)
    _add_output(p, ("csv", "json"), "csv")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("distance", help="exact distance and bound chain at one n")
    p.add_argument("--n", required=True)
    _add_case(p)
    p.add_argument("--strict", action="store_true", help="run the quadrature and scan oracles")
    p.add_argument("--tol", type=float, default=QUAD_TOL)
    p.add_argument("--grid-size", type=parse_int, default=SCAN_POINTS)
    _add_output(p, ("text", "csv", "json"), "text")
    p.set_defaults(handler=cmd_distance)

    p = sub.add_parser("sweep", help="certification rows over a grid of n")
    p.add_argument("--n", help="n, a range a..b or a comma list")
    p.add_argument("--log", help="log-spaced range a..b")
    p.add_argument("--points", type=int, default=25)
    p.add_argument("--strict", action="store_true", help="run the quadrature and scan oracles")
    p.add_argument("--tol", type=float, default=QUAD_TOL)
    p.add_argument("--grid-size", type=parse_int, default=SCAN_POINTS)
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p, ("csv", "json"), "csv")
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("simulate", help="Monte Carlo check of the exact distance")
    p.add_argument("--n", required=True)
    _add_case(p, required=True)
    p.add_argument("--samples", type=parse_int, default=10 ** 6)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--confidence", type=float, default=DEFAULT_CONFIDENCE)
    p.add_argument("--jobs", type=int, default=1)
    _add_output(p, ("text", "csv", "json"), "text")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("crossing", help="the density crossing point")
    p.add_argument("--n", required=True)
    _add_case(p)
    _add_output(p, ("text", "csv", "json"), "text")
    p.set_defaults(handler=cmd_crossing)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return exit_.code if isinstance(exit_.code, int) else EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.handler(args)
    except DomainError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NumericalError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except OSError as e:
        print(f"Error: cannot write output: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
