"""Certification sweeps over n and the CSV / JSON-lines writers used by the CLI."""

import json
import logging
import math
import re
import sys
from dataclasses import asdict, dataclass
from typing import Iterable, List, NamedTuple, Optional, Sequence

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from bounds import bound_breakdown
from distributions import N_MAX
from errors import DomainError
from metrics import (QUAD_TOL, SCAN_POINTS, bound_chain, ks_scan_oracle, ks_tv_exact,
                     tv_quadrature_oracle)

logger = logging.getLogger(__name__)

CSV_HEADER = ["n", "ks_exact", "tv_quadrature", "ks_scan", "theorem_bound", "lemma_bound",
              "g1_minus_1", "y_star", "ratio", "pass"]
FLOAT_FORMAT = "%.17g"
MAX_GRID_POINTS = 10 ** 6

KS_TV_TOL = 1e-12
DECOMPOSITION_TOL = 1e-12
QUADRATURE_AGREEMENT = 1e-8
SCAN_AGREEMENT = 1e-6

_RANGE = re.compile(r"^\s*([^.\s][^\s]*?)\s*\.\.\s*([^\s]+)\s*$")


@dataclass(frozen=True)
class SweepRow:
    n: int
    ks_exact: float
    tv_quadrature: float
    ks_scan: float
    theorem_bound: float
    lemma_bound: float
    g1_minus_1: float
    y_star: float
    ratio: float
    all_checks_pass: bool

    def record(self) -> dict:
        values = asdict(self)
        values["pass"] = values.pop("all_checks_pass")
        return {key: values[key] for key in CSV_HEADER}


class SweepSummary(NamedTuple):
    rows: int
    min_ratio: float
    max_ratio: float
    all_pass: bool


def parse_int(token: str) -> int:
    """Parse '7', '1e6' or '1_000' as an integer; non-integral values are rejected."""
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        pass
    try:
        value = float(token)
    except ValueError:
        raise DomainError(f"not a number: {token!r}") from None
    if not math.isfinite(value) or value != int(value):
        raise DomainError(f"not an integer: {token!r}")
    return int(value)


def _check_range(values: Sequence[int]) -> List[int]:
    for n in values:
        if not 2 <= n <= N_MAX:
            raise DomainError(f"n must lie in [2, {N_MAX}], got {n}")
    return list(values)


def parse_n_grid(n_spec: Optional[str] = None, log_spec: Optional[str] = None,
                 points: int = 25) -> List[int]:
    """Expand an n grid description into a list of integers.

    ``n_spec`` is a comma separated list of integers and inclusive ranges
    ('2', '2..10', '2,5,1e3'). ``log_spec`` 'a..b' gives ``points`` log-spaced
    integers between a and b, rounded and de-duplicated.
    """
    if (n_spec is None) == (log_spec is None):
        raise DomainError("give exactly one of --n and --log")

    if log_spec is not None:
        match = _RANGE.match(log_spec)
        if not match:
            raise DomainError(f"--log expects 'a..b', got {log_spec!r}")
        lo, hi = parse_int(match.group(1)), parse_int(match.group(2))
        _check_range([lo, hi])
        if points < 2 or lo >= hi:
            raise DomainError("a log grid needs lo < hi and at least two points")
        grid = np.rint(np.geomspace(lo, hi, points)).astype(np.int64)
        return list(dict.fromkeys(int(n) for n in grid))

    values = []
    for item in n_spec.split(","):
        match = _RANGE.match(item)
        if match:
            lo, hi = parse_int(match.group(1)), parse_int(match.group(2))
            _check_range([lo, hi])
            if lo > hi or hi - lo + 1 > MAX_GRID_POINTS:
                raise DomainError(f"range {item!r} is empty or longer than {MAX_GRID_POINTS}")
            values.extend(range(lo, hi + 1))
        else:
            values.append(parse_int(item))
    if not values:
        raise DomainError("empty n grid")
    return _check_range(values)


def sweep_row(n: int, strict: bool = False, tol: float = QUAD_TOL,
              grid_size: int = SCAN_POINTS) -> SweepRow:
    """Certify every distance and bound invariant at n.

    With ``strict`` the quadrature and grid-scan oracles are run as well.
    """
    result = ks_tv_exact(n)
    pieces = result.pieces
    breakdown = bound_breakdown(n)

    checks = [
        all(step.holds for step in bound_chain(n)),
        abs(result.ks - result.tv) <= KS_TV_TOL,
        abs(pieces.mass_left + pieces.a1 + pieces.a2 - 2.0 * result.tv) <= DECOMPOSITION_TOL,
        pieces.a2 <= pieces.alpha_n3,
        breakdown.all_hold,
    ]

    tv_quadrature = ks_scan = math.nan
    if strict:
        tv_quadrature = tv_quadrature_oracle(n, tol)
        ks_scan = ks_scan_oracle(n, grid_size)
        checks.append(abs(result.ks - tv_quadrature) <= QUADRATURE_AGREEMENT)
        checks.append(-1e-15 <= result.ks - ks_scan <= SCAN_AGREEMENT)

    row = SweepRow(
        n=int(n),
        ks_exact=result.ks,
        tv_quadrature=tv_quadrature,
        ks_scan=ks_scan,
        theorem_bound=breakdown.theorem_bound,
        lemma_bound=breakdown.lemma_bound,
        g1_minus_1=breakdown.g1_minus_1,
        y_star=result.crossing.y_star,
        ratio=result.ks / breakdown.theorem_bound,
        all_checks_pass=all(checks),
    )
    if not row.all_checks_pass:
        logger.warning("certification failed at n=%d: %s", n, checks)
    return row


def run_sweep(ns: Iterable[int], strict: bool = False, tol: float = QUAD_TOL,
              grid_size: int = SCAN_POINTS, n_jobs: int = 1) -> List[SweepRow]:
    """One SweepRow per n, in input order."""
    ns = list(ns)
    logger.debug("sweeping %d values of n (strict=%s, n_jobs=%d)", len(ns), strict, n_jobs)
    return Parallel(n_jobs=n_jobs)(
        delayed(sweep_row)(n, strict, tol, grid_size) for n in ns
    )


def summarise(rows: Sequence[SweepRow]) -> SweepSummary:
    ratios = [row.ratio for row in rows]
    return SweepSummary(
        rows=len(rows),
        min_ratio=min(ratios) if ratios else math.nan,
        max_ratio=max(ratios) if ratios else math.nan,
        all_pass=all(row.all_checks_pass for row in rows),
    )


def _json_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return "null"
        return FLOAT_FORMAT % value
    return json.dumps(value)


def json_line(record: dict) -> str:
    """One JSON object with numbers written to 17 significant digits."""
    body = ", ".join(f"{json.dumps(key)}: {_json_value(value)}" for key, value in record.items())
    return "{" + body + "}"


def write_records(records: Sequence[dict], fmt: str = "csv", out: Optional[str] = None,
                  columns: Optional[Sequence[str]] = None) -> None:
    """Write records as CSV (fixed header) or JSON lines to ``out`` or stdout."""
    if fmt not in ("csv", "json"):
        raise DomainError(f"unknown output format {fmt!r}")
    columns = list(columns or (records[0].keys() if records else []))

    handle = open(out, "w", newline="", encoding="utf-8") if out else sys.stdout
    try:
        if fmt == "csv":
            frame = pd.DataFrame(list(records), columns=columns)
            frame.to_csv(handle, index=False, float_format=FLOAT_FORMAT, na_rep="",
                         lineterminator="\n")
        else:
            for record in records:
                handle.write(json_line({key: record[key] for key in columns}) + "\n")
    finally:
        if out:
            handle.close()


def write_rows(rows: Sequence[SweepRow], fmt: str = "csv", out: Optional[str] = None) -> None:
    write_records([row.record() for row in rows], fmt, out, columns=CSV_HEADER)
