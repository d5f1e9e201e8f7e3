"""Closed-form rate bounds for the representations of extremes.

The rate is driven by g1(n) - 1 = e (1 - 1/n)^(n-1) - 1, and

    log g1(n) = sum_{k>=1} 1 / (k (k+1) n^k)            (identity F1)
              <= 1/(2n) + 1/(n^2 log n)                    (comparison F2, n <= 400)
              <= 1/(2n) + 1/(6 n (n-1))                    (geometric tail, every n)

so that, with C_0 = exp(F2 at n=2),

    0 <= g1(n) - 1 <= C_0 (1/(2n) + 1/(n^2 log n))                    (lemma)
    sup |F_{Z_n} - H| <= (2 + C_0)/(4n) + C_0/(2 n^2 log n)            (theorem)

for every n >= 2. All functions here take an integer n or an integer array.

F2 fails from n = 401 on: its k = 2 term alone, 1/(6 n^2), exceeds
1/(n^2 log n) once log n > 6. The lemma itself keeps a wide margin, so F2 is
reported but does not enter the verdict; the geometric tail bound does.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from distributions import check_sample_size
from errors import DomainError, NumericalError
from numerics import log1p_remainder

# Six-decimal value of C_0 as usually quoted; one unit above its rounding.
PRINTED_C0 = 1.841673

SERIES_REL_TOL = 1e-16
SERIES_MAX_TERMS = 2000

# relative slack for comparisons whose two sides agree to rounding at large n
ROUNDING_SLACK = 1e-15


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def _as_float(n) -> np.ndarray:
    return np.asarray(check_sample_size(n), dtype=float)


def series_exponent(n):
    """log g1(n) = 1/n - (n-1) r(1/n), with r the log1p remainder.

    Same value as lemma_series, computed without truncation.
    """
    nf = _as_float(n)
    return _out(1.0 / nf - (nf - 1.0) * log1p_remainder(1.0 / nf))


def g1(n):
    """g1(n) = e (1 - 1/n)^(n-1), the crossing ratio evaluated at x = 1. Always > 1."""
    nf = _as_float(n)
    return _out(math.e * np.exp((nf - 1.0) * np.log1p(-1.0 / nf)))


def g1_minus_one(n):
    """g1(n) - 1 without cancellation, as expm1 of the series exponent."""
    return _out(np.expm1(series_exponent(n)))


class SeriesValue(NamedTuple):
    value: float
    tail_bound: float
    terms: int


def lemma_series(n: int, rel_tol: float = SERIES_REL_TOL) -> SeriesValue:
    """Partial sum of sum_{k>=1} 1/(k (k+1) n^k).

    Truncated at the first K whose geometric tail bound
    1/((K+1)(K+2) n^K (n-1)) is at most rel_tol times the partial sum.
    """
    n = check_sample_size(n)
    if isinstance(n, np.ndarray):
        raise DomainError("lemma_series takes a single n")
    if not rel_tol >= 1e-16:
        raise DomainError(f"rel_tol must be >= 1e-16, got {rel_tol}")

    nf = float(n)
    terms = []
    power = 1.0
    for k in range(1, SERIES_MAX_TERMS + 1):
        power *= nf
        terms.append(1.0 / (k * (k + 1) * power))
        tail = 1.0 / ((k + 1) * (k + 2) * power * (nf - 1.0))
        if tail <= rel_tol * terms[0]:
            value = math.fsum(reversed(terms))
            return SeriesValue(value, tail, k)
    raise NumericalError(f"series did not reach rel_tol={rel_tol} in {SERIES_MAX_TERMS} terms")


def f2_bound(n):
    """1/(2n) + 1/(n^2 log n), the integral comparison bound of the series."""
    nf = _as_float(n)
    return _out(1.0 / (2.0 * nf) + 1.0 / (nf * nf * np.log(nf)))


def geometric_series_bound(n):
    """1/(2n) + 1/(6 n (n-1)): the k >= 2 terms are at most n^-k / 6."""
    nf = _as_float(n)
    return _out(1.0 / (2.0 * nf) + 1.0 / (6.0 * nf * (nf - 1.0)))


C0 = math.exp(f2_bound(2))


def lemma_bound(n):
    """C_0 (1/(2n) + 1/(n^2 log n)), an upper bound of g1(n) - 1."""
    return _out(C0 * np.asarray(f2_bound(n)))


def theorem_bound(n):
    """(2 + C_0)/(4n) + C_0/(2 n^2 log n), uniform over all cases and gamma."""
    nf = _as_float(n)
    return _out((2.0 + C0) / (4.0 * nf) + C0 / (2.0 * nf * nf * np.log(nf)))


def intermediate_bound(n):
    """1/(2n) + C_0 (1/(4n) + 2/(n^2 log n)).

    Same leading order as the theorem with a larger second-order constant;
    only reported, never used to certify.
    """
    nf = _as_float(n)
    return _out(1.0 / (2.0 * nf) + C0 * (1.0 / (4.0 * nf) + 2.0 / (nf * nf * np.log(nf))))


def theta_step(n):
    """(exp(u) - 1, u e^u, C_0 u) for u = f2_bound(n); the chain must be nondecreasing."""
    u = np.asarray(f2_bound(n))
    return _out(np.expm1(u)), _out(u * np.exp(u)), _out(C0 * u)


@dataclass(frozen=True)
class BoundBreakdown:
    n: int
    g1: float
    series_value: float
    series_tail_bound: float
    f2_value: float
    geometric_bound: float
    lemma_bound: float
    theorem_bound: float
    g1_minus_1: float
    f1_holds: bool
    f2_holds: bool
    geometric_holds: bool
    lemma_holds: bool

    @property
    def all_hold(self) -> bool:
        """F1, the geometric tail bound and the lemma; F2 is only reported."""
        return self.f1_holds and self.geometric_holds and self.lemma_holds


def bound_breakdown(n: int) -> BoundBreakdown:
    """Evaluate every lemma quantity at n together with its verdicts."""
    series = lemma_series(n)
    g = g1(n)
    gm1 = g1_minus_one(n)
    f2 = f2_bound(n)
    geometric = geometric_series_bound(n)
    lemma = lemma_bound(n)
    return BoundBreakdown(
        n=int(n),
        g1=g,
        series_value=series.value,
        series_tail_bound=series.tail_bound,
        f2_value=f2,
        geometric_bound=geometric,
        lemma_bound=lemma,
        theorem_bound=theorem_bound(n),
        g1_minus_1=gm1,
        f1_holds=abs(g - math.exp(series.value)) <= 1e-12 * g,
        f2_holds=series.value <= f2,
        geometric_holds=series.value <= geometric * (1.0 + ROUNDING_SLACK),
        lemma_holds=0.0 <= gm1 <= lemma,
    )
