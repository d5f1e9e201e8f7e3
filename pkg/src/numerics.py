"""Numerical kernels shared by the distance and bound computations.

- ``log1p_remainder``: -log1p(-u) - u without cancellation for small u.
- ``bisect_newton``: bracketed bisection followed by Newton polishing.
- ``adaptive_simpson`` / ``integrate_pieces``: adaptive Simpson quadrature with
  explicit break points.
"""

import logging
import math
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from errors import DomainError, NumericalError

logger = logging.getLogger(__name__)

BISECTION_WIDTH = 1e-13
BISECTION_MAX_ITER = 400
NEWTON_STEPS = 5
QUAD_MAX_DEPTH = 60

# Below this u the power series is used; above it the direct formula has
# no harmful cancellation.
_SERIES_CUTOFF = 0.125
_SERIES_TERMS = 24
_ROUNDOFF = 64.0 * np.finfo(float).eps


def log1p_remainder(u):
    """Return r(u) = -log1p(-u) - u = sum_{k>=2} u^k / k for u in [0, 1].

    Accepts scalars or arrays; r(1) = +inf.
    """
    if isinstance(u, (float, int)) and not isinstance(u, bool):
        return _log1p_remainder_scalar(float(u))

    u = np.asarray(u, dtype=float)
    if np.any(u < 0) or np.any(u > 1) or np.any(np.isnan(u)):
        raise DomainError("log1p_remainder is defined on [0, 1]")

    small = np.where(u < _SERIES_CUTOFF, u, 0.0)
    acc = np.zeros_like(small)
    for k in range(_SERIES_TERMS, 1, -1):
        acc = acc * small + 1.0 / k
    series = small * small * acc

    with np.errstate(divide="ignore"):
        large = np.where(u >= _SERIES_CUTOFF, u, _SERIES_CUTOFF)
        direct = -np.log1p(-large) - large

    out = np.where(u < _SERIES_CUTOFF, series, direct)
    return float(out) if out.ndim == 0 else out


def _log1p_remainder_scalar(u: float) -> float:
    # same computation as above, for the root solver's scalar calls
    if not 0.0 <= u <= 1.0:
        raise DomainError("log1p_remainder is defined on [0, 1]")
    if u >= _SERIES_CUTOFF:
        return math.inf if u == 1.0 else -math.log1p(-u) - u
    acc = 0.0
    for k in range(_SERIES_TERMS, 1, -1):
        acc = acc * u + 1.0 / k
    return u * u * acc


class RootResult(NamedTuple):
    root: float
    lo: float
    hi: float
    residual: float
    bisections: int
    newton_steps: int


def bisect_newton(func: Callable[[float], float], lo: float, hi: float,
                  fprime: Optional[Callable[[float], float]] = None,
                  width: float = BISECTION_WIDTH,
                  newton_steps: int = NEWTON_STEPS) -> RootResult:
    """Find a root of ``func`` bracketed by [lo, hi].

    Bisection shrinks the bracket to ``width``; then up to ``newton_steps``
    Newton steps polish the midpoint. A Newton step that leaves the bracket or
    does not reduce |func| is discarded and the bisection estimate is kept.
    """
    if not lo < hi:
        raise DomainError(f"empty bracket [{lo}, {hi}]")

    f_lo = func(lo)
    f_hi = func(hi)
    if f_lo == 0.0:
        return RootResult(lo, lo, lo, 0.0, 0, 0)
    if f_hi == 0.0:
        return RootResult(hi, hi, hi, 0.0, 0, 0)
    if (f_lo > 0) == (f_hi > 0):
        raise NumericalError("root is not bracketed",
                             {"lo": lo, "hi": hi, "f_lo": f_lo, "f_hi": f_hi})
    lo_positive = f_lo > 0

    bisections = 0
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        f_mid = func(mid)
        bisections += 1
        if f_mid == 0.0:
            lo = hi = mid
            break
        if (f_mid > 0) == lo_positive:
            lo = mid
        else:
            hi = mid
        if bisections > BISECTION_MAX_ITER:
            raise NumericalError("bisection did not converge",
                                 {"lo": lo, "hi": hi, "iterations": bisections})

    x = 0.5 * (lo + hi)
    fx = func(x)
    steps = 0
    if fprime is not None:
        for _ in range(newton_steps):
            if fx == 0.0:
                break
            slope = fprime(x)
            if slope == 0.0 or not math.isfinite(slope):
                break
            candidate = x - fx / slope
            if not lo <= candidate <= hi:
                logger.debug("Newton step left the bracket at x=%r; keeping bisection", x)
                break
            f_candidate = func(candidate)
            if abs(f_candidate) >= abs(fx):
                break
            x, fx = candidate, f_candidate
            steps += 1

    logger.debug("root %r after %d bisections and %d Newton steps", x, bisections, steps)
    return RootResult(x, lo, hi, abs(fx), bisections, steps)


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 6.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     tol: float = 1e-10,
                     max_depth: int = QUAD_MAX_DEPTH) -> tuple:
    """Integrate ``f`` over [a, b] by adaptive Simpson's rule.

    Returns ``(value, error_estimate)``. Raises NumericalError when an
    interval still misses its share of ``tol`` at ``max_depth``.
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, error = adaptive_simpson(f, b, a, tol, max_depth)
        return -value, error

    def refine(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = f(lm)
        frm = f(rm)
        left = _simpson(fa, flm, fm, m - a)
        right = _simpson(fm, frm, fb, b - m)
        delta = left + right - whole

        if abs(delta) <= 15.0 * tol or abs(delta) <= _ROUNDOFF * abs(left + right):
            return left + right + delta / 15.0, abs(delta) / 15.0
        if depth >= max_depth:
            raise NumericalError("adaptive Simpson reached its depth limit",
                                 {"a": a, "b": b, "depth": depth,
                                  "error": abs(delta) / 15.0, "tol": tol})

        lv, le = refine(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        rv, re = refine(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
        return lv + rv, le + re

    fa = f(a)
    fb = f(b)
    fm = f(0.5 * (a + b))
    return refine(a, b, fa, fm, fb, _simpson(fa, fm, fb, b - a), tol, 0)


def integrate_pieces(f: Callable[[float], float], points: Sequence[float],
                     tol: float = 1e-10,
                     max_depth: int = QUAD_MAX_DEPTH) -> tuple:
    """Integrate ``f`` over consecutive intervals between sorted break points.

    The tolerance is shared equally between the pieces. Returns
    ``(total, error_estimate, piece_values)``.
    """
    pieces = list(zip(points[:-1], points[1:]))
    if not pieces:
        raise DomainError("at least two break points are required")
    share = tol / len(pieces)

    values = []
    error = 0.0
    for a, b in pieces:
        value, err = adaptive_simpson(f, a, b, share, max_depth)
        values.append(value)
        error += err
    logger.debug("integrated %d pieces, error estimate %.3e", len(pieces), error)
    return math.fsum(values), error, values
