"""Exact Kolmogorov and total-variation distances between Z_n(i, gamma) and its limit.

In the reduced coordinate the comparison is between n U_{1,n}, with density
(1 - t/n)^(n-1) on [0, n), and the unit exponential. The two densities cross
once on (1, n), at the root y* of

    h(y) = y + (n - 1) log(1 - y/n),

which corresponds to the crossing point x_{n,alpha} = y*^(-1/alpha) of the
Frechet densities. The finite-sample density is larger on (0, y*) and smaller
beyond, so both the sup-distance of the distribution functions and the total
variation equal e^(-y*) - (1 - y*/n)^n. Since g equals 1 at y*, that is also
y* e^(-y*) / n.

Nothing here depends on gamma or on the case; distance_in_original_coordinates
checks that numerically.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, NamedTuple

import numpy as np

from bounds import C0, g1_minus_one, intermediate_bound, lemma_bound, theorem_bound
from distributions import (ExtremeCase, check_sample_size, expand_from_unit, limit_cdf,
                           rep_cdf, unit_survival)
from errors import DomainError, NumericalError
from numerics import bisect_newton, integrate_pieces, log1p_remainder

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-13
SCAN_POINTS = 10 ** 6
SCAN_T_MIN = 1e-9
SCAN_OVERSHOOT = 1e-3
QUAD_TOL = 1e-10
MIN_QUAD_TOL = 1e-12

# sup of l(x) = x^-alpha exp(-x^-alpha) over (0, 1], i.e. of t e^-t over t >= 1,
# attained at t = 1.
ELL_SUP = math.exp(-1.0)


@dataclass(frozen=True)
class CrossingPoint:
    n: int
    y_star: float
    residual: float
    bracket_width: float

    def x_star(self, case: ExtremeCase) -> float:
        """The crossing point in the original coordinate of ``case``."""
        return expand_from_unit(case, self.y_star)


@dataclass(frozen=True)
class ProofPieces:
    mass_left: float
    a1: float
    a2: float
    alpha_n3: float
    alpha_n3_tight: float
    ell_sup: float


@dataclass(frozen=True)
class DistanceResult:
    n: int
    ks: float
    tv: float
    crossing: CrossingPoint
    pieces: ProofPieces


class ChainStep(NamedTuple):
    name: str
    lhs: float
    rhs: float
    holds: bool


def _single_n(n) -> int:
    n = check_sample_size(n)
    if isinstance(n, np.ndarray):
        raise DomainError("a single n is required")
    return n


def crossing_gap(n: int, y: float) -> float:
    """n h(y) = y - n (n-1) r(y/n); same sign and root as h, scaled to order one."""
    if y >= n:
        return -math.inf
    return y - float(n) * (n - 1) * log1p_remainder(y / n)


def crossing_function(n: int, y: float) -> float:
    """h(y) = y + (n - 1) log(1 - y/n)."""
    return crossing_gap(n, y) / n


def crossing_point(n: int) -> CrossingPoint:
    """The unique root y* in (1, n) of h, by bisection then Newton polishing.

    h increases on [0, 1] and decreases on [1, n), with h(1) > 0, so the root
    lies in [1, n). The bracket is narrowed to [1, 2] whenever h(2) < 0,
    which holds for every n >= 3.
    """
    n = _single_n(n)
    hi = n * (1.0 - 1e-16)
    if hi >= n:
        hi = math.nextafter(float(n), 0.0)
    if hi > 2.0 and crossing_gap(n, 2.0) < 0:
        hi = 2.0

    result = bisect_newton(
        lambda y: crossing_gap(n, y), 1.0, hi,
        fprime=lambda y: n * (1.0 - y) / (n - y),
    )
    residual = result.residual / n
    if residual > RESIDUAL_TOL:
        raise NumericalError("crossing point residual above tolerance",
                             {"n": n, "y": result.root, "residual": residual})
    return CrossingPoint(n=n, y_star=result.root, residual=residual,
                         bracket_width=result.hi - result.lo)


def crossing_in_original_coordinates(n: int, case: ExtremeCase) -> float:
    return crossing_point(n).x_star(case)


def ks_tv_exact(n: int) -> DistanceResult:
    """Exact sup-distance and total variation at n, with the proof's decomposition."""
    n = _single_n(n)
    crossing = crossing_point(n)
    y = crossing.y_star

    # n log1p(-y/n) + y = -n r(y/n)
    ks = math.exp(-y) * -math.expm1(-n * log1p_remainder(y / n))
    rep_at_cross = math.exp(n * math.log1p(-y / n))
    mass_left = math.exp(-n)
    alpha_n3 = g1_minus_one(n)

    pieces = ProofPieces(
        mass_left=mass_left,
        a1=math.exp(-y) - mass_left - rep_at_cross,
        a2=ks,
        alpha_n3=alpha_n3,
        alpha_n3_tight=alpha_n3 * -math.expm1(-y),
        ell_sup=ELL_SUP,
    )
    return DistanceResult(n=n, ks=ks, tv=ks, crossing=crossing, pieces=pieces)


def bound_chain(n: int) -> List[ChainStep]:
    """Every inequality of the proof, evaluated at n; each ``holds`` should be True."""
    n = _single_n(n)
    result = ks_tv_exact(n)
    y = result.crossing.y_star
    tv = result.tv
    a3 = result.pieces.alpha_n3
    ell = y * math.exp(-y)

    steps = [
        ("split_at_crossing", 2.0 * tv, ell / n + a3),
        ("ell_supremum", ell, ELL_SUP),
        ("scheffe_rate", 2.0 * tv, 1.0 / n + a3),
        ("lemma", a3, lemma_bound(n)),
        ("theorem", tv, theorem_bound(n)),
    ]
    return [ChainStep(name, lhs, rhs, lhs <= rhs) for name, lhs, rhs in steps]


def recorded_steps(n: int) -> List[ChainStep]:
    """Diagnostics reported next to the chain but never part of its verdict."""
    n = _single_n(n)
    result = ks_tv_exact(n)
    return [
        ChainStep("intermediate_display", result.tv, intermediate_bound(n),
                  result.tv <= intermediate_bound(n)),
        ChainStep("a2_tight", result.pieces.a2, result.pieces.alpha_n3_tight,
                  result.pieces.a2 <= result.pieces.alpha_n3_tight),
    ]


def reduced_grid(n: int, grid_size: int) -> np.ndarray:
    """Log-spaced reduced coordinates on [SCAN_T_MIN, n (1 + SCAN_OVERSHOOT)]."""
    if grid_size < 2:
        raise DomainError(f"grid_size must be at least 2, got {grid_size}")
    return np.geomspace(SCAN_T_MIN, n * (1.0 + SCAN_OVERSHOOT), grid_size)


def ks_scan_oracle(n: int, grid_size: int = SCAN_POINTS) -> float:
    """max over a log-spaced grid of |(1 - t/n)^n [t < n] - e^(-t)|.

    A lower bound of the exact sup that converges to it as the grid refines.
    """
    n = _single_n(n)
    t = reduced_grid(n, grid_size)
    return float(np.max(np.abs(unit_survival(n, t) - np.exp(-t))))


def distance_in_original_coordinates(n: int, case: ExtremeCase,
                                     grid_size: int = SCAN_POINTS) -> float:
    """Grid scan of sup_x |rep_cdf - limit_cdf| in the case's own coordinate.

    The grid is the image of the reduced grid, so every case scans the same points.
    """
    n = _single_n(n)
    x = expand_from_unit(case, reduced_grid(n, grid_size))
    return float(np.max(np.abs(rep_cdf(n, case, x) - limit_cdf(case, x))))


def _density_gap(n: int, t: float) -> float:
    """(1 - t/n)^(n-1) [t < n] - e^(-t)."""
    rep = math.exp((n - 1) * math.log1p(-t / n)) if t < n else 0.0
    return rep - math.exp(-t)


def _break_points(n: int, start: float) -> List[float]:
    points = [start]
    while points[-1] * 2.0 < n:
        points.append(points[-1] * 2.0)
    points.append(float(n))
    return points


class QuadraturePieces(NamedTuple):
    above: float   # integral over (0, y*) of f_n - f
    below: float   # integral over (y*, n) of f - f_n
    tail: float    # integral over (n, inf) of f, exactly e^-n
    error: float


def quadrature_pieces(n: int, tol: float = QUAD_TOL) -> QuadraturePieces:
    """Integrate |f_n - f| piecewise, split at the crossing point and at t = n.

    The range (y*, n) is further split at y* 2^k so that no piece is wider than
    the region where the integrand is resolved.
    """
    n = _single_n(n)
    if not tol >= MIN_QUAD_TOL:
        raise DomainError(f"tol must be >= {MIN_QUAD_TOL}, got {tol}")
    y = crossing_point(n).y_star

    above, err_above, _ = integrate_pieces(lambda t: _density_gap(n, t), [0.0, y], 0.5 * tol)
    below, err_below, _ = integrate_pieces(lambda t: -_density_gap(n, t),
                                           _break_points(n, y), 0.5 * tol)
    error = err_above + err_below
    if error > tol:
        raise NumericalError("quadrature error estimate above tolerance",
                             {"n": n, "error": error, "tol": tol})
    return QuadraturePieces(above, below, math.exp(-n), error)


def tv_quadrature_oracle(n: int, tol: float = QUAD_TOL) -> float:
    """(1/2) integral of |f_n - f| by adaptive quadrature, with the tail beyond n exact."""
    pieces = quadrature_pieces(n, tol)
    return 0.5 * math.fsum([pieces.above, pieces.below, pieces.tail])


def ell(t):
    """l in the reduced coordinate: t e^(-t)."""
    t = np.asarray(t, dtype=float)
    values = t * np.exp(-t)
    return float(values) if values.ndim == 0 else values


def ell_sup_scan(points: int = 10 ** 5) -> float:
    """max of l(x) = x^-alpha exp(-x^-alpha) over a grid of x in (0, 1], alpha = 1."""
    x = np.linspace(1.0 / points, 1.0, points)
    return float(np.max(ell(1.0 / x)))
