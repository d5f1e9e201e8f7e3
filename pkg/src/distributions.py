"""Limit laws of sample maxima and the finite-sample representation laws Z_n(i, gamma).

With U_{1,n} the minimum of n independent uniforms on (0, 1):

    Z_n(1, gamma) =  (n U_{1,n})^(-gamma)   gamma > 0   (Frechet)
    Z_n(2, gamma) = -(n U_{1,n})^(-gamma)   gamma < 0   (Weibull)
    Z_n(0, 0)     = -log(n U_{1,n})                     (Gumbel)

Every quantity is computed in the reduced coordinate t = reduce_to_unit(case, x).
There Z_n(i, gamma) becomes n U_{1,n}, with survival (1 - t/n)^n on [0, n], and
the limit law becomes the unit exponential, with survival e^(-t).

Two sign conventions differ from the way these laws are often typeset:
the Weibull limit is exp(-(-x)^(-1/gamma)) (without the inner minus sign the
expression is not a distribution function), and the Gumbel representation is
-log(n U_{1,n}) (log(n U_{1,n}) does not converge to exp(-e^(-x))).
"""

import math
import numbers
from dataclasses import dataclass

import numpy as np

from errors import DomainError

FRECHET = "frechet"
WEIBULL = "weibull"
GUMBEL = "gumbel"
CASE_NAMES = (FRECHET, WEIBULL, GUMBEL)

# Index i of Z_n(i, gamma).
_CASE_INDEX = {GUMBEL: 0, FRECHET: 1, WEIBULL: 2}

N_MAX = 10 ** 12


@dataclass(frozen=True)
class ExtremeCase:
    """One of the three extreme value types together with its index gamma."""

    kind: str
    gamma: float = 0.0

    def __post_init__(self):
        if self.kind not in CASE_NAMES:
            raise DomainError(f"unknown case {self.kind!r}; expected one of {CASE_NAMES}")
        gamma = float(self.gamma)
        if not math.isfinite(gamma):
            raise DomainError(f"gamma must be finite, got {self.gamma!r}")
        if self.kind == FRECHET and gamma <= 0:
            raise DomainError(f"Frechet case requires gamma > 0, got {gamma}")
        if self.kind == WEIBULL and gamma >= 0:
            raise DomainError(f"Weibull case requires gamma < 0, got {gamma}")
        if self.kind == GUMBEL and gamma != 0:
            raise DomainError(f"Gumbel case has gamma = 0, got {gamma}")
        object.__setattr__(self, "gamma", gamma)

    @classmethod
    def frechet(cls, gamma: float) -> "ExtremeCase":
        return cls(FRECHET, gamma)

    @classmethod
    def weibull(cls, gamma: float) -> "ExtremeCase":
        return cls(WEIBULL, gamma)

    @classmethod
    def gumbel(cls) -> "ExtremeCase":
        return cls(GUMBEL, 0.0)

    @classmethod
    def from_index(cls, i: int, gamma: float = 0.0) -> "ExtremeCase":
        """Build the case for Z_n(i, gamma), i in {0, 1, 2}."""
        for kind, index in _CASE_INDEX.items():
            if index == i:
                return cls(kind, gamma)
        raise DomainError(f"case index must be 0, 1 or 2, got {i!r}")

    @classmethod
    def from_name(cls, name: str, gamma: float = None) -> "ExtremeCase":
        """Build a case from its name; gamma defaults to 1, -1 or 0."""
        name = name.lower()
        if gamma is None:
            gamma = {FRECHET: 1.0, WEIBULL: -1.0}.get(name, 0.0)
        return cls(name, gamma)

    @property
    def index(self) -> int:
        return _CASE_INDEX[self.kind]

    @property
    def alpha(self) -> float:
        """alpha = 1/gamma, defined for the Frechet case only."""
        if self.kind != FRECHET:
            raise DomainError("alpha = 1/gamma is only defined for the Frechet case")
        return 1.0 / self.gamma

    @property
    def exponent(self) -> float:
        """The positive exponent of the reduction: 1/gamma, -1/gamma, or 1 for Gumbel."""
        if self.kind == GUMBEL:
            return 1.0
        return abs(1.0 / self.gamma)

    def __str__(self):
        if self.kind == GUMBEL:
            return GUMBEL
        return f"{self.kind}(gamma={self.gamma:g})"


def check_sample_size(n):
    """Validate n (an integer or integer array) against 2 <= n <= N_MAX."""
    if isinstance(n, (bool, np.bool_)):
        raise DomainError("n must be an integer")
    if isinstance(n, numbers.Integral):
        if not 2 <= n <= N_MAX:
            raise DomainError(f"n must satisfy 2 <= n <= {N_MAX}, got {n}")
        return int(n)
    arr = np.asarray(n)
    if arr.ndim == 0 or not np.issubdtype(arr.dtype, np.integer):
        raise DomainError(f"n must be an integer, got {n!r}")
    if np.any(arr < 2) or np.any(arr > N_MAX):
        raise DomainError(f"every n must satisfy 2 <= n <= {N_MAX}")
    return arr


def _as_float_array(x):
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("NaN is not a valid argument")
    return arr


def _out(arr):
    return float(arr) if np.ndim(arr) == 0 else arr


def reduce_to_unit(case: ExtremeCase, x):
    """Map x to the reduced coordinate t >= 0.

    Frechet t = x^(-1/gamma), Weibull t = (-x)^(-1/gamma), Gumbel t = e^(-x).
    The map is strictly decreasing; x must lie in the closure of the limit
    law's support (x = 0 gives t = +inf for Frechet and t = 0 for Weibull).
    """
    x = _as_float_array(x)
    with np.errstate(divide="ignore", over="ignore"):
        if case.kind == FRECHET:
            if np.any(x < 0):
                raise DomainError("Frechet reduction needs x >= 0")
            t = np.power(x, -case.exponent)
        elif case.kind == WEIBULL:
            if np.any(x > 0):
                raise DomainError("Weibull reduction needs x <= 0")
            t = np.power(-x, case.exponent)
        else:
            t = np.exp(-x)
    return _out(t)


def expand_from_unit(case: ExtremeCase, t):
    """Inverse of reduce_to_unit: Frechet t^(-gamma), Weibull -t^(-gamma), Gumbel -log t."""
    t = _as_float_array(t)
    if np.any(t < 0):
        raise DomainError("reduced coordinate t must be >= 0")
    with np.errstate(divide="ignore", over="ignore"):
        if case.kind == FRECHET:
            x = np.power(t, -case.gamma)
        elif case.kind == WEIBULL:
            x = -np.power(t, -case.gamma)
        else:
            x = -np.log(t)
    return _out(x)


def _reduced_everywhere(case: ExtremeCase, x) -> np.ndarray:
    """reduce_to_unit extended to all reals: t = +inf left of the support, 0 right of it."""
    x = _as_float_array(x)
    with np.errstate(divide="ignore", over="ignore"):
        if case.kind == FRECHET:
            inside = x > 0
            return np.where(inside, np.power(np.where(inside, x, 1.0), -case.exponent), np.inf)
        if case.kind == WEIBULL:
            inside = x < 0
            return np.where(inside, np.power(np.where(inside, -x, 1.0), case.exponent), 0.0)
        return np.exp(-x)


def _log_jacobian(case: ExtremeCase, x: np.ndarray, t: np.ndarray) -> np.ndarray:
    """log |dt/dx| on the open support, where 0 < t < inf."""
    if case.kind == GUMBEL:
        return np.log(t)
    # |dt/dx| = exponent * t / |x| for both power reductions
    return math.log(case.exponent) + np.log(t) - np.log(np.abs(x))


def unit_survival(n, t):
    """Survival of n U_{1,n}: (1 - t/n)^n for t < n, else 0; n=None gives e^(-t)."""
    t = _as_float_array(t)
    if n is None:
        return _out(np.exp(-t))
    inside = t < n
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.exp(n * np.log1p(-np.where(inside, t, 0.0) / n))
    return _out(np.where(inside, s, 0.0))


def unit_density(n, t):
    """Density of n U_{1,n}: (1 - t/n)^(n-1) on [0, n); n=None gives e^(-t)."""
    t = _as_float_array(t)
    if n is None:
        return _out(np.where(t >= 0, np.exp(-np.maximum(t, 0.0)), 0.0))
    inside = (t >= 0) & (t < n)
    with np.errstate(divide="ignore", invalid="ignore"):
        d = np.exp((n - 1) * np.log1p(-np.where(inside, t, 0.0) / n))
    return _out(np.where(inside, d, 0.0))


def limit_cdf(case: ExtremeCase, x):
    """Limit distribution function: phi_gamma, psi_gamma or Lambda."""
    return _out(np.exp(-_reduced_everywhere(case, x)))


def limit_pdf(case: ExtremeCase, x):
    """Derivative of limit_cdf; 0 outside the support."""
    return _density(None, case, x)


def rep_cdf(n: int, case: ExtremeCase, x):
    """Distribution function of Z_n(i, gamma): (1 - t/n)^n [t < n] with t = reduce_to_unit(x)."""
    n = check_sample_size(n)
    return unit_survival(n, _reduced_everywhere(case, x))


def rep_pdf(n: int, case: ExtremeCase, x):
    """Density of Z_n(i, gamma); 0 off the support."""
    n = check_sample_size(n)
    return _density(n, case, x)


def _density(n, case: ExtremeCase, x):
    x = _as_float_array(x)
    t = _reduced_everywhere(case, x)
    inside = (t > 0) & np.isfinite(t)
    if n is not None:
        inside &= t < n
    xs = np.where(inside, x, -1.0 if case.kind == WEIBULL else 1.0)
    ts = np.where(inside, t, 1.0)
    with np.errstate(divide="ignore"):
        if n is None:
            log_body = -ts
        else:
            log_body = (n - 1) * np.log1p(-ts / n)
        values = np.exp(log_body + _log_jacobian(case, xs, ts))
    return _out(np.where(inside, values, 0.0))


def _check_probability(p) -> np.ndarray:
    p = _as_float_array(p)
    if np.any(p <= 0) or np.any(p >= 1):
        raise DomainError("probability must lie strictly between 0 and 1")
    return p


def limit_quantile(case: ExtremeCase, p):
    """Inverse of limit_cdf on (0, 1)."""
    p = _check_probability(p)
    return expand_from_unit(case, -np.log(p))


def rep_quantile(n: int, case: ExtremeCase, p):
    """Inverse of rep_cdf on (0, 1): t = n (1 - p^(1/n))."""
    n = check_sample_size(n)
    p = _check_probability(p)
    return expand_from_unit(case, -n * np.expm1(np.log(p) / n))


def support(case: ExtremeCase, n: int = None) -> tuple:
    """Open support (lo, hi) of the limit law (n=None) or of Z_n(i, gamma)."""
    if n is None:
        return {FRECHET: (0.0, math.inf),
                WEIBULL: (-math.inf, 0.0),
                GUMBEL: (-math.inf, math.inf)}[case.kind]
    n = check_sample_size(n)
    if case.kind == FRECHET:
        return (float(n) ** (-case.gamma), math.inf)
    if case.kind == WEIBULL:
        return (-(float(n) ** (-case.gamma)), 0.0)
    return (-math.log(n), math.inf)
