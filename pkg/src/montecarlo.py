"""Monte Carlo validation of the exact distances.

Z_n(i, gamma) is simulated from the minimum of n uniforms by inverse transform,
and the Kolmogorov statistic of the sample against the limit law is compared
with the exact distance. By the DKW inequality the two differ by at most
sqrt(log(2/(1 - confidence)) / (2N)) with the stated confidence.

Draws are produced in fixed-size chunks; chunk k of stream s uses the
counter-based Philox generator seeded by SeedSequence(seed, spawn_key=(s, k)),
so a result depends on (seed, stream, N) only, never on the number of workers.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.stats
from joblib import Parallel, delayed

from distributions import ExtremeCase, check_sample_size, expand_from_unit, limit_cdf
from errors import DomainError
from metrics import ks_tv_exact

logger = logging.getLogger(__name__)

DEFAULT_CONFIDENCE = 0.99
MIN_SAMPLES = 10 ** 4
CHUNK_SIZE = 1 << 16
PASS_SLACK = 1e-9


@dataclass(frozen=True)
class MCResult:
    n: int
    case: ExtremeCase
    samples: int
    seed: int
    stream: int
    confidence: float
    empirical_ks: float
    dkw_epsilon: float
    exact_ks: float
    passed: bool


def dkw_epsilon(samples: int, confidence: float = DEFAULT_CONFIDENCE) -> float:
    """Half-width of the two-sided DKW band for N samples."""
    if not 0.0 < confidence < 1.0:
        raise DomainError(f"confidence must lie in (0, 1), got {confidence}")
    return math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * samples))


def make_rng(seed: int, stream: int = 0, chunk: int = 0) -> np.random.Generator:
    """Philox generator for one chunk of one stream."""
    if stream < 0:
        raise DomainError(f"stream index must be >= 0, got {stream}")
    if not 0 <= seed < 2 ** 64:
        raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
    sequence = np.random.SeedSequence(seed, spawn_key=(stream, chunk))
    return np.random.Generator(np.random.Philox(sequence))


def sample_min_uniform(n: int, rng: np.random.Generator, size=None):
    """Draw U_{1,n} = min of n uniforms as 1 - V^(1/n)."""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    v = rng.random(size)
    # 1 - (1 - v)^(1/n); 1 - v is uniform as well
    u = -np.expm1(np.log1p(-v) / n)
    return float(u) if np.ndim(u) == 0 else u


def sample_z(n: int, case: ExtremeCase, rng: np.random.Generator, size=None):
    """Draw Z_n(i, gamma): Frechet (nu)^-gamma, Weibull -(nu)^-gamma, Gumbel -log(nu)."""
    n = check_sample_size(n)
    return expand_from_unit(case, n * np.asarray(sample_min_uniform(n, rng, size)))


def _draw_chunk(n, case, seed, stream, chunk, size):
    return sample_z(n, case, make_rng(seed, stream, chunk), size=size)


def sample_z_batch(n: int, case: ExtremeCase, samples: int, seed: int,
                   stream: int = 0, n_jobs: int = 1) -> np.ndarray:
    """Draw ``samples`` values of Z_n(i, gamma), chunked and optionally in parallel."""
    full, rest = divmod(samples, CHUNK_SIZE)
    sizes = [CHUNK_SIZE] * full + ([rest] if rest else [])
    logger.debug("drawing %d samples in %d chunks with n_jobs=%d", samples, len(sizes), n_jobs)

    chunks = Parallel(n_jobs=n_jobs, prefer="threads")(
        delayed(_draw_chunk)(n, case, seed, stream, k, size)
        for k, size in enumerate(sizes)
    )
    return np.concatenate(chunks)


def empirical_ks(n: int, case: ExtremeCase, samples: int, seed: int,
                 confidence: float = DEFAULT_CONFIDENCE, stream: int = 0,
                 n_jobs: int = 1) -> MCResult:
    """KS statistic of N simulated draws against the limit law, gated by DKW."""
    n = check_sample_size(n)
    if samples < MIN_SAMPLES:
        raise DomainError(f"at least {MIN_SAMPLES} samples are required, got {samples}")

    draws = sample_z_batch(n, case, samples, seed, stream=stream, n_jobs=n_jobs)
    statistic = float(scipy.stats.kstest(draws, lambda x: limit_cdf(case, x)).statistic)
    epsilon = dkw_epsilon(samples, confidence)
    exact = ks_tv_exact(n).ks
    passed = abs(statistic - exact) <= epsilon + PASS_SLACK

    if not passed:
        logger.warning("Monte Carlo gate failed: n=%d case=%s |%.6g - %.6g| > %.6g",
                       n, case, statistic, exact, epsilon)
    return MCResult(n=n, case=case, samples=samples, seed=seed, stream=stream,
                    confidence=confidence, empirical_ks=statistic, dkw_epsilon=epsilon,
                    exact_ks=exact, passed=passed)
