"""End-to-end certification checks over the standard grids of n."""

import math
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from bounds import (C0, PRINTED_C0, f2_bound, g1, g1_minus_one, lemma_bound, lemma_series,
                    theorem_bound)
from distributions import ExtremeCase
from metrics import (bound_chain, distance_in_original_coordinates, ks_scan_oracle, ks_tv_exact,
                     tv_quadrature_oracle)
from montecarlo import dkw_epsilon, empirical_ks
from sweep import parse_n_grid

LOG_GRID = parse_n_grid(log_spec="2..1e6", points=25)
ORACLE_GRID = [2, 3, 5, 10, 100, 10 ** 3, 10 ** 4]
CASES = [
    ExtremeCase.frechet(0.5),
    ExtremeCase.frechet(1.0),
    ExtremeCase.frechet(2.0),
    ExtremeCase.weibull(-0.5),
    ExtremeCase.weibull(-2.0),
    ExtremeCase.gumbel(),
]


def test_theorem_dominates_exact_distance():
    for n in LOG_GRID:
        assert ks_tv_exact(n).ks < theorem_bound(n)


def test_lemma_sandwich():
    n = np.array(LOG_GRID)
    gm1 = g1_minus_one(n)
    assert np.all(gm1 >= 0)
    assert np.all(gm1 <= lemma_bound(n))


def test_series_identity_and_comparison_up_to_one_hundred():
    for n in range(2, 101):
        series = lemma_series(n).value
        assert abs(g1(n) - math.exp(series)) <= 1e-12 * g1(n)
        assert series <= f2_bound(n)


def test_constant_matches_printed_value():
    assert C0 == pytest.approx(math.exp(0.25 + 0.25 / math.log(2.0)), rel=1e-15)
    assert abs(C0 - PRINTED_C0) < 2e-6


@pytest.mark.parametrize("n", ORACLE_GRID)
def test_oracles_agree_with_exact_distance(n):
    exact = ks_tv_exact(n)
    assert abs(exact.ks - tv_quadrature_oracle(n, tol=1e-10)) <= 1e-8
    assert -1e-15 <= exact.ks - ks_scan_oracle(n, 10 ** 6) <= 1e-6
    assert abs(exact.ks - exact.tv) <= 1e-12


@pytest.mark.parametrize("n", [2, 10, 10 ** 3])
def test_distance_is_invariant_across_cases(n):
    reduced = ks_scan_oracle(n, 10 ** 5)
    values = [distance_in_original_coordinates(n, case, 10 ** 5) for case in CASES]
    assert max(values) - min(values) <= 1e-10
    assert all(abs(v - reduced) <= 1e-6 for v in values)


def test_decomposition_and_chain_on_the_sweep():
    for n in LOG_GRID:
        result = ks_tv_exact(n)
        pieces = result.pieces
        assert abs(pieces.mass_left + pieces.a1 + pieces.a2 - 2.0 * result.tv) <= 1e-12
        assert all(step.holds for step in bound_chain(n))


def test_asymptotic_constants():
    scaled = [n * ks_tv_exact(n).ks for n in (10 ** 4, 10 ** 5, 10 ** 6)]
    limit = 2.0 * math.exp(-2.0)
    gaps = [abs(s - limit) for s in scaled]
    assert gaps[0] > gaps[1] > gaps[2]
    assert scaled[-1] == pytest.approx(limit, rel=1e-2)
    assert 10 ** 9 * theorem_bound(10 ** 9) == pytest.approx((2.0 + C0) / 4.0, rel=1e-3)


@pytest.mark.parametrize("case", [ExtremeCase.frechet(1.0), ExtremeCase.weibull(-1.0),
                                  ExtremeCase.gumbel()], ids=str)
@pytest.mark.parametrize("n", [2, 100])
def test_monte_carlo_gate(case, n):
    result = empirical_ks(n, case, samples=10 ** 6, seed=20240601)
    assert result.dkw_epsilon == pytest.approx(dkw_epsilon(10 ** 6), rel=1e-15)
    assert result.dkw_epsilon == pytest.approx(0.00163, abs=1e-5)
    assert abs(result.empirical_ks - result.exact_ks) <= result.dkw_epsilon
    assert result.passed
