"""Tests for the lemma quantities, the constant C_0 and the theorem bound."""

import math
import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from bounds import (C0, PRINTED_C0, bound_breakdown, f2_bound, g1, g1_minus_one,
                    geometric_series_bound, intermediate_bound, lemma_bound, lemma_series,
                    series_exponent, theorem_bound, theta_step)
from errors import DomainError

F2_AT_TWO = 0.61067376022224085
C0_VALUE = 1.8416718260782605
THEOREM_AT_TWO = 0.8123303295632861
LEMMA_AT_TWO = 1.1246606591265722


def test_constant_provenance():
    assert f2_bound(2) == pytest.approx(F2_AT_TWO, rel=1e-15)
    assert f2_bound(2) == pytest.approx(0.25 + 0.25 / math.log(2.0), rel=1e-15)
    assert C0 == pytest.approx(C0_VALUE, rel=1e-15)
    # the printed constant sits just above the computed one
    assert abs(C0 - PRINTED_C0) < 2e-6
    assert PRINTED_C0 >= C0
    assert round(C0, 5) == round(PRINTED_C0, 5)


def test_bounds_at_two():
    assert theorem_bound(2) == pytest.approx(THEOREM_AT_TWO, rel=1e-14)
    assert lemma_bound(2) == pytest.approx(LEMMA_AT_TWO, rel=1e-14)
    assert g1(2) == pytest.approx(math.e / 2.0, rel=1e-15)


def test_lemma_series_at_two_is_one_minus_log_two():
    series = lemma_series(2)
    assert series.value == pytest.approx(1.0 - math.log(2.0), rel=1e-15)
    assert series.tail_bound <= 1e-16 * 0.25
    assert series.terms > 10


def test_lemma_series_truncation():
    series = lemma_series(10, rel_tol=1e-8)
    assert series.tail_bound <= 1e-8 * series.value
    assert series.value == pytest.approx(series_exponent(10), rel=1e-8)
    with pytest.raises(DomainError):
        lemma_series(10, rel_tol=1e-17)
    with pytest.raises(DomainError):
        lemma_series(np.array([2, 3]))


@pytest.mark.parametrize("n", [2, 3, 10, 1000, 10 ** 6, 10 ** 12])
def test_series_exponent_matches_series(n):
    assert series_exponent(n) == pytest.approx(lemma_series(n).value, rel=1e-14)


def test_g1_minus_one_is_accurate_for_large_n():
    for n in (10 ** 6, 10 ** 9, 10 ** 12):
        expected = math.expm1(lemma_series(n).value)
        assert g1_minus_one(n) == pytest.approx(expected, rel=1e-13)
        assert g1_minus_one(n) == pytest.approx(1.0 / (2.0 * n), rel=1e-5)


def test_f1_identity_and_f2_on_small_n():
    for n in range(2, 101):
        b = bound_breakdown(n)
        assert abs(b.g1 - math.exp(b.series_value)) <= 1e-12 * b.g1
        assert b.series_value <= b.f2_value
        assert b.f1_holds and b.f2_holds and b.all_hold


def test_f2_first_fails_at_401():
    assert bound_breakdown(400).f2_holds
    assert not bound_breakdown(401).f2_holds
    # the geometric comparison and the lemma still hold
    assert bound_breakdown(401).all_hold
    assert bound_breakdown(10 ** 9).all_hold


def test_lemma_holds_across_n():
    n = np.arange(2, 10 ** 5 + 1)
    gm1 = g1_minus_one(n)
    assert np.all(gm1 >= 0)
    assert np.all(gm1 <= lemma_bound(n))
    for k in (2, 7, 400, 401, 10 ** 5):
        assert lemma_series(k).value <= geometric_series_bound(k)


def test_theorem_bound_is_decreasing_and_scales_like_one_over_n():
    n = np.unique(np.rint(np.geomspace(2, 10 ** 12, 400)).astype(np.int64))
    values = theorem_bound(n)
    assert np.all(np.diff(values) < 0)
    assert 10 ** 12 * theorem_bound(10 ** 12) == pytest.approx((2.0 + C0) / 4.0, rel=1e-10)


def test_intermediate_display_is_larger_than_theorem():
    n = np.arange(2, 1000)
    assert np.all(intermediate_bound(n) > theorem_bound(n))


def test_theta_step_chain_is_nondecreasing():
    n = np.arange(2, 10 ** 4)
    first, second, third = theta_step(n)
    assert np.all(first <= second)
    assert np.all(second <= third * (1.0 + 1e-15))
    first, second, third = theta_step(2)
    assert second == pytest.approx(third, rel=1e-15)


@pytest.mark.parametrize("bad", [1, 0, 2.0, True, 10 ** 13])
def test_bounds_reject_bad_n(bad):
    with pytest.raises(DomainError):
        theorem_bound(bad)
    with pytest.raises(DomainError):
        bound_breakdown(bad)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 10 ** 12))
def test_breakdown_verdicts_hold_for_any_n(n):
    b = bound_breakdown(n)
    assert b.all_hold
    assert 0.0 <= b.g1_minus_1 <= b.lemma_bound
    assert b.theorem_bound > 0
