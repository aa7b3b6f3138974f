"""Truncated power-series arithmetic: exactness, caps, and recovery."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blochlab import (
    TaylorSeries,
    coeffs_from_samples,
    recovery_count,
)
from blochlab.series import DEGREE_CAP, add, antiderivative, derivative, mul

int_coeffs = st.lists(
    st.integers(min_value=-1000, max_value=1000), min_size=1, max_size=12
)


def _ts(values) -> TaylorSeries:
    return TaylorSeries(np.asarray(values, dtype=complex))


# --------------------------------------------------------------------------
# ring operations


@given(int_coeffs, int_coeffs)
def test_add_commutes_exactly(a, b):
    assert add(_ts(a), _ts(b)) == add(_ts(b), _ts(a))


@given(int_coeffs, int_coeffs)
def test_mul_commutes_exactly(a, b):
    assert mul(_ts(a), _ts(b)) == mul(_ts(b), _ts(a))


@given(int_coeffs, int_coeffs, int_coeffs)
@settings(max_examples=50)
def test_mul_distributes_over_add_exactly(a, b, c):
    left = mul(_ts(a), add(_ts(b), _ts(c)))
    right = add(mul(_ts(a), _ts(b)), mul(_ts(a), _ts(c)))
    assert left == right


def test_mul_known_product():
    # (1 + z)(1 - z) = 1 - z^2
    assert mul(_ts([1, 1]), _ts([1, -1])) == _ts([1, 0, -1])


def test_add_pads_shorter_operand():
    assert add(_ts([1]), _ts([0, 0, 5])) == _ts([1, 0, 5])


def test_mul_truncates_at_degree_cap():
    a = _ts([1] * 41)  # degree 40
    product = mul(a, a)  # raw degree 80
    assert product.coeffs.size == DEGREE_CAP + 1


def test_mul_explicit_cap():
    a = _ts([1, 1, 1])
    assert mul(a, a, cap=2).coeffs.size == 3


# --------------------------------------------------------------------------
# derivative / antiderivative


def test_derivative_known_values():
    # d/dz (3 + 2z + z^2) = 2 + 2z
    assert derivative(_ts([3, 2, 1])) == _ts([2, 2])


def test_antiderivative_known_values():
    assert antiderivative(_ts([2, 2])) == _ts([0, 2, 1])


@given(
    st.lists(st.integers(min_value=-1000, max_value=1000), min_size=2, max_size=12)
)
def test_antiderivative_of_derivative_zeroes_constant(a):
    s = _ts(a)
    expected = np.concatenate([[0.0], s.coeffs[1:]])
    assert antiderivative(derivative(s)) == TaylorSeries(expected)


def test_antiderivative_of_derivative_constant_case():
    # the degenerate size-1 series gains a slot: [a0] -> [0] -> [0, 0]
    assert antiderivative(derivative(_ts([7.0]))) == _ts([0.0, 0.0])


def test_antiderivative_keeps_representable_quotients_exact():
    # coefficient at index 48 is divided by 49; the quotient is representable
    # and must come out exact, not via a rounded reciprocal
    coeffs = np.zeros(49, dtype=complex)
    coeffs[48] = complex(-343, -49)
    out = antiderivative(TaylorSeries(coeffs))
    assert out.coeffs[49] == complex(-7, -1)


def test_derivative_of_constant_is_zero():
    assert derivative(_ts([5.0])) == _ts([0.0])


# --------------------------------------------------------------------------
# evaluation and container semantics


def test_evaluate_matches_polyval(rng):
    coeffs = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    s = TaylorSeries(coeffs)
    pts = 0.5 * (rng.standard_normal(20) + 1j * rng.standard_normal(20))
    expected = np.polynomial.polynomial.polyval(pts, coeffs)
    assert np.array_equal(s(pts), expected)


def test_coeffs_are_immutable():
    s = _ts([1, 2, 3])
    with pytest.raises(ValueError):
        s.coeffs[0] = 9.0


def test_equality_is_exact():
    assert _ts([1.0]) != _ts([1.0 + 1e-15])
    assert _ts([1.0]) == _ts([1.0])


# --------------------------------------------------------------------------
# coefficient recovery from samples


def test_recovery_count_gives_margin_over_minimum():
    assert recovery_count(8) == 36
    assert recovery_count(8) >= 2 * 8 + 2


def test_recovers_degree8_polynomial_coefficients(rng):
    coeffs = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    s = TaylorSeries(coeffs)
    out = coeffs_from_samples(s, radius=0.5, count=recovery_count(8), degree=8)
    assert np.max(np.abs(out.coeffs - coeffs)) < 1e-10


def test_recovery_rejects_undersampling():
    s = _ts([1, 2, 3])
    with pytest.raises(ValueError):
        coeffs_from_samples(s, radius=0.5, count=2 * 8 + 1, degree=8)
