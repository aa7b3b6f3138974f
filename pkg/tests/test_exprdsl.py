"""Expression parsing, printing, evaluation, and symbolic differentiation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blochlab import ExprError, ROUNDTRIP_CORPUS, analytic
from blochlab.exprdsl import evaluate, parse, print_expr


def _spiral(count: int, max_radius: float) -> np.ndarray:
    radii = np.linspace(0.02, max_radius, count)
    angles = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    return radii * np.exp(1j * angles)


# --------------------------------------------------------------------------
# parse / print round trips


@pytest.mark.parametrize("source", ROUNDTRIP_CORPUS)
def test_corpus_value_level_roundtrip(source):
    tree = parse(source)
    reparsed = parse(print_expr(tree))
    pts = _spiral(60, 0.95)
    assert np.array_equal(evaluate(tree, pts), evaluate(reparsed, pts))


@pytest.mark.parametrize("source", ROUNDTRIP_CORPUS)
def test_printing_is_a_fixed_point(source):
    once = print_expr(parse(source))
    assert print_expr(parse(once)) == once


def test_corpus_has_thirty_entries():
    assert len(ROUNDTRIP_CORPUS) == 30
    assert len(set(ROUNDTRIP_CORPUS)) == 30


# --------------------------------------------------------------------------
# evaluation semantics


@pytest.mark.parametrize(
    "source, z, expected",
    [
        ("z", 0.3 + 0.1j, 0.3 + 0.1j),
        ("i", 0.5, 1j),
        ("1+2i", 0.0, 1 + 2j),
        ("complex(1.5,-0.25)", 0.9, 1.5 - 0.25j),
        ("z^3", 2.0, 8.0),
        ("2/(1-z)", 0.5, 4.0),
        ("exp(z)", 0.0, 1.0),
        ("log(2/(1-z))", 0.0, np.log(2.0)),
        ("mobius(0.5)", 0.0, 0.5),  # (a - z) / (1 - conj(a) z)
        ("mobius(0.5)", 0.5, 0.0),
        ("mobius(0.3i)", 0.3j, 0.0),
    ],
)
def test_known_values(source, z, expected):
    assert evaluate(parse(source), z) == pytest.approx(expected, abs=1e-15)


def test_evaluation_is_vectorized():
    tree = parse("z^2+1")
    pts = np.array([0.0, 1j, 0.5])
    assert np.array_equal(evaluate(tree, pts), pts**2 + 1)


@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=5))
@settings(max_examples=60)
def test_polynomial_text_matches_polyval(coeffs):
    source = "+".join(f"({c})*z^{n}" for n, c in enumerate(coeffs)) or "0"
    pts = _spiral(12, 0.8)
    expected = np.polynomial.polynomial.polyval(pts, np.asarray(coeffs, dtype=complex))
    assert np.allclose(evaluate(parse(source), pts), expected, rtol=0, atol=1e-12)


# --------------------------------------------------------------------------
# symbolic differentiation


@pytest.mark.parametrize(
    "source, deriv_source",
    [
        ("z^3", "3*z^2"),
        ("exp(z)", "exp(z)"),
        ("log(2/(1-0.5*z))", "0.5/(1-0.5*z)"),
        ("1-z", "-1"),
        ("mobius(0.5)", "-(1-0.25)/(1-0.5*z)^2"),
    ],
)
def test_derivative_matches_closed_form(source, deriv_source):
    f = analytic(source)
    expected = analytic(deriv_source)
    pts = _spiral(40, 0.9)
    assert np.allclose(f.deriv(pts), expected(pts), rtol=1e-13, atol=1e-13)


def test_derivative_of_derivative_is_second_order():
    f = analytic("z^4")
    pts = _spiral(10, 0.7)
    assert np.allclose(f.derivative.deriv(pts), 12.0 * pts**2, rtol=1e-13, atol=0)


def test_finite_difference_agrees_with_symbolic():
    f = analytic("((1+2i)*z^3-z)/(2-z)")
    h = 1e-5
    pts = _spiral(25, 0.8)
    fd = (f(pts + h) - f(pts - h)) / (2 * h)
    rel = np.abs(fd - f.deriv(pts)) / (1.0 + np.abs(f.deriv(pts)))
    assert float(rel.max()) < 1e-6


# --------------------------------------------------------------------------
# errors and sources


@pytest.mark.parametrize(
    "bad",
    ["", "z+", "w+1", "mobius()", "mobius(0.5", "2**z", "log()", "z^z", "(z"],
)
def test_malformed_text_raises(bad):
    with pytest.raises(ExprError):
        parse(bad)


def test_mobius_parameter_must_be_inside_disk():
    with pytest.raises(ExprError):
        parse("mobius(1.5)")


def test_analytic_keeps_original_source():
    assert analytic("z^2/2").source == "z^2/2"


def test_analytic_fn_accepts_scalars_and_arrays():
    f = analytic("z^2")
    assert f(0.5) == 0.25
    assert np.array_equal(f(np.array([1j, 2j])), np.array([-1.0 + 0j, -4.0 + 0j]))
