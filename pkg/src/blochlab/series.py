"""Truncated Taylor series with complex coefficients.

A :class:`TaylorSeries` stores coefficients ``a_0 .. a_N`` of a polynomial (or
a truncation of an analytic function) in the disk variable ``z``.  Products
are Cauchy products truncated at a configurable degree cap (default
:data:`DEGREE_CAP`); series are never composed directly — composition happens
at the function level and is re-expanded through :func:`coeffs_from_samples`
when coefficients are needed.

Coefficient recovery uses equispaced samples on a circle ``|z| = radius`` and
the discrete orthogonality of roots of unity:

    a_n = (1 / (count * radius**n)) * sum_m f(radius * w**m) * w**(-m*n)

which is an inverse DFT, so ``numpy.fft`` does the heavy lifting.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

#: default truncation degree for products
DEGREE_CAP = 64


class TaylorSeries:
    """Immutable truncated power series sum(a_n z^n, n=0..degree_bound)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs) -> None:
        arr = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficients must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, name, value):  # pragma: no cover - defensive
        raise AttributeError("TaylorSeries is immutable")

    @property
    def degree_bound(self) -> int:
        return self.coeffs.size - 1

    def __repr__(self) -> str:
        return f"TaylorSeries(degree={self.degree_bound})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, TaylorSeries):
            return NotImplemented
        return self.coeffs.size == other.coeffs.size and bool(
            np.all(self.coeffs == other.coeffs)
        )

    def __hash__(self) -> int:
        return hash(self.coeffs.tobytes())

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "TaylorSeries") -> "TaylorSeries":
        return add(self, other)

    def __mul__(self, other: "TaylorSeries") -> "TaylorSeries":
        return mul(self, other)

    def derivative(self) -> "TaylorSeries":
        return derivative(self)

    def antiderivative(self) -> "TaylorSeries":
        return antiderivative(self)

    def __call__(self, z):
        return self.evaluate(z)

    def evaluate(self, z):
        """Evaluate at ``z`` (scalar or array) by Horner's rule."""
        return np.polynomial.polynomial.polyval(z, self.coeffs)


def add(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    """Coefficientwise sum; degree bound is the max of the two."""
    n = max(a.coeffs.size, b.coeffs.size)
    out = np.zeros(n, dtype=complex)
    out[: a.coeffs.size] += a.coeffs
    out[: b.coeffs.size] += b.coeffs
    return TaylorSeries(out)


def mul(a: TaylorSeries, b: TaylorSeries, cap: int | None = None) -> TaylorSeries:
    """Cauchy product truncated to ``min(deg a + deg b, cap)``."""
    cap = DEGREE_CAP if cap is None else int(cap)
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    full = np.convolve(a.coeffs, b.coeffs)
    keep = min(a.degree_bound + b.degree_bound, cap) + 1
    return TaylorSeries(full[:keep])


def derivative(s: TaylorSeries) -> TaylorSeries:
    """Termwise derivative: coefficient ``n * a_n`` shifted down one index."""
    if s.coeffs.size == 1:
        return TaylorSeries([0.0])
    n = np.arange(1, s.coeffs.size)
    return TaylorSeries(s.coeffs[1:] * n)


def antiderivative(s: TaylorSeries) -> TaylorSeries:
    """Termwise antiderivative with constant term 0: ``a_n/(n+1)`` at n+1.

    Real and imaginary parts are divided separately: complex division in
    numpy goes through a rounded reciprocal, which loses the exactness of
    representable quotients like (-343-49j)/49 that plain float division
    keeps.
    """
    out = np.zeros(s.coeffs.size + 1, dtype=complex)
    div = np.arange(1, s.coeffs.size + 1, dtype=float)
    out.real[1:] = s.coeffs.real / div
    out.imag[1:] = s.coeffs.imag / div
    return TaylorSeries(out)


def coeffs_from_samples(
    evaluate: Callable,
    radius: float,
    count: int,
    degree: int,
) -> TaylorSeries:
    """Recover ``a_0 .. a_degree`` of an analytic ``evaluate`` from circle samples.

    Samples ``evaluate`` at ``count`` equispaced points on ``|z| = radius``
    and inverts the DFT.  ``count`` must be at least ``2*degree + 2`` so that
    the aliased tail (coefficients beyond ``degree``) does not fold back onto
    the recovered range at full strength.
    """
    radius = float(radius)
    if not (0.0 < radius < 1.0):
        raise ValueError(f"radius must lie in (0, 1), got {radius}")
    degree = int(degree)
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    count = int(count)
    if count < 2 * degree + 2:
        raise ValueError(
            f"count={count} too small for degree={degree}; need >= {2 * degree + 2}"
        )
    m = np.arange(count)
    pts = radius * np.exp(2j * np.pi * m / count)
    samples = np.asarray([complex(evaluate(p)) for p in pts])
    # fft computes sum_m samples[m] * exp(-2 pi i m n / count) = count * a_n * r^n
    hat = np.fft.fft(samples)[: degree + 1] / count
    return TaylorSeries(hat / radius ** np.arange(degree + 1))


def recovery_count(degree: int) -> int:
    """Default sample count for :func:`coeffs_from_samples`: ``4*(degree+1)``."""
    return 4 * (int(degree) + 1)
