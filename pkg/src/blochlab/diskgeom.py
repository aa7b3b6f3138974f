"""Geometry of the unit disk: boundary-shell grids and holomorphic self-maps.

The grids are exponential boundary shells: shell ``k`` is the annulus
``1 - 2**-k <= |z| < 1 - 2**-(k+1)``, sampled on the circle at the shell's
midpoint radius ``1 - 0.75 * 2**-k`` with ``base_angular * (k + 1)``
equispaced angles.  Refining ``max_shell`` only appends shells, so a refined
grid is a strict superset of the coarse one — sup estimates over the grid are
monotone under refinement by construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .exprdsl import AnalyticFn, Expr, Mobius, Mul, Neg, Var, _depends_on_z, evaluate

DEFAULT_MAX_SHELL = 14
DEFAULT_BASE_ANGULAR = 64


class NotASelfMap(ValueError):
    """The candidate map leaves the unit disk; carries a witness point."""

    def __init__(self, witness: complex, modulus: float):
        super().__init__(
            f"|phi({witness})| = {modulus} >= 1; not a self-map of the disk"
        )
        self.witness = witness
        self.modulus = modulus


def shell_radius(k: int) -> float:
    """Midpoint radius of shell ``k``."""
    return 1.0 - 0.75 * 2.0 ** (-k)


def shell_for_modulus(m, max_shell: int):
    """Shell index containing modulus ``m`` (clipped to ``[0, max_shell]``)."""
    m = np.asarray(m, dtype=float)
    out = np.full(m.shape, max_shell, dtype=int)
    inside = m < 1.0
    with np.errstate(divide="ignore"):
        k = np.floor(-np.log2(1.0 - m[inside]))
    out[inside] = np.clip(k, 0, max_shell).astype(int)
    return out if out.ndim else int(out)


@dataclass(eq=False)
class DiskGrid:
    """Deterministic boundary-shell sample of the disk (shell-major order)."""

    points: np.ndarray
    shell_index: np.ndarray
    max_shell: int
    base_angular: int

    @property
    def size(self) -> int:
        return self.points.size

    @cached_property
    def angular_counts(self) -> tuple[int, ...]:
        return tuple(self.base_angular * (k + 1) for k in range(self.max_shell + 1))

    @cached_property
    def radii(self) -> tuple[float, ...]:
        return tuple(shell_radius(k) for k in range(self.max_shell + 1))

    def shells(self) -> list[np.ndarray]:
        """Per-shell views of :attr:`points`."""
        return [self.points[self.shell_index == k] for k in range(self.max_shell + 1)]

    def __repr__(self) -> str:
        return f"DiskGrid(max_shell={self.max_shell}, base_angular={self.base_angular}, size={self.size})"


def make_grid(max_shell: int = DEFAULT_MAX_SHELL, base_angular: int = DEFAULT_BASE_ANGULAR) -> DiskGrid:
    """Build the shell grid; ``max_shell >= 4`` and ``base_angular >= 64``."""
    max_shell = int(max_shell)
    base_angular = int(base_angular)
    if max_shell < 4:
        raise ValueError(f"max_shell must be >= 4, got {max_shell}")
    if base_angular < 64:
        raise ValueError(f"base_angular must be >= 64, got {base_angular}")
    pts, idx = [], []
    for k in range(max_shell + 1):
        m = base_angular * (k + 1)
        theta = 2.0 * np.pi * np.arange(m) / m
        pts.append(shell_radius(k) * np.exp(1j * theta))
        idx.append(np.full(m, k, dtype=int))
    points = np.concatenate(pts)
    shell_index = np.concatenate(idx)
    points.flags.writeable = False
    shell_index.flags.writeable = False
    return DiskGrid(points, shell_index, max_shell, base_angular)


# --------------------------------------------------------------------------
# self-maps


@dataclass(frozen=True, eq=False)
class SelfMap:
    """A validated holomorphic self-map of the disk."""

    fn: AnalyticFn
    sup_modulus_estimate: float
    is_automorphism: bool

    def __call__(self, z):
        return self.fn(z)

    def deriv(self, z):
        return self.fn.deriv(z)

    @property
    def source(self) -> str:
        return self.fn.source

    def __repr__(self) -> str:
        return (
            f"SelfMap({self.source!r}, sup~{self.sup_modulus_estimate:.6g}"
            + (", automorphism" if self.is_automorphism else "")
            + ")"
        )


def _syntactic_automorphism(e: Expr) -> bool:
    # Core forms z and mobius(a), optionally negated or multiplied by a
    # constant expression of unit modulus (rotation factors).  Detection is
    # syntactic on purpose: no numerical classification of arbitrary maps.
    if isinstance(e, (Var, Mobius)):
        return True
    if isinstance(e, Neg):
        return _syntactic_automorphism(e.x)
    if isinstance(e, Mul):
        for c, rest in ((e.a, e.b), (e.b, e.a)):
            if not _depends_on_z(c):
                lam = complex(evaluate(c, 0.0))
                if abs(abs(lam) - 1.0) <= 1e-12:
                    return _syntactic_automorphism(rest)
    return False


def validate_self_map(fn: AnalyticFn, grid: DiskGrid) -> SelfMap:
    """Check ``|fn| < 1`` on the grid and package the map.

    ``sup_modulus_estimate`` is the sampled max plus a shell-resolution margin
    ``2**-(max_shell+1)``, capped at 1.  Raises :class:`NotASelfMap` with the
    first offending grid point otherwise.
    """
    values = np.asarray(fn(grid.points))
    moduli = np.abs(values)
    bad = np.flatnonzero(moduli >= 1.0)
    if bad.size:
        j = int(bad[0])
        raise NotASelfMap(complex(grid.points[j]), float(moduli[j]))
    margin = 2.0 ** (-(grid.max_shell + 1))
    est = min(1.0, float(moduli.max()) + margin)
    return SelfMap(fn, est, _syntactic_automorphism(fn.expr))


def schwarz_derivative(phi, z):
    """``(1 - |z|^2) / (1 - |phi(z)|^2) * phi'(z)`` (scalar or array)."""
    w = phi(z)
    return (1.0 - np.abs(z) ** 2) / (1.0 - np.abs(w) ** 2) * phi.deriv(z)


def schwarz_pick_modulus_bound(phi, z):
    """Upper bound ``(|z| + s) / (1 + s |z|)`` with ``s = |phi(0)|``."""
    s = abs(complex(phi(0.0)))
    m = np.abs(z)
    return (m + s) / (1.0 + s * m)


def pseudo_hyperbolic(u, v):
    """Pseudo-hyperbolic distance ``|u - v| / |1 - conj(u) v|``."""
    u = np.asarray(u, dtype=complex)
    return np.abs(u - v) / np.abs(1.0 - np.conj(u) * v)
