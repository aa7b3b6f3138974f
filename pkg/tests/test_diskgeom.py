"""Shell grids, self-map validation, and hyperbolic-geometry inequalities."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blochlab import (
    NotASelfMap,
    analytic,
    make_grid,
    pseudo_hyperbolic,
    schwarz_derivative,
    schwarz_pick_modulus_bound,
    validate_self_map,
)
from blochlab.diskgeom import shell_for_modulus, shell_radius

disk_points = st.complex_numbers(max_magnitude=0.95, allow_nan=False, allow_infinity=False)


# --------------------------------------------------------------------------
# grid construction


def test_grid_shape_and_order(grid6):
    counts = [64 * (k + 1) for k in range(7)]
    assert grid6.size == sum(counts)
    assert grid6.angular_counts == tuple(counts)
    # shell-major: shell indices are non-decreasing along the flat array
    assert np.all(np.diff(grid6.shell_index) >= 0)
    for k, shell in enumerate(grid6.shells()):
        assert shell.size == counts[k]
        assert np.allclose(np.abs(shell), shell_radius(k), rtol=0, atol=1e-15)


def test_shell_radii_approach_boundary():
    radii = [shell_radius(k) for k in range(15)]
    assert radii[0] == 0.25
    assert all(b > a for a, b in zip(radii, radii[1:]))
    assert radii[14] == 1.0 - 0.75 * 2.0**-14


def test_refined_grid_contains_coarse_grid_exactly():
    coarse = make_grid(6, 64)
    fine = make_grid(8, 64)
    coarse_set = set(map(complex, coarse.points))
    fine_set = set(map(complex, fine.points))
    assert coarse_set <= fine_set


def test_grid_points_are_immutable(grid6):
    with pytest.raises(ValueError):
        grid6.points[0] = 0.0


def test_grid_parameter_validation():
    with pytest.raises(ValueError):
        make_grid(3, 64)
    with pytest.raises(ValueError):
        make_grid(6, 32)


def test_shell_for_modulus_matches_radii():
    for k in range(10):
        assert shell_for_modulus(shell_radius(k), max_shell=10) == k
    # moduli beyond the last ring stay in the last shell
    assert shell_for_modulus(0.999999, max_shell=5) == 5
    out = shell_for_modulus(np.array([0.0, 0.5, 0.9]), max_shell=8)
    assert out.shape == (3,)


# --------------------------------------------------------------------------
# self-map validation


def test_validate_accepts_strict_contraction(grid6):
    phi = validate_self_map(analytic("z/2"), grid6)
    assert phi.sup_modulus_estimate == pytest.approx(0.5, abs=1e-2)
    assert not phi.is_automorphism
    assert phi.source == "z/2"
    assert phi(0.5) == 0.25


def test_validate_flags_disk_automorphism(grid6):
    assert validate_self_map(analytic("mobius(0.5)"), grid6).is_automorphism
    assert validate_self_map(analytic("exp(1.5i)*z"), grid6).is_automorphism


def test_validate_rejects_expanding_map(grid6):
    with pytest.raises(NotASelfMap):
        validate_self_map(analytic("2*z"), grid6)


def test_validate_rejects_constant_outside_disk(grid6):
    with pytest.raises(NotASelfMap):
        validate_self_map(analytic("z+1"), grid6)


# --------------------------------------------------------------------------
# hyperbolic derivative and modulus bounds


def test_halving_map_hyperbolic_derivative_profile(grid6):
    phi = validate_self_map(analytic("z/2"), grid6)
    pts = grid6.points
    r2 = np.abs(pts) ** 2
    expected = 0.5 * (1.0 - r2) / (1.0 - r2 / 4.0)
    assert np.allclose(np.abs(schwarz_derivative(phi, pts)), expected, rtol=1e-13, atol=0)


def test_automorphism_attains_hyperbolic_equality(grid6):
    phi = validate_self_map(analytic("mobius(0.3i)"), grid6)
    vals = np.abs(schwarz_derivative(phi, grid6.points))
    assert np.max(np.abs(vals - 1.0)) <= 1e-9


def test_contraction_stays_below_hyperbolic_equality(grid6):
    phi = validate_self_map(analytic("(z+0.3)/2"), grid6)
    vals = np.abs(schwarz_derivative(phi, grid6.points))
    assert float(vals.max()) <= 1.0 + 1e-12


def test_modulus_bound_dominates_map(grid6):
    for src in ("z/2", "(z+0.3)/2", "mobius(0.5)", "z^2/2"):
        phi = validate_self_map(analytic(src), grid6)
        pts = grid6.points
        bound = schwarz_pick_modulus_bound(phi, pts)
        assert np.all(np.abs(phi(pts)) <= bound + 1e-12)


# --------------------------------------------------------------------------
# pseudo-hyperbolic distance


def test_pseudo_hyperbolic_known_values():
    assert pseudo_hyperbolic(0.0, 0.5) == pytest.approx(0.5, abs=1e-15)
    assert pseudo_hyperbolic(0.3j, 0.3j) == 0.0


@given(disk_points, disk_points)
@settings(max_examples=80)
def test_pseudo_hyperbolic_symmetric_and_bounded(u, v):
    d_uv = float(pseudo_hyperbolic(u, v))
    d_vu = float(pseudo_hyperbolic(v, u))
    assert d_uv == pytest.approx(d_vu, abs=1e-14)
    assert 0.0 <= d_uv < 1.0


@given(disk_points, disk_points, st.complex_numbers(max_magnitude=0.8, allow_nan=False))
@settings(max_examples=60)
def test_pseudo_hyperbolic_is_mobius_invariant(u, v, a):
    alpha = analytic(f"mobius(complex({a.real!r},{a.imag!r}))")
    before = float(pseudo_hyperbolic(u, v))
    after = float(pseudo_hyperbolic(alpha(u), alpha(v)))
    assert after == pytest.approx(before, abs=1e-12)
