"""Independent oracle for the halving-map criterion maximum.

For the self-map phi(z) = z/2 with symbol g(z) = z, the criterion field

    K_I(z) = |phi^#(z)| * |g(phi(z)) - g(z)|

is rotation invariant and reduces to a closed-form radial profile:

    |phi^#(z)| = (1/2) * (1 - r^2) / (1 - r^2/4)
    |g(phi(z)) - g(z)| = r / 2
    K_I(r) = r * (1 - r^2) / (4 - r^2),   r = |z|

This script maximizes that profile by brute force on a dense radial grid and
cross-checks against the stationary point of the quartic numerator of the
derivative (r^4 - 11 r^2 + 4 = 0), without importing the library under test.
The printed maximum is the frozen reference value used by the test suite.
"""

import argparse
import math
import sys

import numpy as np


def profile(r: np.ndarray) -> np.ndarray:
    return r * (1.0 - r * r) / (4.0 - r * r)


def brute_force_max(points: int) -> tuple[float, float]:
    r = np.linspace(0.0, 1.0, points)
    values = profile(r)
    k = int(np.argmax(values))
    return float(values[k]), float(r[k])


def stationary_point() -> tuple[float, float]:
    # d/dr [r(1-r^2)/(4-r^2)] = 0  <=>  r^4 - 11 r^2 + 4 = 0 on (0, 1)
    r_sq = (11.0 - math.sqrt(105.0)) / 2.0
    r = math.sqrt(r_sq)
    return float(profile(np.array([r]))[0]), r


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Print the maximum of r(1-r^2)/(4-r^2) over [0, 1]."
    )
    parser.add_argument(
        "--points",
        type=int,
        default=1_000_000,
        help="number of radial samples for the brute-force pass (default 1e6)",
    )
    args = parser.parse_args(argv)

    grid_max, grid_arg = brute_force_max(args.points)
    exact_max, exact_arg = stationary_point()

    print(f"brute-force max : {grid_max:.17g} at r = {grid_arg:.17g}")
    print(f"stationary max  : {exact_max:.17g} at r = {exact_arg:.17g}")
    print(f"difference      : {abs(grid_max - exact_max):.3e}")
    if abs(grid_max - exact_max) > 1e-10:
        print("oracle disagreement exceeds 1e-10", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
