"""Shared fixtures: small grids and parsed panel members.

Session scope keeps the grids and validated self-maps cached across test
modules; everything here is deterministic.
"""

import numpy as np
import pytest

from blochlab import analytic, make_grid, validate_self_map


@pytest.fixture(scope="session")
def grid5():
    return make_grid(5, 64)


@pytest.fixture(scope="session")
def grid6():
    return make_grid(6, 64)


@pytest.fixture(scope="session")
def grid8():
    return make_grid(8, 64)


@pytest.fixture(scope="session")
def default_grid():
    return make_grid()


@pytest.fixture(scope="session")
def self_map(grid6):
    """Factory: parse and validate a self-map source on the small grid."""

    cache = {}

    def build(src, grid=None):
        key = (src, None if grid is None else (grid.max_shell, grid.base_angular))
        if key not in cache:
            cache[key] = validate_self_map(analytic(src), grid if grid is not None else grid6)
        return cache[key]

    return build


@pytest.fixture(scope="session")
def fn():
    cache = {}

    def build(src):
        if src not in cache:
            cache[src] = analytic(src)
        return cache[src]

    return build


@pytest.fixture()
def rng():
    return np.random.default_rng(20250814)
