import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_gridfn(rng, n=64, a=0.0, b=1.0, signed=True, uniform=True):
    from sharpwt import GridFn, grid_from_boundaries, uniform_grid
    if uniform:
        grid = uniform_grid(a, b, n)
    else:
        widths = rng.uniform(0.2, 1.8, n)
        X = np.concatenate([[a], a + np.cumsum(widths)])
        X = a + (X - a) * (b - a) / (X[-1] - a)
        X[-1] = b
        grid = grid_from_boundaries(X)
    lo = -1.0 if signed else 0.0
    return GridFn(grid, rng.uniform(lo, 1.0, n))


def random_weight(rng, n=64, p=2.0, a=0.0, b=1.0, spread=(0.5, 2.0), uniform=True):
    from sharpwt import GridFn, Weight, uniform_grid, grid_from_boundaries
    if uniform:
        grid = uniform_grid(a, b, n)
    else:
        widths = rng.uniform(0.2, 1.8, n)
        X = np.concatenate([[a], a + np.cumsum(widths)])
        X = a + (X - a) * (b - a) / (X[-1] - a)
        X[-1] = b
        grid = grid_from_boundaries(X)
    return Weight(GridFn(grid, rng.uniform(*spread, n)), p)
