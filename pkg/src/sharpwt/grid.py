"""Grids, piecewise-constant functions, weights, and weighted norms.

Functions are cell densities: one value per cell, constant on the cell.
Every integral in the package is exact for this class, which is what makes
the brute-force oracles exact rather than approximate.

Grading spec strings: ``uniform``, ``left:<ratio>``, ``right:<ratio>``
(geometric cell widths shrinking toward the named endpoint),
``at:<point>:<ratio>`` (two geometric halves meeting at an interior point),
``custom`` (explicit boundaries, e.g. parsed from CSV).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._numerics import pow_diff, stable_power_sum


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class Grid1D:
    """Partition of [a, b] into n cells with strictly increasing boundaries."""

    a: float
    b: float
    n: int
    grading: str
    boundaries: np.ndarray

    def __post_init__(self):
        bd = _freeze(self.boundaries)
        object.__setattr__(self, "boundaries", bd)
        if self.n < 1 or len(bd) != self.n + 1:
            raise ValueError("boundary count must be n + 1")
        if not (bd[0] == self.a and bd[-1] == self.b):
            raise ValueError("boundaries must start at a and end at b")
        if not np.all(np.diff(bd) > 0):
            raise ValueError("boundaries must be strictly increasing "
                             "(grading too deep for float spacing here?)")

    @property
    def widths(self) -> np.ndarray:
        return self.boundaries[1:] - self.boundaries[:-1]

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.boundaries[:-1] + self.boundaries[1:])

    @property
    def cell_count(self) -> int:
        return self.n


def uniform_grid(a: float, b: float, n: int) -> Grid1D:
    return Grid1D(a, b, n, "uniform", np.linspace(a, b, n + 1))


def _geometric_boundaries_toward_right(a: float, b: float, n: int, ratio: float) -> np.ndarray:
    # widths w_k = w0 * r^k shrink toward b; anchored at b to keep the thin
    # cells representable: X_k = b - (b-a) r^k (1 - r^(n-k)) / (1 - r^n)
    k = np.arange(n + 1, dtype=float)
    r = ratio
    rn = r**n
    X = b - (b - a) * np.power(r, k) * (1.0 - np.power(r, n - k)) / (1.0 - rn)
    X[0] = a
    X[-1] = b
    return X


def geometric_grid(a: float, b: float, n: int, toward: str, ratio: float) -> Grid1D:
    """Cell widths form a geometric progression with the given ratio,
    shrinking toward the named endpoint ('left' or 'right')."""
    if not 0.0 < ratio < 1.0:
        raise ValueError("ratio must lie in (0, 1)")
    if toward == "right":
        X = _geometric_boundaries_toward_right(a, b, n, ratio)
        spec = f"right:{ratio:.12g}"
    elif toward == "left":
        # mirror of the toward-right construction, anchored at a
        Xm = _geometric_boundaries_toward_right(-b, -a, n, ratio)
        X = -Xm[::-1]
        X[0] = a
        X[-1] = b
        spec = f"left:{ratio:.12g}"
    else:
        raise ValueError("toward must be 'left' or 'right'")
    return Grid1D(a, b, n, spec, X)


def interior_graded_grid(a: float, b: float, n: int, point: float, ratio: float) -> Grid1D:
    """Two geometric halves meeting at an interior point, widths shrinking
    toward it from both sides.  Resolves a singularity at the domain interior."""
    if not a < point < b:
        raise ValueError("point must lie strictly inside (a, b)")
    if n < 2:
        raise ValueError("interior grading needs at least 2 cells")
    m1 = n // 2
    XL = _geometric_boundaries_toward_right(a, point, m1, ratio)
    XRrev = _geometric_boundaries_toward_right(-b, -point, n - m1, ratio)
    XR = -XRrev[::-1]
    X = np.concatenate([XL, XR[1:]])
    X[m1] = point
    return Grid1D(a, b, n, f"at:{point:.12g}:{ratio:.12g}", X)


def make_grid(a: float, b: float, n: int, grading: str = "uniform") -> Grid1D:
    """Build a grid from a grading spec string."""
    parts = grading.split(":")
    if parts[0] == "uniform":
        return uniform_grid(a, b, n)
    if parts[0] in ("left", "right") and len(parts) == 2:
        return geometric_grid(a, b, n, parts[0], float(parts[1]))
    if parts[0] == "at" and len(parts) == 3:
        return interior_graded_grid(a, b, n, float(parts[1]), float(parts[2]))
    raise ValueError(f"unknown grading spec: {grading!r}")


def grid_from_boundaries(boundaries: np.ndarray) -> Grid1D:
    boundaries = np.asarray(boundaries, dtype=float)
    return Grid1D(float(boundaries[0]), float(boundaries[-1]),
                  len(boundaries) - 1, "custom", boundaries)


def ratio_for_min_width(length: float, n: int, min_width: float) -> float:
    """Geometric ratio giving the requested smallest cell width over a run
    of n cells covering ``length``.  Used to pick grading depth per sweep."""
    if min_width >= length / n:
        return 1.0 - 1e-12  # effectively uniform; caller should use uniform
    lo, hi = 1e-6, 1.0 - 1e-9
    for _ in range(200):
        r = 0.5 * (lo + hi)
        w = length * r ** (n - 1) * (1.0 - r) / (1.0 - r**n)
        if w > min_width:
            hi = r
        else:
            lo = r
    return 0.5 * (lo + hi)


@dataclass(frozen=True, eq=False)
class Grid2D:
    """Tensor product of two 1D grids; cells are rectangles gx-cell x gy-cell."""

    gx: Grid1D
    gy: Grid1D

    @property
    def cell_count(self) -> int:
        return self.gx.n * self.gy.n

    @property
    def areas(self) -> np.ndarray:
        return np.outer(self.gx.widths, self.gy.widths)


@dataclass(frozen=True, eq=False)
class GridFn:
    """Piecewise-constant function: one value per cell (row-major in 2D,
    x index major)."""

    grid: Grid1D | Grid2D
    values: np.ndarray

    def __post_init__(self):
        vals = _freeze(self.values)
        object.__setattr__(self, "values", vals)
        if vals.ndim != 1 or len(vals) != self.grid.cell_count:
            raise ValueError("values must be flat with one entry per cell")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")

    @property
    def values2d(self) -> np.ndarray:
        if not isinstance(self.grid, Grid2D):
            raise TypeError("values2d requires a Grid2D")
        return self.values.reshape(self.grid.gx.n, self.grid.gy.n)

    def is_2d(self) -> bool:
        return isinstance(self.grid, Grid2D)


def gridfn_2d(grid: Grid2D, values2d: np.ndarray) -> GridFn:
    return GridFn(grid, np.asarray(values2d, dtype=float).reshape(-1))


def product_gridfn(u: GridFn, v: GridFn) -> GridFn:
    """Separable 2D function u(x) * v(y) from two 1D factors."""
    g = Grid2D(u.grid, v.grid)
    return gridfn_2d(g, np.outer(u.values, v.values))


def constant_fn(grid: Grid1D | Grid2D, c: float = 1.0) -> GridFn:
    return GridFn(grid, np.full(grid.cell_count, float(c)))


@dataclass(frozen=True, eq=False)
class Weight:
    """Strictly positive weight with its dual sigma = w^(1 - p') cached.

    Immutable: the dual can never go stale.
    """

    base: GridFn
    p: float
    dual: GridFn = field(init=False)

    def __post_init__(self):
        if not self.p > 1.0:
            raise ValueError("p must exceed 1")
        if not np.all(self.base.values > 0):
            raise ValueError("weight values must be strictly positive")
        with np.errstate(over="ignore"):
            sigma = self.base.values ** (1.0 - self.p_conj)
        if not (np.all(np.isfinite(sigma)) and np.all(sigma > 0)):
            raise ValueError("dual weight overflows float range; "
                             "weight too extreme for this p")
        object.__setattr__(self, "dual", GridFn(self.base.grid, sigma))

    @property
    def p_conj(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def grid(self):
        return self.base.grid


@dataclass(frozen=True)
class Exponents:
    """The (p, alpha, q) triple; q is tied to p and alpha by 1/p - 1/q = alpha."""

    p: float
    alpha: float
    q: float

    def __post_init__(self):
        if not self.p > 1.0:
            raise ValueError("p must exceed 1")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError("alpha must lie in [0, 1)")
        if self.alpha == 0.0:
            if not math.isclose(self.q, self.p, rel_tol=1e-12):
                raise ValueError("alpha = 0 requires q = p")
        else:
            if not self.p < 1.0 / self.alpha:
                raise ValueError("need p < 1/alpha")
            q_expected = self.p / (1.0 - self.alpha * self.p)
            if not math.isclose(self.q, q_expected, rel_tol=1e-9):
                raise ValueError("q must equal p / (1 - alpha p)")

    @classmethod
    def from_p_alpha(cls, p: float, alpha: float = 0.0) -> "Exponents":
        if alpha == 0.0:
            return cls(p, 0.0, p)
        return cls(p, alpha, p / (1.0 - alpha * p))

    @property
    def p_conj(self) -> float:
        return self.p / (self.p - 1.0)

    @property
    def q_conj(self) -> float:
        return self.q / (self.q - 1.0)


def _measure_weights(w) -> np.ndarray:
    """Accept a Weight or a plain GridFn as the measure density."""
    if isinstance(w, Weight):
        return w.base.values
    if isinstance(w, GridFn):
        return w.values
    raise TypeError("weight must be a Weight or GridFn")


def _cell_measures(f: GridFn) -> np.ndarray:
    if f.is_2d():
        return f.grid.areas.reshape(-1)
    return f.grid.widths


def integrate(f: GridFn, lo: int = 0, hi: int | None = None) -> float:
    """Integral of f over the half-open cell-index range [lo, hi).

    Exact for piecewise-constant f.  1D only; 2D code integrates through
    prefix sums directly.
    """
    if f.is_2d():
        raise TypeError("integrate operates on 1D functions")
    n = f.grid.n
    if hi is None:
        hi = n
    if not (0 <= lo <= hi <= n):
        raise IndexError(f"cell range [{lo}, {hi}) out of bounds for n={n}")
    return float(np.dot(f.values[lo:hi], f.grid.widths[lo:hi]))


def lp_norm(f: GridFn, w, p: float) -> float:
    """(sum |f_i|^p w_i |cell_i|)^(1/p), computed in the log domain so that
    sweeps with |f| ~ 1e150 and w ~ 1e-150 stay finite."""
    if p < 1.0:
        raise ValueError("p must be at least 1")
    wv = _measure_weights(w)
    meas = _cell_measures(f)
    av = np.abs(f.values)
    mask = (av > 0) & (wv > 0) & (meas > 0)
    if not mask.any():
        return 0.0
    logs = p * np.log(av[mask]) + np.log(wv[mask]) + np.log(meas[mask])
    return stable_power_sum(logs, p)


def weak_lp_norm(f: GridFn, w, p: float) -> float:
    """sup over lambda > 0 of lambda * w({|f| >= lambda})^(1/p).

    For piecewise-constant f the supremum over all thresholds is attained
    at one of the distinct |f| values (approached from below), so scanning
    those values is exact.
    """
    if p < 1.0:
        raise ValueError("p must be at least 1")
    wv = _measure_weights(w)
    meas = _cell_measures(f)
    av = np.abs(f.values)
    order = np.argsort(-av, kind="stable")
    av_sorted = av[order]
    mass = np.cumsum((wv * meas)[order])
    best = 0.0
    # last occurrence of each distinct level gives the full {|f| >= level} mass
    keep = np.flatnonzero(np.diff(av_sorted) != 0)
    idx = np.concatenate([keep, [len(av_sorted) - 1]])
    for i in idx:
        lam = av_sorted[i]
        if lam <= 0:
            continue
        cand = lam * mass[i] ** (1.0 / p)
        if cand > best:
            best = cand
    return best


def _power_cell_integrals(X: np.ndarray, gamma: float, center: float,
                          support: tuple[float, float] | None) -> np.ndarray:
    lo = X[:-1]
    hi = X[1:]
    if support is not None:
        s0, s1 = support
        lo = np.clip(lo, s0, s1)
        hi = np.clip(hi, s0, s1)
    g1 = gamma + 1.0
    out = np.zeros(len(lo))
    live = hi > lo
    right = live & (lo >= center)
    left = live & (hi <= center)
    straddle = live & ~right & ~left
    if right.any():
        out[right] = pow_diff(lo[right] - center, hi[right] - center, g1) / g1
    if left.any():
        out[left] = pow_diff(center - hi[left], center - lo[left], g1) / g1
    if straddle.any():
        out[straddle] = ((center - lo[straddle]) ** g1
                         + (hi[straddle] - center) ** g1) / g1
    return out


def power_density(grid: Grid1D, gamma: float, center: float,
                  support: tuple[float, float] | None = None) -> GridFn:
    """Exact cell averages of |x - center|^gamma (optionally cut to a support
    interval), via the antiderivative |x - center|^(gamma+1)/(gamma+1).

    Cell averages rather than midpoint samples, so grid integrals of the
    density agree with the analytic integral on every cell-aligned range.
    """
    if gamma <= -1.0 and grid.a <= center <= grid.b:
        raise ValueError("gamma <= -1 is not locally integrable at an "
                         "interior center")
    X = grid.boundaries
    vals = _power_cell_integrals(X, gamma, center, support) / grid.widths
    return GridFn(grid, vals)


def power_weight(grid: Grid1D, gamma: float, center: float) -> GridFn:
    """Cell-averaged |x - center|^gamma on the whole grid."""
    return power_density(grid, gamma, center)
