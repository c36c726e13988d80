"""One-dimensional operators: one-sided maximal, one-sided fractional
maximal, one-sided fractional integrals, and the Hilbert transform.

Anchoring conventions (each choice is exact for its operator):

* one-sided maximal operators are evaluated at cell boundaries -- the left
  boundary for the rightward (+) operator, the right boundary for the
  leftward (-) one.  For piecewise-constant |f| the supremum over window
  widths h > 0 is attained at a cell-aligned width, so the finite scan is
  the exact value at the anchor.
* potentials and the Hilbert transform are evaluated at cell centers by
  default; every cell contributes through the closed-form antiderivative
  of its kernel, never through point samples.

At the right edge of the domain the (+) window family degenerates to the
single-cell window, so the operator value falls back to |f_i| there; no
extension of f beyond the grid is assumed.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ._numerics import pow_diff
from .grid import GridFn

_CHUNK = 256


def _abs_prefix(f: GridFn) -> tuple[np.ndarray, np.ndarray]:
    X = f.grid.boundaries
    P = np.concatenate([[0.0], np.cumsum(np.abs(f.values) * f.grid.widths)])
    return X, P


def _mirror(f: GridFn) -> GridFn:
    from .grid import Grid1D
    g = f.grid
    Xm = np.ascontiguousarray(-g.boundaries[::-1])
    gm = Grid1D(float(Xm[0]), float(Xm[-1]), g.n, "custom", Xm)
    return GridFn(gm, f.values[::-1])


def _cross_keeps(P, X, k: int, b: int, c: int) -> bool:
    """True iff vertex b stays on the upper hull when k is prepended.

    Float cross product with an exact Fraction fallback on near-ties, so the
    hull never sheds the true tangent vertex.
    """
    t1 = (X[b] - X[k]) * (P[c] - P[k])
    t2 = (P[b] - P[k]) * (X[c] - X[k])
    cr = t1 - t2
    scale = abs(t1) + abs(t2)
    if abs(cr) <= 1e-14 * scale:
        cr_exact = ((Fraction(X[b]) - Fraction(X[k])) * (Fraction(P[c]) - Fraction(P[k]))
                    - (Fraction(P[b]) - Fraction(P[k])) * (Fraction(X[c]) - Fraction(X[k])))
        return cr_exact < 0
    return cr < 0.0


def _maximal_plus_hull(vals: np.ndarray, X: np.ndarray) -> np.ndarray:
    n = len(vals)
    P = np.concatenate([[0.0], np.cumsum(np.abs(vals) * (X[1:] - X[:-1]))])
    out = np.empty(n)
    hull: list[int] = []  # upper-hull vertex indices, stored in decreasing X
    for i in range(n - 1, -1, -1):
        k = i + 1
        while len(hull) >= 2 and not _cross_keeps(P, X, k, hull[-1], hull[-2]):
            hull.pop()
        hull.append(k)
        m = len(hull)

        def g(t: int) -> float:
            j = hull[m - 1 - t]
            return (P[j] - P[i]) / (X[j] - X[i])

        # slopes from (X_i, P_i) to hull vertices (in increasing X) are
        # unimodal; the predicate "segment slope <= query slope" is monotone
        lo, hi = 0, m - 1
        while lo < hi:
            mid = (lo + hi) // 2
            j1 = hull[m - 1 - mid]
            j2 = hull[m - 2 - mid]
            if (P[j2] - P[j1]) / (X[j2] - X[j1]) <= g(mid):
                hi = mid
            else:
                lo = mid + 1
        out[i] = max(g(t) for t in range(max(0, lo - 1), min(m - 1, lo + 1) + 1))
    return out


def _maximal_plus_brute(vals: np.ndarray, X: np.ndarray, alpha: float) -> np.ndarray:
    n = len(vals)
    P = np.concatenate([[0.0], np.cumsum(np.abs(vals) * (X[1:] - X[:-1]))])
    out = np.empty(n)
    jj = np.arange(n + 1)[None, :]
    for s in range(0, n, _CHUNK):
        e = min(s + _CHUNK, n)
        idx = np.arange(s, e)
        M = P[None, :] - P[idx, None]
        H = X[None, :] - X[idx, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            V = M / H ** (1.0 - alpha) if alpha != 0.0 else M / H
        V[jj <= idx[:, None]] = -np.inf
        out[s:e] = V.max(axis=1)
    return out


def maximal_oneside(f: GridFn, side: str, algo: str = "hull") -> GridFn:
    """One-sided Hardy-Littlewood maximal function of |f|.

    side 'plus': at the left boundary of each cell, sup of averages over
    rightward windows; 'minus' mirrored.  algo 'brute' is the O(n^2)
    reference scan, 'hull' the O(n log n) convex-hull sweep; they agree
    exactly (same slope arithmetic per candidate window).
    """
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    if algo not in ("hull", "brute"):
        raise ValueError("algo must be 'hull' or 'brute'")
    if side == "minus":
        fm = _mirror(f)
        vals = maximal_oneside(fm, "plus", algo).values[::-1]
        return GridFn(f.grid, vals)
    X = f.grid.boundaries
    if algo == "hull":
        out = _maximal_plus_hull(f.values, X)
    else:
        out = _maximal_plus_brute(f.values, X, 0.0)
    return GridFn(f.grid, out)


def frac_maximal_oneside(f: GridFn, alpha: float, side: str) -> GridFn:
    """One-sided fractional maximal function: windows averaged against
    h^(1-alpha).  alpha = 0 recovers maximal_oneside on the same windows."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    if side == "minus":
        fm = _mirror(f)
        vals = frac_maximal_oneside(fm, alpha, "plus").values[::-1]
        return GridFn(f.grid, vals)
    if side != "plus":
        raise ValueError("side must be 'plus' or 'minus'")
    out = _maximal_plus_brute(f.values, f.grid.boundaries, alpha)
    return GridFn(f.grid, out)


def maximal_twoside(f: GridFn) -> GridFn:
    """Maximal function over cell-aligned windows containing each cell."""
    X, P = _abs_prefix(f)
    return GridFn(f.grid, windowed_max_average(P, X))


def windowed_max_average(P: np.ndarray, X: np.ndarray,
                         block: int = 512) -> np.ndarray:
    """out[i] = max over a <= i < b of (P[b]-P[a])/(X[b]-X[a]).

    Suffix-max over window ends, then running prefix-max over starts,
    processed in row blocks to bound memory at O(block * n).
    """
    n = len(X) - 1
    out = np.full(n, -np.inf)
    cols = np.arange(n + 1)[None, :]
    for s in range(0, n, block):
        e = min(s + block, n)
        idx = np.arange(s, e)
        M = P[None, :] - P[idx, None]
        H = X[None, :] - X[idx, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            S = M / H
        S[cols <= idx[:, None]] = -np.inf
        # G[r, b-1] = max over ends >= b of S[r, :]; shift so column i means
        # "window end past cell i"
        G = np.maximum.accumulate(S[:, ::-1], axis=1)[:, ::-1][:, 1:]
        # row r only covers cells i >= idx[r]
        G[cols[:, : n] < idx[:, None]] = -np.inf
        np.maximum(out, np.maximum.accumulate(G, axis=0)[-1], out=out)
    return out


def potential_oneside_at(f: GridFn, alpha: float, kind: str,
                         points: np.ndarray) -> np.ndarray:
    """Weyl / Riemann-Liouville integral of f at arbitrary points, every cell
    contributing via the exact antiderivative of the kernel."""
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if kind not in ("weyl", "riemann_liouville"):
        raise ValueError("kind must be 'weyl' or 'riemann_liouville'")
    X = f.grid.boundaries
    l, r = X[:-1], X[1:]
    vals = f.values
    points = np.asarray(points, dtype=float)
    out = np.empty(len(points))
    for s in range(0, len(points), _CHUNK):
        e = min(s + _CHUNK, len(points))
        x = points[s:e, None]
        if kind == "weyl":
            a_ = np.maximum(l[None, :] - x, 0.0)
            b_ = np.maximum(r[None, :] - x, 0.0)
        else:
            a_ = np.maximum(x - r[None, :], 0.0)
            b_ = np.maximum(x - l[None, :], 0.0)
        K = np.where(b_ > a_, pow_diff(a_, b_, alpha), 0.0) / alpha
        out[s:e] = K @ vals
    return out


def potential_oneside(f: GridFn, alpha: float, kind: str) -> GridFn:
    """One-sided fractional integral evaluated at cell centers."""
    out = potential_oneside_at(f, alpha, kind, f.grid.centers)
    return GridFn(f.grid, out)


def hilbert_at(f: GridFn, points: np.ndarray) -> np.ndarray:
    """Principal-value Hilbert transform at arbitrary interior points.

    Off-cell contributions use log1p of the relative gap (no cancellation
    across the grid's huge dynamic range); the cell containing the point
    contributes its principal value ln((x-l)/(r-x)).
    """
    X = f.grid.boundaries
    l, r = X[:-1], X[1:]
    w = r - l
    vals = f.values
    points = np.asarray(points, dtype=float)
    out = np.empty(len(points))
    for s in range(0, len(points), _CHUNK):
        e = min(s + _CHUNK, len(points))
        x = points[s:e, None]
        inside = (x > l[None, :]) & (x < r[None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            K = np.log1p(w[None, :] / (x - r[None, :]))
            K_self = np.log((x - l[None, :]) / (r[None, :] - x))
        K = np.where(inside, K_self, K)
        out[s:e] = K @ vals
    return out


def hilbert(f: GridFn) -> GridFn:
    """Hilbert transform at cell centers; the principal value over the own
    cell vanishes there, so the self contribution is exactly zero."""
    X = f.grid.boundaries
    l, r = X[:-1], X[1:]
    w = r - l
    vals = f.values
    n = f.grid.n
    ctr = f.grid.centers
    out = np.empty(n)
    for s in range(0, n, _CHUNK):
        e = min(s + _CHUNK, n)
        x = ctr[s:e, None]
        with np.errstate(divide="ignore", invalid="ignore"):
            K = np.log1p(w[None, :] / (x - r[None, :]))
        K[np.arange(e - s), np.arange(s, e)] = 0.0
        out[s:e] = K @ vals
    return GridFn(f.grid, out)
