"""Weight characteristics and two-weight constants.

All suprema run over cell-aligned families, where each candidate value is
exact for the discretized (cell-constant) weight:

* two-sided characteristics: all cell-aligned intervals / rectangles;
* one-sided characteristics: anchor boundary x, equal-width adjacent
  windows (the common h); the window on the weight side is a whole number
  of cells, the opposite window has the same real width and its mass comes
  from linear interpolation of the exact prefix integral, which is itself
  exact for cell-constant densities.

Two normalizations coexist and are never interchanged: the one-sided
A_{p,q} characteristics carry no outer roots, while the strong and
uniform-axis A_{p,q} variants carry outer roots 1/q and 1/p'.

Tail integrals of the two-weight constants stop at the grid boundary; the
report's ``truncated`` flag records that.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ._numerics import pow_diff
from .grid import Exponents, Grid1D, Grid2D, GridFn, Weight, lp_norm
from .operators1d import frac_maximal_oneside, potential_oneside

_EMPTY = -1


@dataclass(frozen=True)
class CharacteristicReport:
    """Value of a characteristic plus the location attaining it.

    Witness fields are half-open cell-index ranges covering the attaining
    interval/rectangle (for one-sided kinds, the union of the two adjacent
    windows).  ``recheck`` re-evaluates the attaining candidate through the
    same arithmetic and must reproduce ``value`` exactly.
    """

    kind: str
    value: float
    p: float
    q: float
    alpha: float
    witness_lo_x: int
    witness_hi_x: int
    witness_lo_y: int = _EMPTY
    witness_hi_y: int = _EMPTY
    truncated: bool = False
    recheck: Callable[[], float] = field(default=lambda: float("nan"),
                                         repr=False, compare=False)


def _cover(X: np.ndarray, lo: float, hi: float) -> tuple[int, int]:
    """Cell-index range covering the real interval [lo, hi]."""
    i = int(np.searchsorted(X, lo, side="right")) - 1
    j = int(np.searchsorted(X, hi, side="left"))
    return max(i, 0), min(j, len(X) - 1)


def _pow(base, e: float):
    return base if e == 1.0 else base ** e


# ---------------------------------------------------------------------------
# generic 1D engines


def _interval_sup(uv: np.ndarray, vv: np.ndarray, X: np.ndarray,
                  ou: float, ov: float):
    """sup over cell-aligned intervals of (avg u)^ou (avg v)^ov."""
    n = len(uv)
    w = X[1:] - X[:-1]
    Pu = np.concatenate([[0.0], np.cumsum(uv * w)])
    Pv = np.concatenate([[0.0], np.cumsum(vv * w)])
    def length_vals(ln: int) -> np.ndarray:
        i = np.arange(0, n - ln + 1)
        W = X[i + ln] - X[i]
        return _pow((Pu[i + ln] - Pu[i]) / W, ou) * _pow((Pv[i + ln] - Pv[i]) / W, ov)

    best, bi, bl = -np.inf, 0, 1
    for ln in range(1, n + 1):
        vals = length_vals(ln)
        k = int(np.argmax(vals))
        v = float(vals[k])
        if v > best or (v == best and (k, ln) < (bi, bl)):
            best, bi, bl = v, k, ln

    def recheck(i=bi, ln=bl):
        # same full-length vector evaluation, so SIMD pow lanes match
        return float(length_vals(ln)[i])

    return best, (bi, bi + bl), recheck


def _anchored_sup(uv: np.ndarray, vv: np.ndarray, X: np.ndarray,
                  ou: float, ov: float, side: str):
    """sup over (anchor boundary i, window of m cells on the u side) of
    (avg u)^ou (avg v)^ov, the v window having the same real width on the
    opposite side of the anchor.

    side 'plus': u to the left of the anchor, v to the right (as in the
    A_p^+ display); 'minus' mirrored.
    """
    n = len(uv)
    w = X[1:] - X[:-1]
    Pu = np.concatenate([[0.0], np.cumsum(uv * w)])
    Pv = np.concatenate([[0.0], np.cumsum(vv * w)])
    A, B = X[0], X[-1]

    def anchor_vals(i: int):
        x = X[i]
        if side == "plus":
            # u over the m cells [i-m .. i-1]; h ascending with m
            h = x - X[i - 1::-1]
            h = h[h <= B - x]
            if h.size == 0:
                return None, None
            mu = Pu[i] - np.interp(x - h, X, Pu)
            mv = np.interp(x + h, X, Pv) - Pv[i]
        else:
            h = X[i + 1:] - x
            h = h[h <= x - A]
            if h.size == 0:
                return None, None
            mu = np.interp(x + h, X, Pu) - Pu[i]
            mv = Pv[i] - np.interp(x - h, X, Pv)
        return h, _pow(mu / h, ou) * _pow(mv / h, ov)

    best, barg = -np.inf, None
    for i in range(1, n):
        h, vals = anchor_vals(i)
        if vals is None:
            continue
        k = int(np.argmax(vals))
        v = float(vals[k])
        if v > best or (v == best and barg is not None and (i, k) < barg[:2]):
            best, barg = v, (i, k, float(h[k]))

    i, kbest, h = barg

    def recheck(i=i, k=kbest):
        # same full-length vector evaluation, so SIMD pow lanes match
        return float(anchor_vals(i)[1][k])

    x = X[i]
    lo, hi = _cover(X, x - h, x + h)
    return best, (lo, hi), recheck


# ---------------------------------------------------------------------------
# generic 2D engines


def _prefix2(vals2: np.ndarray, gx: Grid1D, gy: Grid1D) -> np.ndarray:
    masses = vals2 * np.outer(gx.widths, gy.widths)
    P = np.zeros((gx.n + 1, gy.n + 1))
    P[1:, 1:] = np.cumsum(np.cumsum(masses, axis=0), axis=1)
    return P


def _interp2(P: np.ndarray, X: np.ndarray, Y: np.ndarray,
             xq: np.ndarray, yq: np.ndarray) -> np.ndarray:
    """Bilinear interpolation of the 2D prefix integral on the outer grid
    xq x yq; exact because the prefix of a cell-constant density is
    piecewise bilinear."""
    xq = np.atleast_1d(np.asarray(xq, dtype=float))
    yq = np.atleast_1d(np.asarray(yq, dtype=float))
    kx = np.clip(np.searchsorted(X, xq, side="right") - 1, 0, len(X) - 2)
    ky = np.clip(np.searchsorted(Y, yq, side="right") - 1, 0, len(Y) - 2)
    fx = (xq - X[kx]) / (X[kx + 1] - X[kx])
    fy = (yq - Y[ky]) / (Y[ky + 1] - Y[ky])
    fx = fx[:, None]
    fy = fy[None, :]
    kxc = kx[:, None]
    kyc = ky[None, :]
    return ((1 - fx) * (1 - fy) * P[kxc, kyc] + fx * (1 - fy) * P[kxc + 1, kyc]
            + (1 - fx) * fy * P[kxc, kyc + 1] + fx * fy * P[kxc + 1, kyc + 1])


def _rect_mass(P, X, Y, x0, x1, y0, y1) -> np.ndarray:
    """Mass over [x0, x1] x [y0, y1]; arguments broadcast as outer grids."""
    return (_interp2(P, X, Y, x1, y1) - _interp2(P, X, Y, x0, y1)
            - _interp2(P, X, Y, x1, y0) + _interp2(P, X, Y, x0, y0))


def _rect_sup(uv2: np.ndarray, vv2: np.ndarray, gx: Grid1D, gy: Grid1D,
              ou: float, ov: float):
    """sup over cell-aligned rectangles of (avg u)^ou (avg v)^ov."""
    X, Y = gx.boundaries, gy.boundaries
    Pu = _prefix2(uv2, gx, gy)
    Pv = _prefix2(vv2, gx, gy)
    ny = gy.n
    j1g, j2g = np.meshgrid(np.arange(ny + 1), np.arange(ny + 1), indexing="ij")
    upper = j2g > j1g
    Hy = np.where(upper, Y[j2g] - Y[j1g], np.inf)
    def span_vals(i1: int, i2: int) -> np.ndarray:
        hx = X[i2] - X[i1]
        cu = Pu[i2] - Pu[i1]
        cv = Pv[i2] - Pv[i1]
        area = hx * Hy
        MU = (cu[j2g] - cu[j1g]) / area
        MV = (cv[j2g] - cv[j1g]) / area
        return np.where(upper, _pow(MU, ou) * _pow(MV, ov), -np.inf)

    best, barg = -np.inf, None
    for i1 in range(gx.n):
        for i2 in range(i1 + 1, gx.n + 1):
            vals = span_vals(i1, i2)
            k = int(np.argmax(vals))
            v = float(vals.flat[k])
            if v > best:
                j1, j2 = np.unravel_index(k, vals.shape)
                best, barg = v, (i1, i2, int(j1), int(j2))
    i1, i2, j1, j2 = barg

    def recheck(i1=i1, i2=i2, j1=j1, j2=j2):
        # same full-shape vector evaluation, so SIMD pow lanes match
        return float(span_vals(i1, i2)[j1, j2])

    return best, (i1, i2, j1, j2), recheck



def _anchored_rect_sup(uv2: np.ndarray, vv2: np.ndarray, gx: Grid1D, gy: Grid1D,
                       ou: float, ov: float, side: str):
    """sup over anchor corners and per-axis widths (h1, h2) of
    (avg u over the anchored rectangle)^ou (avg v over the opposite one)^ov.

    side 'plus': u rectangle at the lower-left of the anchor, v at the
    upper-right (per-axis windows share h_i); 'minus' mirrored.  Candidate
    h_i are cell-aligned on the u side; the v rectangle's far corner falls
    between boundaries and its mass comes from the bilinear prefix, exact
    for cell-constant weights.
    """
    X, Y = gx.boundaries, gy.boundaries
    Pu = _prefix2(uv2, gx, gy)
    Pv = _prefix2(vv2, gx, gy)

    def masses(x: float, y: float, h1: np.ndarray, h2: np.ndarray):
        xs, ys = np.full(1, x), np.full(1, y)
        if side == "plus":
            mu = _rect_mass(Pu, X, Y, x - h1, xs, y - h2, ys)
            mv = _rect_mass(Pv, X, Y, xs, x + h1, ys, y + h2)
        else:
            mu = _rect_mass(Pu, X, Y, xs, x + h1, ys, y + h2)
            mv = _rect_mass(Pv, X, Y, x - h1, xs, y - h2, ys)
        return mu, mv

    def widths_for(bnds: np.ndarray, b: int):
        x = bnds[b]
        h = (x - bnds[b - 1::-1]) if side == "plus" else (bnds[b + 1:] - x)
        return h[h <= min(bnds[-1] - x, x - bnds[0])]

    def anchor_vals(bi: int, bj: int):
        h1 = widths_for(X, bi)
        h2 = widths_for(Y, bj)
        if h1.size == 0 or h2.size == 0:
            return None, None, None
        mu, mv = masses(X[bi], Y[bj], h1, h2)
        area = np.outer(h1, h2)
        return h1, h2, _pow(mu / area, ou) * _pow(mv / area, ov)

    best, barg = -np.inf, None
    for bi in range(1, gx.n):
        for bj in range(1, gy.n):
            h1, h2, vals = anchor_vals(bi, bj)
            if vals is None:
                continue
            k = int(np.argmax(vals))
            v = float(vals.flat[k])
            if v > best:
                k1, k2 = np.unravel_index(k, vals.shape)
                best, barg = v, (bi, bj, int(k1), int(k2), float(h1[k1]), float(h2[k2]))

    bi, bj, k1b, k2b, h1b, h2b = barg

    def recheck(bi=bi, bj=bj, k1=k1b, k2=k2b):
        # same full-shape vector evaluation, so SIMD pow lanes match
        return float(anchor_vals(bi, bj)[2][k1, k2])

    x, y = X[bi], Y[bj]
    lox, hix = _cover(X, x - h1b, x + h1b)
    loy, hiy = _cover(Y, y - h2b, y + h2b)
    return best, (lox, hix, loy, hiy), recheck


# ---------------------------------------------------------------------------
# one-weight characteristics


def _with_p(w: Weight, p: float | None) -> Weight:
    if p is None or p == w.p:
        return w
    return Weight(w.base, p)


def ap(w: Weight, p: float | None = None) -> CharacteristicReport:
    """Muckenhoupt characteristic: sup over intervals of
    (avg w)(avg sigma)^(p-1)."""
    w = _with_p(w, p)
    g = w.grid
    if isinstance(g, Grid2D):
        raise TypeError("ap expects a 1D weight; use ap_strong in 2D")
    val, (lo, hi), recheck = _interval_sup(w.base.values, w.dual.values,
                                           g.boundaries, 1.0, w.p - 1.0)
    return CharacteristicReport("ap", val, w.p, w.p, 0.0, lo, hi,
                                recheck=recheck)


def ap_oneside(w: Weight, p: float | None = None, side: str = "plus") -> CharacteristicReport:
    """One-sided Muckenhoupt characteristic: w averaged behind the anchor,
    sigma ahead of it ('plus'), over equal-width adjacent windows."""
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    w = _with_p(w, p)
    g = w.grid
    val, (lo, hi), recheck = _anchored_sup(w.base.values, w.dual.values,
                                           g.boundaries, 1.0, w.p - 1.0, side)
    return CharacteristicReport(f"ap_{side}", val, w.p, w.p, 0.0, lo, hi,
                                recheck=recheck)


def apq_oneside(w: Weight, e: Exponents, side: str = "plus") -> CharacteristicReport:
    """One-sided A_{p,q} characteristic, no outer roots:
    (avg w^q)(avg w^{-p'})^{q/p'} over equal-width adjacent windows."""
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    g = w.grid
    base = w.base.values
    val, (lo, hi), recheck = _anchored_sup(base ** e.q, base ** (-e.p_conj),
                                           g.boundaries, 1.0, e.q / e.p_conj, side)
    return CharacteristicReport(f"apq_{side}", val, e.p, e.q, e.alpha, lo, hi,
                                recheck=recheck)


def ap_strong(w: Weight, p: float | None = None) -> CharacteristicReport:
    """Strong characteristic over axis-parallel rectangles:
    (avg w)(avg sigma)^(p-1)."""
    w = _with_p(w, p)
    g = w.grid
    if not isinstance(g, Grid2D):
        raise TypeError("ap_strong expects a 2D weight")
    u2 = w.base.values2d
    v2 = w.dual.values2d
    val, (i1, i2, j1, j2), recheck = _rect_sup(u2, v2, g.gx, g.gy, 1.0, w.p - 1.0)
    return CharacteristicReport("ap_strong", val, w.p, w.p, 0.0, i1, i2, j1, j2,
                                recheck=recheck)


def apq_strong(w: Weight, e: Exponents) -> CharacteristicReport:
    """Strong A_{p,q} characteristic over rectangles, with outer roots:
    (avg w^q)^{1/q} (avg w^{-p'})^{1/p'}."""
    g = w.grid
    if not isinstance(g, Grid2D):
        raise TypeError("apq_strong expects a 2D weight")
    base = w.base.values2d
    val, (i1, i2, j1, j2), recheck = _rect_sup(base ** e.q, base ** (-e.p_conj),
                                               g.gx, g.gy, 1.0 / e.q, 1.0 / e.p_conj)
    return CharacteristicReport("apq_strong", val, e.p, e.q, e.alpha,
                                i1, i2, j1, j2, recheck=recheck)


def ap_strong_oneside(w: Weight, p: float | None = None,
                      side: str = "plus") -> CharacteristicReport:
    """One-sided strong characteristic over anchored rectangle pairs,
    exponent (p-1) on the dual factor, no outer roots."""
    w = _with_p(w, p)
    g = w.grid
    if not isinstance(g, Grid2D):
        raise TypeError("ap_strong_oneside expects a 2D weight")
    val, wit, recheck = _anchored_rect_sup(w.base.values2d, w.dual.values2d,
                                           g.gx, g.gy, 1.0, w.p - 1.0, side)
    return CharacteristicReport(f"ap_strong_{side}", val, w.p, w.p, 0.0, *wit,
                                recheck=recheck)


def apq_strong_oneside(w: Weight, e: Exponents, side: str = "plus") -> CharacteristicReport:
    """One-sided strong A_{p,q} characteristic over anchored rectangle
    pairs, with outer roots 1/q and 1/p'."""
    g = w.grid
    if not isinstance(g, Grid2D):
        raise TypeError("apq_strong_oneside expects a 2D weight")
    base = w.base.values2d
    val, wit, recheck = _anchored_rect_sup(base ** e.q, base ** (-e.p_conj),
                                           g.gx, g.gy, 1.0 / e.q, 1.0 / e.p_conj, side)
    return CharacteristicReport(f"apq_strong_{side}", val, e.p, e.q, e.alpha,
                                *wit, recheck=recheck)


def _slices(w: Weight, axis: str):
    """Yield (slice_index, base_slice, dual_slice, slice_grid, other_count)."""
    g = w.grid
    if not isinstance(g, Grid2D):
        raise TypeError("uniform-axis characteristics expect a 2D weight")
    if axis not in ("x", "y"):
        raise ValueError("axis must be 'x' or 'y'")
    b2 = w.base.values2d
    d2 = w.dual.values2d
    if axis == "x":
        for j in range(g.gy.n):
            yield j, b2[:, j], d2[:, j], g.gx
    else:
        for i in range(g.gx.n):
            yield i, b2[i, :], d2[i, :], g.gy


def ap_uniform_axis(w: Weight, p: float | None = None, axis: str = "x",
                    variant: str = "twosided") -> CharacteristicReport:
    """A_p characteristic in one variable, uniformly over the other: the
    essential sup over slices is the max over the finitely many rows or
    columns.  variant 'twosided' | 'plus' | 'minus'."""
    w = _with_p(w, p)
    best, bslice, bwit, brecheck = -np.inf, -1, (0, 0), None
    for k, bu, bv, g1 in _slices(w, axis):
        X = g1.boundaries
        if variant == "twosided":
            val, wit, recheck = _interval_sup(bu, bv, X, 1.0, w.p - 1.0)
        elif variant in ("plus", "minus"):
            val, wit, recheck = _anchored_sup(bu, bv, X, 1.0, w.p - 1.0, variant)
        else:
            raise ValueError("variant must be 'twosided', 'plus', or 'minus'")
        if val > best:
            best, bslice, bwit, brecheck = val, k, wit, recheck
    suffix = "" if variant == "twosided" else f"_{variant}"
    if axis == "x":
        rep = CharacteristicReport(f"ap_x{suffix}", best, w.p, w.p, 0.0,
                                   bwit[0], bwit[1], bslice, bslice + 1,
                                   recheck=brecheck)
    else:
        rep = CharacteristicReport(f"ap_y{suffix}", best, w.p, w.p, 0.0,
                                   bslice, bslice + 1, bwit[0], bwit[1],
                                   recheck=brecheck)
    return rep


def apq_uniform_axis(w: Weight, e: Exponents, axis: str = "x",
                     variant: str = "twosided") -> CharacteristicReport:
    """A_{p,q} characteristic in one variable uniformly over the other,
    with outer roots 1/q and 1/p'."""
    best, bslice, bwit, brecheck = -np.inf, -1, (0, 0), None
    for k, bu, bv, g1 in _slices(w, axis):
        X = g1.boundaries
        uq = bu ** e.q
        vmp = bu ** (-e.p_conj)
        if variant == "twosided":
            val, wit, recheck = _interval_sup(uq, vmp, X, 1.0 / e.q, 1.0 / e.p_conj)
        elif variant in ("plus", "minus"):
            val, wit, recheck = _anchored_sup(uq, vmp, X, 1.0 / e.q,
                                              1.0 / e.p_conj, variant)
        else:
            raise ValueError("variant must be 'twosided', 'plus', or 'minus'")
        if val > best:
            best, bslice, bwit, brecheck = val, k, wit, recheck
    suffix = "" if variant == "twosided" else f"_{variant}"
    if axis == "x":
        return CharacteristicReport(f"apq_x{suffix}", best, e.p, e.q, e.alpha,
                                    bwit[0], bwit[1], bslice, bslice + 1,
                                    recheck=brecheck)
    return CharacteristicReport(f"apq_y{suffix}", best, e.p, e.q, e.alpha,
                                bslice, bslice + 1, bwit[0], bwit[1],
                                recheck=brecheck)


# ---------------------------------------------------------------------------
# two-weight constants


def _measure_values(v) -> np.ndarray:
    if isinstance(v, Weight):
        return v.base.values
    if isinstance(v, GridFn):
        return v.values
    raise TypeError("expected a Weight or GridFn")


def _glo_like(loc_vals: np.ndarray, tail_vals: np.ndarray, X: np.ndarray,
              tail_side: str, kernel_exp: float, out_loc: float, out_tail: float):
    """sup over (anchor a, radius h) of
    (integral of loc over [a-h, a+h])^out_loc * (kernel tail)^out_tail.

    The tail integrates tail_vals against |t - a|^kernel_exp from a+h to the
    right grid edge ('right') or from the left edge to a-h ('left'), each
    cell through the exact antiderivative.  Radii are aligned with the tail
    start so the tail needs no partial cell; the local window's far end uses
    the interpolated prefix.
    """
    k1 = kernel_exp + 1.0
    if k1 >= 0.0:
        raise ValueError("tail kernel exponent must be below -1 "
                         "(divergent tail otherwise)")
    n = len(loc_vals)
    w = X[1:] - X[:-1]
    Ploc = np.concatenate([[0.0], np.cumsum(loc_vals * w)])

    def anchor_vals(ia: int):
        a = X[ia]
        if tail_side == "right":
            if ia >= n - 1:
                return None, None, None
            edges = X[ia + 1:] - a
            terms = tail_vals[ia + 1:] * pow_diff(edges[:-1], edges[1:], k1) / k1
            tail = np.concatenate([np.cumsum(terms[::-1])[::-1], [0.0]])
            ks = np.arange(ia + 1, n)
            h = X[ks] - a
            loc = Ploc[ks] - np.interp(a - h, X, Ploc)
            tl = tail[: len(ks)]
        else:
            if ia <= 1:
                return None, None, None
            edges = a - X[:ia]
            terms = tail_vals[: ia - 1] * pow_diff(edges[1:], edges[:-1], k1) / k1
            tail = np.concatenate([[0.0], np.cumsum(terms)])
            ks = np.arange(1, ia)
            h = a - X[ks]
            loc = np.interp(a + h, X, Ploc) - Ploc[ks]
            tl = tail[1: len(ks) + 1]
        vals = _pow(loc, out_loc) * _pow(tl, out_tail)
        return h, np.where(np.isfinite(vals), vals, -np.inf), ks

    best, barg = 0.0, None
    for ia in range(n + 1):
        h, vals, ks = anchor_vals(ia)
        if vals is None:
            continue
        k = int(np.argmax(vals))
        v = float(vals[k])
        if v > best:
            best, barg = v, (ia, k, float(h[k]))

    if barg is None:
        def recheck_zero():
            return 0.0
        return 0.0, (0, n), recheck_zero

    ia, kb, hb = barg

    def recheck(ia=ia, k=kb):
        # same full-length vector evaluation, so SIMD pow lanes match
        return float(anchor_vals(ia)[1][k])

    a = X[ia]
    lo, hi = _cover(X, a - hb, a + hb)
    return best, (lo, hi), recheck


def _require_pq(e: Exponents):
    if not e.p < e.q:
        raise ValueError("two-weight tail constants need p < q")


def glo_constant(v, w: Weight, e: Exponents, side: str = "plus") -> CharacteristicReport:
    """Two-weight tail constant for the weak-type bound of the one-sided
    potentials: local integral of v around the anchor against the kernel
    tail of sigma_w = w^(1-p').  The infinite tail is truncated at the grid
    boundary; the report records that.
    """
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    _require_pq(e)
    w = _with_p(w, e.p)
    X = w.grid.boundaries
    vv = _measure_values(v)
    tail_side = "right" if side == "plus" else "left"
    val, (lo, hi), recheck = _glo_like(vv, w.dual.values, X, tail_side,
                                       (e.alpha - 1.0) * e.p_conj,
                                       1.0 / e.q, 1.0 / e.p_conj)
    return CharacteristicReport(f"glo_{side}", val, e.p, e.q, e.alpha, lo, hi,
                                truncated=True, recheck=recheck)


def gk_constant(v, w: Weight, e: Exponents, side: str = "plus") -> CharacteristicReport:
    """Two-weight tail constant for the strong-type bound: local integral of
    sigma_w around the anchor against the kernel tail of v.  Same structure
    as the weak-type constant with the roles of the local window and the
    kernel tail swapped."""
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    _require_pq(e)
    w = _with_p(w, e.p)
    X = w.grid.boundaries
    vv = _measure_values(v)
    tail_side = "left" if side == "plus" else "right"
    val, (lo, hi), recheck = _glo_like(w.dual.values, vv, X, tail_side,
                                       -(1.0 - e.alpha) * e.q,
                                       1.0 / e.p_conj, 1.0 / e.q)
    return CharacteristicReport(f"gk_{side}", val, e.p, e.q, e.alpha, lo, hi,
                                truncated=True, recheck=recheck)


def sawyer_mt_constant(v, w: Weight, e: Exponents, side: str = "plus") -> CharacteristicReport:
    """Sawyer-type testing constant: the one-sided fractional maximal
    operator applied to sigma * chi_I, measured in L^q_v, against
    sigma(I)^(1/p), sup over cell-aligned intervals.  O(n^3)-ish with the
    per-interval operator scan: small grids only."""
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    w = _with_p(w, e.p)
    g = w.grid
    widths = g.widths
    sigma = w.dual.values
    vv = _measure_values(v)
    vfn = GridFn(g, vv)
    n = g.n
    sig_pref = np.concatenate([[0.0], np.cumsum(sigma * widths)])
    best, barg = 0.0, None
    for i in range(n):
        for j in range(i + 1, n + 1):
            den = (sig_pref[j] - sig_pref[i]) ** (1.0 / e.p)
            if den == 0.0:
                continue
            gv = np.zeros(n)
            gv[i:j] = sigma[i:j]
            T = frac_maximal_oneside(GridFn(g, gv), e.alpha, side)
            num = lp_norm(T, vfn, e.q)
            val = num / den
            if val > best:
                best, barg = val, (i, j)
    if barg is None:
        barg = (0, n)

    def recheck(i=barg[0], j=barg[1]):
        den = (sig_pref[j] - sig_pref[i]) ** (1.0 / e.p)
        if den == 0.0:
            return 0.0
        gv = np.zeros(n)
        gv[i:j] = sigma[i:j]
        T = frac_maximal_oneside(GridFn(g, gv), e.alpha, side)
        return lp_norm(T, vfn, e.q) / den

    return CharacteristicReport(f"mt_{side}", best, e.p, e.q, e.alpha,
                                barg[0], barg[1], truncated=True, recheck=recheck)


def lorente_lt_constant(v, w: Weight, e: Exponents, op: str = "weyl") -> CharacteristicReport:
    """Testing constant for the weak-type potential bound: the adjoint
    potential applied to v * chi_I, measured in L^{p'}_{sigma_w}, against
    v(I)^(1/q').  op names the potential being tested; its adjoint is the
    mirrored kernel."""
    if op not in ("weyl", "riemann_liouville"):
        raise ValueError("op must be 'weyl' or 'riemann_liouville'")
    adjoint = "riemann_liouville" if op == "weyl" else "weyl"
    w = _with_p(w, e.p)
    g = w.grid
    widths = g.widths
    vv = _measure_values(v)
    n = g.n
    v_pref = np.concatenate([[0.0], np.cumsum(vv * widths)])
    sig_fn = w.dual
    best, barg = 0.0, None
    for i in range(n):
        for j in range(i + 1, n + 1):
            vmass = v_pref[j] - v_pref[i]
            if vmass == 0.0:
                continue
            den = vmass ** (1.0 / e.q_conj)
            gv = np.zeros(n)
            gv[i:j] = vv[i:j]
            T = potential_oneside(GridFn(g, gv), e.alpha, adjoint)
            val = lp_norm(T, sig_fn, e.p_conj) / den
            if val > best:
                best, barg = val, (i, j)
    if barg is None:
        barg = (0, n)

    def recheck(i=barg[0], j=barg[1]):
        vmass = v_pref[j] - v_pref[i]
        if vmass == 0.0:
            return 0.0
        gv = np.zeros(n)
        gv[i:j] = vv[i:j]
        T = potential_oneside(GridFn(g, gv), e.alpha, adjoint)
        return lp_norm(T, sig_fn, e.p_conj) / vmass ** (1.0 / e.q_conj)

    return CharacteristicReport(f"lt_{op}", best, e.p, e.q, e.alpha,
                                barg[0], barg[1], truncated=True, recheck=recheck)


# ---------------------------------------------------------------------------
# closed-form power-weight bounds


@dataclass(frozen=True)
class PowerWeightBounds:
    """Explicit constants bounding the characteristics of |x|^gamma."""

    gamma: float
    p: float
    b: float
    d: float
    c_gamma: float
    big_gamma: float
    big_g: float
    ap_upper: float


def closed_form_power_bounds(gamma: float, p: float) -> PowerWeightBounds:
    """Explicit bounds for the power weight |x|^gamma, -1 < gamma < p-1:
    the splitting constants b, d, their case combination, the two
    axis-characteristic bounds, and the closed-form A_p bound
    max{2^|gamma|, 4^p / ((gamma+1)(gamma(1-p')+1)^(p-1))}."""
    if not -1.0 < gamma < p - 1.0:
        raise ValueError("need -1 < gamma < p - 1")
    pc = p / (p - 1.0)
    b = max(2.0 ** (gamma / 2.0), 1.0)
    d = max(2.0 ** (-gamma / 2.0 - p + 1.0), 1.0)
    c_gamma = b if gamma >= 0.0 else d
    core = gamma * (1.0 - pc) + 1.0
    common = (gamma + 1.0) ** -1.0 * core ** (1.0 - p) + 1.0
    shape = ((4.0 / 3.0) ** 2 + 1.0) ** (gamma / 2.0) * (2.0 / 3.0) ** gamma
    shape_neg = ((4.0 / 3.0) ** 2 + 1.0) ** (-gamma / 2.0) * (2.0 / 3.0) ** gamma
    d0 = max(2.0 ** (1.0 - p), 1.0)
    big_gamma = max(shape, b * 4.0 ** p * common)
    big_g = max(shape_neg, d0 * d * 4.0 ** p * common)
    ap_upper = max(2.0 ** abs(gamma),
                   4.0 ** p / ((gamma + 1.0) * core ** (p - 1.0)))
    return PowerWeightBounds(gamma, p, b, d, c_gamma, big_gamma, big_g, ap_upper)
