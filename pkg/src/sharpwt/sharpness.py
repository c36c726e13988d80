"""Experiment engine: extremal power families, epsilon sweeps, log-log fits.

Each catalog experiment pins an operator, an extremal weight/function pair
(pure powers of the distance to the singular point), the characteristic
feeding the x-column, and the exponent the underlying estimate predicts.
A sweep computes one row per epsilon and fits log(ratio) against
log(characteristic) by ordinary least squares.

All families are placed with their singular point at the origin on [-1, 1]
(translating the constructions that blow up at 1), because float spacing
near 0 is dense enough for the boundary layers the sweeps must resolve;
near any other point the grid cannot descend below ~1e-16 relative.  The
rightward (+) families live on (-1, 0), the leftward ones on (0, 1).

2D experiments run through exact separability: product weights and
separable test functions reduce every 2D norm and characteristic to the
square of a 1D factor; the O(n^4) rectangle oracles validate that
factorization on coarse grids in the test suite.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._numerics import worker_count
from .characteristics import ap, ap_oneside, apq_oneside
from .grid import (Exponents, GridFn, Weight, interior_graded_grid, lp_norm,
                   power_density, power_weight, ratio_for_min_width,
                   weak_lp_norm)
from .operators1d import (frac_maximal_oneside, hilbert, maximal_oneside,
                          maximal_twoside, potential_oneside)

DEFAULT_EPS = (0.2, 0.1, 0.05, 0.025)
DEFAULT_N = 2 ** 14


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r2: float


def fit_loglog(xs, ys) -> FitResult:
    """Ordinary least squares on (ln x, ln y)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if len(xs) < 2 or len(xs) != len(ys):
        raise ValueError("need at least two matched points")
    if not (np.all(xs > 0) and np.all(ys > 0)):
        raise ValueError("log-log fit needs positive data")
    lx, ly = np.log(xs), np.log(ys)
    mx, my = lx.mean(), ly.mean()
    sxx = float(((lx - mx) ** 2).sum())
    if sxx == 0.0:
        raise ValueError("x values are all equal")
    slope = float(((lx - mx) * (ly - my)).sum()) / sxx
    intercept = float(my - slope * mx)
    ss_res = float(((ly - (intercept + slope * lx)) ** 2).sum())
    ss_tot = float(((ly - my) ** 2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return FitResult(slope, intercept, r2)


@dataclass(frozen=True)
class GridSpec:
    """Grid prescription of an experiment (per axis for 2D)."""

    dim: int
    a: float
    b: float
    n: int
    grading: str


@dataclass(frozen=True)
class ExperimentSpec:
    """A catalog sharpness experiment, fully pinned."""

    id: str
    operator: str
    op_params: dict
    exponents: Exponents
    weight_family: str
    test_family: str
    eps_list: tuple[float, ...]
    grid: GridSpec
    predicted_exponent: float
    norm_kind: str
    char_kind: str

    def __post_init__(self):
        if not all(a > b for a, b in zip(self.eps_list, self.eps_list[1:])):
            raise ValueError("eps_list must be strictly decreasing")
        if not all(0.0 < e < 1.0 for e in self.eps_list):
            raise ValueError("eps values must lie in (0, 1)")
        if self.norm_kind not in ("strong", "weak"):
            raise ValueError("norm_kind must be 'strong' or 'weak'")


@dataclass(frozen=True)
class SweepRow:
    eps: float
    characteristic: float
    f_norm: float
    tf_norm: float
    ratio: float
    ok: bool = True
    quad_rel_dev: float = 0.0


@dataclass(frozen=True)
class SweepResult:
    rows: tuple[SweepRow, ...]
    fit: FitResult
    predicted: float


# ---------------------------------------------------------------------------
# extremal families (exponents of the distance to the singular point)


def weight_exponent(family: str, eps: float, e: Exponents) -> float:
    if family == "ap":
        return (1.0 - eps) * (e.p - 1.0)
    if family == "apq":
        return (1.0 - eps) / e.p_conj
    if family == "hilbert_p2":
        return 1.0 - eps
    raise ValueError(f"unknown family {family!r}")


def test_exponent(family: str, eps: float, e: Exponents) -> float:
    if family == "ap":
        return eps * (e.p - 1.0) - 1.0
    if family in ("apq", "hilbert_p2"):
        return eps - 1.0
    raise ValueError(f"unknown family {family!r}")


def analytic_f_norm(family: str, eps: float, e: Exponents) -> float:
    """Closed-form 1D factor of the test-function norm (the norm the
    operator bound measures f in), by the power rule."""
    wg = weight_exponent(family, eps, e)
    fg = test_exponent(family, eps, e)
    if family == "ap" or family == "hilbert_p2":
        s = fg * e.p + wg          # ||f||_{L^p_w}^p integrand exponent
    else:
        s = (fg + wg) * e.p        # ||w f||_p^p integrand exponent
    if s <= -1.0:
        raise ValueError("non-integrable parameter combination")
    return (1.0 / (s + 1.0)) ** (1.0 / e.p)


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class _Entry:
    operator: str
    op_params: dict
    family: str
    char_kind: str
    side: str            # support side of the test function
    dim: int
    norm_kind: str
    default_p: float
    default_alpha: float
    predicted: str       # formula id


_CATALOG: dict[str, _Entry] = {
    "ONESIDED_MAX_PLUS": _Entry("maximal_oneside", {"side": "plus"}, "ap",
                                "ap_plus", "plus", 1, "strong", 2.0, 0.0, "buckley"),
    "ONESIDED_MAX_MINUS": _Entry("maximal_oneside", {"side": "minus"}, "ap",
                                 "ap_minus", "minus", 1, "strong", 2.0, 0.0, "buckley"),
    "FRAC_MAX_PLUS": _Entry("frac_maximal_oneside", {"side": "plus"}, "apq",
                            "apq_plus", "plus", 1, "strong", 4.0 / 3.0, 0.25, "frac_max"),
    "FRAC_MAX_MINUS": _Entry("frac_maximal_oneside", {"side": "minus"}, "apq",
                             "apq_minus", "minus", 1, "strong", 4.0 / 3.0, 0.25, "frac_max"),
    "POTENTIAL_PLUS": _Entry("potential_oneside", {"kind": "weyl"}, "apq",
                             "apq_plus", "plus", 1, "strong", 4.0 / 3.0, 0.25, "potential"),
    "POTENTIAL_MINUS": _Entry("potential_oneside", {"kind": "riemann_liouville"}, "apq",
                              "apq_minus", "minus", 1, "strong", 4.0 / 3.0, 0.25, "potential"),
    "WEAK_POTENTIAL_MINUS": _Entry("potential_oneside", {"kind": "riemann_liouville"},
                                   "apq", "apq_minus", "minus", 1, "weak",
                                   4.0 / 3.0, 0.25, "weak_potential"),
    "STRONG_MAX_2D": _Entry("maximal_twoside", {}, "ap", "ap", "minus", 2,
                            "strong", 2.0, 0.0, "buckley"),
    "PRODUCT_HILBERT_P2": _Entry("hilbert", {}, "hilbert_p2", "ap", "minus", 2,
                                 "strong", 2.0, 0.0, "hilbert_p2"),
    "ONESIDED_STRONG_MAX_PLUS": _Entry("maximal_oneside", {"side": "plus"}, "ap",
                                       "ap_plus", "plus", 2, "strong", 2.0, 0.0,
                                       "buckley"),
    "ONESIDED_STRONG_FRACMAX_PLUS": _Entry("frac_maximal_oneside", {"side": "plus"},
                                           "apq", "apq_plus", "plus", 2, "strong",
                                           4.0 / 3.0, 0.25, "frac_max"),
    "PRODUCT_POTENTIAL": _Entry("potential_oneside", {"kind": "riemann_liouville"},
                                "apq", "apq_minus", "minus", 2, "strong",
                                4.0 / 3.0, 0.25, "potential_product"),
}

EXPERIMENT_IDS = tuple(sorted(_CATALOG))


def predicted_exponent_formula(formula: str, e: Exponents) -> float:
    if formula == "buckley":
        return 1.0 / (e.p - 1.0)
    if formula == "frac_max":
        return e.p_conj / e.q * (1.0 - e.alpha)
    if formula == "potential":
        return (1.0 - e.alpha) * max(1.0, e.p_conj / e.q)
    if formula == "potential_product":
        return max(1.0, e.p_conj / e.q) * (1.0 - e.alpha)
    if formula == "weak_potential":
        return 1.0 - e.alpha
    if formula == "hilbert_p2":
        return max(1.0, e.p_conj / e.p)
    raise ValueError(f"unknown predicted-exponent formula {formula!r}")


def _depth_for(family: str, eps_min: float, e: Exponents) -> float:
    """Smallest cell width: deep enough that the boundary-layer mass the
    norms miss stays ~1e-5, shallow enough that every derived power of the
    weight stays inside float range."""
    wg = weight_exponent(family, eps_min, e)
    if family == "ap":
        mass_exp = eps_min * (e.p - 1.0) ** 2
        rng = max(wg + 1.0, wg / (e.p - 1.0))
    elif family == "apq":
        mass_exp = eps_min
        rng = max(wg + 1.0, wg * e.q, wg * e.p_conj, wg * e.p)
    else:
        mass_exp = eps_min
        rng = wg + 1.0
    d_mass = 10.0 ** (-5.0 / mass_exp)
    d_repr = 10.0 ** (-290.0 / rng)
    return max(d_mass, d_repr)


def build_experiment(id: str, p: float | None = None, alpha: float | None = None,
                     eps_list=None, n: int | None = None) -> ExperimentSpec:
    """Fully populated catalog experiment; optional overrides for p, alpha,
    the epsilon ladder, and the grid size."""
    if id not in _CATALOG:
        raise KeyError(f"unknown experiment id {id!r}")
    entry = _CATALOG[id]
    p = entry.default_p if p is None else float(p)
    alpha = entry.default_alpha if alpha is None else float(alpha)
    if entry.family == "apq" and alpha == 0.0:
        raise ValueError(f"{id} needs 0 < alpha < 1")
    if id == "PRODUCT_HILBERT_P2" and p != 2.0:
        raise ValueError("PRODUCT_HILBERT_P2 is pinned at p = 2")
    e = Exponents.from_p_alpha(p, alpha)
    eps_list = tuple(DEFAULT_EPS) if eps_list is None else tuple(float(x) for x in eps_list)
    n = DEFAULT_N if n is None else int(n)
    if entry.operator in ("frac_maximal_oneside", "potential_oneside"):
        op_params = dict(entry.op_params, alpha=alpha)
    else:
        op_params = dict(entry.op_params)
    depth = _depth_for(entry.family, min(eps_list), e)
    ratio = ratio_for_min_width(1.0, n // 2, depth)
    grid = GridSpec(entry.dim, -1.0, 1.0, n, f"at:0:{ratio:.12g}")
    return ExperimentSpec(
        id=id, operator=entry.operator, op_params=op_params, exponents=e,
        weight_family=entry.family, test_family=entry.family,
        eps_list=eps_list, grid=grid,
        predicted_exponent=predicted_exponent_formula(entry.predicted, e),
        norm_kind=entry.norm_kind, char_kind=entry.char_kind)


# ---------------------------------------------------------------------------
# sweep runner


def _apply_operator(spec: ExperimentSpec, f: GridFn) -> GridFn:
    op = spec.operator
    if op == "maximal_oneside":
        return maximal_oneside(f, spec.op_params["side"], "hull")
    if op == "frac_maximal_oneside":
        return frac_maximal_oneside(f, spec.op_params["alpha"], spec.op_params["side"])
    if op == "potential_oneside":
        return potential_oneside(f, spec.op_params["alpha"], spec.op_params["kind"])
    if op == "maximal_twoside":
        return maximal_twoside(f)
    if op == "hilbert":
        return hilbert(f)
    raise ValueError(f"unknown operator {op!r}")


def _characteristic_value(spec: ExperimentSpec, w: Weight) -> float:
    kind = spec.char_kind
    e = spec.exponents
    if kind == "ap":
        return ap(w).value
    if kind in ("ap_plus", "ap_minus"):
        return ap_oneside(w, side=kind.split("_")[1]).value
    if kind in ("apq_plus", "apq_minus"):
        return apq_oneside(w, e, side=kind.split("_")[1]).value
    raise ValueError(f"unknown characteristic kind {kind!r}")


def _support(side: str) -> tuple[float, float]:
    return (-1.0, 0.0) if side == "plus" else (0.0, 1.0)


def _sweep_row(spec: ExperimentSpec, grid, eps: float,
               characteristic: bool = True) -> SweepRow:
    e = spec.exponents
    entry_side = _CATALOG[spec.id].side
    wg = weight_exponent(spec.weight_family, eps, e)
    fg = test_exponent(spec.test_family, eps, e)
    w = Weight(power_weight(grid, wg, 0.0), e.p)
    f = power_density(grid, fg, 0.0, support=_support(entry_side))

    char = _characteristic_value(spec, w) if characteristic else 1.0
    Tf = _apply_operator(spec, f)

    if spec.weight_family in ("ap", "hilbert_p2"):
        f_quad = lp_norm(f, w, e.p)
        tf_axis = lp_norm(Tf, w, e.p)
    else:
        wp = GridFn(grid, w.base.values ** e.p)
        wq = GridFn(grid, w.base.values ** e.q)
        f_quad = lp_norm(f, wp, e.p)
        if spec.norm_kind == "weak":
            tf_axis = weak_lp_norm(Tf, wq, e.q)
        else:
            tf_axis = lp_norm(Tf, wq, e.q)

    f_axis = analytic_f_norm(spec.test_family, eps, e)
    quad_dev = abs(f_quad / f_axis - 1.0) if f_axis > 0 else float("inf")

    if spec.grid.dim == 2:
        # product weight, separable f: everything factors exactly
        char = char * char
        f_val = f_axis * f_axis
        tf_val = tf_axis * tf_axis
    else:
        f_val = f_axis
        tf_val = tf_axis

    ratio = tf_val / f_val if f_val > 0 else float("inf")
    ok = all(map(math.isfinite, (char, f_val, tf_val, ratio))) and quad_dev < 0.05
    return SweepRow(eps, char, f_val, tf_val, ratio, ok, quad_dev)


def fit_rows(rows, predicted: float) -> SweepResult:
    """Assemble a SweepResult from computed rows: sort by decreasing eps,
    fit log(ratio) against log(characteristic) over the valid rows."""
    rows = tuple(sorted(rows, key=lambda r: -r.eps))
    good = [r for r in rows if r.ok]
    if len(good) >= 2:
        fit = fit_loglog([r.characteristic for r in good],
                         [r.ratio for r in good])
    else:
        fit = FitResult(float("nan"), float("nan"), 0.0)
    return SweepResult(rows, fit, predicted)


def run_sweep(spec: ExperimentSpec, characteristic: bool = True) -> SweepResult:
    """One row per epsilon (rows run concurrently, capped by
    SHARPWT_THREADS); deterministic for a fixed spec.

    ``characteristic=False`` skips the characteristic column (all-ones) for
    ratio-only convergence checks.
    """
    g = spec.grid
    grid = interior_graded_grid(g.a, g.b, g.n, 0.0,
                                float(g.grading.split(":")[2]))
    workers = min(len(spec.eps_list), worker_count())
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            rows = list(ex.map(lambda eps: _sweep_row(spec, grid, eps, characteristic),
                               spec.eps_list))
    else:
        rows = [_sweep_row(spec, grid, eps, characteristic) for eps in spec.eps_list]
    return fit_rows(rows, spec.predicted_exponent)


def refined(spec: ExperimentSpec, factor: int = 2) -> ExperimentSpec:
    """The same experiment on a factor-of-two finer grid (same depth rule)."""
    return build_experiment(spec.id, spec.exponents.p,
                            spec.exponents.alpha, spec.eps_list,
                            spec.grid.n * factor)
