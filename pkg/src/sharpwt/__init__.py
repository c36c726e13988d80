"""sharpwt: weighted integral operators, Muckenhoupt-type weight
characteristics, and sharp-exponent sweep experiments on discretized
1D/2D domains."""

from .characteristics import (CharacteristicReport, PowerWeightBounds, ap,
                              ap_oneside, ap_strong, ap_strong_oneside,
                              ap_uniform_axis, apq_oneside, apq_strong,
                              apq_strong_oneside, apq_uniform_axis,
                              closed_form_power_bounds, gk_constant,
                              glo_constant, lorente_lt_constant,
                              sawyer_mt_constant)
from .grid import (Exponents, Grid1D, Grid2D, GridFn, Weight, constant_fn,
                   geometric_grid, grid_from_boundaries, gridfn_2d,
                   integrate, interior_graded_grid, lp_norm, make_grid,
                   power_density, power_weight, product_gridfn,
                   ratio_for_min_width, uniform_grid, weak_lp_norm)
from .operators1d import (frac_maximal_oneside, hilbert, hilbert_at,
                          maximal_oneside, maximal_twoside,
                          potential_oneside, potential_oneside_at)
from .operators2d import (AxisOp, apply_axis, product_hilbert,
                          product_potential, strong_maximal,
                          strong_maximal_oneside)
from .serialize import (CsvFormatError, gridfn_from_csv, gridfn_to_csv,
                        report_to_csv, sweep_to_csv)
from .sharpness import (DEFAULT_EPS, DEFAULT_N, EXPERIMENT_IDS,
                        ExperimentSpec, FitResult, GridSpec, SweepResult,
                        SweepRow, analytic_f_norm, build_experiment,
                        fit_loglog, fit_rows, refined, run_sweep)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
