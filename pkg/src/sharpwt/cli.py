"""Command-line front end.

Subcommands: ``characteristic`` (one report row on stdout), ``apply``
(operator output as GridFn CSV), ``experiment`` (catalog sweep to a CSV
file plus the fit line on stdout).

Exit codes: 0 success, 1 sharpness tolerance failed, 2 usage error,
3 domain error (e.g. non-integrable weight parameters).  Data goes to
stdout / the output file; run metadata goes to stderr, so outputs are
byte-identical across repeated runs.

An optional ``--config FILE`` reads flat ``key = value`` lines mirroring
the flags; explicit flags override the file.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import characteristics as ch
from .grid import (Exponents, Grid2D, GridFn, Weight, constant_fn, make_grid,
                   power_weight, product_gridfn)
from .operators1d import (frac_maximal_oneside, hilbert, maximal_oneside,
                          maximal_twoside, potential_oneside)
from .operators2d import (product_hilbert, product_potential, strong_maximal,
                          strong_maximal_oneside)
from .serialize import (CsvFormatError, gridfn_from_csv, gridfn_to_csv,
                        report_to_csv, sweep_to_csv)
from .sharpness import EXPERIMENT_IDS, build_experiment, run_sweep

_1D_ONE_WEIGHT = ("ap", "ap_plus", "ap_minus", "apq_plus", "apq_minus")
_2D_ONE_WEIGHT = ("ap_strong", "apq_strong", "ap_strong_plus", "ap_strong_minus",
                  "apq_strong_plus", "apq_strong_minus",
                  "ap_x", "ap_y", "ap_x_plus", "ap_x_minus", "ap_y_plus",
                  "ap_y_minus", "apq_x", "apq_y", "apq_x_plus", "apq_x_minus",
                  "apq_y_plus", "apq_y_minus")
_TWO_WEIGHT = ("glo_plus", "glo_minus", "gk_plus", "gk_minus",
               "mt_plus", "mt_minus", "lt_weyl", "lt_riemann_liouville")
_KINDS = _1D_ONE_WEIGHT + _2D_ONE_WEIGHT + _TWO_WEIGHT

_NEEDS_ALPHA = tuple(k for k in _KINDS if k.startswith(("apq", "glo", "gk", "mt", "lt")))


class UsageError(Exception):
    """Bad arguments or argument combinations (exit code 2)."""


def _read_config(path: str) -> dict[str, str]:
    conf = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {raw.strip()!r}")
            key, val = line.split("=", 1)
            conf[key.strip().replace("-", "_")] = val.strip()
    return conf


def _parse_domain(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError("domain must be 'a,b'")
    try:
        a, b = float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageError(f"bad domain {text!r}") from None
    if not a < b:
        raise UsageError("domain needs a < b")
    return a, b


def _build_weight_fn(args, prefix: str, grid) -> GridFn:
    source = getattr(args, f"{prefix}weight")
    if source == "const":
        return constant_fn(grid)
    if source == "power":
        gamma = getattr(args, f"{prefix}gamma")
        center = getattr(args, f"{prefix}center")
        if isinstance(grid, Grid2D):
            gamma_y = getattr(args, f"{prefix}gamma_y", None)
            gy = gamma if gamma_y is None else gamma_y
            return product_gridfn(power_weight(grid.gx, gamma, center),
                                  power_weight(grid.gy, gy, center))
        return power_weight(grid, gamma, center)
    if source == "csv":
        path = getattr(args, f"{prefix}weight_file")
        if path is None:
            raise UsageError(f"--{prefix.replace('_', '-')}weight csv needs "
                             f"--{prefix.replace('_', '-')}weight-file")
        with open(path) as fh:
            return gridfn_from_csv(fh.read())
    raise UsageError(f"unknown weight source {source!r}")


def _cmd_characteristic(args) -> int:
    kind = args.kind
    alpha = args.alpha
    if kind in _NEEDS_ALPHA and alpha is None:
        raise UsageError(f"kind {kind} needs --alpha")
    a, b = _parse_domain(args.domain)
    grid1 = make_grid(a, b, args.n, args.grade)
    grid = Grid2D(grid1, grid1) if kind in _2D_ONE_WEIGHT else grid1

    wfn = _build_weight_fn(args, "", grid)
    if isinstance(wfn.grid, Grid2D) != (kind in _2D_ONE_WEIGHT):
        raise UsageError(f"kind {kind} and weight dimensionality disagree")
    w = Weight(wfn, args.p)
    e = Exponents.from_p_alpha(args.p, alpha or 0.0)

    if kind == "ap":
        rep = ch.ap(w)
    elif kind in ("ap_plus", "ap_minus"):
        rep = ch.ap_oneside(w, side=kind.split("_")[1])
    elif kind in ("apq_plus", "apq_minus"):
        rep = ch.apq_oneside(w, e, side=kind.split("_")[1])
    elif kind == "ap_strong":
        rep = ch.ap_strong(w)
    elif kind == "apq_strong":
        rep = ch.apq_strong(w, e)
    elif kind.startswith("ap_strong_"):
        rep = ch.ap_strong_oneside(w, side=kind.rsplit("_", 1)[1])
    elif kind.startswith("apq_strong_"):
        rep = ch.apq_strong_oneside(w, e, side=kind.rsplit("_", 1)[1])
    elif kind.startswith(("ap_x", "ap_y", "apq_x", "apq_y")):
        parts = kind.split("_")
        axis = parts[1]
        variant = parts[2] if len(parts) == 3 else "twosided"
        if parts[0] == "ap":
            rep = ch.ap_uniform_axis(w, axis=axis, variant=variant)
        else:
            rep = ch.apq_uniform_axis(w, e, axis=axis, variant=variant)
    else:
        vfn = _build_weight_fn(args, "v_", grid)
        if kind.startswith("glo"):
            rep = ch.glo_constant(vfn, w, e, side=kind.split("_")[1])
        elif kind.startswith("gk"):
            rep = ch.gk_constant(vfn, w, e, side=kind.split("_")[1])
        elif kind.startswith("mt"):
            rep = ch.sawyer_mt_constant(vfn, w, e, side=kind.split("_")[1])
        else:
            rep = ch.lorente_lt_constant(vfn, w, e, op=kind.split("_", 1)[1])
    sys.stdout.write(report_to_csv(rep))
    return 0


def _cmd_apply(args) -> int:
    if args.input is not None:
        with open(args.input) as fh:
            f = gridfn_from_csv(fh.read())
    else:
        a, b = _parse_domain(args.domain)
        grid = make_grid(a, b, args.n, args.grade)
        if args.family == "zero":
            f = constant_fn(grid, 0.0)
        elif args.family == "const":
            f = constant_fn(grid, 1.0)
        else:
            raise UsageError(f"unknown builtin family {args.family!r}")

    op = args.op
    if op in ("frac_maximal", "potential", "product_potential") and args.alpha is None:
        raise UsageError(f"--op {op} needs --alpha")
    if op == "maximal":
        out = maximal_oneside(f, args.side, args.algo)
    elif op == "maximal_twoside":
        out = maximal_twoside(f)
    elif op == "frac_maximal":
        out = frac_maximal_oneside(f, args.alpha, args.side)
    elif op == "potential":
        out = potential_oneside(f, args.alpha, args.kind)
    elif op == "hilbert":
        out = hilbert(f)
    elif op == "strong_maximal":
        algo = "rectangles" if args.algo in ("hull", "rectangles") else args.algo
        out = strong_maximal(f, algo)
    elif op == "strong_maximal_oneside":
        algo = "brute" if args.algo == "hull" else args.algo
        out = strong_maximal_oneside(f, args.side, args.alpha or 0.0, algo)
    elif op == "product_potential":
        out = product_potential(f, args.alpha, args.kind)
    elif op == "product_hilbert":
        out = product_hilbert(f)
    else:
        raise ValueError(f"unknown operator {op!r}")
    text = gridfn_to_csv(out)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_experiment(args) -> int:
    if args.id not in EXPERIMENT_IDS:
        raise KeyError(f"unknown experiment id {args.id!r}")
    eps = None
    if args.eps:
        eps = [float(x) for x in args.eps.split(",")]
    spec = build_experiment(args.id, p=args.p, alpha=args.alpha,
                            eps_list=eps, n=args.n)
    print(f"running {spec.id}: p={spec.exponents.p:g} alpha={spec.exponents.alpha:g} "
          f"n={spec.grid.n} grading={spec.grid.grading}", file=sys.stderr)
    result = run_sweep(spec)
    text = sweep_to_csv(result)
    out_path = args.out or f"{args.id}.csv"
    with open(out_path, "w") as fh:
        fh.write(text)
    fit_line = text.rstrip("\n").splitlines()[-1]
    print(fit_line)
    print(f"wrote {out_path}", file=sys.stderr)
    tol = args.tolerance * abs(result.predicted)
    ok = (np.isfinite(result.fit.slope)
          and abs(result.fit.slope - result.predicted) <= tol)
    return 0 if ok else 1


def _add_grid_flags(p: argparse.ArgumentParser, default_n: int):
    p.add_argument("--domain", default="-1,1", help="grid domain 'a,b'")
    p.add_argument("--n", type=int, default=default_n, help="cell count")
    p.add_argument("--grade", default="uniform",
                   help="grading: uniform | left:R | right:R | at:P:R")


def build_parser() -> argparse.ArgumentParser:
    ap_ = argparse.ArgumentParser(
        prog="sharpwt",
        description="Weighted operators, weight characteristics, and "
                    "sharp-exponent sweeps on discretized domains.")
    ap_.add_argument("--config", help="flat key = value file mirroring the flags")
    sub = ap_.add_subparsers(dest="command", required=True)

    c = sub.add_parser("characteristic", help="compute one weight characteristic")
    c.add_argument("--kind", required=True, choices=_KINDS)
    c.add_argument("--p", type=float, required=True)
    c.add_argument("--alpha", type=float, default=None)
    c.add_argument("--weight", default="const", choices=("const", "power", "csv"))
    c.add_argument("--gamma", type=float, default=0.0)
    c.add_argument("--gamma-y", dest="gamma_y", type=float, default=None)
    c.add_argument("--center", type=float, default=0.0)
    c.add_argument("--weight-file", dest="weight_file", default=None)
    c.add_argument("--v-weight", dest="v_weight", default="const",
                   choices=("const", "power", "csv"))
    c.add_argument("--v-gamma", dest="v_gamma", type=float, default=0.0)
    c.add_argument("--v-center", dest="v_center", type=float, default=0.0)
    c.add_argument("--v-weight-file", dest="v_weight_file", default=None)
    _add_grid_flags(c, 256)
    c.set_defaults(func=_cmd_characteristic)

    a = sub.add_parser("apply", help="apply an operator, emit GridFn CSV")
    a.add_argument("--op", required=True,
                   choices=("maximal", "maximal_twoside", "frac_maximal",
                            "potential", "hilbert", "strong_maximal",
                            "strong_maximal_oneside", "product_potential",
                            "product_hilbert"))
    a.add_argument("--side", default="plus", choices=("plus", "minus"))
    a.add_argument("--algo", default="hull",
                   choices=("hull", "brute", "rectangles", "composition"))
    a.add_argument("--alpha", type=float, default=None)
    a.add_argument("--kind", default="weyl",
                   choices=("weyl", "riemann_liouville"))
    a.add_argument("--input", default=None, help="input GridFn CSV path")
    a.add_argument("--family", default="zero", choices=("zero", "const"))
    a.add_argument("--output", default=None, help="output path (default stdout)")
    _add_grid_flags(a, 256)
    a.set_defaults(func=_cmd_apply)

    x = sub.add_parser("experiment", help="run a catalog sharpness experiment")
    x.add_argument("id", help="experiment id, one of: " + ", ".join(EXPERIMENT_IDS))
    x.add_argument("--p", type=float, default=None)
    x.add_argument("--alpha", type=float, default=None)
    x.add_argument("--eps", default=None, help="comma-separated ladder, decreasing")
    x.add_argument("--n", type=int, default=None)
    x.add_argument("--out", default=None, help="output CSV path (default <id>.csv)")
    x.add_argument("--tolerance", type=float, default=0.15,
                   help="relative slope tolerance for exit status")
    x.set_defaults(func=_cmd_experiment)
    return ap_


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()

    # peel --config before the real parse so file values act as defaults
    config: dict[str, str] = {}
    if "--config" in argv:
        k = argv.index("--config")
        if k + 1 >= len(argv):
            parser.error("--config needs a path")
        try:
            config = _read_config(argv[k + 1])
        except (OSError, ValueError) as exc:
            print(f"sharpwt: bad config: {exc}", file=sys.stderr)
            return 2
        del argv[k:k + 2]

    if config:
        for action in parser._subparsers._group_actions[0].choices.values():
            known = {a.dest for a in action._actions}
            action.set_defaults(**{k: v for k, v in config.items() if k in known})

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    # config values arrive as strings; coerce the numerically typed ones
    for num_attr in ("p", "alpha", "gamma", "center", "v_gamma", "v_center",
                     "tolerance", "gamma_y"):
        if hasattr(args, num_attr) and isinstance(getattr(args, num_attr), str):
            setattr(args, num_attr, float(getattr(args, num_attr)))
    if hasattr(args, "n") and isinstance(args.n, str):
        args.n = int(args.n)

    try:
        return args.func(args)
    except CsvFormatError as exc:
        print(f"sharpwt: {exc}", file=sys.stderr)
        return 2
    except UsageError as exc:
        print(f"sharpwt: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"sharpwt: {exc.args[0]}", file=sys.stderr)
        return 2
    except (ValueError, TypeError) as exc:
        print(f"sharpwt: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"sharpwt: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
