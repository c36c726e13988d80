"""CSV interfaces: grid functions, characteristic reports, sweep results.

All numeric fields print with 17 significant digits so values round-trip
through text exactly.  Data goes to the stream verbatim; no timestamps or
environment details ever appear here.
"""
from __future__ import annotations

import io

import numpy as np

from .characteristics import CharacteristicReport
from .grid import Grid1D, Grid2D, GridFn, grid_from_boundaries

_FMT = "%.17g"


class CsvFormatError(ValueError):
    """Malformed CSV input; carries the 1-based offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _fmt(x: float) -> str:
    return _FMT % float(x)


def gridfn_to_csv(f: GridFn) -> str:
    out = io.StringIO()
    if f.is_2d():
        g = f.grid
        X, Y = g.gx.boundaries, g.gy.boundaries
        out.write("cell_left_x,cell_right_x,cell_left_y,cell_right_y,value\n")
        v2 = f.values2d
        for i in range(g.gx.n):
            for j in range(g.gy.n):
                out.write(",".join([_fmt(X[i]), _fmt(X[i + 1]),
                                    _fmt(Y[j]), _fmt(Y[j + 1]),
                                    _fmt(v2[i, j])]) + "\n")
    else:
        X = f.grid.boundaries
        out.write("cell_left,cell_right,value\n")
        for i in range(f.grid.n):
            out.write(",".join([_fmt(X[i]), _fmt(X[i + 1]),
                                _fmt(f.values[i])]) + "\n")
    return out.getvalue()


def _parse_floats(line: str, lineno: int, count: int) -> list[float]:
    parts = line.split(",")
    if len(parts) != count:
        raise CsvFormatError(lineno, f"expected {count} fields, got {len(parts)}")
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise CsvFormatError(lineno, str(exc)) from None


def gridfn_from_csv(text: str) -> GridFn:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise CsvFormatError(1, "empty input")
    header = lines[0].strip()
    if header == "cell_left,cell_right,value":
        lefts, rights, vals = [], [], []
        for k, ln in enumerate(lines[1:], start=2):
            l, r, v = _parse_floats(ln, k, 3)
            lefts.append(l)
            rights.append(r)
            vals.append(v)
        if not lefts:
            raise CsvFormatError(2, "no data rows")
        for k in range(1, len(lefts)):
            if lefts[k] != rights[k - 1]:
                raise CsvFormatError(k + 2, "cells are not contiguous")
        grid = grid_from_boundaries(np.array(lefts + [rights[-1]]))
        return GridFn(grid, np.array(vals))
    if header == "cell_left_x,cell_right_x,cell_left_y,cell_right_y,value":
        rows = []
        for k, ln in enumerate(lines[1:], start=2):
            rows.append((_parse_floats(ln, k, 5), k))
        if not rows:
            raise CsvFormatError(2, "no data rows")
        xs = sorted({r[0][0] for r in rows} | {r[0][1] for r in rows})
        ys = sorted({r[0][2] for r in rows} | {r[0][3] for r in rows})
        gx = grid_from_boundaries(np.array(xs))
        gy = grid_from_boundaries(np.array(ys))
        if len(rows) != gx.n * gy.n:
            raise CsvFormatError(rows[-1][1], "row count does not fill the grid")
        vals = np.empty((gx.n, gy.n))
        seen = np.zeros((gx.n, gy.n), dtype=bool)
        for (l, r, lo, hi, v), k in rows:
            i = int(np.searchsorted(gx.boundaries, l))
            j = int(np.searchsorted(gy.boundaries, lo))
            if (i >= gx.n or j >= gy.n or gx.boundaries[i + 1] != r
                    or gy.boundaries[j + 1] != hi or seen[i, j]):
                raise CsvFormatError(k, "inconsistent cell rectangle")
            vals[i, j] = v
            seen[i, j] = True
        return GridFn(Grid2D(gx, gy), vals.reshape(-1))
    raise CsvFormatError(1, f"unrecognized header: {header!r}")


REPORT_HEADER = ("kind,p,q,alpha,value,witness_lo_x,witness_hi_x,"
                 "witness_lo_y,witness_hi_y,truncated")


def report_to_csv(rep: CharacteristicReport) -> str:
    has_y = rep.witness_lo_y >= 0
    row = [rep.kind, _fmt(rep.p), _fmt(rep.q), _fmt(rep.alpha), _fmt(rep.value),
           str(rep.witness_lo_x), str(rep.witness_hi_x),
           str(rep.witness_lo_y) if has_y else "",
           str(rep.witness_hi_y) if has_y else "",
           "1" if rep.truncated else "0"]
    return REPORT_HEADER + "\n" + ",".join(row) + "\n"


SWEEP_HEADER = "eps,characteristic,f_norm,Tf_norm,ratio"


def sweep_to_csv(result) -> str:
    out = io.StringIO()
    out.write(SWEEP_HEADER + "\n")
    for row in result.rows:
        out.write(",".join([_fmt(row.eps), _fmt(row.characteristic),
                            _fmt(row.f_norm), _fmt(row.tf_norm),
                            _fmt(row.ratio)]) + "\n")
    f = result.fit
    out.write(f"# slope={_fmt(f.slope)} intercept={_fmt(f.intercept)} "
              f"r2={_fmt(f.r2)} predicted={_fmt(result.predicted)}\n")
    return out.getvalue()
