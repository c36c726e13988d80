"""Shared numerical primitives: stable power differences, masses, worker count.

The sweep grids span hundreds of orders of magnitude near a singular point,
so naive antiderivative differences and log differences lose all precision.
Every kernel integral in the package goes through the helpers here.
"""
from __future__ import annotations

import os

import numpy as np


def pow_diff(a, b, k):
    """b**k - a**k, stable when a and b are close (relative gap << 1).

    Uses b**k - a**k = a**k * expm1(k * log1p((b - a) / a)) on the branch
    where the direct subtraction would cancel.  a, b must be positive.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        u = (b - a) / a
        near = np.abs(u) < 0.5
        direct = b**k - a**k
        stable = a**k * np.expm1(k * np.log1p(np.where(near, u, 0.0)))
    out = np.where(near, stable, direct)
    if out.ndim == 0:
        return float(out)
    return out


def log_ratio(a, b):
    """log(b / a) = log(b) - log(a), stable when a and b are close.

    a and b must have the same sign (the cells never straddle the pole).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        u = (b - a) / a
        near = np.abs(u) < 0.5
        out = np.where(near, np.log1p(np.where(near, u, 0.0)),
                       np.log(np.abs(b)) - np.log(np.abs(a)))
    if out.ndim == 0:
        return float(out)
    return out


def stable_power_sum(logs, p):
    """(sum_i exp(logs_i))**(1/p) without overflow; logs may contain -inf."""
    logs = np.asarray(logs, dtype=float)
    logs = logs[logs > -np.inf]
    if logs.size == 0:
        return 0.0
    m = logs.max()
    if not np.isfinite(m):
        return float("inf")
    return float(np.exp((m + np.log(np.exp(logs - m).sum())) / p))


def interp_mass(prefix: np.ndarray, boundaries: np.ndarray, x) -> np.ndarray:
    """Cumulative mass at arbitrary points.

    ``prefix`` holds the exact cumulative integral at each boundary of a
    piecewise-constant density, so linear interpolation between boundaries
    is exact.
    """
    return np.interp(x, boundaries, prefix)


def worker_count() -> int:
    """Worker cap from SHARPWT_THREADS (0 or unset means auto)."""
    raw = os.environ.get("SHARPWT_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        k = 0
    if k <= 0:
        return os.cpu_count() or 1
    return k
