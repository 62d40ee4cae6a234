"""Small numerical kernels shared by the hub solver and the grid oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import EvaluationFailure, NoBracket, NonConvergence

MAX_ITER = 200
F_TOL = 1e-10
X_TOL = 1e-12


@dataclass(frozen=True)
class RootResult:
    x: float
    f: float
    iterations: int
    width: float


def bisect(
    f: Callable[[float], float],
    low: float,
    high: float,
    f_tol: float = F_TOL,
    x_tol: float = X_TOL,
    max_iter: int = MAX_ITER,
) -> RootResult:
    """Bracketed bisection.

    Stops when ``|f(mid)| <= f_tol`` or the bracket is no wider than
    ``x_tol``. A bracket that can no longer be split in floating point
    also counts as converged.
    """
    if not low < high:
        raise ValueError(f"empty bracket [{low!r}, {high!r}]")
    f_lo, f_hi = f(low), f(high)
    if abs(f_lo) <= f_tol:
        return RootResult(low, f_lo, 0, high - low)
    if abs(f_hi) <= f_tol:
        return RootResult(high, f_hi, 0, high - low)
    if math.isnan(f_lo) or math.isnan(f_hi) or (f_lo > 0) == (f_hi > 0):
        raise NoBracket(low, high, f_lo, f_hi)

    for i in range(1, max_iter + 1):
        mid = low + 0.5 * (high - low)
        f_mid = f(mid)
        if math.isnan(f_mid):
            raise NonConvergence(i, low, high)
        if abs(f_mid) <= f_tol or high - low <= x_tol or mid in (low, high):
            return RootResult(mid, f_mid, i, high - low)
        if (f_mid > 0) == (f_lo > 0):
            low, f_lo = mid, f_mid
        else:
            high = mid
    raise NonConvergence(max_iter, low, high)


def fd_step(at: float) -> float:
    return max(1e-6, 1e-6 * abs(at))


def central_difference(fn: Callable[[float], float], at: float) -> float:
    h = fd_step(at)
    return (fn(at + h) - fn(at - h)) / (2.0 * h)


def evaluate(fn: Callable, xs: np.ndarray) -> np.ndarray:
    """Evaluate ``fn`` on every point of ``xs``.

    Tries one vectorised call first and falls back to a point-wise loop,
    which pins down the failing point for :class:`EvaluationFailure`.
    """
    try:
        with np.errstate(all="ignore"):
            out = np.asarray(fn(xs), dtype=float)
        if out.ndim == 0:
            out = np.full(xs.shape, float(out))
        if out.shape == xs.shape:
            return out
    except Exception:
        pass
    values = np.empty(xs.shape, dtype=float)
    for i, x in enumerate(xs):
        try:
            values[i] = float(fn(float(x)))
        except Exception as exc:
            raise EvaluationFailure(float(x), exc) from exc
    return values


def cumulative_trapezoid(ys: np.ndarray, xs: np.ndarray) -> np.ndarray:
    """Running trapezoid integral, starting at 0 on the first point."""
    out = np.zeros_like(ys, dtype=float)
    if len(ys) > 1:
        out[1:] = np.cumsum(0.5 * (ys[1:] + ys[:-1]) * np.diff(xs))
    return out
