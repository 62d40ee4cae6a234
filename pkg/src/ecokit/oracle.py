"""Brute-force grid maximisers used to cross-check the closed forms and root finders.

Nothing here shares code paths with the solvers it checks: the oracles
evaluate the objective itself on a grid and take the argmax, ties going to
the smaller fee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import FEASIBILITY_EPS, TransactionTerms
from .errors import Infeasible
from .hub import ParametricHubModel
from .numerics import cumulative_trapezoid, evaluate

MAX_GRID_POINTS = 10**7


@dataclass(frozen=True)
class GridSpec:
    low: float
    high: float
    step: float

    def __post_init__(self):
        if not (math.isfinite(self.low) and math.isfinite(self.high) and self.low < self.high):
            raise ValueError(f"grid needs finite low < high, got [{self.low!r}, {self.high!r}]")
        if not (math.isfinite(self.step) and self.step > 0):
            raise ValueError(f"grid step must be positive, got {self.step!r}")
        if (self.high - self.low) / self.step > MAX_GRID_POINTS:
            raise ValueError(f"grid has more than {MAX_GRID_POINTS} intervals")

    @classmethod
    def parse(cls, text: str) -> GridSpec:
        """Parse ``low:high:step``."""
        try:
            low, high, step = (float(s) for s in text.split(":"))
        except ValueError:
            raise ValueError(f"grid must look like low:high:step, got {text!r}") from None
        return cls(low, high, step)

    def points(self) -> np.ndarray:
        count = (self.high - self.low) / self.step
        k = round(count)
        if abs(count - k) > 1e-9 * max(1.0, count):
            k = math.floor(count)
        return self.low + self.step * np.arange(k + 1)


@dataclass(frozen=True)
class GridOptimum:
    x_hat: float
    value: float


def _argmax(xs: np.ndarray, values: np.ndarray) -> GridOptimum:
    # np.argmax returns the first maximum, i.e. the smallest x
    i = int(np.argmax(values))
    return GridOptimum(float(xs[i]), float(values[i]))


def _consumer_utility_on(model: ParametricHubModel, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ns = evaluate(model.n_of_x, xs)
    w_c = evaluate(model.v_c_of_n, ns) - ns * xs - evaluate(model.t_c_of_n, ns)
    return ns, w_c


def grid_max_welfare(model: ParametricHubModel, g: GridSpec) -> GridOptimum:
    """Argmax of W^C(X) + integral of n from ``g.low`` to X over the grid."""
    xs = g.points()
    ns, w_c = _consumer_utility_on(model, xs)
    return _argmax(xs, w_c + cumulative_trapezoid(ns, xs))


def grid_max_consumer(model: ParametricHubModel, g: GridSpec) -> GridOptimum:
    """Argmax of the hub's utility V^C(n(X)) - n(X)*X - T^C(n(X)) over the grid."""
    xs = g.points()
    _, w_c = _consumer_utility_on(model, xs)
    return _argmax(xs, w_c)


def grid_equal_split(terms: TransactionTerms, g: GridSpec, eps: float = FEASIBILITY_EPS) -> float:
    """Grid fee maximising min(W^P, W^C)."""
    margin = (terms.v_c + terms.v_p) - (terms.t_c + terms.t_p)
    if not margin > eps:
        raise Infeasible(margin)
    xs = g.points()
    w_p = terms.v_p + xs - terms.t_p
    w_c = terms.v_c - xs - terms.t_c
    return _argmax(xs, np.minimum(w_p, w_c)).x_hat
