"""Hub-and-spoke configurations: one consumer (the hub) and n providers.

Two views are covered. With a fixed provider count the first-best fee has a
closed form in which the hub's ex-ante investment is amortised over the
providers. With a supply response n(X) the hub either maximises total
welfare or its own utility, and both optima are found from their
first-order conditions by bracketed bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from .bargaining import FeeSolution
from .core import FEASIBILITY_EPS
from .errors import Infeasible, InelasticSupply
from .numerics import bisect, central_difference, cumulative_trapezoid, evaluate

LERNER_TOL = 1e-6
ENVELOPE_PANELS = 10_000
BRACKET_SAMPLES = 101


@dataclass(frozen=True)
class HubParams:
    v_p: float
    t_p: float
    v_c: float
    t_c: float
    i_c: float
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        for name in ("v_p", "t_p", "v_c", "t_c", "i_c"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")


def hub_net_surplus(p: HubParams, x: float) -> float:
    """Hub utility n*(v_c - x - t_c) - i_c at a uniform fee x."""
    return p.n * (p.v_c - x - p.t_c) - p.i_c


def uniform_hub_fee(p: HubParams, eps: float = FEASIBILITY_EPS) -> FeeSolution:
    """First-best uniform fee with the investment amortised as i_c/n per provider.

    ``w_p`` is each provider's surplus and ``w_c`` the hub's surplus per
    provider; the hub's aggregate is :func:`hub_net_surplus`.
    """
    amortised = p.i_c / p.n
    margin = (p.v_c + p.v_p) - (p.t_c + p.t_p + amortised)
    if not margin > eps:
        raise Infeasible(margin)
    x = 0.5 * ((p.v_c - p.v_p) - (p.t_c - p.t_p + amortised))
    return FeeSolution(
        x_star=x,
        w_p=p.v_p + x - p.t_p,
        w_c=p.v_c - x - p.t_c - amortised,
        is_subsidy=x < 0,
        bargaining_range=(p.t_p - p.v_p, p.v_c - p.t_c - amortised),
    )


@dataclass(frozen=True)
class Threshold:
    per_provider_margin: float
    n_tilde: float | None
    n_min: int | None


def provider_threshold(
    v_c: float, t_c: float, t_p: float, i_c: float, eps: float = FEASIBILITY_EPS
) -> Threshold:
    """Smallest provider count at which the hub's investment is recovered.

    ``n_tilde`` is the break-even count i_c / d with per-provider margin
    ``d = v_c - t_c - t_p``; ``n_min`` is the first integer strictly past
    it. Both are None when ``d <= eps``.
    """
    d = v_c - t_c - t_p
    if not d > eps:
        return Threshold(d, None, None)
    n_tilde = i_c / d
    n = max(1, math.floor(n_tilde))
    while n > 1 and (n - 1) * d - i_c > eps:
        n -= 1
    while not n * d - i_c > eps:
        n += 1
    return Threshold(d, n_tilde, n)


@dataclass(frozen=True)
class CurveRow:
    n: int
    margin: float
    feasible: bool


def hub_feasibility_curve(
    v_c: float,
    t_c: float,
    t_p: float,
    i_c: float,
    n_values: Iterable[int],
    eps: float = FEASIBILITY_EPS,
) -> list[CurveRow]:
    """Aggregate hub margin n*(v_c - t_c) - n*t_p - i_c for each integer n."""
    rows = []
    for n in n_values:
        margin = n * (v_c - t_c) - n * t_p - i_c
        rows.append(CurveRow(int(n), margin + 0.0, margin > eps))
    if not rows:
        raise ValueError("n range is empty")
    return rows


def curve_csv(rows: list[CurveRow]) -> str:
    lines = ["n,margin,feasible"]
    lines += [f"{r.n},{r.margin:.9g},{str(r.feasible).lower()}" for r in rows]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ParametricHubModel:
    """Homogeneous hub whose provider count responds to the fee.

    Derivatives are analytic when supplied, otherwise central differences
    with step ``max(1e-6, 1e-6*|at|)``. The response functions must be
    pure; they may be called with numpy arrays by the grid oracles.
    """

    n_of_x: Callable[[float], float]
    v_c_of_n: Callable[[float], float]
    t_c_of_n: Callable[[float], float]
    v_p: float = 0.0
    t_p: float = 0.0
    dn_dx: Callable[[float], float] | None = None
    dvc_dn: Callable[[float], float] | None = None
    dtc_dn: Callable[[float], float] | None = None

    @property
    def derivative_mode(self) -> str:
        given = [f is not None for f in (self.dn_dx, self.dvc_dn, self.dtc_dn)]
        if all(given):
            return "analytic"
        return "central-difference" if not any(given) else "mixed"

    def n(self, x: float) -> float:
        return float(self.n_of_x(x))

    def n_prime(self, x: float) -> float:
        if self.dn_dx is not None:
            return float(self.dn_dx(x))
        return central_difference(self.n_of_x, x)

    def marginal_net_value(self, n: float) -> float:
        """d/dn (V^C - T^C) at provider count n."""
        dv = self.dvc_dn(n) if self.dvc_dn is not None else central_difference(self.v_c_of_n, n)
        dt = self.dtc_dn(n) if self.dtc_dn is not None else central_difference(self.t_c_of_n, n)
        return float(dv - dt)

    def consumer_utility(self, x: float) -> float:
        n = self.n(x)
        return float(self.v_c_of_n(n) - n * x - self.t_c_of_n(n))

    def provider_surplus(self, x: float) -> float:
        return self.v_p + x - self.t_p

    def envelope_surplus(self, low: float, x: float, panels: int = ENVELOPE_PANELS) -> float:
        """Aggregate provider surplus v(x) = integral of n(u) du from low to x."""
        if x == low:
            return 0.0
        us = np.linspace(low, x, panels + 1)
        return float(cumulative_trapezoid(evaluate(self.n_of_x, us), us)[-1])

    def total_welfare(self, low: float, x: float) -> float:
        return self.consumer_utility(x) + self.envelope_surplus(low, x)


@dataclass(frozen=True)
class WelfareAnalysis:
    x_star_w: float | None = None
    n_at_w: float | None = None
    welfare_at_w: float | None = None
    x_star_c: float | None = None
    n_at_c: float | None = None
    marginal_at_c: float | None = None
    eta_p: float | None = None
    lerner_residual: float | None = None
    consumer_utility_at_c: float | None = None
    iterations: int = 0
    warnings: tuple[str, ...] = field(default=())


def _bracket(bracket) -> tuple[float, float]:
    low, high = float(bracket[0]), float(bracket[1])
    if not low < high:
        raise ValueError(f"bracket must satisfy low < high, got {bracket!r}")
    return low, high


def _side_conditions(model: ParametricHubModel, low: float, high: float, x: float, eps: float) -> list[str]:
    out = []
    xs = np.linspace(low, high, BRACKET_SAMPLES)
    ns = evaluate(model.n_of_x, xs)
    if np.any(ns < 0):
        out.append("n(X) is negative somewhere on the bracket")
    if np.any(np.diff(ns) < 0):
        out.append("n(X) decreases somewhere on the bracket")
    w_p = model.provider_surplus(x)
    if not w_p > eps:
        out.append(f"provider participation violated at X={x:.9g}: W^P={w_p:.9g}")
    return out


def welfare_max_fee(
    model: ParametricHubModel, bracket, eps: float = FEASIBILITY_EPS
) -> WelfareAnalysis:
    """Fee at which the fee equals the hub's marginal net value of a provider.

    Solves ``X = d/dn (V^C - T^C) at n = n(X)`` by bisection on the bracket.
    """
    low, high = _bracket(bracket)

    def g(x):
        return model.marginal_net_value(model.n(x)) - x

    root = bisect(g, low, high)
    x = root.x
    return WelfareAnalysis(
        x_star_w=x,
        n_at_w=model.n(x),
        welfare_at_w=model.total_welfare(low, x),
        iterations=root.iterations,
        warnings=tuple(_side_conditions(model, low, high, x, eps)),
    )


def _require_elastic(model: ParametricHubModel, x: float, eps: float) -> float:
    n_prime = model.n_prime(x)
    if not n_prime > eps:
        raise InelasticSupply(x, n_prime)
    return n_prime


def utility_max_fee(
    model: ParametricHubModel, bracket, eps: float = FEASIBILITY_EPS
) -> WelfareAnalysis:
    """Fee maximising the hub's own utility.

    Solves ``X = d/dn (V^C - T^C) - n(X)/n'(X)``: the marginal value marked
    down by the supply response. Also reports the supply elasticity
    ``X n'/n`` and the residual of the Lerner form
    ``(X - marginal)/X + 1/eta``.
    """
    low, high = _bracket(bracket)
    for x in np.linspace(low, high, BRACKET_SAMPLES):
        _require_elastic(model, float(x), eps)

    def h(x):
        n_prime = _require_elastic(model, x, eps)
        n = model.n(x)
        return model.marginal_net_value(n) - n / n_prime - x

    root = bisect(h, low, high)
    x = root.x
    n = model.n(x)
    n_prime = model.n_prime(x)
    marginal = model.marginal_net_value(n)
    warnings = _side_conditions(model, low, high, x, eps)

    eta = x * n_prime / n if n != 0 else math.nan
    if x != 0 and eta != 0 and math.isfinite(eta):
        residual = (x - marginal) / x + 1.0 / eta
    else:
        residual = math.nan
        warnings.append("Lerner form undefined at the solution (X or n is zero)")
    if math.isfinite(residual) and abs(residual) > LERNER_TOL:
        warnings.append(f"Lerner residual {residual:.3g} exceeds {LERNER_TOL:g}")

    return WelfareAnalysis(
        x_star_c=x,
        n_at_c=n,
        marginal_at_c=marginal,
        eta_p=eta,
        lerner_residual=residual,
        consumer_utility_at_c=model.consumer_utility(x),
        iterations=root.iterations,
        warnings=tuple(warnings),
    )


def analyze_parametric_hub(
    model: ParametricHubModel, bracket, eps: float = FEASIBILITY_EPS
) -> WelfareAnalysis:
    """Both optima in one report."""
    w = welfare_max_fee(model, bracket, eps)
    c = utility_max_fee(model, bracket, eps)
    warnings = list(dict.fromkeys(w.warnings + c.warnings))
    if c.x_star_c > w.x_star_w + eps:
        warnings.append("utility-maximising fee exceeds the welfare-maximising fee")
    return WelfareAnalysis(
        x_star_w=w.x_star_w,
        n_at_w=w.n_at_w,
        welfare_at_w=w.welfare_at_w,
        x_star_c=c.x_star_c,
        n_at_c=c.n_at_c,
        marginal_at_c=c.marginal_at_c,
        eta_p=c.eta_p,
        lerner_residual=c.lerner_residual,
        consumer_utility_at_c=c.consumer_utility_at_c,
        iterations=w.iterations + c.iterations,
        warnings=tuple(warnings),
    )


def linearized_recovery(
    v_c: float, v_p: float, t_c: float, t_p: float, eps: float = FEASIBILITY_EPS
) -> float:
    """Utility-maximising fee of the linearised hub.

    With V^C(n) = n*v_c, T^C(n) = n*t_c and n'(X) = 2n/sum_w, the marked-down
    marginal value ``(v_c - t_c) - n/n'`` equals the equal-split fee.
    """
    sum_w = (v_c + v_p) - (t_c + t_p)
    if not sum_w > eps:
        raise Infeasible(sum_w)
    return (v_c - t_c) - 0.5 * sum_w


@dataclass(frozen=True)
class RecoveryBound:
    n: int | None
    supremum: float


def recoverable_value_bound(
    alpha_fn: Callable[[float], float],
    beta_fn: Callable[[float], float],
    i_c: float,
    n_max: int,
    eps: float = FEASIBILITY_EPS,
) -> RecoveryBound:
    """First n <= n_max whose cumulative net value recovers the investment.

    ``alpha_fn(n)`` is the cumulative consumer net value and ``beta_fn(n)``
    the cumulative provider cost after n providers. When nothing recovers
    ``i_c`` the largest attained ``alpha - beta`` is reported as the
    recoverable ceiling.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ns = np.arange(1, int(n_max) + 1, dtype=float)
    net = evaluate(alpha_fn, ns) - evaluate(beta_fn, ns)
    hits = np.nonzero(net - i_c > eps)[0]
    supremum = float(np.max(net))
    if hits.size:
        return RecoveryBound(int(ns[hits[0]]), supremum)
    return RecoveryBound(None, supremum)
