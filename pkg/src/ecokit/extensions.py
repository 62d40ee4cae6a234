"""Federator fees, the Gaia-X / data-space fee comparison, and structure classification."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import FEASIBILITY_EPS, Ecosystem, TransactionTerms


def _check_non_negative(obj, names):
    for name in names:
        value = getattr(obj, name)
        if not math.isfinite(value) or value < 0:
            raise ValueError(f"{name} must be finite and non-negative, got {value!r}")


@dataclass(frozen=True)
class FederatorTerms:
    f_p: float
    f_c: float
    t_f: float

    def __post_init__(self):
        _check_non_negative(self, ("f_p", "f_c", "t_f"))

    @property
    def margin(self) -> float:
        """Federator net value f_p + f_c - t_f."""
        return self.f_p + self.f_c - self.t_f


@dataclass(frozen=True)
class FederatorAdjustment:
    terms: TransactionTerms
    federator_margin: float
    federator_feasible: bool


def federator_adjust(
    terms: TransactionTerms, fed: FederatorTerms, eps: float = FEASIBILITY_EPS
) -> FederatorAdjustment:
    """Fold per-transaction federator fees into each side's transaction cost.

    Everything downstream (fees, feasibility) then runs on the adjusted
    terms; the federator's own participation is reported separately.
    """
    adjusted = TransactionTerms(
        v_p=terms.v_p,
        v_c=terms.v_c,
        t_p=terms.t_p + fed.f_p,
        t_c=terms.t_c + fed.f_c,
        x=terms.x,
    )
    return FederatorAdjustment(adjusted, fed.margin, fed.margin > eps)


EQUAL_POWER_NOTE = (
    "assumes equal bargaining power; platform-style hub-and-spoke offerings may not fit"
)


@dataclass(frozen=True)
class ComparisonParams:
    delta_v: float
    t_p_g: float
    alpha: float
    beta: float | None = None
    t_d: float | None = None

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha!r}")
        if not math.isfinite(self.delta_v):
            raise ValueError("delta_v must be finite")
        if not math.isfinite(self.t_p_g) or self.t_p_g < 0:
            raise ValueError(f"t_p_g must be finite and non-negative, got {self.t_p_g!r}")
        if self.beta is not None and not (math.isfinite(self.beta) and self.beta > 0):
            raise ValueError(f"beta must be positive, got {self.beta!r}")
        if self.t_d is not None and not (math.isfinite(self.t_d) and self.t_d >= 0):
            raise ValueError(f"t_d must be non-negative, got {self.t_d!r}")

    @property
    def t_c_g(self) -> float:
        return self.alpha * self.t_p_g

    @property
    def data_space_cost(self) -> float | None:
        if self.t_d is not None:
            return self.t_d
        if self.beta is not None:
            return self.beta * self.t_p_g
        return None


@dataclass(frozen=True)
class FeeComparison:
    x_g: float
    x_d: float
    premium: float
    t_c_g: float
    t_d: float | None
    note: str = EQUAL_POWER_NOTE


def compare_gaiax_dataspace(p: ComparisonParams) -> FeeComparison:
    """Equal-split fees with asymmetric (Gaia-X) versus symmetric (data space) costs.

    With consumer cost ``alpha * t_p_g`` the provider's extra cost is half
    passed through, so the premium is ``(1 - alpha) * t_p_g / 2``. The
    symmetric data-space cost drops out of its fee entirely.
    """
    x_g = 0.5 * (p.delta_v + (1 - p.alpha) * p.t_p_g)
    x_d = 0.5 * p.delta_v
    return FeeComparison(x_g, x_d, x_g - x_d, p.t_c_g, p.data_space_cost)


class StructureClass(str, enum.Enum):
    INDETERMINATE = "indeterminate"
    ECOSYSTEM_PROPER = "ecosystem-proper"
    MARKET_ARRANGEMENT = "market-arrangement"


PROXY_NOTE = (
    "proxy rule: ecosystem-proper iff some provider draws value beyond the fee (v_p > eps)"
)


@dataclass(frozen=True)
class Classification:
    label: StructureClass
    reason: str


def classify_structure(
    eco: Ecosystem, value_visible: bool = True, eps: float = FEASIBILITY_EPS
) -> Classification:
    """Tell an ecosystem proper from a plain market arrangement.

    The relation graph alone cannot decide it, so without visible values
    the answer is always indeterminate.
    """
    if not value_visible:
        return Classification(
            StructureClass.INDETERMINATE,
            "values hidden: participants and relations alone do not identify an ecosystem",
        )
    valued = [str(e) for e in eco.canonical_edges() if e.terms.v_p > eps]
    if valued:
        return Classification(
            StructureClass.ECOSYSTEM_PROPER,
            f"{PROXY_NOTE}; provider value on {', '.join(valued)}",
        )
    return Classification(
        StructureClass.MARKET_ARRANGEMENT, f"{PROXY_NOTE}; no edge carries provider value"
    )
