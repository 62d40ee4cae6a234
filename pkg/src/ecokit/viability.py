"""Averaged n-consumer / m-provider feasibility and the engagement comparisons."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from .core import FEASIBILITY_EPS
from .errors import AmbiguousCase


@dataclass(frozen=True)
class AverageProfile:
    n: int
    m: int
    v_c: float
    t_c: float
    i_c: float
    t_p: float

    def __post_init__(self):
        for name in ("n", "m"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        for name in ("v_c", "t_c", "i_c", "t_p"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")


class Feasibility(NamedTuple):
    margin: float
    feasible: bool


def general_feasibility(p: AverageProfile, eps: float = FEASIBILITY_EPS) -> Feasibility:
    """n*(v_c - t_c - i_c) - m*t_p and whether it clears ``eps``."""
    margin = p.n * (p.v_c - p.t_c - p.i_c) - p.m * p.t_p + 0.0
    return Feasibility(margin, margin > eps)


@dataclass(frozen=True)
class RegionCell:
    n: int
    m: int
    margin: float
    feasible: bool


@dataclass(frozen=True)
class ViabilityRegion:
    cells: tuple[RegionCell, ...]
    # boundary line m = slope * n + intercept; slope is inf when t_p == 0
    boundary_slope: float
    boundary_intercept: float = 0.0

    def feasible_ms(self, n: int) -> list[int]:
        return [c.m for c in self.cells if c.n == n and c.feasible]

    def to_csv(self) -> str:
        lines = ["n,m,margin,feasible"]
        lines += [f"{c.n},{c.m},{c.margin:.9g},{str(c.feasible).lower()}" for c in self.cells]
        return "\n".join(lines) + "\n"


def viability_region(
    v_c: float,
    t_c: float,
    i_c: float,
    t_p: float,
    n_max: int,
    m_max: int,
    eps: float = FEASIBILITY_EPS,
) -> ViabilityRegion:
    """Evaluate the averaged feasibility margin on the integer grid 0..n_max x 0..m_max."""
    if n_max < 1 or m_max < 1:
        raise ValueError("n_max and m_max must be >= 1")
    cells = []
    for n in range(n_max + 1):
        for m in range(m_max + 1):
            margin, ok = general_feasibility(AverageProfile(n, m, v_c, t_c, i_c, t_p), eps)
            cells.append(RegionCell(n, m, margin, ok))
    per_consumer = v_c - t_c - i_c
    slope = per_consumer / t_p if t_p > 0 else math.inf
    return ViabilityRegion(tuple(cells), slope)


class Preference(str, enum.Enum):
    ECOSYSTEM = "ecosystem"
    STANDARD = "standard"


def consumer_engagement(t_c_eco: float, t_c_std: float, eps: float = FEASIBILITY_EPS) -> Preference:
    """A consumer's value and fee are the same either way, so only costs decide."""
    return Preference.ECOSYSTEM if t_c_eco < t_c_std - eps else Preference.STANDARD


@dataclass(frozen=True)
class ProviderEngagement:
    case: str
    prefers_ecosystem: bool
    delta_v: float
    delta_t: float


def provider_engagement(
    v_p_eco: float,
    v_p_std: float,
    t_p_eco: float,
    t_p_std: float,
    eps: float = FEASIBILITY_EPS,
) -> ProviderEngagement:
    """Classify the provider's switch into cases a-d and decide preference.

    a: more value, lower cost; b: more value, higher cost; c: no more
    value, lower cost; d: no more value, higher cost. Deltas within
    ``eps`` of zero raise :class:`AmbiguousCase`.
    """
    dv = v_p_eco - v_p_std
    dt = t_p_eco - t_p_std
    if abs(dv) <= eps or abs(dt) <= eps:
        raise AmbiguousCase(dv, dt)
    if dv > 0:
        case = "a" if dt < 0 else "b"
    else:
        case = "c" if dt < 0 else "d"
    return ProviderEngagement(case, dv > dt + eps, dv, dt)
