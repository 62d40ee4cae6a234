"""Ecosystem structure, per-edge surplus and the internal-feasibility master equation.

An ecosystem is a set of participants plus directed provider -> consumer
relations; every relation carries values, transaction costs and optionally
a fee, all on one common utility scale and aggregated over one time window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Literal

from .errors import MissingFee

FEASIBILITY_EPS = 1e-9

Role = Literal["provider", "consumer"]


@dataclass(frozen=True)
class TransactionTerms:
    """Values, costs and fee of one provider -> consumer transaction.

    Signs are not enforced here so that malformed input can still be
    built and reported by :func:`validate_ecosystem`; only non-finite
    numbers are rejected outright.
    """

    v_p: float
    v_c: float
    t_p: float
    t_c: float
    x: float | None = None

    def __post_init__(self):
        for name in ("v_p", "v_c", "t_p", "t_c", "x"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")

    def with_fee(self, x: float | None) -> TransactionTerms:
        return replace(self, x=x)

    @property
    def delta_v(self) -> float:
        """Gross value difference V^C - V^P."""
        return self.v_c - self.v_p

    @property
    def total_margin(self) -> float:
        """(v_p + v_c) - (t_p + t_c); independent of the fee."""
        return (self.v_p + self.v_c) - (self.t_p + self.t_c)

    def violations(self) -> list[str]:
        out = []
        for name, label in (("v_p", "value"), ("v_c", "value"), ("t_p", "transaction cost"), ("t_c", "transaction cost")):
            value = getattr(self, name)
            if value < 0:
                out.append(f"negative {label} {name}={value:.9g}")
        return out


@dataclass(frozen=True)
class Participant:
    id: str
    investment: float = 0.0


@dataclass(frozen=True)
class Edge:
    provider: str
    consumer: str
    terms: TransactionTerms

    @property
    def key(self) -> tuple[str, str]:
        return (self.provider, self.consumer)

    def __str__(self):
        return f"{self.provider}->{self.consumer}"


@dataclass(frozen=True)
class Ecosystem:
    participants: tuple[Participant, ...] = ()
    edges: tuple[Edge, ...] = ()
    time_window: str = ""

    def __post_init__(self):
        object.__setattr__(self, "participants", tuple(self.participants))
        object.__setattr__(self, "edges", tuple(self.edges))

    @classmethod
    def build(cls, participants, edges, time_window: str = "") -> Ecosystem:
        """Convenience constructor.

        ``participants`` may be ids or ``(id, investment)`` pairs; ``edges``
        are ``(provider, consumer, TransactionTerms)`` triples.
        """
        ps = []
        for p in participants:
            if isinstance(p, Participant):
                ps.append(p)
            elif isinstance(p, str):
                ps.append(Participant(p))
            else:
                ps.append(Participant(*p))
        es = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
        return cls(tuple(ps), tuple(es), time_window)

    def canonical_edges(self) -> list[Edge]:
        return sorted(self.edges, key=lambda e: e.key)

    @property
    def providers(self) -> set[str]:
        return {e.provider for e in self.edges}

    @property
    def consumers(self) -> set[str]:
        return {e.consumer for e in self.edges}

    def participant(self, pid: str) -> Participant:
        for p in self.participants:
            if p.id == pid:
                return p
        raise KeyError(pid)

    def with_fees(self, fees: dict[tuple[str, str], float | None]) -> Ecosystem:
        edges = tuple(
            Edge(e.provider, e.consumer, e.terms.with_fee(fees[e.key])) if e.key in fees else e
            for e in self.edges
        )
        return replace(self, edges=edges)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_ecosystem(eco: Ecosystem) -> ValidationReport:
    """List every violated structural invariant; an empty report means valid."""
    out = []
    seen: set[str] = set()
    for p in eco.participants:
        if p.id in seen:
            out.append(f"duplicate participant id {p.id!r}")
        seen.add(p.id)
        if not math.isfinite(p.investment):
            out.append(f"non-finite investment for {p.id!r}")
        elif p.investment < 0:
            out.append(f"negative investment {p.investment:.9g} for {p.id!r}")

    edge_keys: set[tuple[str, str]] = set()
    for e in eco.edges:
        for end in (e.provider, e.consumer):
            if end not in seen:
                out.append(f"unknown participant {end!r} on edge {e}")
        if e.provider == e.consumer:
            out.append(f"self-loop on {e.provider!r}")
        if e.key in edge_keys:
            out.append(f"duplicate edge {e}")
        edge_keys.add(e.key)
        out.extend(f"{v} on edge {e}" for v in e.terms.violations())
    return ValidationReport(tuple(out))


def sigma(edges: Iterable[Edge], valuation: Callable[[Edge], float]) -> float:
    """Sum ``valuation`` over ``edges``.

    Edges are visited in (provider, consumer) order and summed with
    ``math.fsum``, so the result does not depend on the input order.
    """
    return math.fsum(valuation(e) for e in sorted(edges, key=lambda e: e.key))


def project(terms: TransactionTerms, role: Role) -> tuple[float, float]:
    """(value, cost) seen by one side of the transaction."""
    if role == "provider":
        return terms.v_p, terms.t_p
    if role == "consumer":
        return terms.v_c, terms.t_c
    raise ValueError(f"role must be 'provider' or 'consumer', got {role!r}")


@dataclass(frozen=True)
class EdgeSurplus:
    w_p: float
    w_c: float
    margin: float

    def participation(self, eps: float = FEASIBILITY_EPS) -> bool:
        return self.w_p > eps and self.w_c > eps


def edge_surplus(terms: TransactionTerms) -> EdgeSurplus:
    if terms.x is None:
        raise MissingFee()
    w_p = terms.v_p + terms.x - terms.t_p
    w_c = terms.v_c - terms.x - terms.t_c
    return EdgeSurplus(w_p, w_c, w_p + w_c)


@dataclass(frozen=True)
class EdgeReport:
    edge: Edge
    surplus: EdgeSurplus | None
    feasible: bool | None


@dataclass(frozen=True)
class FeasibilityReport:
    total_margin: float
    investments: float
    per_edge: tuple[EdgeReport, ...] = field(default=())
    # None when at least one edge has no fee and participation cannot be judged
    all_participation_met: bool | None = None
    internally_feasible: bool = False


def internal_feasibility(
    eco: Ecosystem, include_investments: bool = True, eps: float = FEASIBILITY_EPS
) -> FeasibilityReport:
    """Evaluate the ecosystem-wide master equation.

    The total margin is fee-free: sum over relations of provider net value
    plus consumer net value, less the ex-ante investments of every
    participant acting as a consumer.
    """
    edges = eco.canonical_edges()
    provider_net = sigma(edges, lambda e: e.terms.v_p - e.terms.t_p)
    consumer_net = sigma(edges, lambda e: e.terms.v_c - e.terms.t_c)
    investments = 0.0
    if include_investments:
        consumers = eco.consumers
        investments = math.fsum(
            p.investment for p in sorted(eco.participants, key=lambda p: p.id) if p.id in consumers
        )
    total = provider_net + consumer_net - investments

    per_edge = []
    all_met: bool | None = True
    for e in edges:
        if e.terms.x is None:
            per_edge.append(EdgeReport(e, None, None))
            all_met = None
            continue
        s = edge_surplus(e.terms)
        ok = s.participation(eps)
        per_edge.append(EdgeReport(e, s, ok))
        if all_met is not None and not ok:
            all_met = False
    if not edges:
        all_met = None

    return FeasibilityReport(
        total_margin=total,
        investments=investments,
        per_edge=tuple(per_edge),
        all_participation_met=all_met,
        internally_feasible=total > eps,
    )
