"""First-best transaction fees.

Under full information both sides know the admissible fee interval
``(t_p - v_p, v_c - t_c)`` and settle on its midpoint, which splits the
joint surplus equally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FEASIBILITY_EPS, Ecosystem, TransactionTerms, edge_surplus
from .errors import Infeasible, InfeasibleEdge


@dataclass(frozen=True)
class FeeSolution:
    x_star: float
    w_p: float
    w_c: float
    is_subsidy: bool
    bargaining_range: tuple[float, float]

    @property
    def joint_surplus(self) -> float:
        return self.w_p + self.w_c


def equal_split_fee(v_c: float, v_p: float, t_c: float, t_p: float) -> float:
    return 0.5 * ((v_c - v_p) - (t_c - t_p))


def two_actor_fee(terms: TransactionTerms, eps: float = FEASIBILITY_EPS) -> FeeSolution:
    """Solve the 2-actor master equations for the first-best fee.

    Any fee already stored on ``terms`` is ignored. Raises
    :class:`Infeasible` unless ``v_c + v_p > t_c + t_p`` by more than ``eps``.

    >>> two_actor_fee(TransactionTerms(v_p=2, v_c=10, t_p=3, t_c=1)).x_star
    5.0
    """
    margin = (terms.v_c + terms.v_p) - (terms.t_c + terms.t_p)
    if not margin > eps:
        raise Infeasible(margin)
    x = equal_split_fee(terms.v_c, terms.v_p, terms.t_c, terms.t_p)
    s = edge_surplus(terms.with_fee(x))
    return FeeSolution(
        x_star=x,
        w_p=s.w_p,
        w_c=s.w_c,
        is_subsidy=x < 0,
        bargaining_range=(terms.t_p - terms.v_p, terms.v_c - terms.t_c),
    )


def solve_all_fees(eco: Ecosystem, eps: float = FEASIBILITY_EPS) -> Ecosystem:
    """Set every edge's fee to its independent 2-actor solution.

    All-or-nothing: if any edge is infeasible, :class:`InfeasibleEdge`
    names all of them and no fee is assigned.
    """
    fees = {}
    failing = []
    for e in eco.canonical_edges():
        try:
            fees[e.key] = two_actor_fee(e.terms, eps).x_star
        except Infeasible as exc:
            failing.append((e.provider, e.consumer, exc.margin))
    if failing:
        raise InfeasibleEdge(failing)
    return eco.with_fees(fees)


@dataclass(frozen=True)
class SubsidyChain:
    """The ordering V_C > X > T_P a zero-provider-value transaction must satisfy."""

    x: float
    v_c_gt_t_p: bool
    v_c_gt_x: bool
    x_gt_t_p: bool
    provider_participates: bool

    @property
    def holds(self) -> bool:
        return self.v_c_gt_t_p and self.v_c_gt_x and self.x_gt_t_p

    @property
    def first_violation(self) -> str | None:
        for ok, label in (
            (self.v_c_gt_t_p, "V_C > T_P"),
            (self.v_c_gt_x, "V_C > X"),
            (self.x_gt_t_p, "X > T_P"),
        ):
            if not ok:
                return label
        return None


def subsidization_check(
    terms: TransactionTerms, x: float | None = None, eps: float = FEASIBILITY_EPS
) -> SubsidyChain:
    """Diagnose the subsidization chain for a provider without own value.

    The fee is taken from ``x``, else from ``terms.x``, else solved with
    :func:`two_actor_fee` (which raises if the terms are infeasible).
    """
    if terms.v_p != 0:
        raise ValueError(f"subsidization chain needs v_p == 0, got {terms.v_p!r}")
    if x is None:
        x = terms.x if terms.x is not None else two_actor_fee(terms, eps).x_star
    return SubsidyChain(
        x=x,
        v_c_gt_t_p=terms.v_c - terms.t_p > eps,
        v_c_gt_x=terms.v_c - x > eps,
        x_gt_t_p=x - terms.t_p > eps,
        provider_participates=terms.v_p + x - terms.t_p > eps,
    )
