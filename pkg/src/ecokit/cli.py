"""Command-line front end.

    ecokit <command> <scenario-file> [--out CSV] [--grid low:high:step] [--n-range a..b]

Exit codes: 0 feasible/solved, 1 infeasible, 2 input error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .bargaining import solve_all_fees, two_actor_fee
from .core import FEASIBILITY_EPS, internal_feasibility, validate_ecosystem
from .errors import EcokitError, InfeasibleError, InputError, NumericalError
from .extensions import classify_structure, compare_gaiax_dataspace, federator_adjust
from .hub import (
    analyze_parametric_hub,
    curve_csv,
    hub_feasibility_curve,
    hub_net_surplus,
    provider_threshold,
    uniform_hub_fee,
)
from .oracle import GridSpec, grid_max_consumer, grid_max_welfare
from .numerics import cumulative_trapezoid, evaluate
from .scenario import Scenario, load_scenario
from .viability import consumer_engagement, general_feasibility, provider_engagement, viability_region

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

COMMANDS = ("check", "solve-fees", "hub", "viability", "compare", "classify")


def fmt(x) -> str:
    if x is None:
        return "n/a"
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x) + 0.0:.9g}"


def line(label: str, value) -> None:
    print(f"{label:<28}{value if isinstance(value, str) else fmt(value)}")


def write_csv(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_eps() -> float:
    raw = os.environ.get("ECOKIT_EPS")
    if raw is None or raw == "":
        return FEASIBILITY_EPS
    try:
        eps = float(raw)
    except ValueError:
        raise InputError(f"ECOKIT_EPS must be a number, got {raw!r}") from None
    if not eps >= 0:
        raise InputError(f"ECOKIT_EPS must be non-negative, got {raw!r}")
    return eps


def parse_n_range(text: str) -> range:
    body = text[2:] if text.startswith("n=") else text
    try:
        first, last = (int(s) for s in body.split(".."))
    except ValueError:
        raise InputError(f"n range must look like a..b, got {text!r}") from None
    if first < 1 or last < first:
        raise InputError(f"n range must satisfy 1 <= a <= b, got {text!r}")
    return range(first, last + 1)


def _unsupported(command: str, sc: Scenario):
    raise InputError(f"command {command!r} does not apply to scenario kind {sc.kind!r}")


def _require_valid(eco) -> None:
    report = validate_ecosystem(eco)
    if not report.ok:
        raise InputError("invalid ecosystem: " + "; ".join(report.violations))


def _print_feasibility(report) -> None:
    for r in report.per_edge:
        if r.surplus is None:
            line(f"edge {r.edge}", f"margin {fmt(r.edge.terms.total_margin)} (no fee)")
        else:
            s = r.surplus
            line(
                f"edge {r.edge}",
                f"x={fmt(r.edge.terms.x)} w_p={fmt(s.w_p)} w_c={fmt(s.w_c)} "
                f"participation={fmt(r.feasible)}",
            )
    line("investments", report.investments)
    line("total margin", report.total_margin)
    line("participation met", report.all_participation_met)
    line("internally feasible", report.internally_feasible)


def _hub_margin(p) -> float:
    return p.n * ((p.v_c - p.t_c) - (p.t_p - p.v_p)) - p.i_c


# -- commands ---------------------------------------------------------------


def cmd_check(sc: Scenario, args, eps: float) -> int:
    b = sc.body
    if sc.kind == "ecosystem":
        eco = b.to_ecosystem()
        _require_valid(eco)
        report = internal_feasibility(eco, include_investments=True, eps=eps)
        _print_feasibility(report)
        return EXIT_OK if report.internally_feasible else EXIT_INFEASIBLE
    if sc.kind == "viability":
        margin, ok = general_feasibility(b.profile(), eps)
        line("n consumers", b.n)
        line("m providers", b.m)
        line("margin", margin)
        line("feasible", ok)
        return EXIT_OK if ok else EXIT_INFEASIBLE
    if sc.kind == "hub":
        p = b.to_params()
        margin = _hub_margin(p)
        th = provider_threshold(p.v_c, p.t_c, p.t_p - p.v_p, p.i_c, eps)
        line("n providers", p.n)
        line("hub margin", margin)
        line("threshold n~", th.n_tilde)
        line("minimum n", th.n_min)
        line("feasible", margin > eps)
        return EXIT_OK if margin > eps else EXIT_INFEASIBLE
    if sc.kind == "federator":
        adj = federator_adjust(b.terms.to_terms(), b.to_federator(), eps)
        margin = adj.terms.total_margin
        line("adjusted t_p", adj.terms.t_p)
        line("adjusted t_c", adj.terms.t_c)
        line("transaction margin", margin)
        line("federator margin", adj.federator_margin)
        line("federator feasible", adj.federator_feasible)
        ok = margin > eps and adj.federator_feasible
        line("feasible", ok)
        return EXIT_OK if ok else EXIT_INFEASIBLE
    _unsupported("check", sc)


def cmd_solve_fees(sc: Scenario, args, eps: float) -> int:
    b = sc.body
    if sc.kind == "ecosystem":
        eco = b.to_ecosystem()
        _require_valid(eco)
        solved = solve_all_fees(eco, eps)
        rows = ["provider,consumer,x_star,w_p,w_c,is_subsidy"]
        for e in solved.canonical_edges():
            fee = two_actor_fee(e.terms, eps)
            lo, hi = fee.bargaining_range
            line(
                f"edge {e}",
                f"x*={fmt(fee.x_star)} range=({fmt(lo)}, {fmt(hi)}) w_p={fmt(fee.w_p)} "
                f"w_c={fmt(fee.w_c)} subsidy={fmt(fee.is_subsidy)}",
            )
            rows.append(
                f"{e.provider},{e.consumer},{fmt(fee.x_star)},{fmt(fee.w_p)},{fmt(fee.w_c)},{fmt(fee.is_subsidy)}"
            )
        report = internal_feasibility(solved, include_investments=True, eps=eps)
        line("total margin", report.total_margin)
        line("participation met", report.all_participation_met)
        line("internally feasible", report.internally_feasible)
        if args.out:
            write_csv(args.out, "\n".join(rows) + "\n")
        return EXIT_OK if report.internally_feasible else EXIT_INFEASIBLE
    if sc.kind == "hub":
        p = b.to_params()
        fee = uniform_hub_fee(p, eps)
        _print_fee(fee)
        line("hub net surplus", hub_net_surplus(p, fee.x_star))
        return EXIT_OK
    if sc.kind == "federator":
        adj = federator_adjust(b.terms.to_terms(), b.to_federator(), eps)
        fee = two_actor_fee(adj.terms, eps)
        _print_fee(fee)
        line("federator margin", adj.federator_margin)
        line("federator feasible", adj.federator_feasible)
        return EXIT_OK if adj.federator_feasible else EXIT_INFEASIBLE
    _unsupported("solve-fees", sc)


def _print_fee(fee) -> None:
    lo, hi = fee.bargaining_range
    line("x*", fee.x_star)
    line("bargaining range", f"({fmt(lo)}, {fmt(hi)})")
    line("w_p", fee.w_p)
    line("w_c", fee.w_c)
    line("joint surplus", fee.joint_surplus)
    line("subsidy", fee.is_subsidy)


def cmd_hub(sc: Scenario, args, eps: float) -> int:
    if sc.kind == "hub":
        return _fixed_hub(sc.body, args, eps)
    if sc.kind == "parametric_hub":
        return _parametric_hub(sc.body, args, eps)
    _unsupported("hub", sc)


def _fixed_hub(b, args, eps: float) -> int:
    p = b.to_params()
    t_p_eff = p.t_p - p.v_p
    th = provider_threshold(p.v_c, p.t_c, t_p_eff, p.i_c, eps)
    line("per-provider margin", th.per_provider_margin)
    line("threshold n~", th.n_tilde)
    line("minimum n", th.n_min)

    if args.n_range:
        ns = parse_n_range(args.n_range)
    elif b.n_range:
        ns = range(b.n_range[0], b.n_range[1] + 1)
    else:
        ns = range(1, max(p.n, 2 * (th.n_min or 1)) + 1)
    rows = hub_feasibility_curve(p.v_c, p.t_c, t_p_eff, p.i_c, ns, eps)
    text = curve_csv(rows)
    if args.out:
        write_csv(args.out, text)
        line("curve rows written", len(rows))
    else:
        sys.stdout.write(text)

    try:
        fee = uniform_hub_fee(p, eps)
    except InfeasibleError as exc:
        line(f"fee at n={p.n}", f"infeasible ({exc})")
        return EXIT_INFEASIBLE
    line(f"fee at n={p.n}", fee.x_star)
    _print_fee(fee)
    line("hub net surplus", hub_net_surplus(p, fee.x_star))
    return EXIT_OK


def _parametric_hub(b, args, eps: float) -> int:
    model = b.to_model()
    analysis = analyze_parametric_hub(model, b.bracket, eps)
    line("derivatives", model.derivative_mode)
    line("bracket", f"[{fmt(b.bracket[0])}, {fmt(b.bracket[1])}]")
    line("welfare-max fee X*_W", analysis.x_star_w)
    line("n at X*_W", analysis.n_at_w)
    line("total welfare at X*_W", analysis.welfare_at_w)
    line("utility-max fee X*_C", analysis.x_star_c)
    line("n at X*_C", analysis.n_at_c)
    line("marginal value at X*_C", analysis.marginal_at_c)
    line("hub utility at X*_C", analysis.consumer_utility_at_c)
    line("supply elasticity eta_P", analysis.eta_p)
    line("Lerner residual", analysis.lerner_residual)

    grid = GridSpec.parse(args.grid) if args.grid else GridSpec(b.bracket[0], b.bracket[1], b.grid_step)
    w_hat = grid_max_welfare(model, grid)
    c_hat = grid_max_consumer(model, grid)
    line("oracle X_W (grid)", w_hat.x_hat)
    line("oracle X_C (grid)", c_hat.x_hat)
    agree = abs(w_hat.x_hat - analysis.x_star_w) <= grid.step and abs(c_hat.x_hat - analysis.x_star_c) <= grid.step
    line("oracle agreement", agree)
    for w in analysis.warnings:
        line("warning", w)

    if args.out:
        xs = grid.points()
        ns = evaluate(model.n_of_x, xs)
        w_c = evaluate(model.v_c_of_n, ns) - ns * xs - evaluate(model.t_c_of_n, ns)
        welfare = w_c + cumulative_trapezoid(ns, xs)
        rows = ["x,n,consumer_utility,welfare"]
        rows += [f"{fmt(x)},{fmt(n)},{fmt(u)},{fmt(w)}" for x, n, u, w in zip(xs, ns, w_c, welfare)]
        write_csv(args.out, "\n".join(rows) + "\n")
    return EXIT_OK


def cmd_viability(sc: Scenario, args, eps: float) -> int:
    if sc.kind != "viability":
        _unsupported("viability", sc)
    b = sc.body
    region = viability_region(b.v_c, b.t_c, b.i_c, b.t_p, b.n_max, b.m_max, eps)
    line("boundary slope dm/dn", region.boundary_slope)
    line("boundary intercept", region.boundary_intercept)
    line("feasible cells", sum(c.feasible for c in region.cells))
    line("grid cells", len(region.cells))
    if args.out:
        write_csv(args.out, region.to_csv())
    else:
        sys.stdout.write(region.to_csv())
    if b.n is not None and b.m is not None:
        margin, ok = general_feasibility(b.profile(), eps)
        line(f"margin at ({b.n}, {b.m})", margin)
        line("feasible", ok)
    return EXIT_OK


def cmd_compare(sc: Scenario, args, eps: float) -> int:
    if sc.kind != "compare":
        _unsupported("compare", sc)
    b = sc.body
    cmp = compare_gaiax_dataspace(b.to_params())
    line("Gaia-X fee x_g", cmp.x_g)
    line("data-space fee x_d", cmp.x_d)
    line("premium x_g - x_d", cmp.premium)
    line("Gaia-X consumer cost", cmp.t_c_g)
    line("data-space cost t_d", cmp.t_d)
    line("note", cmp.note)
    if b.consumer is not None:
        pref = consumer_engagement(b.consumer.t_c_eco, b.consumer.t_c_std, eps)
        line("consumer prefers", pref.value)
    if b.provider is not None:
        pe = provider_engagement(
            b.provider.v_p_eco, b.provider.v_p_std, b.provider.t_p_eco, b.provider.t_p_std, eps
        )
        line("provider case", pe.case)
        line("provider dV, dT", f"{fmt(pe.delta_v)}, {fmt(pe.delta_t)}")
        line("provider prefers ecosystem", pe.prefers_ecosystem)
    return EXIT_OK


def cmd_classify(sc: Scenario, args, eps: float) -> int:
    if sc.kind != "ecosystem":
        _unsupported("classify", sc)
    eco = sc.body.to_ecosystem()
    _require_valid(eco)
    result = classify_structure(eco, value_visible=not args.values_hidden, eps=eps)
    line("structure", result.label.value)
    line("reason", result.reason)
    return EXIT_OK


DISPATCH = {
    "check": cmd_check,
    "solve-fees": cmd_solve_fees,
    "hub": cmd_hub,
    "viability": cmd_viability,
    "compare": cmd_compare,
    "classify": cmd_classify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecokit", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("scenario", type=Path)
    parser.add_argument("--out", help="CSV output file")
    parser.add_argument("--grid", help="oracle grid low:high:step (parametric hubs)")
    parser.add_argument("--n-range", dest="n_range", help="provider counts a..b for the hub curve")
    parser.add_argument("--curve", dest="n_range", help="alias of --n-range, e.g. n=18..22")
    parser.add_argument(
        "--values-hidden", action="store_true", help="classify without looking at values"
    )
    return parser


def run_command(command: str, scenario: Scenario, args, eps: float) -> int:
    return DISPATCH[command](scenario, args, eps)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        eps = read_eps()
        scenario = load_scenario(args.scenario)
        return run_command(args.command, scenario, args, eps)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}")
        return EXIT_INFEASIBLE
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except EcokitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
