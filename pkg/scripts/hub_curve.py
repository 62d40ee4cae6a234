"""Sweep the provider count of a fixed hub and print its feasibility curve.

    python3 scripts/hub_curve.py --v-c 10 --t-c 1 --t-p 3 --i-c 120 --n-max 30
"""

import argparse

from ecokit import provider_threshold, uniform_hub_fee
from ecokit.hub import HubParams, curve_csv, hub_feasibility_curve


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--v-c", type=float, default=10.0)
    parser.add_argument("--t-c", type=float, default=1.0)
    parser.add_argument("--t-p", type=float, default=3.0)
    parser.add_argument("--i-c", type=float, default=120.0)
    parser.add_argument("--n-max", type=int, default=30)
    parser.add_argument("--out", help="write the curve CSV here")
    args = parser.parse_args()

    th = provider_threshold(args.v_c, args.t_c, args.t_p, args.i_c)
    print(f"break-even n~ = {th.n_tilde:g}, first feasible n = {th.n_min}")

    rows = hub_feasibility_curve(args.v_c, args.t_c, args.t_p, args.i_c, range(1, args.n_max + 1))
    text = curve_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")

    # the fee falls towards the no-investment level as n grows
    print("n,x_star")
    for n in (th.n_min, 2 * th.n_min, 10 * th.n_min) if th.n_min else ():
        fee = uniform_hub_fee(HubParams(0.0, args.t_p, args.v_c, args.t_c, args.i_c, n))
        print(f"{n},{fee.x_star:.9g}")


if __name__ == "__main__":
    main()
