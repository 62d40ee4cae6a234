"""Tabulate the federated-catalogue fee premium over a data-space fee.

    python3 scripts/gaiax_premium.py --delta-v 4 --t-p 2
"""

import argparse

import numpy as np

from ecokit import ComparisonParams, compare_gaiax_dataspace


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--delta-v", type=float, default=4.0)
    parser.add_argument("--t-p", type=float, default=2.0, help="provider cost in the federated setting")
    parser.add_argument("--points", type=int, default=10)
    args = parser.parse_args()

    print("alpha,x_g,x_d,premium")
    for alpha in np.linspace(0.01, 0.99, args.points):
        cmp = compare_gaiax_dataspace(ComparisonParams(args.delta_v, args.t_p, float(alpha)))
        print(f"{alpha:.4g},{cmp.x_g:.9g},{cmp.x_d:.9g},{cmp.premium:.9g}")
    print(f"# {cmp.note}")


if __name__ == "__main__":
    main()
