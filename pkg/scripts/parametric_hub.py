"""Compare welfare- and utility-maximising hub fees against brute-force grids.

Runs the quadratic hub V^C = a n - q n^2, T^C = c n with linear supply
n(X) = b X, for the default worked model and a handful of random variants.

    python3 scripts/parametric_hub.py --variants 20
"""

import argparse

import numpy as np

from ecokit import GridSpec, ParametricHubModel, analyze_parametric_hub, grid_max_consumer, grid_max_welfare


def quadratic_model(a, q, c, b):
    return ParametricHubModel(
        n_of_x=lambda x: b * x,
        v_c_of_n=lambda n: a * n - q * n * n,
        t_c_of_n=lambda n: c * n,
        dn_dx=lambda x: b + 0.0 * x,
        dvc_dn=lambda n: a - 2 * q * n,
        dtc_dn=lambda n: c + 0.0 * n,
    )


def report(a, q, c, b, step):
    high = (a - c) / (2 * q * b) + 1
    model = quadratic_model(a, q, c, b)
    res = analyze_parametric_hub(model, (0.0, high))
    g = GridSpec(0.0, high, step)
    w_hat = grid_max_welfare(model, g).x_hat
    c_hat = grid_max_consumer(model, g).x_hat
    print(
        f"{a:.4g},{q:.4g},{c:.4g},{b:.4g},{res.x_star_w:.9g},{w_hat:.6g},"
        f"{res.x_star_c:.9g},{c_hat:.6g},{res.eta_p:.6g},{res.lerner_residual:.2e}"
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--variants", type=int, default=10)
    parser.add_argument("--step", type=float, default=1e-3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print("a,q,c,b,x_w,x_w_grid,x_c,x_c_grid,eta,lerner")
    report(20.0, 0.5, 2.0, 2.0, args.step)
    rng = np.random.default_rng(args.seed)
    for _ in range(args.variants):
        report(rng.uniform(5, 50), rng.uniform(0.05, 1), rng.uniform(0, 3), rng.uniform(0.5, 4), args.step)


if __name__ == "__main__":
    main()
