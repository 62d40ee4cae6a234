"""Map the (n consumers, m providers) viability region and draw it as text.

    python3 scripts/viability_region.py --n-max 12 --m-max 30
"""

import argparse

from ecokit import viability_region


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--v-c", type=float, default=10.0)
    parser.add_argument("--t-c", type=float, default=1.0)
    parser.add_argument("--i-c", type=float, default=2.0)
    parser.add_argument("--t-p", type=float, default=3.0)
    parser.add_argument("--n-max", type=int, default=12)
    parser.add_argument("--m-max", type=int, default=30)
    parser.add_argument("--out", help="write the full grid as CSV")
    args = parser.parse_args()

    region = viability_region(args.v_c, args.t_c, args.i_c, args.t_p, args.n_max, args.m_max)
    print(f"boundary m = {region.boundary_slope:.6g} * n")
    # rows are n (top = largest), columns are m; '#' marks feasible cells
    for n in range(args.n_max, -1, -1):
        feasible = set(region.feasible_ms(n))
        print(f"{n:>4} " + "".join("#" if m in feasible else "." for m in range(args.m_max + 1)))
    print("     m = 0.." + str(args.m_max))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(region.to_csv())


if __name__ == "__main__":
    main()
