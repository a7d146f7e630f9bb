"""Map the truncated-exponential roots to zero locations of the window sum.

For each k the script lists the roots theta_g of sum_{mu<=k} theta^mu/mu!,
the first-order zero seeds z_g = 1 - 2 theta_g / L at height T, and the
Newton-refined zeros of the windowed zeta combination next to them.  The
refinement displacement shrinking like 1/L^2 is the point of the table.

Usage:
    python3 scripts/root_atlas.py --orders 1 2 3 --T 1e6
"""

import argparse

from hzml.hardyz import script_zk_root, window_log
from hzml.thetaroots import trunc_exp_roots, z_from_theta


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--orders", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--T", type=float, default=1e6)
    args = ap.parse_args()

    L = window_log(args.T)
    print(f"# T = {args.T:g}, L = {L:.6f}, 10/L^2 = {10.0 / L**2:.4e}")
    for k in args.orders:
        ts = trunc_exp_roots(k)
        print(f"\n# k = {k}")
        print(f"{'theta_g':>24} {'seed z_g':>24} {'|refined - seed|':>18}")
        for theta in ts.roots:
            seed = z_from_theta(theta, args.T)
            root = script_zk_root(k, args.T, seed)
            print(
                f"{theta.real:+11.6f}{theta.imag:+11.6f}i "
                f"{seed.real:+11.6f}{seed.imag:+11.6f}i "
                f"{abs(root - seed):18.4e}"
            )


if __name__ == "__main__":
    main()
