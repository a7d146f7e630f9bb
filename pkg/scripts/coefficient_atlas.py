"""Print the leading moment coefficients C_{j,k} and one term breakdown.

The grid shows the diagonal zeros and the sign pattern; the breakdown for
a chosen (j, k) splits the prediction into its five pieces so the size of
the root-driven exponential correction is visible next to the rational
ones.

Usage:
    python3 scripts/coefficient_atlas.py --max-j 6 --max-k 6 --detail 2 3
"""

import argparse

from hzml.coeffs import asymptotic_coefficient, breakdown


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-j", type=int, default=6)
    ap.add_argument("--max-k", type=int, default=6)
    ap.add_argument(
        "--detail", type=int, nargs=2, default=[2, 3], metavar=("J", "K")
    )
    args = ap.parse_args()

    print("# C_{j,k} (coefficient of T L^{2j+2} in the discrete moment)")
    header = "j\\k " + "".join(f"{k:>12d}" for k in range(args.max_k + 1))
    print(header)
    for j in range(args.max_j + 1):
        row = "".join(
            f"{asymptotic_coefficient(j, k):12.3e}" for k in range(args.max_k + 1)
        )
        print(f"{j:3d} {row}")

    j, k = args.detail
    b = breakdown(j, k, mode="asymptotic")
    print(f"\n# five-term breakdown at (j, k) = ({j}, {k}), per T L^{{2j+2}}")
    scale = b.T * b.L ** (2 * j + 2)
    for name in ("term_delta", "term_cg", "term_u", "term_p2j2", "term_exp"):
        print(f"{name:>10}: {getattr(b, name) / scale:+.6e}")
    print(f"{'total':>10}: {b.per_TL:+.6e}")


if __name__ == "__main__":
    main()
