"""Print the exact noise scales of the sampled recursions.

sigma_eps(alpha, a, h) for the Cosine recursion over a small (alpha, a)
grid, and the per-step scales sigma_W(alpha, a, h, k) of the
QuadraticGaussian recursion, which stabilize as k grows.
"""

import argparse

from gouproc.simulate import sigma_eps_cosine, sigma_W_quadratic


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--h", type=float, default=1.0)
    args = ap.parse_args()

    print(f"sigma_eps for the Cosine recursion, h = {args.h}")
    print(f"{'alpha':>8} {'a':>6} {'sigma_eps':>12}")
    for alpha in (1.1, 1.5, 2.0):
        for a in (1.0, 2.0):
            print(f"{alpha:>8.2f} {a:>6.1f} {sigma_eps_cosine(alpha, a, args.h):>12.6f}")

    print()
    print(f"sigma_W for the QuadraticGaussian recursion, a = 1, h = {args.h}")
    print(f"{'alpha':>8} {'k':>6} {'sigma_W':>12}")
    for alpha in (1.5, 2.0):
        for k in (0, 1, 2, 5, 8):
            print(f"{alpha:>8.2f} {k:>6d} {sigma_W_quadratic(alpha, 1.0, args.h, k):>12.6f}")


if __name__ == "__main__":
    main()
