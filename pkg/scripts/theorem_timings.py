"""Ambient dimension, closure dimension and wall time for the generation check on one algebra."""

import argparse

from liewedge.rootsys import build_root_system
from liewedge.verify import Limits, nonempty_subsets, verify_theorem


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--type", default="G")
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--max-ambient", type=int, default=6000)
    args = ap.parse_args()

    n = build_root_system(args.type, args.rank).n_positive
    limits = Limits(max_ambient=args.max_ambient)
    print(f"{'X':>10s} {'k':>3s} {'ambient':>8s} {'V':>6s} {'ms':>8s}  outcome")
    for X in nonempty_subsets(args.rank):
        for k in range(1, n + 1):
            r = verify_theorem(args.type, args.rank, X, k, limits)
            print(f"{str(X):>10s} {k:3d} {r.dims.get('ambient', 0):8d} {r.dims.get('dim_V', 0):6d} "
                  f"{r.elapsed_ms:8.1f}  {r.outcome}")


if __name__ == "__main__":
    main()
