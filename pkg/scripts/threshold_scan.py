"""Monte Carlo percolation probability of G(n, p) on a geometric grid of p."""

import argparse

from hbootstrap.analyzers import percolation_probability
from hbootstrap.rules import parse_rule


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rule", default="clique 4")
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--centre", type=float, default=None, help="default n^(-1/lambda)")
    ap.add_argument("--points", type=int, default=7)
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()
    rule = parse_rule(args.rule)
    centre = args.centre or args.n ** (-1 / float(rule.lam))
    half = args.points // 2
    print("p,estimate,lo,hi")
    for j in range(-half, half + 1):
        p = centre * 3 ** (j / 3)
        est = percolation_probability(rule, args.n, p, args.trials, args.seed + j, jobs=args.jobs)
        print(f"{p:.5f},{est.estimate:.3f},{est.lo:.3f},{est.hi:.3f}")


if __name__ == "__main__":
    main()
