"""Exhaustive maximum running time and weak saturation numbers for small n."""

import argparse

from hbootstrap.analyzers import brute_force_max_running_time, brute_force_weak_saturation
from hbootstrap.rules import parse_rule


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rules", default="clique 3;clique 4;cycle 4;clique-plus-pendant 3")
    ap.add_argument("--max-n", type=int, default=7)
    args = ap.parse_args()
    print("rule,n,max_time,wsat")
    for spec in args.rules.split(";"):
        rule = parse_rule(spec)
        for n in range(rule.v, args.max_n + 1):
            mt = brute_force_max_running_time(rule, n).value
            ws = brute_force_weak_saturation(rule, n).value
            print(f"{spec},{n},{mt},{ws}")


if __name__ == "__main__":
    main()
