"""Search for the smallest verified gadget layout for a rule."""

import argparse
import time

from hbootstrap.constructions.gadget import search_gadget_params
from hbootstrap.rules import parse_rule


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rule", default="clique 5")
    ap.add_argument("--min-distance", type=int, default=None, help="default: the full threshold")
    args = ap.parse_args()
    t0 = time.perf_counter()
    spec = search_gadget_params(parse_rule(args.rule), min_distance=args.min_distance)
    p = spec.params
    print(f"length={p.length} window={p.window} spacing={p.spacing} vertices={spec.n} route={spec.route}")
    for k, v in {**spec.flags, **spec.distances}.items():
        print(f"{k}={v}")
    print(f"seconds={time.perf_counter() - t0:.1f}")


if __name__ == "__main__":
    main()
