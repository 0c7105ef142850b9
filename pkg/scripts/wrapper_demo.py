"""Wrap a slow K5 chain into a percolating graph that keeps the chain's first rounds."""

import argparse
import time

from hbootstrap.constructions.chains import simple_clique_chain
from hbootstrap.constructions.gadget import _params_for, minimal_window, slow_percolating_wrapper, verify_wrapper
from hbootstrap.rules import parse_rule


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--length", type=int, default=3, help="length of the simple K5 chain")
    ap.add_argument("--min-distance", type=int, default=1)
    ap.add_argument("--attachment-girth", type=int, default=4)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    k5 = parse_rule("clique 5")
    params = _params_for(k5, minimal_window(k5, 3, args.min_distance), 3, args.min_distance)
    g = simple_clique_chain(5, args.length).starting
    t0 = time.perf_counter()
    res = slow_percolating_wrapper(k5, g, params, attachment_girth=args.attachment_girth, seed=args.seed)
    print(f"base={g.n} vertices wrapper={res.n} vertices ratio={res.n / g.n:.1f} built in {time.perf_counter() - t0:.1f}s")
    out = verify_wrapper(res, k5)
    for k, v in out.items():
        print(f"{k}={v}")
    print(f"seconds={time.perf_counter() - t0:.1f}")


if __name__ == "__main__":
    main()
