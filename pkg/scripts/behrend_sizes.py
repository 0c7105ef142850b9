"""Sizes of verified solution-free dilation sets: exhaustive for small p, spheres for large p."""

import argparse

from hbootstrap.arithmetic import behrend_sphere_set, exhaustive_best_set, is_prime


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--small-max", type=int, default=100)
    ap.add_argument("--large", default="1009,10007,100003")
    args = ap.parse_args()
    print("p,method,size,elements")
    for p in range(5, args.small_max + 1):
        if is_prime(p):
            s = exhaustive_best_set(p)
            print(f"{p},exhaustive,{len(s)},{' '.join(map(str, s.elements))}")
    for p in (int(x) for x in args.large.split(",")):
        s = behrend_sphere_set(p)
        print(f"{p},sphere,{len(s)},{' '.join(map(str, s.elements[:8]))}")


if __name__ == "__main__":
    main()
