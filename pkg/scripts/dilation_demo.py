"""Build the dilation chain for K5 at a prime, check its conditions and replay it."""

import argparse
import time

from hbootstrap.analyzers import replay_round_exact, verify_chain_conditions
from hbootstrap.arithmetic import exhaustive_best_set
from hbootstrap.constructions.chains import dilation_k5_assembly


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", default="61,67,71,73")
    args = ap.parse_args()
    print("p,set,length,vertices,dagger,star,round_exact,seconds")
    for p in (int(x) for x in args.primes.split(",")):
        t0 = time.perf_counter()
        s = exhaustive_best_set(p)
        if len(s) < 2:
            print(f"{p},{' '.join(map(str, s.elements))},,,,,,")
            continue
        chain = dilation_k5_assembly(p, s)
        f = verify_chain_conditions(chain, ("dagger", "star")).passed_flags
        exact, _ = replay_round_exact(chain)
        row = [p, " ".join(map(str, s.elements)), chain.length, chain.n, f["dagger"], f["star"], exact]
        print(",".join(map(str, row)) + f",{time.perf_counter() - t0:.1f}")


if __name__ == "__main__":
    main()
