"""Sample random decompositions, classify them and tabulate the types found.

Each sample is built from a random submodule M completed by a complement N, so
the census covers types reached without starting from the canonical model.
"""

import argparse
import collections
import random

from rbmod.classify import count_orbits, enumerate_types, iso_witness
from rbmod.rsdmod import canonical_rsd, complete_to_rsd, transport
from rbmod.sampling import random_submodule


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int)
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, required=True)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    seen = collections.Counter()
    for _ in range(args.samples):
        rsd = complete_to_rsd(random_submodule(rng, args.n))
        base = canonical_rsd(rsd.type)
        assert transport(base, iso_witness(base, rsd)) == rsd
        seen[rsd.type] += 1
    for t in enumerate_types(args.n):
        print(f"{t}  {seen[t]}")
    print(f"types seen: {len(seen)} of {count_orbits(args.n)}")


if __name__ == "__main__":
    main()
