"""Fuzz the Rota-Baxter relation of P and the module axiom of random decompositions.

    python scripts/rb_fuzz.py --pairs 5000 --seed 1 --field 0
"""

import argparse
import random
import time

from rbmod.classify import enumerate_types
from rbmod.fields import field_of_characteristic
from rbmod.rsdmod import verify_module_axiom
from rbmod.sampling import random_rsd, random_scalar, random_vector
from rbmod.scalar import verify_rb_relation


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--pairs", type=int, default=2000)
    ap.add_argument("--seed", type=int, required=True)
    ap.add_argument("--field", type=int, default=0, help="0 for Q or a prime")
    ap.add_argument("--max-n", type=int, default=3, help="largest ambient dimension for module checks")
    args = ap.parse_args()
    field = field_of_characteristic(args.field)
    rng = random.Random(args.seed)

    t0 = time.time()
    bad = sum(not verify_rb_relation(random_scalar(rng, field), random_scalar(rng, field))
              for _ in range(args.pairs))
    print(f"rb relation over {field}: {args.pairs} pairs, {bad} violations, {time.time() - t0:.1f}s")

    for n in range(1, args.max_n + 1):
        for mtype in enumerate_types(n):
            rsd = random_rsd(mtype, rng.randrange(2 ** 31), 1, field)
            per = max(1, args.pairs // 50)
            bad = sum(not verify_module_axiom(rsd, random_scalar(rng, field), random_vector(rng, n, field))
                      for _ in range(per))
            print(f"module axiom {mtype}: {per} pairs, {bad} violations")


if __name__ == "__main__":
    main()
