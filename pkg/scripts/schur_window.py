"""Finite-window commutant dimensions against the predicted count.

For each type the A-linear maps with entries in span{t^-B..t^(B-1)} commuting
with p are counted over k; the prediction is 2B(k^2 + l^2) + r^2 + kr.
"""

import argparse

from rbmod.classify import canonical_commutant_dimension, enumerate_types, expected_commutant_dimension


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=2)
    ap.add_argument("--bound", type=int, default=3)
    args = ap.parse_args()
    for n in range(1, args.max_n + 1):
        for t in enumerate_types(n):
            got = canonical_commutant_dimension(t, args.bound)
            want = expected_commutant_dimension(t, args.bound)
            print(f"{t}  dim={got}  predicted={want}  {'ok' if got == want else 'MISMATCH'}")


if __name__ == "__main__":
    main()
