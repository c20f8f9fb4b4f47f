"""Scan U1..U4 over random coefficients and report how often they factor.

Only the coefficient patterns with two zero entries should split into a
Kronecker product; generic draws should not.
"""
import argparse

import numpy as np

from meb_invariance.pauli import family, reshuffle_singular_values, superpose, try_factor_kron
from meb_invariance.sweep import coefficient_matrix


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    print(f"{'family':<6} {'draws':>6} {'factorable':>10} {'min s2/s1':>10}")
    for stream, name in enumerate(("U1", "U2", "U3", "U4")):
        fam = family(name)
        rows = coefficient_matrix(args.seed, stream, args.samples, 4)
        # drop the boundary rows: unit vectors factor trivially
        rows = rows[5:]
        hits, ratios = 0, []
        for c in rows:
            m = superpose(fam, c)
            s = reshuffle_singular_values(m)
            ratios.append(s[1] / s[0])
            hits += try_factor_kron(m) is not None
        print(f"{name:<6} {len(rows):>6} {hits:>10} {np.min(ratios):>10.3g}")


if __name__ == "__main__":
    main()
