"""Show how the family measure behaves when superpositions mix subspaces.

Within a subspace the measure is pinned to its target. Mixing members of
different subspaces lets it drift; this prints the observed range for each
family, with real and complex coefficients.
"""
import argparse

from meb_invariance.catalog import BASIS_FAMILIES
from meb_invariance.entanglement import MEASURE_TARGETS
from meb_invariance.sweep import cross_subspace_probe


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    print(f"{'family':<10} {'coeffs':<8} {'measure':<16} {'target':>7} {'min':>8} {'mean':>8} {'max':>8}")
    for fam in BASIS_FAMILIES.values():
        for complex_coeffs in (False, True):
            p = cross_subspace_probe(fam, args.samples, args.seed, complex_coeffs=complex_coeffs)
            kind = "complex" if complex_coeffs else "real"
            print(f"{fam.identifier:<10} {kind:<8} {p.measure:<16} {MEASURE_TARGETS[p.measure]:>7.3g} "
                  f"{p.minimum:>8.4f} {p.mean:>8.4f} {p.maximum:>8.4f}")


if __name__ == "__main__":
    main()
