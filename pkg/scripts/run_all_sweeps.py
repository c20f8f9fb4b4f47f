"""Run the invariance sweep for every basis family and print a summary table.

    python3 scripts/run_all_sweeps.py --samples 5000 --seed 3
"""
import argparse
import sys

from meb_invariance.catalog import BASIS_FAMILIES
from meb_invariance.sweep import SweepConfig, run_sweep


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--tol", type=float, default=1e-10)
    args = parser.parse_args()

    all_ok = True
    print(f"{'family':<10} {'k':>2} {'measure':<16} {'target':>7} {'samples':>8} {'max dev':>10}  result")
    for fam in BASIS_FAMILIES.values():
        report = run_sweep(SweepConfig(fam, samples=args.samples, seed=args.seed, tol=args.tol))
        for r in report.results:
            status = "pass" if r.passed else "FAIL"
            print(f"{fam.identifier:<10} {r.index:>2} {report.config.measure:<16} {report.config.target:>7.3g} "
                  f"{r.samples_run:>8} {r.max_deviation:>10.2e}  {status}")
        print(f"{'':<10} wall {report.wall_time * 1000:.1f} ms")
        all_ok &= report.passed
    sys.exit(0 if all_ok else 1)


if __name__ == "__main__":
    main()
