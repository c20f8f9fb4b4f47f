"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for usage
or I/O errors.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .catalog import BASIS_FAMILIES, Catalog, basis_family, build_catalog, verify_catalog
from .entanglement import FAMILY_MEASURES, MEASURE_TARGETS, measure_deviation, measure_value
from .pauli import (
    FAMILIES,
    LABELS,
    SPECIAL_CASES,
    PauliString,
    closure_check,
    family,
    pauli_matrix,
    reshuffle_singular_values,
    superpose,
    try_factor_kron,
)
from .report import RunReport
from .sweep import (
    DEFAULT_SAMPLES,
    DEFAULT_TOL,
    SweepConfig,
    coefficient_matrix,
    cross_subspace_probe,
    run_sweep,
)
from .tensor import kron, unitarity_residual

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
ALGEBRAIC_TOL = 1e-12
NORMALIZE_TOL = 1e-9

UNITARY_ANCHORS = {"A": "Eq 2", "B": "Eq 3", "U1": "Eq 6", "U2": "Eq 7", "U3": "Eq 8", "U4": "Eq 9"}
BASIS_ANCHORS = {"Bell2": "Eq 14", "GHZ3": "Eq 17", "Cluster4": "Sec 3.3", "Brown5": "Sec 3.4"}
SWEEP_ANCHORS = {"Bell2": "Eq 16", "GHZ3": "Eq 18", "Cluster4": "Eq 22", "Brown5": "Eq 27"}


class UsageError(Exception):
    pass


def cmd_verify_unitaries(samples: int = DEFAULT_SAMPLES, seed: int = 1, tol: float = ALGEBRAIC_TOL) -> RunReport:
    if samples < 1:
        raise UsageError("--samples must be at least 1")
    report = RunReport("verify-unitaries", seed=seed, samples=samples, tol=tol)

    for a in LABELS:
        for b in LABELS:
            m = pauli_matrix(PauliString(a + b))
            dev = int(np.max(np.abs(m.T @ m - np.eye(4, dtype=np.int64))))
            report.add(f"pauli_product.{a}{b}", "Eq 5", 0.0, dev, dev, dev == 0)

    for stream, (name, fam) in enumerate(FAMILIES.items()):
        worst = unitarity_residual(superpose(fam, coefficient_matrix(seed, stream, samples, len(fam))))
        report.add(f"unitary.{name}", UNITARY_ANCHORS[name], 0.0, worst, worst, worst <= tol)

    for name, fam in FAMILIES.items():
        ok, bad = closure_check(fam.terms)
        report.add(f"closure.{name}", UNITARY_ANCHORS[name], 0.0, len(bad), len(bad), ok)

    for idx, case in enumerate(SPECIAL_CASES):
        pairs = coefficient_matrix(seed, 100 + idx, samples, 2)
        c = np.zeros((pairs.shape[0], 4))
        c[:, list(case.active)] = pairs
        left, right = case.factors(c)
        products = np.kron(left[None], right)
        worst = float(np.max(np.abs(superpose(family(case.family), c) - products)))
        anchor = "Eq 10" if case.active == (0, 1) else "Eq 11"
        name = f"special_case.{case.family}={case.left}x{case.right}"
        report.add(name, anchor, 0.0, worst, worst, worst <= tol)
    return report


def cmd_verify_basis(family_name: str, tol: float = ALGEBRAIC_TOL) -> RunReport:
    fam = _basis_family(family_name)
    report = RunReport("verify-basis", tol=tol)
    catalog = build_catalog(fam)
    res = verify_catalog(catalog, tol)
    fid = fam.identifier
    report.add("gram.offdiag", "Sec 3", 0.0, res.max_offdiag, res.max_offdiag,
               res.max_offdiag <= tol, family=fid)
    report.add("gram.diag", "Sec 3", 1.0, 1.0 + res.max_diag_deviation, res.max_diag_deviation,
               res.max_diag_deviation <= tol, family=fid)
    report.add("generator_relations", "Eq 12", 1.0, 1.0 - res.generator_deviation,
               res.generator_deviation, res.generator_deviation <= res.generator_tol, family=fid)
    report.add("state_count", BASIS_ANCHORS[fid], 2**fam.num_qubits, res.n_states,
               abs(res.n_states - 2**fam.num_qubits), res.n_states == 2**fam.num_qubits, family=fid)

    measure, target = FAMILY_MEASURES[fid]
    for k, i, state in catalog.labelled_states():
        dev = measure_deviation(measure, state)
        report.add(f"{measure}.k{k}.i{i}", BASIS_ANCHORS[fid], target,
                   measure_value(measure, state), dev, dev <= tol, family=fid, subspace=str(k))
    return report


def cmd_sweep(family_name: str, subspace: int | None = None, samples: int = DEFAULT_SAMPLES,
              seed: int = 1, tol: float = DEFAULT_TOL) -> RunReport:
    fam = _basis_family(family_name)
    try:
        cfg = SweepConfig(fam, subspace, samples, seed, tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sweep = run_sweep(cfg)
    report = RunReport("sweep", seed=seed, samples=samples, tol=tol)
    for r in sweep.results:
        report.add(f"sweep.{cfg.measure}.k{r.index}", SWEEP_ANCHORS[fam.identifier], cfg.target,
                   r.worst_value, r.max_deviation, r.passed,
                   family=fam.identifier, subspace=str(r.index))
    report.result = {
        "family": fam.identifier,
        "measure": cfg.measure,
        "max_deviation": sweep.max_deviation,
        "worst_coeffs": {f"k{r.index}": [float(x) for x in r.worst_coeffs] for r in sweep.results},
        "samples_per_subspace": sweep.results[0].samples_run,
    }
    return report


def cmd_probe(family_name: str, samples: int = DEFAULT_SAMPLES, seed: int = 1,
              members: Sequence[tuple[int, int]] | None = None, complex_coeffs: bool = False) -> RunReport:
    fam = _basis_family(family_name)
    try:
        probe = cross_subspace_probe(fam, samples, seed, members, complex_coeffs)
    except (ValueError, IndexError) as exc:
        raise UsageError(str(exc)) from None
    report = RunReport("probe", seed=seed, samples=samples)
    report.result = {
        "family": fam.identifier,
        "members": [list(m) for m in probe.members],
        "measure": probe.measure,
        "target_within_subspace": MEASURE_TARGETS[probe.measure],
        "samples_run": probe.samples_run,
        "min": probe.minimum,
        "max": probe.maximum,
        "mean": probe.mean,
        "complex_coeffs": complex_coeffs,
    }
    return report


def _fmt_matrix(m: np.ndarray) -> list[list[float]]:
    m = np.real_if_close(m, tol=1000)
    if np.iscomplexobj(m):
        return [[[float(z.real), float(z.imag)] for z in row] for row in m]
    return [[float(x) for x in row] for row in m]


def cmd_factorize(family_name: str, coeffs: Sequence[float], tol: float = 1e-10) -> RunReport:
    try:
        fam = family(family_name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if fam.name not in ("U1", "U2", "U3", "U4"):
        raise UsageError("factorize works on the two-qubit families U1..U4")
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (4,) or not np.all(np.isfinite(c)):
        raise UsageError("factorize needs exactly 4 finite coefficients")
    report = RunReport("factorize", tol=tol)
    norm2 = float(c @ c)
    if norm2 == 0:
        raise UsageError("coefficients are all zero")
    if abs(norm2 - 1.0) > NORMALIZE_TOL:
        c = c / np.sqrt(norm2)
        report.warnings.append(f"coefficients normalized (sum of squares was {norm2:.6g})")

    m = superpose(fam, c)
    residual = unitarity_residual(m)
    report.add(f"unitary.{fam.name}", UNITARY_ANCHORS[fam.name], 0.0, residual, residual,
               residual <= ALGEBRAIC_TOL)
    sv = reshuffle_singular_values(m)
    factors = try_factor_kron(m, tol)
    report.result = {
        "family": fam.name,
        "coeffs": [float(x) for x in c],
        "reshuffle_singular_values": [float(s) for s in sv],
        "factorizable": factors is not None,
    }
    if factors is None:
        report.result["message"] = f"not factorizable at tol {tol:g}"
    else:
        a, b = factors
        recon = float(np.max(np.abs(kron(a, b) - m)))
        report.add("reconstruction", "Eq 10-11", 0.0, recon, recon, recon <= 10 * tol)
        report.result["left"] = _fmt_matrix(a)
        report.result["right"] = _fmt_matrix(b)
    return report


# Catalog export: a header line per state, then one "bitstring re im" line
# per basis amplitude, floats written with 17 significant digits.

def format_catalog(catalog: Catalog) -> str:
    fam = catalog.family
    lines = [f"# catalog {fam.identifier} qubits={fam.num_qubits} states={fam.n_states}"]
    for k, i, state in catalog.labelled_states():
        lines.append(f"state {fam.identifier} {k} {i}")
        for idx, amp in enumerate(state):
            bits = format(idx, f"0{fam.num_qubits}b")
            lines.append(f"{bits} {amp.real:.17g} {amp.imag:.17g}")
    return "\n".join(lines) + "\n"


def parse_catalog(text: str) -> list[tuple[str, int, int, np.ndarray]]:
    """Inverse of :func:`format_catalog`: ``(family, k, i, state)`` records."""
    records: list[tuple[str, int, int, list[complex]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "state":
            if len(parts) != 4:
                raise ValueError(f"line {lineno}: malformed state header")
            records.append((parts[1], int(parts[2]), int(parts[3]), []))
            continue
        if len(parts) != 3 or not records:
            raise ValueError(f"line {lineno}: expected 'bitstring re im'")
        bits, re, im = parts
        amps = records[-1][3]
        if int(bits, 2) != len(amps):
            raise ValueError(f"line {lineno}: amplitude {bits} out of order")
        amps.append(complex(float(re), float(im)))
    return [(f, k, i, np.array(a, dtype=complex)) for f, k, i, a in records]


def cmd_export_catalog(family_name: str, out: str | None = None) -> str:
    text = format_catalog(build_catalog(_basis_family(family_name)))
    if out is not None and out != "-":
        Path(out).write_text(text)
    return text


def _basis_family(name: str):
    try:
        return basis_family(name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _parse_subspace(text: str) -> int | None:
    if text.lower() == "all":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"subspace must be an integer or 'all', got {text!r}") from None


def _parse_coeffs(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed coefficient list {text!r}") from None


def _parse_members(text: str) -> list[tuple[int, int]]:
    try:
        out = []
        for item in text.split(","):
            k, i = item.split(":")
            out.append((int(k), int(i)))
        return out
    except ValueError:
        raise argparse.ArgumentTypeError(f"members must look like '1:1,2:2', got {text!r}") from None


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="meb-invariance", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)
    families = sorted(BASIS_FAMILIES) + ["bell", "ghz", "cluster", "brown"]

    def common(p, samples=True, tol=None):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        if samples:
            p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
            p.add_argument("--seed", type=_seed, default=1)
        if tol is not None:
            p.add_argument("--tol", type=float, default=tol)

    p = sub.add_parser("verify-unitaries", help="unitarity of Pauli products and their superpositions")
    common(p, tol=ALGEBRAIC_TOL)

    p = sub.add_parser("verify-basis", help="orthonormality and entanglement of a basis family")
    p.add_argument("--family", required=True, metavar="{" + ",".join(families) + "}")
    common(p, samples=False, tol=ALGEBRAIC_TOL)

    p = sub.add_parser("sweep", help="random within-subspace superposition sweep")
    p.add_argument("--family", required=True)
    p.add_argument("--subspace", type=_parse_subspace, default=None)
    common(p, tol=DEFAULT_TOL)

    p = sub.add_parser("probe", help="observe superpositions that mix subspaces")
    p.add_argument("--family", required=True)
    p.add_argument("--members", type=_parse_members, default=None,
                   help="comma-separated k:i catalog positions (default: all of subspaces 1 and 2)")
    p.add_argument("--complex", action="store_true", help="draw complex coefficients")
    common(p)

    p = sub.add_parser("factorize", help="Kronecker factorization of a U1..U4 superposition")
    p.add_argument("--family", required=True, choices=("U1", "U2", "U3", "U4"))
    p.add_argument("--coeffs", type=_parse_coeffs, required=True)
    common(p, samples=False, tol=1e-10)

    p = sub.add_parser("export-catalog", help="write a basis family as text")
    p.add_argument("--family", required=True)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    return parser


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def run(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    start = time.perf_counter()
    try:
        if args.verb == "export-catalog":
            text = cmd_export_catalog(args.family, args.out)
            if args.out is None or args.out == "-":
                sys.stdout.write(text)
            return EXIT_OK
        if args.verb == "verify-unitaries":
            report = cmd_verify_unitaries(args.samples, args.seed, args.tol)
        elif args.verb == "verify-basis":
            report = cmd_verify_basis(args.family, args.tol)
        elif args.verb == "sweep":
            report = cmd_sweep(args.family, args.subspace, args.samples, args.seed, args.tol)
        elif args.verb == "probe":
            report = cmd_probe(args.family, args.samples, args.seed, args.members, args.complex)
        else:
            report = cmd_factorize(args.family, args.coeffs, args.tol)
        report.wall_ms = (time.perf_counter() - start) * 1000
        for w in report.warnings:
            print(f"warning: {w}", file=sys.stderr)
        _write(report.render(args.format), args.out)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"{parser.prog}: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if report.passed else EXIT_VIOLATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
