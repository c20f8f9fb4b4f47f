"""Orthonormal bases of maximally entangled states split into local-Pauli orbits.

Each basis family is stored as a table of base states (subspace 1) plus a
list of Pauli-string generators; subspace ``k`` is the image of subspace 1
under generator ``k``. Where explicit states exist for later subspaces
(Bell, GHZ) those tables are kept and the generator relation is checked up
to a global sign instead. Subspaces and states are indexed from 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .pauli import PauliString, pauli_matrix
from .tensor import ShapeError, apply, basis_state, inner, state_from_terms


@dataclass(frozen=True)
class BasisFamily:
    identifier: str
    num_qubits: int
    subspace_count: int
    subspace_size: int

    @property
    def n_states(self) -> int:
        return self.subspace_count * self.subspace_size


BELL2 = BasisFamily("Bell2", 2, 2, 2)
GHZ3 = BasisFamily("GHZ3", 3, 4, 2)
CLUSTER4 = BasisFamily("Cluster4", 4, 4, 4)
BROWN5 = BasisFamily("Brown5", 5, 8, 4)

BASIS_FAMILIES = {f.identifier: f for f in (BELL2, GHZ3, CLUSTER4, BROWN5)}
_ALIASES = {"bell": BELL2, "ghz": GHZ3, "cluster": CLUSTER4, "brown": BROWN5}


def basis_family(name: str) -> BasisFamily:
    key = name.strip()
    if key in BASIS_FAMILIES:
        return BASIS_FAMILIES[key]
    lowered = key.lower()
    for alias, fam in _ALIASES.items():
        if lowered in (alias, fam.identifier.lower()):
            return fam
    raise KeyError(f"unknown basis family {name!r}; expected one of {sorted(_ALIASES)}")


def _frozen(vec: np.ndarray) -> np.ndarray:
    vec = np.array(vec, dtype=complex)
    vec.setflags(write=False)
    return vec


@dataclass(frozen=True)
class Subspace:
    family: BasisFamily
    index: int
    generator: PauliString
    states: tuple[np.ndarray, ...] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(_frozen(s) for s in self.states))

    @property
    def size(self) -> int:
        return len(self.states)

    def state(self, i: int) -> np.ndarray:
        """1-based state lookup."""
        return self.states[i - 1]


@dataclass(frozen=True)
class Catalog:
    family: BasisFamily
    subspaces: tuple[Subspace, ...]

    def subspace(self, k: int) -> Subspace:
        """1-based subspace lookup."""
        if not 1 <= k <= len(self.subspaces):
            raise IndexError(f"{self.family.identifier} has subspaces 1..{len(self.subspaces)}, got {k}")
        return self.subspaces[k - 1]

    def labelled_states(self):
        """Yield ``(k, i, state)`` over the whole basis."""
        for sub in self.subspaces:
            for i, s in enumerate(sub.states, start=1):
                yield sub.index, i, s

    def all_states(self) -> np.ndarray:
        return np.array([s for _, _, s in self.labelled_states()])


def generate_subspace(base: Subspace, g: PauliString, index: int | None = None) -> Subspace:
    n = base.family.num_qubits
    if g.num_qubits != n:
        raise ShapeError(f"generator {g} acts on {g.num_qubits} qubits, family has {n}")
    op = pauli_matrix(g)
    states = tuple(apply(op, s) for s in base.states)
    return Subspace(base.family, base.index if index is None else index, g, states)


def _site(n: int, spec: str) -> PauliString:
    return PauliString.parse(spec, n) if spec else PauliString.identity(n)


R2 = 1 / math.sqrt(2)

# Bell states, big-endian kets
PHI_PLUS = state_from_terms([(1, "00"), (1, "11")], R2)
PHI_MINUS = state_from_terms([(1, "00"), (-1, "11")], R2)
PSI_PLUS = state_from_terms([(1, "01"), (1, "10")], R2)
PSI_MINUS = state_from_terms([(1, "01"), (-1, "10")], R2)


def build_bell() -> Catalog:
    sub1 = Subspace(BELL2, 1, _site(2, ""), (PHI_PLUS, PSI_MINUS))
    sub2 = Subspace(BELL2, 2, _site(2, "Z1"), (PHI_MINUS, PSI_PLUS))
    return Catalog(BELL2, (sub1, sub2))


def ghz_states() -> dict[int, np.ndarray]:
    """The eight GHZ states keyed 1..8."""
    pairs = [("000", "111"), ("001", "110"), ("010", "101"), ("100", "011")]
    out = {}
    for j, (lo, hi) in enumerate(pairs):
        out[2 * j + 1] = state_from_terms([(1, lo), (1, hi)], R2)
        out[2 * j + 2] = state_from_terms([(1, lo), (-1, hi)], R2)
    return out


# sign and Pauli word taking GHZ state 1 to GHZ state j
GHZ_RELATIONS: dict[int, PauliString] = {
    1: PauliString("III"),
    2: PauliString("ZII"),
    3: PauliString("IIX"),
    4: PauliString("IIY", -1),
    5: PauliString("IXI"),
    6: PauliString("IYI", -1),
    7: PauliString("XII"),
    8: PauliString("YII", -1),
}


def build_ghz() -> Catalog:
    psi = ghz_states()
    layout = [("", (1, 4)), ("Z1", (2, 3)), ("X2", (5, 8)), ("Z1X2", (6, 7))]
    subs = tuple(
        Subspace(GHZ3, k, _site(3, gen), tuple(psi[j] for j in members))
        for k, (gen, members) in enumerate(layout, start=1)
    )
    return Catalog(GHZ3, subs)


CLUSTER_BASE = (
    state_from_terms([(1, "0000"), (1, "0101"), (1, "1010"), (-1, "1111")], 0.5),
    state_from_terms([(-1, "0001"), (1, "0100"), (1, "1011"), (1, "1110")], 0.5),
    state_from_terms([(1, "0010"), (1, "0111"), (-1, "1000"), (1, "1101")], 0.5),
    state_from_terms([(1, "0011"), (-1, "0110"), (1, "1001"), (1, "1100")], 0.5),
)
CLUSTER_GENERATORS = ("", "Z1", "X1", "X2")


R8 = 1 / (2 * math.sqrt(2))
BROWN_BASE = (
    state_from_terms(
        [(1, "00101"), (-1, "00110"), (1, "01000"), (-1, "01011"),
         (1, "10001"), (1, "10010"), (1, "11100"), (1, "11111")], R8),
    state_from_terms(
        [(1, "00001"), (1, "00010"), (-1, "01100"), (-1, "01111"),
         (-1, "10101"), (1, "10110"), (1, "11000"), (-1, "11011")], R8),
    state_from_terms(
        [(1, "00000"), (-1, "00011"), (-1, "01101"), (1, "01110"),
         (1, "10100"), (1, "10111"), (-1, "11001"), (-1, "11010")], R8),
    state_from_terms(
        [(1, "00100"), (1, "00111"), (1, "01001"), (1, "01010"),
         (-1, "10000"), (1, "10011"), (-1, "11101"), (1, "11110")], R8),
)
BROWN_GENERATORS = ("", "Z1", "Z2", "Z1Z2", "Z4", "Z5", "Z1Z4", "Z1Z5")


def brown_state() -> np.ndarray:
    """Brown et al. five-qubit state built from three-qubit kets times Bell pairs.

    Independent of :data:`BROWN_BASE` so the two forms can be compared. Note the
    Bell-pair naming here: ``psi_pm`` is ``|00> +- |11>`` and ``phi_pm`` is
    ``|01> +- |10>``.
    """
    psi_p, psi_m, phi_p, phi_m = PHI_PLUS, PHI_MINUS, PSI_PLUS, PSI_MINUS
    return 0.5 * (
        np.kron(basis_state("001"), phi_m)
        + np.kron(basis_state("010"), psi_m)
        + np.kron(basis_state("100"), phi_p)
        + np.kron(basis_state("111"), psi_p)
    )


def _orbit_catalog(fam: BasisFamily, base: tuple[np.ndarray, ...], gens: tuple[str, ...]) -> Catalog:
    n = fam.num_qubits
    sub1 = Subspace(fam, 1, _site(n, gens[0]), base)
    subs = [sub1] + [generate_subspace(sub1, _site(n, g), k) for k, g in enumerate(gens[1:], start=2)]
    return Catalog(fam, tuple(subs))


def build_cluster() -> Catalog:
    return _orbit_catalog(CLUSTER4, CLUSTER_BASE, CLUSTER_GENERATORS)


def build_brown() -> Catalog:
    return _orbit_catalog(BROWN5, BROWN_BASE, BROWN_GENERATORS)


BUILDERS: dict[str, Callable[[], Catalog]] = {
    "Bell2": build_bell,
    "GHZ3": build_ghz,
    "Cluster4": build_cluster,
    "Brown5": build_brown,
}


def build_catalog(fam: BasisFamily | str) -> Catalog:
    if isinstance(fam, str):
        fam = basis_family(fam)
    return BUILDERS[fam.identifier]()


def gram_matrix(states) -> np.ndarray:
    states = np.asarray(states)
    return states.conj() @ states.T


def generator_phase_deviation(c: Catalog) -> float:
    """Largest ``| |<g_k phi_1^i | phi_k^i>| - 1 |`` over subspaces ``k >= 2``."""
    base = c.subspace(1)
    worst = 0.0
    for sub in c.subspaces[1:]:
        op = pauli_matrix(sub.generator)
        for b, s in zip(base.states, sub.states):
            worst = max(worst, abs(abs(inner(apply(op, b), s)) - 1.0))
    return worst


@dataclass
class CatalogReport:
    family: BasisFamily
    n_states: int
    max_offdiag: float
    max_diag_deviation: float
    generator_deviation: float
    fingerprints: list
    tol: float
    generator_tol: float

    @property
    def passed(self) -> bool:
        return (
            max(self.max_offdiag, self.max_diag_deviation) <= self.tol
            and self.generator_deviation <= self.generator_tol
        )


def verify_catalog(c: Catalog, tol: float = 1e-12, generator_tol: float = 1e-10) -> CatalogReport:
    """Gram-matrix and generator-relation checks plus per-state fingerprints."""
    from .entanglement import fingerprint

    states = c.all_states()
    gram = gram_matrix(states)
    offdiag = gram - np.diag(np.diag(gram))
    return CatalogReport(
        family=c.family,
        n_states=gram.shape[0],
        max_offdiag=float(np.max(np.abs(offdiag))),
        max_diag_deviation=float(np.max(np.abs(np.diag(gram) - 1.0))),
        generator_deviation=generator_phase_deviation(c),
        fingerprints=[fingerprint(s) for s in states],
        tol=tol,
        generator_tol=generator_tol,
    )
