"""Signed Pauli strings with a real ``Y`` and their coefficient superpositions.

Throughout, ``Y`` is the real antisymmetric matrix ``[[0, 1], [-1, 0]]``
(``i`` times the usual sigma_y), so every Pauli string is a real signed
permutation matrix and every real superposition of them is a real matrix.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .tensor import MAX_QUBITS, ShapeError, SizeError, kron

LABELS = {
    "I": np.array([[1, 0], [0, 1]], dtype=np.int64),
    "X": np.array([[0, 1], [1, 0]], dtype=np.int64),
    "Y": np.array([[0, 1], [-1, 0]], dtype=np.int64),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.int64),
}

_SITE_TOKEN = re.compile(r"([IXYZ])(\d+)")


@dataclass(frozen=True)
class PauliString:
    """``sign * labels[0] (x) labels[1] (x) ...``, one label per qubit."""

    labels: str
    sign: int = 1

    def __post_init__(self):
        if not self.labels or set(self.labels) - set(LABELS):
            raise ValueError(f"invalid Pauli labels {self.labels!r}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if len(self.labels) > MAX_QUBITS:
            raise SizeError(f"{len(self.labels)} qubits exceeds the {MAX_QUBITS}-qubit cap")

    @property
    def num_qubits(self) -> int:
        return len(self.labels)

    @classmethod
    def identity(cls, n: int) -> PauliString:
        return cls("I" * n)

    @classmethod
    def on_sites(cls, n: int, sites: Mapping[int, str], sign: int = 1) -> PauliString:
        """Place single-qubit labels at 1-based ``sites`` of an ``n``-qubit register."""
        labels = ["I"] * n
        for q, label in sites.items():
            if not 1 <= q <= n:
                raise IndexError(f"qubit {q} out of range 1..{n}")
            labels[q - 1] = label
        return cls("".join(labels), sign)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> PauliString:
        """Parse ``"XIZ"``, ``"-YI"``, or site form ``"Z1X2"`` / ``"-Y3"`` (needs ``n``)."""
        text = text.strip()
        sign = 1
        if text[:1] in "+-":
            sign = -1 if text[0] == "-" else 1
            text = text[1:]
        if re.fullmatch(r"(?:[IXYZ]\d+)+", text):
            if n is None:
                raise ValueError("site-indexed Pauli strings need the register size n")
            sites: dict[int, str] = {}
            for label, q in _SITE_TOKEN.findall(text):
                if int(q) in sites:
                    raise ValueError(f"qubit {q} appears twice in {text!r}")
                sites[int(q)] = label
            return cls.on_sites(n, sites, sign)
        ps = cls(text, sign)
        if n is not None and ps.num_qubits != n:
            raise ShapeError(f"{text!r} acts on {ps.num_qubits} qubits, expected {n}")
        return ps

    def __neg__(self) -> PauliString:
        return PauliString(self.labels, -self.sign)

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + self.labels


@lru_cache(maxsize=1024)
def pauli_matrix(p: PauliString) -> np.ndarray:
    """Integer matrix of ``p`` with entries in {-1, 0, 1} (read-only, cached)."""
    out = np.array([[p.sign]], dtype=np.int64)
    for label in p.labels:
        out = kron(out, LABELS[label])
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class SuperpositionFamily:
    name: str
    terms: tuple[PauliString, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("a family needs at least one term")
        if len({t.num_qubits for t in self.terms}) != 1:
            raise ShapeError("all terms of a family must act on the same number of qubits")

    @classmethod
    def custom(cls, name: str, words: Sequence[str]) -> SuperpositionFamily:
        return cls(name, tuple(PauliString.parse(w) for w in words))

    @property
    def num_qubits(self) -> int:
        return self.terms[0].num_qubits

    def __len__(self) -> int:
        return len(self.terms)

    @cached_property
    def term_stack(self) -> np.ndarray:
        """Term matrices stacked along axis 0."""
        stack = np.array([pauli_matrix(t) for t in self.terms], dtype=float)
        stack.setflags(write=False)
        return stack


# term order follows the coefficient order c1, c2, ... of each family
FAMILIES: dict[str, SuperpositionFamily] = {
    name: SuperpositionFamily.custom(name, words)
    for name, words in {
        "A": ("X", "Z"),
        "B": ("Y", "I"),
        "U1": ("II", "IY", "YX", "YZ"),
        "U2": ("IZ", "IX", "YY", "YI"),
        "U3": ("ZZ", "ZX", "XY", "XI"),
        "U4": ("ZI", "ZY", "XX", "XZ"),
    }.items()
}


def family(name: str) -> SuperpositionFamily:
    try:
        return FAMILIES[name.upper()]
    except KeyError:
        raise KeyError(f"unknown family {name!r}; expected one of {sorted(FAMILIES)}") from None


def check_unit_norm(c: Sequence[float], tol: float = 1e-12) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if c.ndim != 1 or not np.all(np.isfinite(c)):
        raise ValueError("coefficients must be a finite 1-d sequence")
    if abs(float(c @ c) - 1.0) > tol:
        raise ValueError(f"coefficients are not unit norm: sum of squares {c @ c!r}")
    return c


def superpose(fam: SuperpositionFamily, c: Sequence[complex]) -> np.ndarray:
    """``sum_i c_i * pauli_matrix(term_i)``.

    A 2-d ``c`` of coefficient rows gives a stack of matrices. Coefficients
    are not required to be normalized; unitarity is checked by the caller.
    """
    c = np.asarray(c)
    if c.ndim not in (1, 2) or c.shape[-1] != len(fam):
        raise ShapeError(f"family {fam.name} has {len(fam)} terms, got coefficients of shape {c.shape}")
    return np.tensordot(c, fam.term_stack, axes=1)


def closure_check(terms: Sequence[PauliString]) -> tuple[bool, list[tuple[int, int]]]:
    """Exact test that every real unit-norm superposition of ``terms`` is unitary.

    For unitary terms T_i, ``(sum c_i T_i)^dagger (sum c_i T_i) = I`` for every
    real unit vector ``c`` iff ``T_i^dagger T_j + T_j^dagger T_i = 0`` for all
    ``i < j``. Returns the offending 1-based pairs.
    """
    if not terms:
        raise ValueError("closure_check needs at least one term")
    if len({t.num_qubits for t in terms}) != 1:
        raise ShapeError("terms act on different numbers of qubits")
    mats = [pauli_matrix(t) for t in terms]
    bad = [
        (i + 1, j + 1)
        for i, j in combinations(range(len(mats)), 2)
        if np.any(mats[i].T @ mats[j] + mats[j].T @ mats[i])
    ]
    return not bad, bad


def reshuffle(m: np.ndarray) -> np.ndarray:
    """Rearrange a 4x4 matrix so that ``kron(a, b)`` maps to ``vec(a) vec(b)^T``."""
    if m.shape != (4, 4):
        raise ShapeError(f"reshuffle expects a 4x4 matrix, got {m.shape}")
    # m[(i1 i2), (j1 j2)] -> r[(i1 j1), (i2 j2)]
    return m.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)


def reshuffle_singular_values(m: np.ndarray) -> np.ndarray:
    return np.linalg.svd(reshuffle(m), compute_uv=False)


def _gauge_entry(a: np.ndarray) -> tuple[int, int]:
    # first entry in row-major order within roundoff of the largest magnitude
    mags = np.abs(a)
    flat = np.flatnonzero(mags >= mags.max() * (1 - 1e-9))[0]
    return divmod(int(flat), a.shape[1])


def try_factor_kron(m: np.ndarray, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray] | None:
    """Split a 4x4 matrix as ``kron(a, b)`` of two 2x2 factors, if it is one.

    The factorization is accepted when the second singular value of the
    reshuffled matrix is at most ``tol`` times the first. Factors are unique
    only up to reciprocal scalars; ``a`` is fixed to unit operator norm with
    its largest-magnitude entry (first in row-major order on ties) real and
    positive. Returns ``None`` for non-factorizable or zero input.
    """
    r = reshuffle(np.asarray(m, dtype=complex))
    u, s, vh = np.linalg.svd(r)
    if s[0] == 0 or s[1] > tol * s[0]:
        return None
    a = u[:, 0].reshape(2, 2)
    b = s[0] * vh[0].reshape(2, 2)

    entry = a[_gauge_entry(a)]
    scale = (entry / abs(entry)) * np.linalg.norm(a, 2)
    a = a / scale
    b = b * scale
    if not (np.iscomplexobj(m) and np.any(np.imag(m))):
        a, b = a.real, b.real
    return a, b


@dataclass(frozen=True)
class SpecialCase:
    """A coefficient pattern under which a two-qubit family splits as ``left (x) right``.

    ``active`` are the 0-based coefficient positions allowed to be nonzero.
    The right factor is ``superpose(family(right), c[right_coeffs])``.
    """

    family: str
    active: tuple[int, int]
    left: str
    right: str
    right_coeffs: tuple[int, int]

    def factors(self, c: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
        """Left Pauli factor and right factor(s); ``c`` may be a (batch, 4) array."""
        c = np.asarray(c, dtype=float)
        idle = [i for i in range(c.shape[-1]) if i not in self.active]
        if np.any(c[..., idle]):
            raise ValueError(f"coefficients at positions {idle} must vanish for this case")
        left = pauli_matrix(PauliString(self.left))
        right = superpose(family(self.right), c[..., list(self.right_coeffs)])
        return left, right


# c3 = c4 = 0: the surviving pair appears as c1 I + c2 Y or c1 Z + c2 X,
# i.e. B or A with the two coefficients swapped.
# c1 = c2 = 0: c3 X + c4 Z or c3 Y + c4 I, i.e. A or B in native order.
SPECIAL_CASES: tuple[SpecialCase, ...] = (
    SpecialCase("U1", (0, 1), "I", "B", (1, 0)),
    SpecialCase("U2", (0, 1), "I", "A", (1, 0)),
    SpecialCase("U3", (0, 1), "Z", "A", (1, 0)),
    SpecialCase("U4", (0, 1), "Z", "B", (1, 0)),
    SpecialCase("U1", (2, 3), "Y", "A", (2, 3)),
    SpecialCase("U2", (2, 3), "Y", "B", (2, 3)),
    SpecialCase("U3", (2, 3), "X", "B", (2, 3)),
    SpecialCase("U4", (2, 3), "X", "A", (2, 3)),
)
