"""Dense complex linear algebra on qubit registers.

Matrices and state vectors are plain ``numpy`` arrays. Qubits are numbered
from 1 and ordered big-endian: in ``|q1 q2 ... qn>`` qubit 1 is the most
significant bit of the basis index, and the left factor of :func:`kron`
acts on the lower-numbered qubits.
"""
from __future__ import annotations

from functools import reduce
from typing import Iterable

import numpy as np

MAX_QUBITS = 12
MAX_DIM = 2**MAX_QUBITS


class ShapeError(ValueError):
    """Operands have incompatible dimensions."""


class SizeError(ValueError):
    """Result would exceed the supported register size."""


def num_qubits(state: np.ndarray) -> int:
    dim = state.shape[0]
    n = dim.bit_length() - 1
    if state.ndim != 1 or dim != 2**n or n < 1:
        raise ShapeError(f"not a qubit state vector: shape {state.shape}")
    return n


def basis_state(bits: str) -> np.ndarray:
    """Computational basis ket, e.g. ``basis_state("0101")``."""
    if not bits or set(bits) - {"0", "1"}:
        raise ValueError(f"invalid bitstring {bits!r}")
    if len(bits) > MAX_QUBITS:
        raise SizeError(f"{len(bits)} qubits exceeds the {MAX_QUBITS}-qubit cap")
    vec = np.zeros(2 ** len(bits), dtype=complex)
    vec[int(bits, 2)] = 1.0
    return vec


def state_from_terms(terms: Iterable[tuple[complex, str]], norm: float | None = None) -> np.ndarray:
    """Build a state from ``(amplitude, bitstring)`` pairs.

    If ``norm`` is given every amplitude is scaled by it; otherwise the result
    is normalized to unit length.
    """
    terms = list(terms)
    vec = sum(amp * basis_state(bits) for amp, bits in terms)
    if norm is None:
        return normalize(vec)
    return vec * norm


def normalize(state: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(state)
    if norm == 0:
        raise ValueError("cannot normalize the zero vector")
    return np.asarray(state, dtype=complex) / norm


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > MAX_DIM or cols > MAX_DIM:
        raise SizeError(f"kron result {rows}x{cols} exceeds dimension cap {MAX_DIM}")
    return np.kron(a, b)


def kron_all(factors: Iterable[np.ndarray]) -> np.ndarray:
    return reduce(kron, factors)


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def unitarity_residual(a: np.ndarray) -> float:
    """Max-abs entry of ``a^dagger a - I``, maximized over a leading batch axis if present."""
    if a.ndim not in (2, 3) or a.shape[-1] != a.shape[-2]:
        raise ShapeError(f"unitarity needs square matrices, got {a.shape}")
    gram = np.swapaxes(a.conj(), -1, -2) @ a
    return float(np.max(np.abs(gram - np.eye(a.shape[-1]))))


def is_unitary(a: np.ndarray, tol: float = 1e-12) -> tuple[bool, float]:
    """Return ``(ok, residual)`` where ``ok`` is ``residual <= tol``."""
    residual = unitarity_residual(a)
    return residual <= tol, residual


def apply(op: np.ndarray, state: np.ndarray, check_norm: bool = True) -> np.ndarray:
    """Apply ``op`` to ``state`` without renormalizing.

    With ``check_norm`` the output norm must match the input within 1e-10,
    which is how non-unitary operators get caught.
    """
    if op.ndim != 2 or op.shape != (state.shape[0], state.shape[0]):
        raise ShapeError(f"operator {op.shape} does not act on state of length {state.shape[0]}")
    out = op @ state
    if check_norm:
        drift = abs(np.linalg.norm(out) - np.linalg.norm(state))
        if drift > 1e-10:
            raise ValueError(f"operator changed the state norm by {drift:.3g}")
    return out


def inner(a: np.ndarray, b: np.ndarray) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if a.shape != b.shape:
        raise ShapeError(f"state shapes differ: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def _check_keep(keep: Iterable[int], n: int) -> list[int]:
    keep = sorted(set(keep))
    if not keep:
        raise IndexError("keep set is empty")
    bad = [q for q in keep if not 1 <= q <= n]
    if bad:
        raise IndexError(f"qubit indices {bad} out of range 1..{n}")
    return keep


def partial_trace(state: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix of ``state`` on the qubits in ``keep``.

    Rows and columns of the result are ordered big-endian over the kept
    qubits in increasing index order. For each bit pattern of the traced
    qubits, the kept-qubit slice of amplitudes contributes its outer product.
    """
    n = num_qubits(state)
    keep = _check_keep(keep, n)
    traced = [q for q in range(1, n + 1) if q not in keep]

    # bit weight of qubit q in the full index
    weight = {q: 1 << (n - q) for q in range(1, n + 1)}
    kept_offsets = np.zeros(2 ** len(keep), dtype=np.int64)
    for pos, q in enumerate(keep):
        bit = 1 << (len(keep) - 1 - pos)
        kept_offsets[(np.arange(kept_offsets.size) & bit) != 0] += weight[q]

    rho = np.zeros((kept_offsets.size, kept_offsets.size), dtype=complex)
    for pattern in range(2 ** len(traced)):
        base = 0
        for pos, q in enumerate(traced):
            if pattern >> (len(traced) - 1 - pos) & 1:
                base += weight[q]
        amps = state[base + kept_offsets]
        rho += np.outer(amps, amps.conj())
    return rho


def density_matrix(state: np.ndarray) -> np.ndarray:
    return np.outer(state, state.conj())


def purity(rho: np.ndarray) -> float:
    """``Tr rho^2`` for a Hermitian ``rho``."""
    # Tr(rho rho) = sum |rho_ij|^2 when rho is Hermitian
    return float(np.sum(np.abs(rho) ** 2))
