"""Marginal purities and two-qubit concurrence of pure states."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .tensor import num_qubits, partial_trace, purity


def pi_measure(state: np.ndarray, pair: tuple[int, int] = (1, 2)) -> float:
    """Purity ``Tr rho_ij^2`` of the reduced state on qubits ``pair`` (1-based)."""
    i, j = pair
    if i == j:
        raise IndexError(f"pair needs two distinct qubits, got {pair}")
    n = num_qubits(state)
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"pair {pair} out of range 1..{n}")
    return purity(partial_trace(state, {i, j}))


def single_qubit_purities(state: np.ndarray) -> tuple[float, ...]:
    n = num_qubits(state)
    return tuple(purity(partial_trace(state, {q})) for q in range(1, n + 1))


def concurrence_2q(state: np.ndarray) -> float:
    """``2 |a00 a11 - a01 a10|`` for a normalized two-qubit pure state."""
    if num_qubits(state) != 2:
        raise ValueError(f"concurrence_2q needs a 2-qubit state, got {num_qubits(state)} qubits")
    a00, a01, a10, a11 = state
    return float(2 * abs(a00 * a11 - a01 * a10))


@dataclass
class EntanglementFingerprint:
    single_qubit_purities: tuple[float, ...]
    pair_purities: dict[tuple[int, int], float] = field(default_factory=dict)
    concurrence: float | None = None

    def max_deviation(self, other: EntanglementFingerprint) -> float:
        diffs = [abs(a - b) for a, b in zip(self.single_qubit_purities, other.single_qubit_purities)]
        diffs += [abs(v - other.pair_purities[k]) for k, v in self.pair_purities.items()]
        if self.concurrence is not None and other.concurrence is not None:
            diffs.append(abs(self.concurrence - other.concurrence))
        return max(diffs, default=0.0)


def fingerprint(state: np.ndarray) -> EntanglementFingerprint:
    n = num_qubits(state)
    pairs = {}
    for i, j in combinations(range(1, n + 1), 2):
        pairs[(i, j)] = pi_measure(state, (i, j))
    return EntanglementFingerprint(
        single_qubit_purities=single_qubit_purities(state),
        pair_purities=pairs,
        concurrence=concurrence_2q(state) if n == 2 else None,
    )


# Each family's notion of maximal entanglement: (measure name, target value).
FAMILY_MEASURES = {
    "Bell2": ("concurrence", 1.0),
    "GHZ3": ("single_purities", 0.5),
    "Cluster4": ("pi12", 0.25),
    "Brown5": ("pi12", 0.25),
}
MEASURE_TARGETS = {"concurrence": 1.0, "single_purities": 0.5, "pi12": 0.25}


def marginal_purities(states: np.ndarray, keep: Iterable[int]) -> np.ndarray:
    """Purity of the ``keep`` marginal for each row of a (batch, 2^n) array.

    Vectorized counterpart of ``purity(partial_trace(state, keep))``.
    """
    states = np.atleast_2d(states)
    batch, dim = states.shape
    n = dim.bit_length() - 1
    keep = sorted(set(keep))
    traced = [q for q in range(1, n + 1) if q not in keep]
    axes = [0] + keep + traced  # qubit q lives on tensor axis q
    t = states.reshape((batch,) + (2,) * n).transpose(axes)
    a = t.reshape(batch, 2 ** len(keep), -1)
    rho = a @ a.conj().transpose(0, 2, 1)
    return np.sum(np.abs(rho) ** 2, axis=(1, 2))


def concurrences(states: np.ndarray) -> np.ndarray:
    states = np.atleast_2d(states)
    if states.shape[1] != 4:
        raise ValueError("concurrence needs 2-qubit states")
    a00, a01, a10, a11 = states.T
    return 2 * np.abs(a00 * a11 - a01 * a10)


def measure_values(measure: str, states: np.ndarray) -> np.ndarray:
    """Scalar summary of each state row under ``measure``.

    For ``single_purities`` this is the largest single-qubit purity, which
    equals 1/2 exactly when every marginal is maximally mixed.
    """
    states = np.atleast_2d(states)
    if measure == "concurrence":
        return concurrences(states)
    if measure == "single_purities":
        n = states.shape[1].bit_length() - 1
        return np.max([marginal_purities(states, {q}) for q in range(1, n + 1)], axis=0)
    if measure == "pi12":
        return marginal_purities(states, {1, 2})
    raise ValueError(f"unknown measure {measure!r}")


def measure_deviations(measure: str, states: np.ndarray) -> np.ndarray:
    """``|value - target|`` per state; for single purities the worst qubit counts."""
    states = np.atleast_2d(states)
    if measure == "single_purities":
        n = states.shape[1].bit_length() - 1
        per_qubit = [np.abs(marginal_purities(states, {q}) - 0.5) for q in range(1, n + 1)]
        return np.max(per_qubit, axis=0)
    return np.abs(measure_values(measure, states) - MEASURE_TARGETS[measure])


def measure_value(measure: str, state: np.ndarray) -> float:
    """Single-state :func:`measure_values` computed through :func:`partial_trace`."""
    if measure == "concurrence":
        return concurrence_2q(state)
    if measure == "single_purities":
        return max(single_qubit_purities(state))
    if measure == "pi12":
        return pi_measure(state, (1, 2))
    raise ValueError(f"unknown measure {measure!r}")


def measure_deviation(measure: str, state: np.ndarray) -> float:
    if measure == "single_purities":
        return max(abs(p - 0.5) for p in single_qubit_purities(state))
    return abs(measure_value(measure, state) - MEASURE_TARGETS[measure])
