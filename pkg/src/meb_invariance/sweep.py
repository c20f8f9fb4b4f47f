"""Seeded sweeps of within-subspace superpositions against each family's invariant.

Random coefficients come from a Philox stream keyed by ``(seed, stream)``.
Sample ``i`` always occupies the same block of Philox counters, so it can be
regenerated on its own (:func:`sample_at`) and results do not depend on how
the samples are batched or ordered. Sweeps always include the canonical unit
vectors and the uniform vector alongside the random draws.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .catalog import BasisFamily, Catalog, Subspace, basis_family, build_catalog
from .entanglement import FAMILY_MEASURES, MEASURE_TARGETS, measure_deviations, measure_values
from .tensor import ShapeError

DEFAULT_SAMPLES = 1000
DEFAULT_TOL = 1e-10

_TWO_PI = 2 * np.pi


def _check_seed(seed: int) -> None:
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")


def _words_per_sample(m: int, complex_coeffs: bool) -> int:
    # two raw words per Box-Muller pair; rounded up to whole Philox counters (4 words)
    normals = 2 * m if complex_coeffs else m
    words = 2 * -(-normals // 2)
    return 4 * -(-words // 4)


def _normals_from_raw(raw: np.ndarray, count: int) -> np.ndarray:
    # uniforms in (0, 1]: top 53 bits, offset by one ulp so log() is finite
    u = ((raw >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
    u1, u2 = u[:, 0::2], u[:, 1::2]
    r = np.sqrt(-2.0 * np.log(u1))
    z = np.stack([r * np.cos(_TWO_PI * u2), r * np.sin(_TWO_PI * u2)], axis=-1)
    return z.reshape(raw.shape[0], -1)[:, :count]


def _unit_rows(z: np.ndarray, m: int, complex_coeffs: bool) -> np.ndarray:
    if complex_coeffs:
        z = z[:, :m] + 1j * z[:, m:]
    norms = np.linalg.norm(z, axis=1, keepdims=True)
    return z / norms


def sample_block(seed: int, stream: int, samples: int, m: int,
                 complex_coeffs: bool = False, start: int = 0) -> np.ndarray:
    """Samples ``start .. start+samples-1`` of a stream as unit rows of shape (samples, m)."""
    _check_seed(seed)
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    words = _words_per_sample(m, complex_coeffs)
    bg = np.random.Philox(key=np.array([seed, stream], dtype=np.uint64))
    if start:
        bg.advance(start * words // 4)
    raw = bg.random_raw(samples * words).reshape(samples, words)
    normals = 2 * m if complex_coeffs else m
    return _unit_rows(_normals_from_raw(raw, normals), m, complex_coeffs)


def sample_at(seed: int, stream: int, index: int, m: int, complex_coeffs: bool = False) -> np.ndarray:
    """The single coefficient vector for sample ``index`` of a stream."""
    return sample_block(seed, stream, 1, m, complex_coeffs, start=index)[0]


def sample_coeffs(key: tuple[int, int, int], m: int, complex_coeffs: bool = False) -> np.ndarray:
    """Unit vector for ``key = (seed, stream, index)``; uniform on the sphere in R^m (or C^m)."""
    seed, stream, index = key
    return sample_at(seed, stream, index, m, complex_coeffs)


def boundary_coeffs(m: int) -> np.ndarray:
    """The ``m`` canonical unit vectors followed by the uniform vector, as rows."""
    return np.vstack([np.eye(m), np.full((1, m), 1 / np.sqrt(m))])


def coefficient_matrix(seed: int, stream: int, samples: int, m: int,
                       complex_coeffs: bool = False) -> np.ndarray:
    """Boundary rows followed by ``samples`` seeded random rows."""
    rows = [boundary_coeffs(m).astype(complex if complex_coeffs else float)]
    if samples > 0:
        rows.append(sample_block(seed, stream, samples, m, complex_coeffs))
    return np.vstack(rows)


def superpose_states(sub: Subspace | Sequence[np.ndarray], c: Sequence[complex]) -> np.ndarray:
    """``sum_i c_i |state_i>``; ``c`` may also be a 2-d array of coefficient rows."""
    states = np.asarray(sub.states if isinstance(sub, Subspace) else tuple(sub))
    c = np.asarray(c)
    if c.shape[-1] != states.shape[0] or c.ndim > 2:
        raise ShapeError(f"{states.shape[0]} states but coefficients of shape {c.shape}")
    return c @ states


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    family: BasisFamily
    subspace_index: int | None = None  # None sweeps every subspace
    samples: int = DEFAULT_SAMPLES
    seed: int = 1
    tol: float = DEFAULT_TOL
    measure: str | None = None

    def __post_init__(self):
        expected = FAMILY_MEASURES[self.family.identifier][0]
        if self.measure is None:
            object.__setattr__(self, "measure", expected)
        elif self.measure != expected:
            raise ConfigError(
                f"measure {self.measure!r} does not apply to {self.family.identifier}; use {expected!r}"
            )
        if self.samples < 1:
            raise ConfigError(f"samples must be positive, got {self.samples}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.subspace_index is not None and not 1 <= self.subspace_index <= self.family.subspace_count:
            raise ConfigError(
                f"{self.family.identifier} has subspaces 1..{self.family.subspace_count}, got {self.subspace_index}"
            )

    @property
    def target(self) -> float:
        return MEASURE_TARGETS[self.measure]


@dataclass
class SubspaceResult:
    index: int
    samples_run: int
    max_deviation: float
    worst_coeffs: np.ndarray
    worst_value: float
    max_norm_error: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tol


@dataclass
class SweepReport:
    config: SweepConfig
    results: list[SubspaceResult] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def max_deviation(self) -> float:
        return max(r.max_deviation for r in self.results)


def _sweep_subspace(sub: Subspace, cfg: SweepConfig) -> SubspaceResult:
    coeffs = coefficient_matrix(cfg.seed, sub.index, cfg.samples, sub.size)
    psi = superpose_states(sub, coeffs)
    dev = measure_deviations(cfg.measure, psi)
    # argmax returns the first maximum, so ties resolve by stream position
    worst = int(np.argmax(dev))
    return SubspaceResult(
        index=sub.index,
        samples_run=coeffs.shape[0],
        max_deviation=float(dev[worst]),
        worst_coeffs=coeffs[worst],
        worst_value=float(measure_values(cfg.measure, psi[worst:worst + 1])[0]),
        max_norm_error=float(np.max(np.abs(np.linalg.norm(psi, axis=1) - 1.0))),
        tol=cfg.tol,
    )


def run_sweep(cfg: SweepConfig, catalog: Catalog | None = None) -> SweepReport:
    start = time.perf_counter()
    catalog = catalog or build_catalog(cfg.family)
    if cfg.subspace_index is None:
        subs = catalog.subspaces
    else:
        subs = (catalog.subspace(cfg.subspace_index),)
    report = SweepReport(cfg, [_sweep_subspace(s, cfg) for s in subs])
    report.wall_time = time.perf_counter() - start
    return report


@dataclass
class ProbeReport:
    family: BasisFamily
    members: tuple[tuple[int, int], ...]
    measure: str
    samples_run: int
    minimum: float
    maximum: float
    mean: float
    complex_coeffs: bool


def cross_subspace_probe(
    fam: BasisFamily | str,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 1,
    members: Sequence[tuple[int, int]] | None = None,
    complex_coeffs: bool = False,
) -> ProbeReport:
    """Observe the family measure on superpositions that straddle subspaces.

    ``members`` lists ``(k, i)`` catalog positions to mix; the default is
    every state of subspaces 1 and 2. Nothing here is pass/fail.
    """
    if isinstance(fam, str):
        fam = basis_family(fam)
    catalog = build_catalog(fam)
    if members is None:
        if fam.subspace_count < 2:
            raise ConfigError(f"{fam.identifier} has a single subspace")
        members = [(k, i) for k in (1, 2) for i in range(1, fam.subspace_size + 1)]
    members = tuple((int(k), int(i)) for k, i in members)
    states = [catalog.subspace(k).state(i) for k, i in members]
    measure = FAMILY_MEASURES[fam.identifier][0]

    coeffs = coefficient_matrix(seed, 0, samples, len(states), complex_coeffs)
    values = measure_values(measure, superpose_states(states, coeffs))
    return ProbeReport(
        family=fam,
        members=members,
        measure=measure,
        samples_run=len(values),
        minimum=float(values.min()),
        maximum=float(values.max()),
        mean=float(values.mean()),
        complex_coeffs=complex_coeffs,
    )
