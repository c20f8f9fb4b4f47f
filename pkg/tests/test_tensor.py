import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from meb_invariance.pauli import LABELS, PauliString, family, pauli_matrix, superpose
from meb_invariance.tensor import (
    ShapeError,
    SizeError,
    apply,
    basis_state,
    dagger,
    density_matrix,
    inner,
    is_unitary,
    kron,
    matmul,
    partial_trace,
    purity,
    unitarity_residual,
)
from tests.conftest import random_complex, random_state, random_unitary
from tests.oracles import partial_trace_bruteforce, partial_trace_einsum, purity_by_square

I, X, Y, Z = (LABELS[k].astype(float) for k in "IXYZ")
seeds = st.integers(min_value=0, max_value=2**32 - 1)

# Two-qubit products exactly as printed, row by row.
PRINTED_PRODUCTS = {
    "II": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    "IX": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
    "IY": [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
    "IZ": [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]],
    "XI": [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
    "XX": [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    "XY": [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    "XZ": [[0, 0, 1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, -1, 0, 0]],
    "YI": [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
    "YX": [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
    "YY": [[0, 0, 0, 1], [0, 0, -1, 0], [0, -1, 0, 0], [1, 0, 0, 0]],
    "YZ": [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
    "ZI": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    "ZX": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, -1, 0]],
    "ZY": [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
    "ZZ": [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
}


@pytest.mark.parametrize("word", sorted(PRINTED_PRODUCTS))
def test_kron_matches_printed_products(word):
    a, b = word
    np.testing.assert_array_equal(kron(LABELS[a], LABELS[b]), PRINTED_PRODUCTS[word])


def test_kron_identity():
    np.testing.assert_array_equal(kron(I, I), np.eye(4))


def test_kron_size_cap():
    big = np.eye(2**7)
    with pytest.raises(SizeError):
        kron(big, big)


def test_dagger_examples():
    np.testing.assert_array_equal(dagger(I), I)
    np.testing.assert_array_equal(dagger(Y), -Y)
    m = random_complex(np.random.default_rng(3), (4, 4))
    np.testing.assert_array_equal(dagger(dagger(m)), m)


def test_matmul_examples():
    # hand multiplication: [[1,0],[0,-1]] columns swapped by X on the left
    np.testing.assert_array_equal(matmul(X, Z), [[0, -1], [1, 0]])
    np.testing.assert_array_equal(matmul(X, Z), -Y)
    m = random_complex(np.random.default_rng(4), (2, 2))
    np.testing.assert_array_equal(matmul(I, m), m)
    a = superpose(family("A"), [0.6, 0.8])
    assert np.max(np.abs(matmul(a, dagger(a)) - I)) <= 1e-12


def test_matmul_shape_error():
    with pytest.raises(ShapeError):
        matmul(np.eye(2), np.eye(4))


def test_is_unitary_examples():
    ok, res = is_unitary(pauli_matrix(PauliString("IY")), 1e-12)
    assert ok and res == 0
    # ((I+X)/sqrt2)^T ((I+X)/sqrt2) = (2I + 2X)/2 = I + X, residual exactly 1
    ok, res = is_unitary((I + X) / np.sqrt(2), 1e-12)
    assert not ok
    assert res == pytest.approx(1.0, abs=1e-12)
    ok, _ = is_unitary(superpose(family("U1"), [0.5] * 4), 1e-12)
    assert ok


def test_is_unitary_requires_square():
    with pytest.raises(ShapeError):
        unitarity_residual(np.ones((2, 3)))


def test_apply_examples():
    phi_plus = (basis_state("00") + basis_state("11")) / np.sqrt(2)
    psi_plus = (basis_state("01") + basis_state("10")) / np.sqrt(2)
    np.testing.assert_allclose(apply(kron(X, I), phi_plus), psi_plus, atol=1e-15)
    s = random_state(np.random.default_rng(5), 3)
    np.testing.assert_array_equal(apply(np.eye(8), s), s)
    ghz1 = (basis_state("000") + basis_state("111")) / np.sqrt(2)
    ghz2 = (basis_state("000") - basis_state("111")) / np.sqrt(2)
    np.testing.assert_allclose(apply(pauli_matrix(PauliString("ZII")), ghz1), ghz2, atol=1e-15)


def test_apply_errors():
    with pytest.raises(ShapeError):
        apply(np.eye(4), basis_state("000"))
    with pytest.raises(ValueError, match="norm"):
        apply(I + X, basis_state("0"))


def test_inner_examples():
    phi_plus = (basis_state("00") + basis_state("11")) / np.sqrt(2)
    psi_minus = (basis_state("01") - basis_state("10")) / np.sqrt(2)
    assert inner(phi_plus, phi_plus) == pytest.approx(1.0, abs=1e-15)
    assert inner(phi_plus, psi_minus) == 0
    with pytest.raises(ShapeError):
        inner(phi_plus, basis_state("0"))


def test_inner_conjugate_linear_in_first():
    a, b = basis_state("0"), basis_state("0")
    assert inner(1j * a, b) == pytest.approx(-1j)
    assert inner(a, 1j * b) == pytest.approx(1j)


def test_partial_trace_examples():
    phi_plus = (basis_state("00") + basis_state("11")) / np.sqrt(2)
    np.testing.assert_allclose(partial_trace(phi_plus, {1}), I / 2, atol=1e-15)
    np.testing.assert_allclose(partial_trace(basis_state("00"), {1}), [[1, 0], [0, 0]])


def test_partial_trace_bad_indices():
    s = basis_state("000")
    with pytest.raises(IndexError):
        partial_trace(s, {0})
    with pytest.raises(IndexError):
        partial_trace(s, {4})
    with pytest.raises(IndexError):
        partial_trace(s, set())


@pytest.mark.parametrize("keep", [{1}, {3}, {1, 3}, {2, 3}, {1, 2, 3}, {2}])
def test_partial_trace_matches_bruteforce(keep):
    s = random_state(np.random.default_rng(11), 3)
    np.testing.assert_allclose(partial_trace(s, keep), partial_trace_bruteforce(s, keep), atol=1e-14)


def test_density_matrices_are_positive_semidefinite():
    rng = np.random.default_rng(12)
    for _ in range(50):
        s = random_state(rng, 4)
        for keep in ({1}, {2, 4}):
            rho = partial_trace(s, keep)
            np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
            assert np.linalg.eigvalsh(rho).min() >= -1e-12


def test_purity_examples():
    assert purity(density_matrix(basis_state("01"))) == pytest.approx(1.0, abs=1e-15)
    assert purity(I / 2) == pytest.approx(0.5, abs=1e-15)
    assert purity(np.eye(4) / 4) == pytest.approx(0.25, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_mixed_product_law(seed):
    rng = np.random.default_rng(seed)
    a, b, c, d = (random_complex(rng, (2, 2)) for _ in range(4))
    lhs = kron(a, b) @ kron(c, d)
    assert np.max(np.abs(lhs - kron(a @ c, b @ d))) <= 1e-12


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_dagger_reverses_products(seed):
    rng = np.random.default_rng(seed)
    a, b = random_complex(rng, (4, 4)), random_complex(rng, (4, 4))
    np.testing.assert_allclose(dagger(a @ b), dagger(b) @ dagger(a), atol=1e-12)
    np.testing.assert_array_equal(dagger(dagger(a)), a)


@settings(max_examples=200, deadline=None)
@given(seeds, st.integers(1, 5), st.data())
def test_partial_trace_properties(seed, n, data):
    rng = np.random.default_rng(seed)
    s = random_state(rng, n)
    keep = data.draw(st.sets(st.integers(1, n), min_size=1))
    rho = partial_trace(s, keep)
    assert abs(np.trace(rho) - 1) <= 1e-12
    np.testing.assert_allclose(rho, partial_trace_einsum(s, keep), atol=1e-12)
    p = purity(rho)
    assert p == pytest.approx(purity_by_square(rho), abs=1e-12)
    assert 1 / rho.shape[0] - 1e-12 <= p <= 1 + 1e-12
    complement = set(range(1, n + 1)) - set(keep)
    if complement:
        assert abs(p - purity(partial_trace(s, complement))) <= 1e-10


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_unitaries_preserve_inner_products(seed):
    rng = np.random.default_rng(seed)
    u = kron(kron(random_unitary(rng), random_unitary(rng)), random_unitary(rng))
    a, b = random_state(rng, 3), random_state(rng, 3)
    assert abs(inner(apply(u, a), apply(u, b)) - inner(a, b)) <= 1e-10
