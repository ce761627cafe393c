import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from chargequbits.errors import BadSubset, DimMismatch, NoConvergence, NotHermitian, NotPSD
from chargequbits.model import SIGMA_X, SIGMA_Z, ghz_state, QubitParams, build_h3
from chargequbits.numerics import (
    frobenius_distance,
    hermitian_eig,
    kron,
    kron_all,
    matrix_sqrt_psd,
    partial_trace,
)
from conftest import random_density
from oracles import reduce_to

I2 = np.eye(2)


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a + a.conj().T


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(I2, I2), np.eye(4))

    def test_sigma_z_product(self):
        assert np.array_equal(np.diag(kron(SIGMA_Z, SIGMA_Z)).real, [1, -1, -1, 1])

    def test_bit_flip_on_first_factor(self):
        ket00 = np.array([1, 0, 0, 0])
        assert np.array_equal(kron(SIGMA_X, I2) @ ket00, [0, 0, 1, 0])

    def test_entry_formula(self, rng):
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        b = rng.normal(size=(2, 2))
        k = kron(a, b)
        for i, j, p, q in np.ndindex(3, 3, 2, 2):
            assert k[i * 2 + p, j * 2 + q] == a[i, j] * b[p, q]

    @given(st.integers(0, 10_000))
    def test_associative_on_integer_matrices(self, seed):
        r = np.random.default_rng(seed)
        a, b, c = (r.integers(-5, 6, size=(2, 2)) for _ in range(3))
        assert np.array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))
        assert np.array_equal(kron_all(a, b, c), kron(a, kron(b, c)))

    def test_rejects_non_square(self):
        with pytest.raises(DimMismatch):
            kron(np.ones((2, 3)), I2)


class TestHermitianEig:
    def test_diagonal(self):
        assert np.allclose(hermitian_eig(np.diag([3.0, 1.0, 2.0])).eigenvalues, [1, 2, 3])

    def test_pauli_x(self):
        assert np.allclose(hermitian_eig(SIGMA_X).eigenvalues, [-1, 1])

    def test_three_qubit_zero_tunneling(self):
        j = 25.0
        dec = hermitian_eig(build_h3(QubitParams((0, 0, 0), (0, 0, 0), j, j)))
        assert np.allclose(dec.eigenvalues, [-2 * j] * 2 + [0] * 4 + [2 * j] * 2, atol=1e-12)

    @pytest.mark.parametrize("n", [1, 2, 3, 8, 16])
    def test_random_hermitian_residuals(self, rng, n):
        for _ in range(5):
            a = random_hermitian(rng, n)
            dec = hermitian_eig(a)
            v = dec.eigenvectors
            assert np.linalg.norm(a - v @ np.diag(dec.eigenvalues) @ v.conj().T) <= 1e-10 * np.linalg.norm(a)
            assert np.linalg.norm(v.conj().T @ v - np.eye(n)) <= 1e-10
            assert np.all(np.diff(dec.eigenvalues) >= 0)
            assert np.allclose(dec.eigenvalues, np.linalg.eigh(a)[0], atol=1e-10 * np.linalg.norm(a))

    def test_largest_supported_size(self, rng):
        a = random_hermitian(rng, 64)
        dec = hermitian_eig(a)
        assert np.linalg.norm(a - dec.reconstruct()) <= 1e-10 * np.linalg.norm(a)

    def test_degenerate_spectrum(self):
        dec = hermitian_eig(np.kron(np.eye(4), SIGMA_X))
        assert np.allclose(dec.eigenvalues, [-1] * 4 + [1] * 4)
        assert np.linalg.norm(dec.eigenvectors.conj().T @ dec.eigenvectors - np.eye(8)) < 1e-12

    def test_zero_matrix(self):
        dec = hermitian_eig(np.zeros((4, 4)))
        assert np.array_equal(dec.eigenvalues, np.zeros(4))

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_sweep_cap(self, rng):
        with pytest.raises(NoConvergence):
            hermitian_eig(random_hermitian(rng, 8), max_sweeps=1)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            hermitian_eig(np.array([[np.nan, 0], [0, 1]]))


class TestSqrt:
    def test_identity(self):
        assert np.allclose(matrix_sqrt_psd(np.eye(3)), np.eye(3))

    def test_diagonal(self):
        assert np.allclose(matrix_sqrt_psd(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))

    def test_projector_is_fixed(self):
        psi = ghz_state(0.3)
        p = np.outer(psi, psi.conj())
        assert np.linalg.norm(matrix_sqrt_psd(p) - p) < 1e-9

    def test_random_psd(self, rng):
        for n in (2, 4, 8):
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            m = a.conj().T @ a
            r = matrix_sqrt_psd(m)
            assert np.linalg.norm(r @ r - m) <= 1e-9 * max(1.0, np.linalg.norm(m))
            assert np.linalg.norm(r - r.conj().T) < 1e-12
            assert np.linalg.eigvalsh(r).min() > -1e-12

    def test_tiny_negative_is_clamped(self):
        r = matrix_sqrt_psd(np.diag([1.0, -1e-13]))
        assert np.allclose(r, np.diag([1.0, 0.0]))

    def test_negative_rejected(self):
        with pytest.raises(NotPSD):
            matrix_sqrt_psd(np.diag([1.0, -1e-6]))


class TestPartialTrace:
    def test_product_state(self):
        rho = np.zeros((8, 8))
        rho[0, 0] = 1
        assert np.allclose(partial_trace(rho, [1]), np.diag([1, 0]))

    def test_ghz_single(self):
        psi = ghz_state(0.0)
        assert np.allclose(partial_trace(np.outer(psi, psi.conj()), [1]), I2 / 2)

    def test_ghz_pair(self):
        psi = ghz_state(1.1)
        assert np.allclose(partial_trace(np.outer(psi, psi.conj()), [1, 2]), np.diag([0.5, 0, 0, 0.5]))

    @pytest.mark.parametrize("keep", [[1], [2], [3], [1, 2], [1, 3], [2, 3]])
    def test_matches_index_loop_oracle(self, rng, keep):
        rho = random_density(rng)
        assert np.allclose(partial_trace(rho, keep), reduce_to(rho, keep), atol=1e-14)

    def test_trace_and_hermiticity(self, rng):
        rho = random_density(rng)
        for keep in ([1], [2, 3], [1, 3]):
            r = partial_trace(rho, keep)
            assert abs(np.trace(r) - 1) < 1e-12
            assert np.linalg.norm(r - r.conj().T) < 1e-14

    def test_complementary_composition(self, rng):
        rho = random_density(rng)
        assert abs(np.trace(partial_trace(partial_trace(rho, [1, 2]), [2])) - 1) < 1e-12

    @pytest.mark.parametrize("keep", [[], [1, 2, 3], [0], [4]])
    def test_bad_subset(self, keep):
        with pytest.raises(BadSubset):
            partial_trace(np.eye(8) / 8, keep)


class TestDistance:
    def test_self(self, rng):
        a = rng.normal(size=(3, 3))
        assert frobenius_distance(a, a) == 0

    def test_identity_vs_zero(self):
        assert np.isclose(frobenius_distance(I2, np.zeros((2, 2))), np.sqrt(2))

    def test_dim_mismatch(self):
        with pytest.raises(DimMismatch):
            frobenius_distance(I2, np.eye(3))
