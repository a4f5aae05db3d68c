import numpy as np
import pytest

from ebeats.errors import DimensionMismatchError, NotHermitianError, NotPositiveError
from ebeats.linalg import (
    density_eigvalsh,
    hermitian_eig,
    is_density,
    is_hermitian,
    is_unitary,
    kron,
    matrix_exp_i,
    partial_trace_mode,
    projector,
    trace_distance,
)

# Textbook Pauli matrices as plain linalg fixtures (basis-agnostic here).
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SP = np.array([[0, 0], [1, 0]], dtype=complex)  # |1><0| with basis (|0>, |1>)
SM = SP.T.conj()
I2 = np.eye(2, dtype=complex)


def random_hermitian(n, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (a + a.conj().T) / 2


def random_density(n, rng):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


class TestKron:
    def test_identity(self):
        np.testing.assert_array_equal(kron(I2, I2), np.eye(4))

    def test_sigma_z_identity_diagonal(self):
        np.testing.assert_array_equal(np.diag(kron(SZ, I2)), [1, 1, -1, -1])

    def test_raising_lowering_maps_01_to_10(self):
        # hand expansion: (|1><0| (x) |0><1|) |0>|1> = |1>|0>
        ket01 = np.array([0, 1, 0, 0], dtype=complex)
        ket10 = np.array([0, 0, 1, 0], dtype=complex)
        np.testing.assert_allclose(kron(SP, SM) @ ket01, ket10)

    def test_mixed_product_property(self):
        rng = np.random.default_rng(1)
        a, b = rng.normal(size=(2, 3, 3)), rng.normal(size=(2, 2, 2))
        left = kron(a[0], b[0]) @ kron(a[1], b[1])
        np.testing.assert_allclose(left, kron(a[0] @ a[1], b[0] @ b[1]), atol=1e-13)

    def test_associative_exactly(self):
        # exact equality needs exactly-representable products; the operators
        # used in this package (paulis, ladders, identities) qualify
        rng = np.random.default_rng(2)
        a, b, c = (rng.integers(-4, 5, size=(2, 2)).astype(complex) for _ in range(3))
        np.testing.assert_array_equal(kron(kron(a, b), c), kron(a, kron(b, c)))
        x, y, z = (rng.normal(size=(2, 2)) for _ in range(3))
        np.testing.assert_allclose(kron(kron(x, y), z), kron(x, kron(y, z)), rtol=1e-15)


class TestHermitianEig:
    def test_diagonal_sorted_ascending(self):
        dec = hermitian_eig(np.diag([3.0, 1.0, 2.0]).astype(complex))
        np.testing.assert_allclose(dec.eigenvalues, [1, 2, 3])

    def test_pauli_x_spectrum(self):
        dec = hermitian_eig(SX)
        np.testing.assert_allclose(dec.eigenvalues, [-1, 1], atol=1e-14)

    def test_reconstruction_and_unitarity(self):
        rng = np.random.default_rng(3)
        a = random_hermitian(12, rng)
        dec = hermitian_eig(a)
        np.testing.assert_allclose(dec.reconstruct(), a, atol=1e-12)
        assert is_unitary(dec.eigenvectors)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


class TestMatrixExpI:
    def test_zero_scale_is_identity(self):
        rng = np.random.default_rng(4)
        np.testing.assert_allclose(matrix_exp_i(random_hermitian(5, rng), 0.0), np.eye(5), atol=1e-14)

    def test_sigma_z_quarter_turn(self):
        # e^{-i (pi/2) sigma_z} = diag(e^{-i pi/2}, e^{+i pi/2}) = -i sigma_z
        np.testing.assert_allclose(matrix_exp_i(SZ, np.pi / 2), -1j * SZ, atol=1e-15)

    def test_group_property(self):
        rng = np.random.default_rng(5)
        a = random_hermitian(8, rng)
        u1, u2 = matrix_exp_i(a, 0.7), matrix_exp_i(a, 1.9)
        np.testing.assert_allclose(u1 @ u2, matrix_exp_i(a, 2.6), atol=1e-12)

    @pytest.mark.parametrize("dim", [2, 16, 64])
    def test_unitary_up_to_dim_64(self, dim):
        rng = np.random.default_rng(dim)
        u = matrix_exp_i(random_hermitian(dim, rng), 2.3)
        assert is_unitary(u, tol=1e-10)


class TestPartialTraceMode:
    def test_product_with_fock_level(self):
        rng = np.random.default_rng(6)
        rho_atoms = random_density(4, rng)
        fock = np.zeros((5, 5), dtype=complex)
        fock[2, 2] = 1.0
        np.testing.assert_allclose(partial_trace_mode(kron(rho_atoms, fock), 5), rho_atoms, atol=1e-14)

    def test_bell_times_field(self):
        rng = np.random.default_rng(7)
        bell = projector(np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2))
        rho = kron(bell, random_density(3, rng))
        np.testing.assert_allclose(partial_trace_mode(rho, 3), bell, atol=1e-14)

    def test_atom_mode_entangled_state(self):
        # (|psi+>|0> + |11>|1>)/sqrt(2): two-term Schmidt sum by hand gives a
        # rank-2 mixture with eigenvalues (1/2, 1/2).
        psi_plus = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
        e11 = np.array([0, 0, 0, 1], dtype=complex)
        state = (np.kron(psi_plus, [1, 0]) + np.kron(e11, [0, 1])) / np.sqrt(2)
        reduced = partial_trace_mode(projector(state), 2)
        w = np.linalg.eigvalsh(reduced)
        np.testing.assert_allclose(sorted(w, reverse=True), [0.5, 0.5, 0, 0], atol=1e-14)

    def test_linear_and_trace_preserving(self):
        rng = np.random.default_rng(8)
        r1, r2 = random_density(12, rng), random_density(12, rng)
        mix = 0.3 * r1 + 0.7 * r2
        lhs = partial_trace_mode(mix, 3)
        rhs = 0.3 * partial_trace_mode(r1, 3) + 0.7 * partial_trace_mode(r2, 3)
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)
        assert abs(np.trace(lhs) - 1.0) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            partial_trace_mode(np.eye(10, dtype=complex), 3)


class TestChecksAndClips:
    def test_is_hermitian(self):
        assert is_hermitian(SX)
        assert not is_hermitian(SP)

    def test_is_density(self):
        rng = np.random.default_rng(9)
        assert is_density(random_density(4, rng))
        assert not is_density(np.eye(4, dtype=complex))  # trace 4

    def test_density_eigvalsh_clips_noise(self):
        rho = np.diag([1.0, -5e-11, 0.0, 0.0]).astype(complex)
        w = density_eigvalsh(rho)
        assert w.min() == 0.0

    def test_density_eigvalsh_rejects_negative(self):
        with pytest.raises(NotPositiveError):
            density_eigvalsh(np.diag([1.1, -0.1, 0.0, 0.0]).astype(complex))

    def test_trace_distance(self):
        a = np.diag([1.0, 0.0]).astype(complex)
        b = np.diag([0.0, 1.0]).astype(complex)
        assert trace_distance(a, b) == pytest.approx(1.0)
        assert trace_distance(a, a) == pytest.approx(0.0, abs=1e-15)
