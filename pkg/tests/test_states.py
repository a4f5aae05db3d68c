import math

import numpy as np
import pytest

from ebeats.entanglement import concurrence_mixed, concurrence_pure
from ebeats.errors import (
    DimensionMismatchError,
    GammaOutOfRangeError,
    NotNormalizedError,
    TruncationTooSmallError,
)
from ebeats.linalg import is_density, partial_trace_mode
from ebeats.model import SIGMA_X, SIGMA_Y, HilbertIndex
from ebeats.states import (
    Bell,
    FieldKind,
    FieldSpec,
    bell_state,
    compose_initial,
    field_density,
    mean_photon_from_temperature,
    qubit_state,
    suggest_n_max,
    theta_state,
    werner_state,
)


class TestQubitStates:
    def test_theta_zero_is_sigma_x_plus_eigenstate(self):
        s = theta_state(0.0)
        np.testing.assert_allclose(SIGMA_X @ s, s, atol=1e-15)

    def test_theta_pi_is_sigma_x_minus_eigenstate(self):
        s = theta_state(np.pi)
        np.testing.assert_allclose(SIGMA_X @ s, -s, atol=1e-15)

    def test_theta_half_pi_is_sigma_y_eigenstate(self):
        s = theta_state(np.pi / 2)
        ev = (s.conj() @ SIGMA_Y @ s).real
        np.testing.assert_allclose(SIGMA_Y @ s, ev * s, atol=1e-15)
        assert abs(abs(ev) - 1.0) < 1e-14

    def test_qubit_state_rejects_unnormalized(self):
        with pytest.raises(NotNormalizedError):
            qubit_state(1.0, 1.0)


class TestBellAndWerner:
    def test_psi_plus_amplitudes(self):
        np.testing.assert_allclose(bell_state(Bell.PSI_PLUS), [0, 1 / math.sqrt(2), 1 / math.sqrt(2), 0])

    def test_phi_minus_amplitudes(self):
        np.testing.assert_allclose(
            bell_state(Bell.PHI_MINUS), [1 / math.sqrt(2), 0, 0, -1 / math.sqrt(2)]
        )

    @pytest.mark.parametrize("which", list(Bell))
    def test_all_bell_states_maximally_entangled(self, which):
        assert concurrence_pure(bell_state(which)) == pytest.approx(1.0)

    def test_werner_limits(self):
        np.testing.assert_allclose(werner_state(0.0), np.eye(4) / 4)
        phi = bell_state(Bell.PHI_PLUS)
        np.testing.assert_allclose(werner_state(1.0), np.outer(phi, phi.conj()))

    def test_werner_gamma_9_11_concurrence(self):
        assert concurrence_mixed(werner_state(9 / 11)) == pytest.approx(8 / 11, abs=1e-10)

    def test_werner_rejects_gamma_out_of_range(self):
        with pytest.raises(GammaOutOfRangeError):
            werner_state(1.2)

    @pytest.mark.parametrize("gamma", [0.0, 0.3, 1.0])
    def test_werner_is_density(self, gamma):
        assert is_density(werner_state(gamma))


class TestFieldDensity:
    def test_fock_zero_is_vacuum_projector(self):
        rho = field_density(FieldSpec.fock(0, 3))
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        np.testing.assert_array_equal(rho, expected)

    def test_coherent_mean_photon_number(self):
        spec = FieldSpec.coherent(2.0, 30)
        rho = field_density(spec)
        mean = np.trace(rho @ np.diag(np.arange(31))).real
        assert mean == pytest.approx(4.0, abs=1e-6)

    def test_thermal_geometric_probabilities(self):
        # p_n = <n>^n / (1+<n>)^{n+1}: for <n>=1, p_0 = 1/2 and p_1 = 1/4
        rho = field_density(FieldSpec.thermal(1.0, 60))
        assert rho[0, 0].real == pytest.approx(0.5, abs=1e-12)
        assert rho[1, 1].real == pytest.approx(0.25, abs=1e-12)

    def test_truncation_refused_when_tail_too_heavy(self):
        with pytest.raises(TruncationTooSmallError):
            field_density(FieldSpec.coherent(3.0, 5))

    @pytest.mark.parametrize(
        "spec",
        [FieldSpec.fock(2, 4), FieldSpec.coherent(1.5 + 0.5j), FieldSpec.thermal(0.7)],
    )
    def test_every_field_state_is_a_density(self, spec):
        assert is_density(field_density(spec))

    def test_suggested_truncations(self):
        assert suggest_n_max(FieldKind.COHERENT, 4.0) == math.ceil(4 + 16 + 10)
        assert suggest_n_max(FieldKind.THERMAL, 0.5) == 30
        assert suggest_n_max(FieldKind.FOCK, 3) == 3

    def test_fock_level_above_truncation_rejected(self):
        with pytest.raises(ValueError):
            FieldSpec(FieldKind.FOCK, 5, 3)


class TestMeanPhotonFromTemperature:
    def test_zero_temperature_limit(self):
        assert mean_photon_from_temperature(1.0, 1e-3) == pytest.approx(0.0, abs=1e-300)

    def test_log2_gives_one(self):
        assert mean_photon_from_temperature(math.log(2.0), 1.0) == pytest.approx(1.0, rel=1e-12)

    def test_log_3_2_gives_two(self):
        assert mean_photon_from_temperature(math.log(1.5), 1.0) == pytest.approx(2.0, rel=1e-12)

    def test_rejects_nonpositive_temperature(self):
        with pytest.raises(ValueError):
            mean_photon_from_temperature(1.0, 0.0)


class TestComposeInitial:
    def test_product_projector_trace_one(self):
        atoms = np.kron(theta_state(0.0), theta_state(0.0))
        rho = compose_initial(atoms, FieldSpec.fock(0, 4), HilbertIndex(4))
        assert is_density(rho)
        assert abs(np.trace(rho) - 1.0) < 1e-12

    def test_roundtrip_partial_trace(self):
        atoms = werner_state(0.37)
        rho = compose_initial(atoms, FieldSpec.thermal(0.5, 30), HilbertIndex(30))
        np.testing.assert_allclose(partial_trace_mode(rho, 31), atoms, atol=1e-13)

    def test_werner_thermal_is_density(self):
        rho = compose_initial(werner_state(0.8), FieldSpec.thermal(1.0, 40), HilbertIndex(40))
        assert is_density(rho)

    def test_truncation_mismatch_rejected(self):
        with pytest.raises(DimensionMismatchError):
            compose_initial(werner_state(0.5), FieldSpec.fock(0, 3), HilbertIndex(4))

    def test_bad_atom_shape_rejected(self):
        with pytest.raises(DimensionMismatchError):
            compose_initial(np.ones(3) / np.sqrt(3), FieldSpec.fock(0, 2), HilbertIndex(2))
