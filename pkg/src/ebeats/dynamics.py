"""Time evolution of the two-atom reduced state by three routes.

* ``exact``: unitary evolution under the full truncated Hamiltonian, then a
  partial trace over the mode. Exact up to Fock truncation, cost cubic in the
  truncation dimension.
* ``effective``: the same but under the dispersive effective Hamiltonian;
  valid for any coupling/detuning combination, including non-identical atoms.
* ``closed``: closed-form 4x4 reduced density matrices for identical atoms.
  The infinite photon sums collapse into overlap factors (Poissonian for a
  coherent field, geometric for a thermal one), so these are exact for the
  effective model at arbitrary intensity.

All closed-form routines broadcast over ``t``: passing an array of times
returns a stacked array of states.
"""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .errors import DimensionMismatchError, ExactTooLargeError, NotIdenticalAtomsError
from .linalg import EigenDecomposition, dagger, hermitian_eig, partial_trace_mode
from .model import (
    HilbertIndex,
    SystemParams,
    build_effective_hamiltonian,
    build_full_hamiltonian,
)
from .states import Bell, werner_state

# Spectral decomposition of the full Hamiltonian is cubic; refuse truncations
# past this point and push callers to the closed forms.
EXACT_N_MAX = 512


class Route(str, enum.Enum):
    EXACT = "exact"
    EFFECTIVE = "effective"
    CLOSED = "closed"


def _require_identical(p: SystemParams):
    p._require_detuned()
    if not p.is_identical():
        raise NotIdenticalAtomsError(
            "closed forms need g_a = g_b and delta_a = delta_b; "
            "use the effective route for distinct atoms"
        )


# ---------------------------------------------------------------------------
# overlap factors


def coherent_overlap(alpha: complex, phase: np.ndarray) -> np.ndarray:
    """Poissonian photon-sum factor exp(-|alpha|^2 (1 - e^{i phase}))."""
    return np.exp(-abs(alpha) ** 2 * (1.0 - np.exp(1j * np.asarray(phase))))


def thermal_overlap(mean_n: float, phase: np.ndarray) -> np.ndarray:
    """Geometric photon-sum factor 1 / (1 + <n>(1 - e^{i phase}))."""
    return 1.0 / (1.0 + mean_n * (1.0 - np.exp(1j * np.asarray(phase))))


def fock_overlap(n: int, phase: np.ndarray) -> np.ndarray:
    """Single-level factor e^{i n phase} (delta-distributed photon number)."""
    return np.exp(1j * n * np.asarray(phase))


# ---------------------------------------------------------------------------
# dressed-basis propagation (identical atoms)


def _angles(p: SystemParams, t):
    """chi = g^2 t / delta, the pair-coupling angle, and Omega t with
    Omega = delta + g^2/delta the Stark-shifted detuning."""
    t = np.asarray(t, dtype=float)
    chi = p.g_a**2 * t / p.delta_a
    omega_t = (p.delta_a + p.g_a**2 / p.delta_a) * t
    return chi, omega_t


def dressed_phases(p: SystemParams, n: int, t) -> np.ndarray:
    """Evolution phases of the four dressed pair states at Fock level n,
    ordered (|00>, |psi+>, |psi->, |11>).

    |00> and |11> carry the level-dependent phase exp(+-i[delta +
    g^2(2n+1)/delta] t); the maximally entangled pair states pick up the
    level-independent exp(-+i g^2 t / delta).
    """
    _require_identical(p)
    chi, omega_t = _angles(p, t)
    theta_t = omega_t + 2.0 * n * chi
    return np.stack(
        [np.exp(1j * theta_t), np.exp(-1j * chi), np.exp(1j * chi), np.exp(-1j * theta_t)],
        axis=-1,
    )


def dressed_propagator(p: SystemParams, n: int, t: float) -> np.ndarray:
    """4x4 unitary on the atom pair at fixed Fock level n, in the
    computational basis {|00>, |01>, |10>, |11>}."""
    ph = dressed_phases(p, n, t)
    chi, _ = _angles(p, t)
    u = np.zeros(np.shape(chi) + (4, 4), dtype=complex)
    u[..., 0, 0] = ph[..., 0]
    u[..., 3, 3] = ph[..., 3]
    u[..., 1, 1] = u[..., 2, 2] = np.cos(chi)
    u[..., 1, 2] = u[..., 2, 1] = -1j * np.sin(chi)
    return u


# ---------------------------------------------------------------------------
# closed-form reduced states (identical atoms)


def _pair_amplitudes(psi: np.ndarray, phi: np.ndarray, chi):
    """Product amplitudes and the flip-flop-mixed middle-block amplitudes.

    l0 multiplies |01>, l1 multiplies |10>; both are independent of the
    photon number.
    """
    c, s = np.cos(chi), np.sin(chi)
    p00 = psi[0] * phi[0]
    p11 = psi[1] * phi[1]
    l0 = psi[0] * phi[1] * c - 1j * psi[1] * phi[0] * s
    l1 = psi[1] * phi[0] * c - 1j * psi[0] * phi[1] * s
    return p00, p11, l0, l1


def closed_form_fock(psi: np.ndarray, phi: np.ndarray, n: int, p: SystemParams, t) -> np.ndarray:
    """Pure evolved pair state for a Fock-state field: the atoms never tangle
    with the mode, only with each other. Returns amplitudes (..., 4)."""
    _require_identical(p)
    chi, omega_t = _angles(p, t)
    theta_t = omega_t + 2.0 * n * chi
    p00, p11, l0, l1 = _pair_amplitudes(psi, phi, chi)
    ones = np.ones_like(theta_t)
    return np.stack(
        [p00 * np.exp(1j * theta_t), l0 * ones, l1 * ones, p11 * np.exp(-1j * theta_t)],
        axis=-1,
    )


def _mixed_from_overlap(psi, phi, p, t, overlap) -> np.ndarray:
    """Assemble the reduced 4x4 from the overlap factor of the photon
    distribution: f(phase) = sum_n P_n e^{i n phase}.

    The six field-dependent coherences carry f at 2 g^2 t/delta (single
    dressed phase) and 4 g^2 t/delta (|00><11|), times the Stark-shifted
    free phases e^{i Omega t}, e^{2i Omega t}.
    """
    chi, omega_t = _angles(p, t)
    p00, p11, l0, l1 = _pair_amplitudes(psi, phi, chi)
    f1 = overlap(2.0 * chi)
    f2 = overlap(4.0 * chi)
    e1 = np.exp(1j * omega_t)
    e2 = np.exp(2j * omega_t)

    rho = np.zeros(np.shape(chi) + (4, 4), dtype=complex)
    rho[..., 0, 0] = np.abs(p00) ** 2
    rho[..., 1, 1] = np.abs(l0) ** 2
    rho[..., 2, 2] = np.abs(l1) ** 2
    rho[..., 3, 3] = np.abs(p11) ** 2
    rho[..., 1, 2] = l0 * np.conj(l1)
    rho[..., 2, 1] = np.conj(rho[..., 1, 2])

    c01 = p00 * e1 * f1 * np.conj(l0)
    c02 = p00 * e1 * f1 * np.conj(l1)
    c13 = l0 * np.conj(p11) * e1 * f1
    c23 = l1 * np.conj(p11) * e1 * f1
    c03 = p00 * np.conj(p11) * e2 * f2
    rho[..., 0, 1], rho[..., 1, 0] = c01, np.conj(c01)
    rho[..., 0, 2], rho[..., 2, 0] = c02, np.conj(c02)
    rho[..., 1, 3], rho[..., 3, 1] = c13, np.conj(c13)
    rho[..., 2, 3], rho[..., 3, 2] = c23, np.conj(c23)
    rho[..., 0, 3], rho[..., 3, 0] = c03, np.conj(c03)
    return rho


def closed_form_coherent(
    psi: np.ndarray, phi: np.ndarray, alpha: complex, p: SystemParams, t
) -> np.ndarray:
    """Reduced pair state for an initially coherent field. Mixed for
    alpha != 0: the six field-dependent coherences are damped by the
    Poissonian overlap factor, which revives at 2 g^2 t/delta = 2 pi k."""
    _require_identical(p)
    return _mixed_from_overlap(psi, phi, p, t, lambda ph: coherent_overlap(alpha, ph))


def closed_form_thermal(
    psi: np.ndarray, phi: np.ndarray, mean_n: float, p: SystemParams, t
) -> np.ndarray:
    """Reduced pair state for an initially thermal field (geometric photon
    distribution at mean occupation ``mean_n``)."""
    _require_identical(p)
    if mean_n < 0:
        raise ValueError("mean_n must be >= 0")
    return _mixed_from_overlap(psi, phi, p, t, lambda ph: thermal_overlap(mean_n, ph))


def closed_form_fock_density(
    psi: np.ndarray, phi: np.ndarray, n: int, p: SystemParams, t
) -> np.ndarray:
    """Projector form of closed_form_fock, through the same assembler as the
    mixed states (the overlap factor of a Fock field is a bare phase)."""
    _require_identical(p)
    return _mixed_from_overlap(psi, phi, p, t, lambda ph: fock_overlap(n, ph))


def _werner_xstate(gamma: float, sign: float, f, omega_t) -> np.ndarray:
    rho = np.zeros(np.shape(omega_t) + (4, 4), dtype=complex)
    rho[..., 0, 0] = rho[..., 3, 3] = (1.0 - gamma) / 4.0 + gamma / 2.0
    rho[..., 1, 1] = rho[..., 2, 2] = (1.0 - gamma) / 4.0
    c03 = sign * (gamma / 2.0) * np.exp(2j * omega_t) * f
    rho[..., 0, 3] = c03
    rho[..., 3, 0] = np.conj(c03)
    return rho


def _werner_closed(gamma: float, which: Bell, p: SystemParams, t, overlap) -> np.ndarray:
    _require_identical(p)
    which = Bell(which)
    chi, omega_t = _angles(p, t)
    if which in (Bell.PSI_PLUS, Bell.PSI_MINUS):
        # psi+- are dressed states: the Werner mixture does not evolve.
        rho0 = werner_state(gamma, which)
        return np.broadcast_to(rho0, np.shape(chi) + (4, 4)).copy()
    sign = 1.0 if which is Bell.PHI_PLUS else -1.0
    return _werner_xstate(gamma, sign, overlap(4.0 * chi), omega_t)


def closed_form_werner_coherent(
    gamma: float, which: Bell, alpha: complex, p: SystemParams, t
) -> np.ndarray:
    """Werner state evolved with an initially coherent field: only the
    |00><11| coherence moves, damped by the Poissonian overlap factor at
    4 g^2 t / delta."""
    return _werner_closed(gamma, which, p, t, lambda ph: coherent_overlap(alpha, ph))


def closed_form_werner_thermal(
    gamma: float, which: Bell, mean_n: float, p: SystemParams, t
) -> np.ndarray:
    """Werner state evolved with an initially thermal field."""
    if mean_n < 0:
        raise ValueError("mean_n must be >= 0")
    return _werner_closed(gamma, which, p, t, lambda ph: thermal_overlap(mean_n, ph))


def closed_form_werner_fock(
    gamma: float, which: Bell, n: int, p: SystemParams, t
) -> np.ndarray:
    """Werner state evolved with a Fock field: the coherence keeps unit
    modulus, so the entanglement never changes."""
    return _werner_closed(gamma, which, p, t, lambda ph: fock_overlap(n, ph))


# ---------------------------------------------------------------------------
# numeric routes on the truncated space


@lru_cache(maxsize=16)
def _cached_eig(p: SystemParams, n_max: int, which: str) -> EigenDecomposition:
    h = HilbertIndex(n_max)
    if which == "full":
        ham = build_full_hamiltonian(p, h)
    else:
        ham = build_effective_hamiltonian(p, h)
    return hermitian_eig(ham)


def _evolve_numeric(rho0: np.ndarray, p: SystemParams, h: HilbertIndex, t: float, which: str):
    if h.n_max > EXACT_N_MAX:
        raise ExactTooLargeError(
            f"n_max={h.n_max} beyond the cost guard ({EXACT_N_MAX}); use the closed forms"
        )
    if rho0.shape != (h.total_dim, h.total_dim):
        raise DimensionMismatchError(
            f"initial state must be {h.total_dim}x{h.total_dim}, got {rho0.shape}"
        )
    dec = _cached_eig(p, h.n_max, which)
    v = dec.eigenvectors
    u = (v * np.exp(-1j * dec.eigenvalues * t)) @ dagger(v)
    return u @ rho0 @ dagger(u)


def evolve_exact_full(rho0: np.ndarray, p: SystemParams, h: HilbertIndex, t: float) -> np.ndarray:
    """Full-space density matrix at time t under the lab-frame Hamiltonian.

    One eigendecomposition per (params, n_max) is cached and reused across
    times; the cache is read-only after construction.
    """
    return _evolve_numeric(rho0, p, h, t, "full")


def evolve_exact(rho0: np.ndarray, p: SystemParams, h: HilbertIndex, t: float) -> np.ndarray:
    """Reduced 4x4 pair state at time t under the full Hamiltonian."""
    return partial_trace_mode(evolve_exact_full(rho0, p, h, t), h.mode_dim)


def evolve_effective(rho0: np.ndarray, p: SystemParams, h: HilbertIndex, t: float) -> np.ndarray:
    """Reduced 4x4 pair state at time t under the effective Hamiltonian.

    Handles distinct atoms, where no closed form exists.
    """
    return partial_trace_mode(_evolve_numeric(rho0, p, h, t, "effective"), h.mode_dim)


def to_interaction_frame(rho: np.ndarray, p: SystemParams, t: float) -> np.ndarray:
    """Strip the free rotation at the mode frequency from a lab-frame reduced
    state.

    The lab- and mode-rotating-frame reduced states differ by the local
    unitary exp(-i omega t sigma_z/2) on each atom; the closed forms live in
    the rotating frame, so cross-route comparisons map through this first.
    Concurrence is invariant under it.
    """
    d = np.array([np.exp(1j * p.omega * t), 1.0, 1.0, np.exp(-1j * p.omega * t)])
    return np.conj(d)[:, None] * rho * d[None, :]
