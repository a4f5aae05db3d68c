"""Physical parameters and operator builders for two two-level atoms coupled
to one quantized field mode.

Conventions used everywhere in the package:

* qubit basis order (|0>, |1>) with sigma_z|1> = +|1>, sigma_z|0> = -|0>,
  and sigma_+ = |1><0|;
* composite basis |i_a, i_b, n> with atom a slowest and the mode fastest:
  index = ((i_a * 2) + i_b) * (n_max + 1) + n, which makes the partial trace
  over the mode a contiguous-block sum;
* hbar = 1, all frequencies in the same (arbitrary) unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import dagger, frobenius, kron, matrix_exp_i

# Dimensionless validity guard for the weak, far-off-resonance regime: the
# coupling-to-detuning ratios must satisfy max|eps| * sqrt(<n>) below this.
# The check warns, it never blocks: invalid regimes stay explorable.
DISPERSIVE_THRESHOLD = 0.1

I2 = np.eye(2, dtype=complex)
SIGMA_Z = np.array([[-1.0, 0.0], [0.0, 1.0]], dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, 1j], [-1j, 0.0]], dtype=complex)
SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class SystemParams:
    """Mode frequency, atomic transition frequencies and coupling strengths.

    The bare Hamiltonians are defined for any values; every dispersive-regime
    quantity (the eps ratios, the effective Hamiltonian, the closed forms)
    requires nonzero detunings delta_j = omega_j - omega and raises on
    resonance.
    """

    omega: float
    omega_a: float
    omega_b: float
    g_a: float
    g_b: float

    def _require_detuned(self):
        if self.delta_a == 0.0 or self.delta_b == 0.0:
            raise ValueError("dispersive model undefined on resonance: detunings must be nonzero")

    @property
    def delta_a(self) -> float:
        return self.omega_a - self.omega

    @property
    def delta_b(self) -> float:
        return self.omega_b - self.omega

    @property
    def eps_a(self) -> float:
        self._require_detuned()
        return self.g_a / self.delta_a

    @property
    def eps_b(self) -> float:
        self._require_detuned()
        return self.g_b / self.delta_b

    def is_dispersive(self, mean_n: float = 0.0) -> bool:
        """True when max|eps_j| * sqrt(max(mean_n, 1)) < DISPERSIVE_THRESHOLD."""
        eps = max(abs(self.eps_a), abs(self.eps_b))
        return eps * math.sqrt(max(mean_n, 1.0)) < DISPERSIVE_THRESHOLD

    def is_identical(self) -> bool:
        """True when both atoms share one coupling g and one detuning delta."""
        return self.g_a == self.g_b and self.delta_a == self.delta_b

    # Conveniences for the identical-atom closed forms. tau = 2 g^2 t / delta
    # is the dimensionless time used for reporting (atom-a scale in the
    # non-identical case).

    def tau_from_time(self, t):
        self._require_detuned()
        return 2.0 * self.g_a**2 * np.asarray(t, dtype=float) / self.delta_a

    def time_from_tau(self, tau):
        self._require_detuned()
        if self.g_a == 0.0:
            raise ValueError("tau is undefined at zero coupling; supply physical times instead")
        return np.asarray(tau, dtype=float) * self.delta_a / (2.0 * self.g_a**2)

    @classmethod
    def identical(cls, delta: float, g: float, omega: float = 1.0) -> "SystemParams":
        """Two identical atoms detuned by ``delta`` from a mode at ``omega``."""
        return cls(omega=omega, omega_a=omega + delta, omega_b=omega + delta, g_a=g, g_b=g)


@dataclass(frozen=True)
class HilbertIndex:
    """Truncated-space layout: mode levels 0..n_max, total dimension 4*(n_max+1)."""

    n_max: int

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")

    @property
    def mode_dim(self) -> int:
        return self.n_max + 1

    @property
    def total_dim(self) -> int:
        return 4 * self.mode_dim

    def index(self, i_a: int, i_b: int, n: int) -> int:
        if not (i_a in (0, 1) and i_b in (0, 1) and 0 <= n <= self.n_max):
            raise IndexError(f"basis label ({i_a}, {i_b}, {n}) out of range")
        return ((i_a * 2) + i_b) * self.mode_dim + n


def annihilation(mode_dim: int) -> np.ndarray:
    """Truncated mode annihilation operator b, with b|n> = sqrt(n)|n-1>."""
    b = np.zeros((mode_dim, mode_dim), dtype=complex)
    for n in range(1, mode_dim):
        b[n - 1, n] = math.sqrt(n)
    return b


def _embed(op_a: np.ndarray, op_b: np.ndarray, op_mode: np.ndarray) -> np.ndarray:
    return kron(kron(op_a, op_b), op_mode)


def build_full_hamiltonian(p: SystemParams, h: HilbertIndex) -> np.ndarray:
    """Lab-frame Hamiltonian: free atoms, free mode, and the two
    excitation-conserving couplings g_j (sigma_+ b + sigma_- b^+)."""
    m = h.mode_dim
    im = np.eye(m, dtype=complex)
    b = annihilation(m)
    ham = 0.5 * p.omega_a * _embed(SIGMA_Z, I2, im)
    ham += 0.5 * p.omega_b * _embed(I2, SIGMA_Z, im)
    ham += p.omega * _embed(I2, I2, dagger(b) @ b)
    ham += p.g_a * (_embed(SIGMA_PLUS, I2, b) + _embed(SIGMA_MINUS, I2, dagger(b)))
    ham += p.g_b * (_embed(I2, SIGMA_PLUS, b) + _embed(I2, SIGMA_MINUS, dagger(b)))
    return ham


def build_interaction_hamiltonian(p: SystemParams, h: HilbertIndex) -> np.ndarray:
    """Same as the full Hamiltonian in the frame rotating at the mode
    frequency: detunings replace the bare frequencies, no free-mode term."""
    m = h.mode_dim
    im = np.eye(m, dtype=complex)
    b = annihilation(m)
    ham = 0.5 * p.delta_a * _embed(SIGMA_Z, I2, im)
    ham += 0.5 * p.delta_b * _embed(I2, SIGMA_Z, im)
    ham += p.g_a * (_embed(SIGMA_PLUS, I2, b) + _embed(SIGMA_MINUS, I2, dagger(b)))
    ham += p.g_b * (_embed(I2, SIGMA_PLUS, b) + _embed(I2, SIGMA_MINUS, dagger(b)))
    return ham


def build_excitation_number(h: HilbertIndex) -> np.ndarray:
    """Total excitation operator (sigma_z^a + sigma_z^b)/2 + b^+ b.

    Diagonal with entry (i_a - 1/2) + (i_b - 1/2) + n; commutes with both
    the full and the effective Hamiltonian.
    """
    m = h.mode_dim
    diag = np.zeros(h.total_dim)
    for i_a in (0, 1):
        for i_b in (0, 1):
            for n in range(m):
                diag[h.index(i_a, i_b, n)] = (i_a - 0.5) + (i_b - 0.5) + n
    return np.diag(diag).astype(complex)


def build_effective_hamiltonian(p: SystemParams, h: HilbertIndex) -> np.ndarray:
    """Second-order effective Hamiltonian of the dispersive regime.

    Three pieces: renormalized free atoms at their detunings, the
    intensity-dependent Stark shift (b^+ b + 1/2)(g_j^2/delta_j) sigma_z^j,
    and the mode-mediated flip-flop coupling
    (g_a g_b / 2)(1/delta_a + 1/delta_b)(sigma_+^a sigma_-^b + h.c.).
    """
    p._require_detuned()
    m = h.mode_dim
    im = np.eye(m, dtype=complex)
    b = annihilation(m)
    number_plus_half = dagger(b) @ b + 0.5 * im
    ham = 0.5 * p.delta_a * _embed(SIGMA_Z, I2, im)
    ham += 0.5 * p.delta_b * _embed(I2, SIGMA_Z, im)
    ham += (p.g_a**2 / p.delta_a) * _embed(SIGMA_Z, I2, number_plus_half)
    ham += (p.g_b**2 / p.delta_b) * _embed(I2, SIGMA_Z, number_plus_half)
    flip = _embed(SIGMA_PLUS, SIGMA_MINUS, im) + _embed(SIGMA_MINUS, SIGMA_PLUS, im)
    ham += 0.5 * p.g_a * p.g_b * (1.0 / p.delta_a + 1.0 / p.delta_b) * flip
    return ham


def small_rotation(p: SystemParams, h: HilbertIndex) -> np.ndarray:
    """Unitary exp(G) with the anti-Hermitian generator
    G = eps_a (sigma_+^a b - sigma_-^a b^+) + eps_b (sigma_+^b b - sigma_-^b b^+),
    which maps the interaction Hamiltonian onto the effective one to first
    order in eps."""
    m = h.mode_dim
    b = annihilation(m)
    gen = p.eps_a * (_embed(SIGMA_PLUS, I2, b) - _embed(SIGMA_MINUS, I2, dagger(b)))
    gen += p.eps_b * (_embed(I2, SIGMA_PLUS, b) - _embed(I2, SIGMA_MINUS, dagger(b)))
    # exp(G) = exp(-i (iG)) with iG Hermitian.
    return matrix_exp_i(1j * gen, 1.0)


def top_level_projector(h: HilbertIndex) -> np.ndarray:
    """Projector that removes the highest Fock level from all four atom sectors."""
    diag = np.ones(h.total_dim)
    for i_a in (0, 1):
        for i_b in (0, 1):
            diag[h.index(i_a, i_b, h.n_max)] = 0.0
    return np.diag(diag).astype(complex)


def verify_small_rotation(p: SystemParams, h: HilbertIndex) -> float:
    """Relative residual of the first-order transformation.

    Returns ||P (R H_int R^+ - H_eff) P||_F / ||P H_eff P||_F with P
    projecting off the top Fock level, where the missing level n_max+1 would
    otherwise pollute the comparison. The residual scales as eps^2.
    """
    rot = small_rotation(p, h)
    h_int = build_interaction_hamiltonian(p, h)
    h_eff = build_effective_hamiltonian(p, h)
    proj = top_level_projector(h)
    diff = proj @ (rot @ h_int @ dagger(rot) - h_eff) @ proj
    denom = frobenius(proj @ h_eff @ proj)
    if denom == 0.0:
        return 0.0
    return frobenius(diff) / denom
