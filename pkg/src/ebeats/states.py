"""Initial states: single-qubit pure states, Bell and Werner two-qubit states,
and truncated field states (Fock, coherent, thermal)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    GammaOutOfRangeError,
    NotNormalizedError,
    TruncationTooSmallError,
)
from .linalg import kron, projector
from .model import HilbertIndex

# Maximum probability mass the Fock cutoff may discard from a coherent or
# thermal distribution before construction is refused.
TAIL_TOL = 1e-8


class Bell(str, enum.Enum):
    PHI_PLUS = "phi_plus"
    PHI_MINUS = "phi_minus"
    PSI_PLUS = "psi_plus"
    PSI_MINUS = "psi_minus"


class FieldKind(str, enum.Enum):
    FOCK = "fock"
    COHERENT = "coherent"
    THERMAL = "thermal"


def qubit_state(amp0: complex, amp1: complex) -> np.ndarray:
    """Normalized single-qubit state vector (|0>, |1>) from two amplitudes."""
    v = np.array([amp0, amp1], dtype=complex)
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > 1e-12:
        raise NotNormalizedError(f"qubit amplitudes have norm {norm}")
    return v


def theta_state(theta: float) -> np.ndarray:
    """Equatorial state (|0> + e^{i theta} |1>)/sqrt(2)."""
    return np.array([1.0, np.exp(1j * theta)], dtype=complex) / math.sqrt(2.0)


_BELL_AMPLITUDES = {
    Bell.PHI_PLUS: np.array([1.0, 0.0, 0.0, 1.0]),
    Bell.PHI_MINUS: np.array([1.0, 0.0, 0.0, -1.0]),
    Bell.PSI_PLUS: np.array([0.0, 1.0, 1.0, 0.0]),
    Bell.PSI_MINUS: np.array([0.0, 1.0, -1.0, 0.0]),
}


def bell_state(which: Bell) -> np.ndarray:
    """One of the four maximally entangled states, in the basis
    {|00>, |01>, |10>, |11>}."""
    return _BELL_AMPLITUDES[Bell(which)].astype(complex) / math.sqrt(2.0)


def werner_state(gamma: float, which: Bell = Bell.PHI_PLUS) -> np.ndarray:
    """(1-gamma)/4 * I + gamma |X><X| for a Bell state |X>; gamma in [0, 1]."""
    if not 0.0 <= gamma <= 1.0:
        raise GammaOutOfRangeError(f"gamma={gamma} outside [0, 1]")
    return (1.0 - gamma) / 4.0 * np.eye(4, dtype=complex) + gamma * projector(bell_state(which))


def suggest_n_max(kind: FieldKind, intensity: float) -> int:
    """Truncation rule of thumb keeping the discarded tail far below TAIL_TOL."""
    kind = FieldKind(kind)
    if kind is FieldKind.FOCK:
        return int(round(intensity))
    if kind is FieldKind.COHERENT:
        return math.ceil(intensity + 8.0 * math.sqrt(intensity) + 10.0)
    return math.ceil(20.0 * (intensity + 1.0))


@dataclass(frozen=True)
class FieldSpec:
    """Initial mode state plus its truncation dimension (levels 0..n_max).

    ``value`` is the Fock level n, the coherent amplitude alpha, or the
    thermal mean photon number, depending on ``kind``.
    """

    kind: FieldKind
    value: complex
    n_max: int

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if self.kind is FieldKind.FOCK:
            n = int(round(self.value.real))
            if n != self.value or n < 0:
                raise ValueError(f"Fock level must be a nonnegative integer, got {self.value}")
            if n > self.n_max:
                raise ValueError(f"Fock level {n} exceeds truncation n_max={self.n_max}")
        if self.kind is FieldKind.THERMAL and self.value.real < 0:
            raise ValueError("thermal mean photon number must be >= 0")

    @classmethod
    def fock(cls, n: int, n_max: int | None = None) -> "FieldSpec":
        return cls(FieldKind.FOCK, n, n if n_max is None else n_max)

    @classmethod
    def coherent(cls, alpha: complex, n_max: int | None = None) -> "FieldSpec":
        if n_max is None:
            n_max = suggest_n_max(FieldKind.COHERENT, abs(alpha) ** 2)
        return cls(FieldKind.COHERENT, alpha, n_max)

    @classmethod
    def thermal(cls, mean_n: float, n_max: int | None = None) -> "FieldSpec":
        if n_max is None:
            n_max = suggest_n_max(FieldKind.THERMAL, mean_n)
        return cls(FieldKind.THERMAL, mean_n, n_max)

    @property
    def mean_photons(self) -> float:
        if self.kind is FieldKind.COHERENT:
            return abs(self.value) ** 2
        return float(self.value.real)


def field_density(spec: FieldSpec) -> np.ndarray:
    """Density matrix of the specified field state on levels 0..n_max.

    Coherent and thermal distributions are renormalized after truncation;
    if the discarded tail mass exceeds TAIL_TOL the truncation is refused.
    """
    m = spec.n_max + 1
    if spec.kind is FieldKind.FOCK:
        rho = np.zeros((m, m), dtype=complex)
        rho[int(spec.value.real), int(spec.value.real)] = 1.0
        return rho

    if spec.kind is FieldKind.COHERENT:
        alpha = complex(spec.value)
        # c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), built up iteratively to
        # avoid overflowing factorials.
        amps = np.zeros(m, dtype=complex)
        amps[0] = math.exp(-abs(alpha) ** 2 / 2.0)
        for n in range(1, m):
            amps[n] = amps[n - 1] * alpha / math.sqrt(n)
        mass = float(np.sum(np.abs(amps) ** 2))
        _check_tail(1.0 - mass, spec)
        amps /= math.sqrt(mass)
        return projector(amps)

    mean_n = float(spec.value.real)
    if mean_n == 0.0:
        probs = np.zeros(m)
        probs[0] = 1.0
    else:
        ratio = mean_n / (1.0 + mean_n)
        probs = ratio ** np.arange(m) / (1.0 + mean_n)
        mass = float(probs.sum())
        _check_tail(1.0 - mass, spec)
        probs /= mass
    return np.diag(probs).astype(complex)


def _check_tail(tail: float, spec: FieldSpec):
    if tail > TAIL_TOL:
        raise TruncationTooSmallError(
            f"truncation n_max={spec.n_max} leaves tail mass {tail:.3e} > {TAIL_TOL:.1e} "
            f"for {spec.kind.value} field with value {spec.value}"
        )


def mean_photon_from_temperature(omega: float, kT: float) -> float:
    """Bose-Einstein occupation 1/(e^{omega/kT} - 1) of a mode at temperature
    kT (energy units, hbar = k_B = 1)."""
    if kT <= 0.0:
        raise ValueError("kT must be positive")
    ratio = omega / kT
    if ratio > 700.0:  # e^ratio overflows; the occupation underflows to 0
        return 0.0
    return 1.0 / math.expm1(ratio)


def compose_initial(atoms: np.ndarray, field: FieldSpec, h: HilbertIndex) -> np.ndarray:
    """Full initial density matrix rho_atoms (x) rho_field.

    ``atoms`` is a 4-amplitude pure state or a 4x4 density matrix; pure
    inputs are promoted to projectors. The field truncation must match ``h``.
    """
    if field.n_max != h.n_max:
        raise DimensionMismatchError(
            f"field truncation n_max={field.n_max} does not match Hilbert layout n_max={h.n_max}"
        )
    atoms = np.asarray(atoms, dtype=complex)
    if atoms.shape == (4,):
        rho_atoms = projector(atoms)
    elif atoms.shape == (4, 4):
        rho_atoms = atoms
    else:
        raise DimensionMismatchError(f"atom state must be (4,) or (4, 4), got {atoms.shape}")
    return kron(rho_atoms, field_density(field))
