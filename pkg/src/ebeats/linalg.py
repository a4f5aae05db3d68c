"""Dense complex linear algebra: Kronecker products, Hermitian eigenproblems,
spectral matrix exponentials, partial trace over the mode, and matrix checks.

Everything operates on plain ``numpy`` complex arrays. All exponentiated
operators in this package are Hermitian, so matrix exponentials go through
the spectral decomposition exclusively.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NotHermitianError,
    NotPositiveError,
)

TOL_HERM = 1e-10
TOL_EIG = 1e-10
# Density eigenvalues in [-EIG_CLIP, 0) are treated as exact zeros; anything
# below -EIG_CLIP is a genuine positivity failure.
EIG_CLIP = 1e-10


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose (of the last two axes)."""
    return np.conjugate(np.swapaxes(a, -1, -2))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def is_hermitian(a: np.ndarray, tol: float = TOL_HERM) -> bool:
    scale = max(frobenius(a), 1.0)
    return frobenius(a - dagger(a)) <= tol * scale


def is_unitary(a: np.ndarray, tol: float = 1e-10) -> bool:
    n = a.shape[-1]
    return frobenius(dagger(a) @ a - np.eye(n)) <= tol * n


def is_density(a: np.ndarray, tol: float = 1e-10) -> bool:
    """Hermitian, unit trace, and eigenvalues >= -tol."""
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        return False
    if not is_hermitian(a, tol):
        return False
    if abs(np.trace(a) - 1.0) > tol * 10:
        return False
    w = np.linalg.eigvalsh((a + dagger(a)) / 2)
    return bool(w.min() >= -tol)


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral data of a Hermitian matrix: ascending eigenvalues and a
    unitary matrix whose columns are the matching eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def hermitian_eig(a: np.ndarray, tol_herm: float = TOL_HERM) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitianError when ``a`` is not Hermitian within ``tol_herm``
    (relative Frobenius), and NoConvergenceError when the solver fails or the
    reconstruction residual exceeds TOL_EIG.
    """
    scale = max(frobenius(a), 1.0)
    if frobenius(a - dagger(a)) > tol_herm * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian: ||A - A^+|| = {frobenius(a - dagger(a)):.3e} "
            f"(tolerance {tol_herm:.1e} * {scale:.3e})"
        )
    try:
        w, v = np.linalg.eigh((a + dagger(a)) / 2)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - eigh rarely fails
        raise NoConvergenceError(f"eigensolver did not converge: {exc}") from exc
    dec = EigenDecomposition(eigenvalues=w, eigenvectors=v)
    if frobenius(dec.reconstruct() - a) > TOL_EIG * scale:
        raise NoConvergenceError("eigendecomposition residual above tolerance")
    return dec


def matrix_exp_i(a: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """exp(-1j * scale * a) for Hermitian ``a``, via the spectral theorem."""
    dec = hermitian_eig(a)
    phases = np.exp(-1j * scale * dec.eigenvalues)
    v = dec.eigenvectors
    return (v * phases) @ dagger(v)


def partial_trace_mode(rho: np.ndarray, mode_dim: int) -> np.ndarray:
    """Trace the field mode out of a (4*mode_dim)-dimensional operator.

    Basis layout is atoms-major, mode-minor (row index = atom_index * mode_dim
    + fock_level), so the reduction is a contiguous-block trace.
    """
    d = 4 * mode_dim
    if rho.shape != (d, d):
        raise DimensionMismatchError(
            f"expected a {d}x{d} matrix for mode_dim={mode_dim}, got {rho.shape}"
        )
    return np.trace(rho.reshape(4, mode_dim, 4, mode_dim), axis1=1, axis2=3)


def density_eigvalsh(rho: np.ndarray, clip: float = EIG_CLIP) -> np.ndarray:
    """Eigenvalues of a density matrix with the negativity clip applied.

    Values below ``-clip`` raise NotPositiveError; values in [-clip, 0) are
    floating-point noise and are mapped to exactly 0.
    """
    w = np.linalg.eigvalsh((rho + dagger(rho)) / 2)
    if w.min() < -clip:
        raise NotPositiveError(f"density matrix eigenvalue {w.min():.3e} below -{clip:.1e}")
    return np.where(w < 0.0, 0.0, w)


def trace_distance(a: np.ndarray, b: np.ndarray) -> float:
    """(1/2) * trace norm of (a - b) for Hermitian a, b."""
    w = np.linalg.eigvalsh((a - b + dagger(a - b)) / 2)
    return float(0.5 * np.sum(np.abs(w)))


def projector(state: np.ndarray) -> np.ndarray:
    """|psi><psi| from a state vector."""
    return np.outer(state, np.conjugate(state))
