"""Concurrence sweeps over (dimensionless time x field intensity) and the
exact-vs-closed-form validation sweep.

Cells are independent pure computations; rows (one per intensity) can be
mapped over a thread pool and are always gathered in axis order, so results
are bit-identical regardless of the thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import dynamics
from .dynamics import Route, evolve_exact, to_interaction_frame
from .entanglement import concurrence_mixed, concurrence_pure
from .errors import ScanCellError
from .linalg import kron, trace_distance
from .model import HilbertIndex, SystemParams
from .states import Bell, FieldKind, FieldSpec, compose_initial, suggest_n_max, werner_state


@dataclass
class PurePureScenario:
    """Each atom starts in its own pure state."""

    psi: np.ndarray
    phi: np.ndarray

    def initial_atoms(self) -> np.ndarray:
        return kron(self.psi, self.phi)


@dataclass
class WernerScenario:
    """The pair starts in a Werner mixture of a Bell state with white noise."""

    gamma: float
    bell: Bell = Bell.PHI_PLUS

    def initial_atoms(self) -> np.ndarray:
        return werner_state(self.gamma, self.bell)


Scenario = PurePureScenario | WernerScenario


@dataclass
class ScanSpec:
    scenario: Scenario
    field_kind: FieldKind
    intensities: np.ndarray
    taus: np.ndarray
    params: SystemParams
    route: Route = Route.CLOSED

    def __post_init__(self):
        self.field_kind = FieldKind(self.field_kind)
        self.route = Route(self.route)
        self.intensities = np.asarray(self.intensities, dtype=float)
        self.taus = np.asarray(self.taus, dtype=float)
        for name, axis in (("intensities", self.intensities), ("taus", self.taus)):
            if axis.ndim != 1 or axis.size == 0:
                raise ValueError(f"{name} axis must be a non-empty 1-d array")
            if axis.size > 1 and np.any(np.diff(axis) <= 0):
                raise ValueError(f"{name} axis must be strictly ascending")
        if np.any(self.intensities < 0):
            raise ValueError("intensities must be >= 0")
        if self.field_kind is FieldKind.FOCK and np.any(self.intensities != np.round(self.intensities)):
            raise ValueError("Fock intensities must be integers")
        if self.route is Route.CLOSED and not self.params.is_identical():
            raise ValueError("closed route requires identical atoms; pick exact or effective")


@dataclass
class ScanResult:
    spec: ScanSpec
    values: np.ndarray  # shape (len(intensities), len(taus)), rows = intensity
    route_used: str

    def __post_init__(self):
        expected = (self.spec.intensities.size, self.spec.taus.size)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} != axes {expected}")


def _closed_row(spec: ScanSpec, intensity: float, times: np.ndarray) -> np.ndarray:
    p = spec.params
    sc = spec.scenario
    if isinstance(sc, PurePureScenario):
        if spec.field_kind is FieldKind.FOCK:
            amps = dynamics.closed_form_fock(sc.psi, sc.phi, int(intensity), p, times)
            return np.asarray(concurrence_pure(amps))
        if spec.field_kind is FieldKind.COHERENT:
            rho = dynamics.closed_form_coherent(sc.psi, sc.phi, math.sqrt(intensity), p, times)
        else:
            rho = dynamics.closed_form_thermal(sc.psi, sc.phi, intensity, p, times)
        return np.asarray(concurrence_mixed(rho))
    if spec.field_kind is FieldKind.FOCK:
        rho = dynamics.closed_form_werner_fock(sc.gamma, sc.bell, int(intensity), p, times)
    elif spec.field_kind is FieldKind.COHERENT:
        rho = dynamics.closed_form_werner_coherent(sc.gamma, sc.bell, math.sqrt(intensity), p, times)
    else:
        rho = dynamics.closed_form_werner_thermal(sc.gamma, sc.bell, intensity, p, times)
    return np.asarray(concurrence_mixed(rho))


def scan_n_max(field_kind: FieldKind, intensity: float, route: Route) -> int:
    """Truncation for the numeric routes. The exact dynamics close within two
    extra levels of a Fock state; distributions use the tail rule of thumb."""
    if field_kind is FieldKind.FOCK:
        return int(intensity) + (2 if route is Route.EXACT else 0)
    return suggest_n_max(field_kind, intensity)


def _field_spec(field_kind: FieldKind, intensity: float, n_max: int) -> FieldSpec:
    if field_kind is FieldKind.FOCK:
        return FieldSpec.fock(int(intensity), n_max)
    if field_kind is FieldKind.COHERENT:
        return FieldSpec.coherent(math.sqrt(intensity), n_max)
    return FieldSpec.thermal(intensity, n_max)


def _numeric_row(spec: ScanSpec, intensity: float, times: np.ndarray) -> np.ndarray:
    p = spec.params
    n_max = scan_n_max(spec.field_kind, intensity, spec.route)
    h = HilbertIndex(n_max)
    rho0 = compose_initial(spec.scenario.initial_atoms(), _field_spec(spec.field_kind, intensity, n_max), h)
    evolve = evolve_exact if spec.route is Route.EXACT else dynamics.evolve_effective
    out = np.empty(times.size)
    for k, t in enumerate(times):
        try:
            out[k] = concurrence_mixed(evolve(rho0, p, h, float(t)))
        except Exception as exc:
            raise ScanCellError(intensity, float(spec.taus[k]), exc) from exc
    return out


def run_scan(spec: ScanSpec, threads: int = 1) -> ScanResult:
    """Concurrence on the (intensity, tau) grid via the requested route."""
    times = spec.params.time_from_tau(spec.taus)

    def row(idx: int) -> np.ndarray:
        intensity = float(spec.intensities[idx])
        try:
            if spec.route is Route.CLOSED:
                return _closed_row(spec, intensity, times)
            return _numeric_row(spec, intensity, times)
        except ScanCellError:
            raise
        except Exception as exc:
            raise ScanCellError(intensity, float("nan"), exc) from exc

    indices = range(spec.intensities.size)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(row, indices))
    else:
        rows = [row(i) for i in indices]
    return ScanResult(spec=spec, values=np.vstack(rows), route_used=spec.route.value)


# ---------------------------------------------------------------------------
# exact-vs-closed-form validation


@dataclass
class ValidationEntry:
    field_kind: str
    intensity: float
    max_trace_distance: float
    max_concurrence_diff: float
    passed: bool


@dataclass
class ValidationReport:
    tol: float
    entries: list[ValidationEntry] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    @property
    def max_trace_distance(self) -> float:
        return max((e.max_trace_distance for e in self.entries), default=0.0)


def validation_sweep(spec: ScanSpec, tol: float) -> ValidationReport:
    """Compare the exact route against the closed forms cell by cell.

    The exact reduced state is mapped to the mode-rotating frame first (the
    closed forms live there; the frames differ by a local unitary). Reports
    the max trace distance and max concurrence difference per intensity.
    """
    p = spec.params
    if not p.is_identical():
        raise ValueError("validation compares against closed forms: identical atoms required")
    times = p.time_from_tau(spec.taus)
    report = ValidationReport(tol=tol)
    for intensity in spec.intensities:
        intensity = float(intensity)
        closed = _closed_states(spec, intensity, times)
        n_max = scan_n_max(spec.field_kind, intensity, Route.EXACT)
        h = HilbertIndex(n_max)
        rho0 = compose_initial(
            spec.scenario.initial_atoms(), _field_spec(spec.field_kind, intensity, n_max), h
        )
        max_td = 0.0
        max_cd = 0.0
        for k, t in enumerate(times):
            exact = to_interaction_frame(evolve_exact(rho0, p, h, float(t)), p, float(t))
            max_td = max(max_td, trace_distance(exact, closed[k]))
            max_cd = max(
                max_cd, abs(concurrence_mixed(exact) - concurrence_mixed(closed[k]))
            )
        report.entries.append(
            ValidationEntry(
                field_kind=spec.field_kind.value,
                intensity=intensity,
                max_trace_distance=max_td,
                max_concurrence_diff=max_cd,
                passed=max_td <= tol,
            )
        )
    return report


def _closed_states(spec: ScanSpec, intensity: float, times: np.ndarray) -> np.ndarray:
    p = spec.params
    sc = spec.scenario
    if isinstance(sc, PurePureScenario):
        if spec.field_kind is FieldKind.FOCK:
            return dynamics.closed_form_fock_density(sc.psi, sc.phi, int(intensity), p, times)
        if spec.field_kind is FieldKind.COHERENT:
            return dynamics.closed_form_coherent(sc.psi, sc.phi, math.sqrt(intensity), p, times)
        return dynamics.closed_form_thermal(sc.psi, sc.phi, intensity, p, times)
    if spec.field_kind is FieldKind.FOCK:
        return dynamics.closed_form_werner_fock(sc.gamma, sc.bell, int(intensity), p, times)
    if spec.field_kind is FieldKind.COHERENT:
        return dynamics.closed_form_werner_coherent(sc.gamma, sc.bell, math.sqrt(intensity), p, times)
    return dynamics.closed_form_werner_thermal(sc.gamma, sc.bell, intensity, p, times)
