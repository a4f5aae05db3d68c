"""Entanglement dynamics of two two-level atoms dispersively coupled to a
single quantized field mode: exact and effective evolution, closed-form
reduced states, concurrence, beat analysis, and parameter scans."""

from .dynamics import (
    Route,
    closed_form_coherent,
    closed_form_fock,
    closed_form_fock_density,
    closed_form_thermal,
    closed_form_werner_coherent,
    closed_form_werner_fock,
    closed_form_werner_thermal,
    coherent_overlap,
    dressed_phases,
    dressed_propagator,
    evolve_effective,
    evolve_exact,
    evolve_exact_full,
    thermal_overlap,
    to_interaction_frame,
)
from .entanglement import (
    BeatReport,
    ConcurrenceSeries,
    analyze_beats,
    beat_analysis_adaptive,
    concurrence_high_intensity,
    concurrence_mixed,
    concurrence_of,
    concurrence_pure,
    concurrence_pure_fock,
    concurrence_werner_coherent,
    concurrence_werner_thermal,
)
from .errors import EbeatsError
from .linalg import (
    EigenDecomposition,
    hermitian_eig,
    is_density,
    is_hermitian,
    is_unitary,
    kron,
    matrix_exp_i,
    partial_trace_mode,
    trace_distance,
)
from .model import (
    HilbertIndex,
    SystemParams,
    build_effective_hamiltonian,
    build_excitation_number,
    build_full_hamiltonian,
    build_interaction_hamiltonian,
    small_rotation,
    verify_small_rotation,
)
from .scan import (
    PurePureScenario,
    ScanResult,
    ScanSpec,
    ValidationReport,
    WernerScenario,
    run_scan,
    validation_sweep,
)
from .states import (
    Bell,
    FieldKind,
    FieldSpec,
    bell_state,
    compose_initial,
    field_density,
    mean_photon_from_temperature,
    suggest_n_max,
    theta_state,
    werner_state,
)

__version__ = "0.1.0"
