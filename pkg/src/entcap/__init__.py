"""Capacity of entanglement for small bipartite systems.

Core state types and primitives, entanglement measures, exact two-qubit
dynamics under canonical non-local interactions, rate bounds and quantum
speed limits, self-inverse evolutions, and the mixed-state capacity built
on closest separable states.
"""

from .core import (
    BipartitePureState,
    ConfigurationError,
    DensityOperator,
    DomainError,
    Spectrum,
    density_from_pure,
    haar_random_pure,
    log_on_support,
    matrix_log_integral,
    partial_trace,
    relative_entropy,
    schmidt_decompose,
    spectrum_entropy,
    spectrum_of,
    trace_distance,
    von_neumann_entropy,
)
from .measures import (
    CapacityResult,
    ModularHamiltonian,
    capacity_from_spectrum,
    capacity_of,
    capacity_pure,
    capacity_two_qubit_closed,
    is_flat,
    modular_hamiltonian,
    observable_variance,
    solve_max_variance_spectrum,
    uncertainty,
)
from .dynamics import (
    NonlocalHamiltonian,
    Trajectory,
    ancilla_rate_factor,
    canonical_form,
    capacity_gradient,
    capacity_rate_factor,
    entangling_element,
    evolve_exact,
    evolved_schmidt_weights,
    grid_argmax,
    max_capacity_rate,
    max_entangling_element,
    max_entangling_element_ancilla,
    max_entangling_element_numeric,
    maximize_scalar,
    maximizing_rate_state,
    qubit_orthocomplement,
    schmidt_weight_rate,
    simulate_trajectory,
    spectrum_capacity_rate,
)
from .speed_limits import (
    QSLReport,
    RateBoundCheck,
    closed_form_family,
    family_qsl_curve,
    family_qsl_report,
    fubini_study_speed,
    hamiltonian_fluctuation,
    qsl_time_dependent,
    qsl_time_independent,
    rate_bound_check,
)
from .self_inverse import (
    CapacityRateBounds,
    SelfInverseHamiltonian,
    build_self_inverse,
    capacity_rate_bounds,
    evolve_self_inverse,
    liouville_rhs,
    liouville_rhs_reduced,
    max_entropy_rate_constant,
    operator_norm,
)
from .mixed import (
    SeparableApproximation,
    capacity_mixed,
    closest_separable_family1,
    closest_separable_family2,
    closest_separable_numeric,
    closest_separable_pure,
    family1_relative_entropy,
    family1_state,
    family2_relative_entropy,
    family2_state,
    is_ppt,
    partial_transpose,
)

__version__ = "0.1.0"
