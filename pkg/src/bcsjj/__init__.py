"""Josephson junction between two mean-field superconducting plates.

Solves the per-plate gap equation, constructs the junction's nonequilibrium
steady state from coupled surface self-consistency equations, evaluates the
resulting pair current, heat flux and entropy production, and cross-checks
the construction against exact dynamics of tiny lattice instances.
"""

from .equilibrium import (
    EquilibriumState,
    OrderField,
    PlateParams,
    canonical_phase,
    critical_beta,
    equilibrium_state,
    gap_residual,
    order_parameter,
    solve_gap,
)
from .lattice import (
    ExactEvolution,
    LatticeSpec,
    Trajectory,
    build_hamiltonian,
    cesaro_average,
    energy_drift,
    evolve,
    initial_state,
    region_sites,
    relative_number,
    standard_observables,
    swap_operator,
)
from .ness import (
    JunctionParams,
    NessConvergenceError,
    NessState,
    effective_field,
    region_densities,
    region_hamiltonians,
    solve_ness,
    steady_residual,
    surface_map,
    surface_via_projection,
)
from .spin import (
    IDENTITY2,
    NUMBER_OP,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_Z,
    Spectral2,
    check_density,
    commutator,
    dephase,
    eig2,
    expect,
    field_hamiltonian,
    frobenius,
    gibbs,
    is_hermitian,
    log_density,
)
from .transport import (
    CurrentReport,
    current_density,
    current_report,
    entropy_production_e1,
    heat_flux,
    josephson_current,
    relative_number_current,
)

__version__ = "0.1.0"

__all__ = [
    "CurrentReport",
    "EquilibriumState",
    "ExactEvolution",
    "IDENTITY2",
    "JunctionParams",
    "LatticeSpec",
    "NUMBER_OP",
    "NessConvergenceError",
    "NessState",
    "OrderField",
    "PlateParams",
    "SIGMA_MINUS",
    "SIGMA_PLUS",
    "SIGMA_Z",
    "Spectral2",
    "Trajectory",
    "build_hamiltonian",
    "canonical_phase",
    "cesaro_average",
    "check_density",
    "commutator",
    "critical_beta",
    "current_density",
    "current_report",
    "dephase",
    "effective_field",
    "eig2",
    "energy_drift",
    "entropy_production_e1",
    "equilibrium_state",
    "evolve",
    "expect",
    "field_hamiltonian",
    "frobenius",
    "gap_residual",
    "gibbs",
    "heat_flux",
    "initial_state",
    "is_hermitian",
    "josephson_current",
    "log_density",
    "order_parameter",
    "region_densities",
    "region_hamiltonians",
    "region_sites",
    "relative_number",
    "relative_number_current",
    "solve_gap",
    "solve_ness",
    "standard_observables",
    "steady_residual",
    "surface_map",
    "surface_via_projection",
    "swap_operator",
]
