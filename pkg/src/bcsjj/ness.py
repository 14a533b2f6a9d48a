"""Nonequilibrium steady state of two coupled plates.

The junction splits each plate into a bulk region (unchanged equilibrium)
and a contact-surface region whose one-site state is the equilibrium state
dephased in the eigenbasis of a surface effective Hamiltonian.  The surface
pairing fields solve two coupled transcendental fixed-point equations; the
solver runs a damped alternating iteration started from the decoupled
(bulk) solution, which selects the branch connected to equilibrium.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .equilibrium import (
    OrderField,
    PlateParams,
    canonical_phase,
    equilibrium_state,
)
from .spin import (
    SIGMA_PLUS,
    commutator,
    dephase,
    expect,
    field_hamiltonian,
    frobenius,
    gibbs,
)

DAMPING = 0.5
FIELD_TOL = 1e-12
MAX_ITERATIONS = 100_000

REGIONS = ("bulk_i", "surface_i", "surface_ii", "bulk_ii")


@dataclass(frozen=True)
class JunctionParams:
    """Two plates, a tunnelling rate and the two freely chosen bulk phases."""

    plate_i: PlateParams
    plate_ii: PlateParams
    gamma: float
    phi_i: float = 0.0
    phi_ii: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma >= 0.0):
            raise ValueError("gamma must be non-negative and finite")
        object.__setattr__(self, "phi_i", canonical_phase(self.phi_i))
        object.__setattr__(self, "phi_ii", canonical_phase(self.phi_ii))

    @property
    def delta_phi(self) -> float:
        return canonical_phase(self.phi_ii - self.phi_i)


@dataclass(frozen=True)
class NessState:
    """Steady state of the junction: four region density matrices plus the
    bulk and surface order fields of both plates.

    ``iterations`` and ``residual`` record how the fixed point was reached,
    so convergence behaviour is reproducible across platforms.
    """

    params: JunctionParams
    bulk_i: OrderField
    bulk_ii: OrderField
    surf_i: OrderField
    surf_ii: OrderField
    rho_ia: np.ndarray = field(repr=False)
    rho_ib: np.ndarray = field(repr=False)
    rho_iib: np.ndarray = field(repr=False)
    rho_iia: np.ndarray = field(repr=False)
    iterations: int = 0
    residual: float = 0.0


class NessConvergenceError(RuntimeError):
    """Damped iteration exhausted its budget without reaching the field tolerance.

    Carries the last iterate and its self-consistency residual so the caller
    can inspect (or continue from) the failed point.
    """

    def __init__(self, surf_i: complex, surf_ii: complex, residual: float,
                 iterations: int):
        super().__init__(
            f"surface fields not converged after {iterations} iterations "
            f"(residual {residual:.3e})"
        )
        self.surf_i = surf_i
        self.surf_ii = surf_ii
        self.residual = residual
        self.iterations = iterations


def effective_field(bulk: OrderField, gamma: float,
                    other_surface: OrderField) -> complex:
    """Total pairing field at a contact-surface site: bulk term plus the
    tunnelling contribution of the other plate's surface."""
    return bulk.c + gamma * other_surface.c


def surface_map(plate: PlateParams, bulk: OrderField, delta: complex) -> complex:
    """Closed-form surface order parameter produced by the field ``delta``.

    ``delta * (eps^2 + Re(bulk.c * conj(delta))) / (eps^2 + |delta|^2)``,
    valid when ``bulk.magnitude`` solves the plate's gap equation.  For a
    decoupled plate (``delta == bulk.c``) it returns ``bulk.c`` exactly.
    """
    eps2 = plate.epsilon * plate.epsilon
    bracket = eps2 + (bulk.c * np.conj(delta)).real
    # |delta|^2 formed the same way as the bracket, so the decoupled case
    # (delta == bulk.c) returns bulk.c bit-exactly
    norm2 = eps2 + (delta * np.conj(delta)).real
    return delta * (bracket / norm2)


def surface_via_projection(plate: PlateParams, bulk: OrderField,
                           delta: complex) -> complex:
    """Surface order parameter obtained by the defining projection.

    Builds the plate's equilibrium state, dephases it in the eigenbasis of
    the surface effective Hamiltonian generated by ``delta`` and reads off
    ``tr(rho sigma_plus)``.  Serves as an independent cross-check of
    :func:`surface_map`.
    """
    rho0 = gibbs(field_hamiltonian(plate.epsilon, bulk.c), plate.beta)
    h_surface = field_hamiltonian(plate.epsilon, delta)
    return expect(dephase(rho0, h_surface), SIGMA_PLUS)


def solve_ness(params: JunctionParams,
               start: tuple[complex, complex] | None = None,
               damping: float = DAMPING,
               tol: float = FIELD_TOL,
               max_iterations: int = MAX_ITERATIONS) -> NessState:
    """Construct the junction steady state for the given parameters.

    Bulk order fields are pinned to the plates' equilibrium values.  The two
    surface fields are iterated as unconstrained complex numbers with damped
    alternating updates (damping suppresses the two-cycle oscillation of the
    undamped alternating map); modulus and phase are extracted only at the
    end.  ``start`` warm-starts the iteration, e.g. for continuation sweeps
    in the coupling; the default start is the decoupled solution.

    Raises :class:`NessConvergenceError` when the iteration budget runs out.
    """
    plate_i, plate_ii = params.plate_i, params.plate_ii
    eq_i = equilibrium_state(plate_i, params.phi_i)
    eq_ii = equilibrium_state(plate_ii, params.phi_ii)
    bulk_i, bulk_ii = eq_i.order, eq_ii.order
    gamma = params.gamma

    s_i, s_ii = start if start is not None else (bulk_i.c, bulk_ii.c)
    iterations = 0
    converged = False
    while iterations < max_iterations:
        iterations += 1
        new_i = (1.0 - damping) * s_i + damping * surface_map(
            plate_i, bulk_i, bulk_i.c + gamma * s_ii
        )
        change = abs(new_i - s_i)
        s_i = new_i
        new_ii = (1.0 - damping) * s_ii + damping * surface_map(
            plate_ii, bulk_ii, bulk_ii.c + gamma * s_i
        )
        change = max(change, abs(new_ii - s_ii))
        s_ii = new_ii
        if change < tol:
            converged = True
            break
    residual = max(
        abs(s_i - surface_map(plate_i, bulk_i, bulk_i.c + gamma * s_ii)),
        abs(s_ii - surface_map(plate_ii, bulk_ii, bulk_ii.c + gamma * s_i)),
    )
    if not converged or not residual < 1e-10:
        raise NessConvergenceError(s_i, s_ii, residual, iterations)

    h_surf_i = field_hamiltonian(plate_i.epsilon, bulk_i.c + gamma * s_ii)
    h_surf_ii = field_hamiltonian(plate_ii.epsilon, bulk_ii.c + gamma * s_i)
    return NessState(
        params=params,
        bulk_i=bulk_i,
        bulk_ii=bulk_ii,
        surf_i=OrderField(s_i),
        surf_ii=OrderField(s_ii),
        rho_ia=eq_i.rho,
        rho_ib=dephase(eq_i.rho, h_surf_i),
        rho_iib=dephase(eq_ii.rho, h_surf_ii),
        rho_iia=eq_ii.rho,
        iterations=iterations,
        residual=residual,
    )


def region_hamiltonians(state: NessState) -> dict[str, np.ndarray]:
    """Effective one-site Hamiltonians of the four regions, rebuilt from the
    state's order fields."""
    p = state.params
    return {
        "bulk_i": field_hamiltonian(p.plate_i.epsilon, state.bulk_i.c),
        "surface_i": field_hamiltonian(
            p.plate_i.epsilon, state.bulk_i.c + p.gamma * state.surf_ii.c
        ),
        "surface_ii": field_hamiltonian(
            p.plate_ii.epsilon, state.bulk_ii.c + p.gamma * state.surf_i.c
        ),
        "bulk_ii": field_hamiltonian(p.plate_ii.epsilon, state.bulk_ii.c),
    }


def region_densities(state: NessState) -> dict[str, np.ndarray]:
    return {
        "bulk_i": state.rho_ia,
        "surface_i": state.rho_ib,
        "surface_ii": state.rho_iib,
        "bulk_ii": state.rho_iia,
    }


def steady_residual(state: NessState) -> float:
    """Maximum over the four regions of ``||[h_region, rho_region]||_F``.

    Vanishes (to roundoff) for a valid steady state; grows linearly with a
    perturbation of the surface fields.
    """
    hams = region_hamiltonians(state)
    rhos = region_densities(state)
    return max(frobenius(commutator(hams[r], rhos[r])) for r in REGIONS)
