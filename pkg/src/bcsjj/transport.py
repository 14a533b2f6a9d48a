"""Currents carried by the junction steady state.

The pair current, the general transport functional for extensive one-site
observables, the heat flux (zero in the limit, with an O(1/contact-size)
fluctuation amplitude) and the partition entropy production (identically
zero).

Sign and conjugation convention: with ``sigma_plus`` in the upper-right
corner and order parameters read off as ``tr(rho sigma_plus)``, the pair
current of the relative number operator evaluates to

    2*Im(conj(bulk_i) * surf_i) - 2*Im(conj(bulk_ii) * surf_ii).

The general functional :func:`current_density` is built so that it
reproduces this closed form exactly for the relative-number observable;
that closure requirement is what pins the conjugation placement, and the
tests assert it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ness import NessState, region_densities, region_hamiltonians
from .spin import (
    NUMBER_OP,
    SIGMA_MINUS,
    SIGMA_PLUS,
    SIGMA_Z,
    commutator,
    dephase,
    expect,
    field_hamiltonian,
    gibbs,
    is_hermitian,
    log_density,
)


@dataclass(frozen=True)
class CurrentReport:
    """All transport quantities of one steady state."""

    josephson: float
    heat_limit: float
    heat_amplitude: float
    entropy_e1: float


def josephson_current(state: NessState) -> float:
    """Pair-current density across the junction.

    Closed form ``2*Im(conj(c_i)*s_i) - 2*Im(conj(c_ii)*s_ii)`` in terms of
    the bulk fields ``c`` and surface fields ``s``; equivalently
    ``2*(m_i*ms_i*sin(ps_i - p_i) - m_ii*ms_ii*sin(ps_ii - p_ii))`` with
    magnitudes ``m`` and phases ``p``.  Vanishes at zero phase difference and
    is odd under reversing it.
    """
    term_i = (np.conj(state.bulk_i.c) * state.surf_i.c).imag
    term_ii = (np.conj(state.bulk_ii.c) * state.surf_ii.c).imag
    return 2.0 * (term_i - term_ii)


def _drive_operator(bulk_c: complex, surf_c: complex) -> np.ndarray:
    # Residual one-site field left after subtracting the steady effective
    # Hamiltonian from the mean-field Hamiltonian (up to the 1/N weight).
    d = surf_c - bulk_c
    return SIGMA_PLUS * np.conj(d) + SIGMA_MINUS * d


def current_density(state: NessState, q_i: np.ndarray, q_ii: np.ndarray) -> float:
    """Transport density of the extensive observable with one-site summands
    ``q_i`` on plate I and ``q_ii`` on plate II.

    Only the bulk regions survive the contact-size scaling, so the value is
    ``i*<[-X_i, q_i]>`` in the bulk-I state plus the plate-II counterpart,
    where ``X`` is the residual drive field of each plate.  For
    ``q_i = number op`` and ``q_ii = -number op`` this reproduces
    :func:`josephson_current` exactly.
    """
    for q in (q_i, q_ii):
        if not is_hermitian(np.asarray(q, dtype=complex)):
            raise ValueError("observable must be Hermitian")
    x_i = _drive_operator(state.bulk_i.c, state.surf_i.c)
    x_ii = _drive_operator(state.bulk_ii.c, state.surf_ii.c)
    val = 1j * expect(state.rho_ia, commutator(-x_i, np.asarray(q_i, dtype=complex)))
    val += 1j * expect(state.rho_iia, commutator(-x_ii, np.asarray(q_ii, dtype=complex)))
    return float(val.real)


def relative_number_current(state: NessState) -> float:
    """Transport functional evaluated on the relative pair number observable."""
    return current_density(state, NUMBER_OP, -NUMBER_OP)


def heat_flux(state: NessState) -> tuple[float, float]:
    """Heat-flux density and its finite-contact fluctuation amplitude.

    The density itself vanishes identically: the O(1) part cancels through
    the surface self-consistency, leaving fluctuations one order down in the
    contact size.  The second element is the coefficient of that leading
    fluctuation,

        2*beta_i*(<sigma_z>_surf_i + 2*eps_i)*Im(conj(c_i)*s_i) + (plate II),

    which carries no definite sign (it flips with the phase difference).
    """
    p = state.params
    z_i = expect(state.rho_ib, SIGMA_Z).real
    z_ii = expect(state.rho_iib, SIGMA_Z).real
    term_i = (np.conj(state.bulk_i.c) * state.surf_i.c).imag
    term_ii = (np.conj(state.bulk_ii.c) * state.surf_ii.c).imag
    amplitude = 2.0 * p.plate_i.beta * (z_i + 2.0 * p.plate_i.epsilon) * term_i
    amplitude += 2.0 * p.plate_ii.beta * (z_ii + 2.0 * p.plate_ii.epsilon) * term_ii
    return 0.0, amplitude


def entropy_production_e1(state: NessState) -> float:
    """Entropy production from partitioning the system into the two plates.

    The state enters the defining commutator expectation in three roles: as
    the expectation functional, through the one-site mean-field Hamiltonian
    its order parameters generate, and through the logarithms of its region
    density matrices.  The implementation keeps the three roles distinct --
    the expectation uses the steady state rebuilt from the stored order
    fields, the Hamiltonian uses the order parameters carried by the stored
    matrices, the logarithm uses the stored matrices themselves -- so for a
    genuine steady state all three coincide and each region term cancels by
    cyclicity of the trace: the result is zero (to roundoff) despite the
    nonzero pair current.  A tampered, non-steady region matrix de-tunes the
    roles and makes the value visibly nonzero.
    """
    p = state.params
    stored = region_densities(state)
    carried = {r: expect(stored[r], SIGMA_PLUS) for r in stored}
    mean_fields = {
        "bulk_i": carried["bulk_i"],
        "surface_i": carried["bulk_i"] + p.gamma * carried["surface_ii"],
        "surface_ii": carried["bulk_ii"] + p.gamma * carried["surface_i"],
        "bulk_ii": carried["bulk_ii"],
    }
    epsilons = {
        "bulk_i": p.plate_i.epsilon,
        "surface_i": p.plate_i.epsilon,
        "surface_ii": p.plate_ii.epsilon,
        "bulk_ii": p.plate_ii.epsilon,
    }
    steady_hams = region_hamiltonians(state)
    eq_i = gibbs(steady_hams["bulk_i"], p.plate_i.beta)
    eq_ii = gibbs(steady_hams["bulk_ii"], p.plate_ii.beta)
    steady = {
        "bulk_i": eq_i,
        "surface_i": dephase(eq_i, steady_hams["surface_i"]),
        "surface_ii": dephase(eq_ii, steady_hams["surface_ii"]),
        "bulk_ii": eq_ii,
    }
    total = 0.0
    for region, rho in stored.items():
        h_mf = field_hamiltonian(epsilons[region], mean_fields[region])
        total += expect(steady[region], commutator(h_mf, log_density(rho))).imag
    return total


def current_report(state: NessState) -> CurrentReport:
    limit, amplitude = heat_flux(state)
    return CurrentReport(
        josephson=josephson_current(state),
        heat_limit=limit,
        heat_amplitude=amplitude,
        entropy_e1=entropy_production_e1(state),
    )
