"""Per-plate equilibrium: the self-consistency (gap) equation and the
pure-phase one-site thermal state it defines.

Nonzero gap solutions exist only for kinetic energy below 1/2 and inverse
temperature above the critical value; otherwise the plate is in the normal
phase with vanishing order parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spin import SIGMA_PLUS, expect, field_hamiltonian, gibbs

TAU = 2.0 * math.pi

_BISECT_WIDTH = 1e-14
_NEWTON_STEPS = 3


def canonical_phase(phi: float) -> float:
    """Map an angle to [0, 2*pi)."""
    phi = float(phi) % TAU
    return 0.0 if phi == TAU else phi


@dataclass(frozen=True)
class PlateParams:
    """Single-plate parameters: pair kinetic energy and inverse temperature."""

    epsilon: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.epsilon) and self.epsilon > 0.0):
            raise ValueError("epsilon must be positive and finite")
        if not (math.isfinite(self.beta) and self.beta > 0.0):
            raise ValueError("beta must be positive and finite")


@dataclass(frozen=True)
class OrderField:
    """Complex order parameter; modulus is the gap amplitude, argument the phase."""

    c: complex

    @property
    def magnitude(self) -> float:
        return abs(self.c)

    @property
    def phase(self) -> float:
        return canonical_phase(float(np.angle(self.c)))


@dataclass(frozen=True)
class EquilibriumState:
    """Converged one-site equilibrium of a plate at a chosen phase."""

    params: PlateParams
    order: OrderField
    k: float  # quasiparticle energy sqrt(epsilon^2 + magnitude^2)
    rho: np.ndarray = field(repr=False)


def critical_beta(epsilon: float):
    """Inverse temperature above which a nonzero gap exists, or None.

    Returns ``atanh(2*epsilon)/epsilon`` for ``epsilon < 1/2`` and None for
    ``epsilon >= 1/2`` (no superconducting phase at any temperature).
    """
    if not (math.isfinite(epsilon) and epsilon > 0.0):
        raise ValueError("epsilon must be positive and finite")
    if epsilon >= 0.5:
        return None
    return math.atanh(2.0 * epsilon) / epsilon


def _gap_g(k: float, beta: float) -> float:
    return math.tanh(beta * k) - 2.0 * k


def solve_gap(params: PlateParams) -> float:
    """Positive gap amplitude solving ``2k = tanh(beta*k)``, ``k^2 = eps^2 + gap^2``.

    Returns 0.0 in the normal phase (``epsilon >= 1/2`` or ``beta <= beta_c``,
    the equality deliberately strict).  In the superconducting phase the root
    is bracketed on ``(epsilon, 1/2]`` -- ``tanh < 1`` forces ``k <= 1/2`` --
    and located by bisection followed by a short Newton polish.
    """
    bc = critical_beta(params.epsilon)
    if bc is None or params.beta <= bc:
        return 0.0
    beta = params.beta
    lo = params.epsilon * (1.0 + 1e-15)
    hi = 0.5
    # g(lo) > 0 because beta > beta_c; g(hi) <= 0 because tanh < 1.
    while hi - lo > _BISECT_WIDTH:
        mid = 0.5 * (lo + hi)
        if _gap_g(mid, beta) > 0.0:
            lo = mid
        else:
            hi = mid
    k = 0.5 * (lo + hi)
    for _ in range(_NEWTON_STEPS):
        t = math.tanh(beta * k)
        gprime = beta * (1.0 - t * t) - 2.0  # sech^2 via tanh avoids overflow
        if gprime == 0.0:
            break
        step = (t - 2.0 * k) / gprime
        k_next = k - step
        if not (params.epsilon < k_next <= 0.5):
            break
        k = k_next
    return math.sqrt(max(k * k - params.epsilon * params.epsilon, 0.0))


def gap_residual(params: PlateParams, gap: float) -> float:
    """Defect ``|1 - tanh(beta*k)/(2k)|`` of a claimed gap; 0.0 for the normal phase."""
    if gap == 0.0:
        return 0.0
    k = math.hypot(params.epsilon, gap)
    return abs(1.0 - math.tanh(params.beta * k) / (2.0 * k))


def equilibrium_state(params: PlateParams, phi: float = 0.0) -> EquilibriumState:
    """Pure-phase equilibrium at phase ``phi`` (canonicalized mod 2*pi).

    The order parameter is ``solve_gap(params) * exp(i*phi)`` and the one-site
    state is the thermal state of the effective Hamiltonian it generates; by
    self-consistency ``|tr(rho sigma_plus)|`` reproduces the gap amplitude.
    """
    phi = canonical_phase(phi)
    gap = solve_gap(params)
    c = gap * complex(math.cos(phi), math.sin(phi))
    h = field_hamiltonian(params.epsilon, c)
    rho = gibbs(h, params.beta)
    k = math.hypot(params.epsilon, gap)
    return EquilibriumState(params=params, order=OrderField(c), k=k, rho=rho)


def order_parameter(rho: np.ndarray) -> complex:
    """Order parameter carried by a one-site state: ``tr(rho sigma_plus)``."""
    return expect(rho, SIGMA_PLUS)
