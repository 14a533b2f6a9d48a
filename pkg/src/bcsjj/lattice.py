"""Exact dynamics of tiny junction instances.

Builds the full many-body Hamiltonian for two n-by-n plates joined along one
lattice row, evolves product initial states exactly through the spectral
decomposition (no time-stepping error), and takes Cesaro time averages.

This is a structural cross-check, not a quantitative one: at finite size the
time-averaged pair current decays like 1/T, in contrast with the steady
nonzero current density of the infinite-volume construction.  Dimension is
capped at two plates of 2x2 (Hilbert dimension 256), which keeps dense
diagonalization instant.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .equilibrium import equilibrium_state
from .ness import JunctionParams
from .spin import NUMBER_OP, SIGMA_PLUS, SIGMA_Z

MAX_PLATE_SIZE = 2
MIN_AVERAGING_TIME = 100.0

REGION_SITE_KEYS = ("ia", "ib", "iib", "iia")


@dataclass(frozen=True)
class LatticeSpec:
    """Finite instance: each plate an n-by-n lattice, coupled along row 0."""

    n: int
    params: JunctionParams

    def __post_init__(self):
        if not (1 <= self.n <= MAX_PLATE_SIZE):
            raise ValueError(
                f"plate size n={self.n} outside [1, {MAX_PLATE_SIZE}]"
                " (Hilbert dimension capped at 256)"
            )

    @property
    def sites_per_plate(self) -> int:
        return self.n * self.n

    @property
    def total_sites(self) -> int:
        return 2 * self.n * self.n

    @property
    def dimension(self) -> int:
        return 2 ** self.total_sites


def _site_index(spec: LatticeSpec, plate: int, k: int, l: int) -> int:
    # plate 0 sites come first; within a plate, (k, l) -> k*n + l so the
    # contact row l = 0 is every n-th index.
    return plate * spec.sites_per_plate + k * spec.n + l


def region_sites(spec: LatticeSpec) -> dict[str, list[int]]:
    """Site indices of the four permutation-invariant regions.

    ``ib``/``iib`` are the contact rows; ``ia``/``iia`` the bulks (empty for
    n = 1, where every site touches the contact).
    """
    n = spec.n
    out: dict[str, list[int]] = {"ia": [], "ib": [], "iib": [], "iia": []}
    for k in range(n):
        for l in range(n):
            out["ib" if l == 0 else "ia"].append(_site_index(spec, 0, k, l))
            out["iib" if l == 0 else "iia"].append(_site_index(spec, 1, k, l))
    return out


def embed(op: np.ndarray, site: int, total_sites: int) -> np.ndarray:
    """One-site operator acting on ``site`` inside the full tensor product.

    Site 0 is the most significant tensor factor (numpy ``kron`` order).
    """
    left = np.eye(2 ** site, dtype=complex)
    right = np.eye(2 ** (total_sites - site - 1), dtype=complex)
    return np.kron(np.kron(left, op), right)


def _collective(op: np.ndarray, sites: list[int], total_sites: int) -> np.ndarray:
    dim = 2 ** total_sites
    out = np.zeros((dim, dim), dtype=complex)
    for s in sites:
        out += embed(op, s, total_sites)
    return out


def plate_hamiltonian(spec: LatticeSpec, plate: int) -> np.ndarray:
    """Single-plate Hamiltonian: kinetic term plus the all-to-all pair
    interaction with 1/n^2 normalization (self-pair term included)."""
    p = spec.params.plate_i if plate == 0 else spec.params.plate_ii
    sites = [
        _site_index(spec, plate, k, l) for k in range(spec.n) for l in range(spec.n)
    ]
    sz = _collective(SIGMA_Z, sites, spec.total_sites)
    sp = _collective(SIGMA_PLUS, sites, spec.total_sites)
    return p.epsilon * sz - (sp @ sp.conj().T) / spec.sites_per_plate


def junction_coupling(spec: LatticeSpec) -> np.ndarray:
    """Tunnelling term between the two contact rows, 1/n-normalized."""
    regions = region_sites(spec)
    sp_i = _collective(SIGMA_PLUS, regions["ib"], spec.total_sites)
    sp_ii = _collective(SIGMA_PLUS, regions["iib"], spec.total_sites)
    v = sp_i @ sp_ii.conj().T
    v = v + v.conj().T
    return -(spec.params.gamma / spec.n) * v


def build_hamiltonian(spec: LatticeSpec) -> np.ndarray:
    """Full junction Hamiltonian: both plates plus the contact coupling."""
    return plate_hamiltonian(spec, 0) + plate_hamiltonian(spec, 1) + junction_coupling(spec)


def relative_number(spec: LatticeSpec) -> np.ndarray:
    """Pair number of plate I minus pair number of plate II."""
    regions = region_sites(spec)
    sites_i = regions["ia"] + regions["ib"]
    sites_ii = regions["iia"] + regions["iib"]
    return _collective(NUMBER_OP, sites_i, spec.total_sites) - _collective(
        NUMBER_OP, sites_ii, spec.total_sites
    )


def initial_state(spec: LatticeSpec) -> np.ndarray:
    """Product of the two plates' one-site equilibrium states over all sites."""
    p = spec.params
    rho_i = equilibrium_state(p.plate_i, p.phi_i).rho
    rho_ii = equilibrium_state(p.plate_ii, p.phi_ii).rho
    rho = np.array([[1.0 + 0.0j]])
    for site in range(spec.total_sites):
        rho = np.kron(rho, rho_i if site < spec.sites_per_plate else rho_ii)
    return rho


def swap_operator(spec: LatticeSpec, site_a: int, site_b: int) -> np.ndarray:
    """Permutation operator exchanging two sites of the lattice."""
    dim = spec.dimension
    total = spec.total_sites
    perm = np.zeros(dim, dtype=np.int64)
    pos_a = total - site_a - 1  # bit position of each site in the basis index
    pos_b = total - site_b - 1
    for idx in range(dim):
        bit_a = (idx >> pos_a) & 1
        bit_b = (idx >> pos_b) & 1
        out = idx & ~(1 << pos_a) & ~(1 << pos_b)
        out |= bit_a << pos_b
        out |= bit_b << pos_a
        perm[idx] = out
    op = np.zeros((dim, dim), dtype=complex)
    op[perm, np.arange(dim)] = 1.0
    return op


def standard_observables(spec: LatticeSpec) -> dict[str, np.ndarray]:
    """The fixed observable set recorded along trajectories.

    Region-averaged raising and z operators (empty regions are omitted), the
    relative pair number, the per-plate energies, the total energy and the
    instantaneous pair current ``i[H, C]``.
    """
    total = spec.total_sites
    regions = region_sites(spec)
    obs: dict[str, np.ndarray] = {}
    for key in REGION_SITE_KEYS:
        sites = regions[key]
        if not sites:
            continue
        obs[f"sp_{key}"] = _collective(SIGMA_PLUS, sites, total) / len(sites)
        obs[f"sz_{key}"] = _collective(SIGMA_Z, sites, total) / len(sites)
    h_i = plate_hamiltonian(spec, 0)
    h_ii = plate_hamiltonian(spec, 1)
    h = h_i + h_ii + junction_coupling(spec)
    c = relative_number(spec)
    obs["relative_number"] = c
    obs["energy_i"] = h_i
    obs["energy_ii"] = h_ii
    obs["energy"] = h
    obs["current"] = 1j * (h @ c - c @ h)
    return obs


@dataclass(frozen=True)
class Trajectory:
    """Expectation values of a named observable set on a uniform time grid."""

    times: np.ndarray
    values: dict[str, np.ndarray] = field(repr=False)


class ExactEvolution:
    """Spectral propagator for a fixed Hamiltonian and initial state.

    Expectations at arbitrary times come from the closed form
    ``<O>(t) = sum_ab A_ab B_ba exp(-i t (E_a - E_b))`` with ``A`` and ``B``
    the state and observable in the energy eigenbasis, so there is no
    integration error to control.
    """

    def __init__(self, hamiltonian: np.ndarray, rho0: np.ndarray):
        energies, basis = np.linalg.eigh(hamiltonian)
        self.energies = energies
        self.basis = basis
        self.rho0_eig = basis.conj().T @ rho0 @ basis

    def expectations(self, op: np.ndarray, times: np.ndarray) -> np.ndarray:
        op_eig = self.basis.conj().T @ op @ self.basis
        kernel = self.rho0_eig * op_eig.T
        phases = np.exp(-1j * np.outer(times, self.energies))
        return ((phases @ kernel) * phases.conj()).sum(axis=1)

    def state_at(self, t: float) -> np.ndarray:
        phase = np.exp(-1j * t * self.energies)
        rho_eig = self.rho0_eig * np.outer(phase, phase.conj())
        return self.basis @ rho_eig @ self.basis.conj().T


def evolve(spec: LatticeSpec, rho0: np.ndarray, t_max: float,
           steps: int) -> Trajectory:
    """Exact trajectory of the standard observables on ``steps + 1`` uniform
    sample times spanning ``[0, t_max]``."""
    if steps < 1 or t_max <= 0.0:
        raise ValueError("need t_max > 0 and at least one step")
    times = np.linspace(0.0, float(t_max), steps + 1)
    propagator = ExactEvolution(build_hamiltonian(spec), rho0)
    values = {
        name: propagator.expectations(op, times)
        for name, op in standard_observables(spec).items()
    }
    return Trajectory(times=times, values=values)


def cesaro_average(traj: Trajectory) -> dict[str, complex]:
    """Trapezoidal time averages of every recorded observable over the grid.

    The trajectory must span at least one characteristic period
    (``t_max >= 100`` in these units) for the averages to be meaningful.
    """
    span = float(traj.times[-1] - traj.times[0])
    if span < MIN_AVERAGING_TIME:
        raise ValueError(
            f"trajectory spans {span:g} time units; need at least "
            f"{MIN_AVERAGING_TIME:g} for a meaningful time average"
        )
    return {
        name: complex(np.trapezoid(vals, traj.times) / span)
        for name, vals in traj.values.items()
    }


def energy_drift(traj: Trajectory) -> float:
    """Largest deviation of the total energy from its initial value."""
    energy = traj.values["energy"].real
    return float(np.max(np.abs(energy - energy[0])))
