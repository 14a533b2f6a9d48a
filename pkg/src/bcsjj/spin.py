"""Exact 2x2 complex Hermitian algebra.

Pauli operators, closed-form spectral decomposition, Gibbs states and
eigenbasis dephasing (pinching).  Everything here is pure value semantics
on plain 2x2 complex ndarrays; the structured result of a decomposition is
a :class:`Spectral2`.

Convention, fixed once for the whole package: ``sigma_plus`` is the raising
operator with its single nonzero entry in the upper-right corner, and
``sigma_z = sigma_plus @ sigma_minus - sigma_minus @ sigma_plus = diag(1, -1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
NUMBER_OP = SIGMA_PLUS @ SIGMA_MINUS  # diag(1, 0)
IDENTITY2 = np.eye(2, dtype=complex)

HERMITIAN_ATOL = 1e-12


def is_hermitian(m: np.ndarray, atol: float = HERMITIAN_ATOL) -> bool:
    """True if ``m`` equals its conjugate transpose entrywise within ``atol``."""
    m = np.asarray(m)
    return bool(np.allclose(m, m.conj().T, rtol=0.0, atol=atol))


def _require_hermitian(m: np.ndarray) -> None:
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian")


def field_hamiltonian(epsilon: float, field: complex) -> np.ndarray:
    """One-site Hamiltonian ``epsilon*sigma_z - field*sigma_minus - conj(field)*sigma_plus``.

    ``field`` is the complex pairing field multiplying the lowering operator;
    its conjugate multiplies the raising operator, which keeps the matrix
    Hermitian by construction.
    """
    return np.array(
        [[epsilon, -np.conj(field)], [-field, -epsilon]], dtype=complex
    )


@dataclass(frozen=True)
class Spectral2:
    """Closed-form spectral decomposition of a 2x2 Hermitian matrix.

    ``e_minus <= e_plus``; the projectors are rank-1 (or the canonical basis
    projectors in the degenerate case), idempotent, mutually orthogonal and
    sum to the identity.
    """

    e_minus: float
    e_plus: float
    p_minus: np.ndarray
    p_plus: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.e_minus * self.p_minus + self.e_plus * self.p_plus


def eig2(h: np.ndarray) -> Spectral2:
    """Exact eigendecomposition of a 2x2 Hermitian matrix.

    Eigenvalues come out ordered ascending.  A matrix proportional to the
    identity has no preferred eigenbasis; by convention the canonical basis
    projectors ``diag(1,0)``, ``diag(0,1)`` are returned so that dephasing
    degenerates to deterministic diagonal pinching.
    """
    h = np.asarray(h, dtype=complex)
    _require_hermitian(h)
    mean = 0.5 * (h[0, 0].real + h[1, 1].real)
    half_gap_z = 0.5 * (h[0, 0].real - h[1, 1].real)
    off = h[1, 0]
    radius = math.hypot(half_gap_z, abs(off))
    if radius == 0.0:
        return Spectral2(
            mean,
            mean,
            np.diag([1.0, 0.0]).astype(complex),
            np.diag([0.0, 1.0]).astype(complex),
        )
    unit = (h - mean * IDENTITY2) / radius
    p_plus = 0.5 * (IDENTITY2 + unit)
    p_minus = 0.5 * (IDENTITY2 - unit)
    return Spectral2(mean - radius, mean + radius, p_minus, p_plus)


def gibbs(h: np.ndarray, beta: float) -> np.ndarray:
    """Thermal state ``exp(-beta*h) / tr exp(-beta*h)`` computed spectrally.

    The weights are formed from the spectral gap only, so arbitrarily large
    ``beta`` underflows cleanly to the ground-state projector instead of
    overflowing.
    """
    if not (math.isfinite(beta) and beta >= 0.0):
        raise ValueError("beta must be finite and non-negative")
    s = eig2(h)
    x = math.exp(-beta * (s.e_plus - s.e_minus))  # in (0, 1]
    w_minus = 1.0 / (1.0 + x)
    w_plus = x / (1.0 + x)
    return w_minus * s.p_minus + w_plus * s.p_plus


def dephase(rho: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Pinch ``rho`` to the eigenbasis of ``h``: ``P+ rho P+ + P- rho P-``.

    The output commutes with ``h`` and has the same trace as the input.
    """
    s = eig2(h)
    return s.p_minus @ rho @ s.p_minus + s.p_plus @ rho @ s.p_plus


def expect(rho: np.ndarray, a: np.ndarray) -> complex:
    """Expectation value ``tr(rho @ a)``."""
    return complex(np.trace(np.asarray(rho) @ np.asarray(a)))


def log_density(rho: np.ndarray) -> np.ndarray:
    """Matrix logarithm of a density matrix via its spectral decomposition.

    Eigenvalues are floored at a tiny positive number so that (numerically)
    pure states do not produce infinities.
    """
    s = eig2(rho)
    w_minus = max(s.e_minus, 1e-300)
    w_plus = max(s.e_plus, 1e-300)
    return math.log(w_minus) * s.p_minus + math.log(w_plus) * s.p_plus


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def frobenius(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def check_density(rho: np.ndarray, trace_atol: float = 1e-12,
                  eig_floor: float = -1e-12) -> None:
    """Raise ValueError unless ``rho`` is Hermitian, unit-trace and positive.

    Tolerances: trace within ``trace_atol`` of 1, both eigenvalues at least
    ``eig_floor``.
    """
    rho = np.asarray(rho)
    _require_hermitian(rho)
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > trace_atol:
        raise ValueError(f"density matrix trace {tr} is not 1")
    s = eig2(rho)
    if s.e_minus < eig_floor:
        raise ValueError(f"density matrix has negative eigenvalue {s.e_minus}")
