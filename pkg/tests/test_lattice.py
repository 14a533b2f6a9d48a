import math

import numpy as np
import pytest

from bcsjj import (
    ExactEvolution,
    JunctionParams,
    LatticeSpec,
    PlateParams,
    build_hamiltonian,
    cesaro_average,
    energy_drift,
    equilibrium_state,
    evolve,
    initial_state,
    region_sites,
    relative_number,
    standard_observables,
    swap_operator,
)
from bcsjj.lattice import plate_hamiltonian

SC = PlateParams(0.25, 4.0)
NORMAL = PlateParams(0.25, 2.0)


def junction(plate_i=SC, plate_ii=SC, gamma=0.5, phi_i=0.0, phi_ii=math.pi / 2):
    return JunctionParams(plate_i=plate_i, plate_ii=plate_ii, gamma=gamma,
                          phi_i=phi_i, phi_ii=phi_ii)


def test_lattice_spec_dimension_guard():
    with pytest.raises(ValueError):
        LatticeSpec(n=3, params=junction())
    with pytest.raises(ValueError):
        LatticeSpec(n=0, params=junction())
    assert LatticeSpec(n=2, params=junction()).dimension == 256


def test_region_sites_partition():
    spec = LatticeSpec(n=2, params=junction())
    regions = region_sites(spec)
    assert sorted(sum(regions.values(), [])) == list(range(8))
    assert len(regions["ib"]) == len(regions["iib"]) == 2
    assert len(regions["ia"]) == len(regions["iia"]) == 2
    # n = 1 has no bulk: every site sits on the contact row
    regions1 = region_sites(LatticeSpec(n=1, params=junction()))
    assert regions1["ia"] == regions1["iia"] == []
    assert regions1["ib"] == [0] and regions1["iib"] == [1]


def test_hamiltonian_hermitian():
    for n in (1, 2):
        h = build_hamiltonian(LatticeSpec(n=n, params=junction()))
        assert np.max(np.abs(h - h.conj().T)) < 1e-13


def test_n1_hamiltonian_explicit():
    # two sites: one per plate, coupled by the exchange term at strength gamma
    spec = LatticeSpec(n=1, params=junction(gamma=0.7))
    sz = np.diag([1.0, -1.0]).astype(complex)
    sp = np.array([[0, 1], [0, 0]], dtype=complex)
    sm = sp.conj().T
    eye = np.eye(2, dtype=complex)
    h_i = 0.25 * np.kron(sz, eye) - np.kron(sp @ sm, eye)
    h_ii = 0.25 * np.kron(eye, sz) - np.kron(eye, sp @ sm)
    v = -0.7 * (np.kron(sp, sm) + np.kron(sm, sp))
    expected = h_i + h_ii + v
    assert np.max(np.abs(build_hamiltonian(spec) - expected)) < 1e-14


def test_decoupled_spectrum_is_sum_of_plate_spectra():
    spec = LatticeSpec(n=1, params=junction(gamma=0.0, plate_ii=PlateParams(0.4, 5.0)))
    h = build_hamiltonian(spec)
    h_i = plate_hamiltonian(spec, 0)
    h_ii = plate_hamiltonian(spec, 1)
    # with gamma = 0 the full matrix is just the sum of the plate terms
    assert np.max(np.abs(h - h_i - h_ii)) < 1e-14
    eigs = np.sort(np.linalg.eigvalsh(h))
    # single-site plate spectra: diag(eps - 1, -eps) on each factor
    ei = np.array([0.25 - 1.0, -0.25])
    eii = np.array([0.4 - 1.0, -0.4])
    expected = np.sort(np.add.outer(ei, eii).ravel())
    assert np.allclose(eigs, expected, atol=1e-13)


def test_swap_within_regions_commutes_with_hamiltonian():
    spec = LatticeSpec(n=2, params=junction())
    h = build_hamiltonian(spec)
    regions = region_sites(spec)
    for key in ("ia", "ib", "iib", "iia"):
        a, b = regions[key]
        p = swap_operator(spec, a, b)
        assert np.max(np.abs(p @ h - h @ p)) < 1e-12


def test_swap_across_regions_does_not_commute():
    spec = LatticeSpec(n=2, params=junction())
    h = build_hamiltonian(spec)
    regions = region_sites(spec)
    p = swap_operator(spec, regions["ia"][0], regions["ib"][0])
    assert np.max(np.abs(p @ h - h @ p)) > 1e-3


def test_initial_state_normal_phase_is_diagonal():
    spec = LatticeSpec(n=1, params=junction(plate_i=NORMAL, plate_ii=NORMAL))
    rho = initial_state(spec)
    assert np.max(np.abs(rho - np.diag(np.diag(rho)))) == 0.0
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)


def test_initial_state_product_structure():
    spec = LatticeSpec(n=1, params=junction())
    rho = initial_state(spec)
    rho_i = equilibrium_state(SC, 0.0).rho
    rho_ii = equilibrium_state(SC, math.pi / 2).rho
    assert np.max(np.abs(rho - np.kron(rho_i, rho_ii))) == 0.0
    assert np.linalg.matrix_rank(rho) == 4
    # coherences carry the plate phases
    assert np.angle(rho_ii[1, 0]) == pytest.approx(math.pi / 2, abs=1e-12)


def test_initial_state_purity_is_product_of_site_purities():
    spec = LatticeSpec(n=2, params=junction())
    rho = initial_state(spec)
    rho_i = equilibrium_state(SC, 0.0).rho
    rho_ii = equilibrium_state(SC, math.pi / 2).rho
    site_purity_i = np.trace(rho_i @ rho_i).real
    site_purity_ii = np.trace(rho_ii @ rho_ii).real
    expected = site_purity_i ** 4 * site_purity_ii ** 4
    assert np.trace(rho @ rho).real == pytest.approx(expected, abs=1e-12)


def test_evolution_conserves_energy():
    for n in (1, 2):
        spec = LatticeSpec(n=n, params=junction())
        traj = evolve(spec, initial_state(spec), t_max=1000.0, steps=1500)
        assert energy_drift(traj) < 1e-10


def test_evolution_preserves_trace_and_spectrum():
    spec = LatticeSpec(n=2, params=junction())
    prop = ExactEvolution(build_hamiltonian(spec), initial_state(spec))
    ref = np.sort(np.linalg.eigvalsh(prop.state_at(0.0)))
    for t in (0.0, 3.7, 51.2, 400.0):
        rho_t = prop.state_at(t)
        assert np.trace(rho_t).real == pytest.approx(1.0, abs=1e-12)
        assert np.max(np.abs(np.sort(np.linalg.eigvalsh(rho_t)) - ref)) < 1e-10


def test_decoupled_plate_evolution_independent_of_other_plate():
    # with gamma = 0, plate-I observables cannot feel plate-II parameters
    times = np.linspace(0.0, 50.0, 200)
    results = []
    for beta_ii in (3.0, 9.0):
        spec = LatticeSpec(
            n=1, params=junction(gamma=0.0, plate_ii=PlateParams(0.25, beta_ii))
        )
        prop = ExactEvolution(build_hamiltonian(spec), initial_state(spec))
        sp_i = standard_observables(spec)["sp_ib"]
        results.append(prop.expectations(sp_i, times))
    assert np.max(np.abs(results[0] - results[1])) < 1e-12


def test_superconducting_coherence_oscillates_and_recurs():
    # finite systems keep evolving: the surface coherence rotates instead of
    # settling, which is what the time average washes out
    spec = LatticeSpec(n=1, params=junction(gamma=0.5))
    traj = evolve(spec, initial_state(spec), t_max=200.0, steps=2000)
    sp = traj.values["sp_ib"]
    assert np.max(np.abs(sp - sp[0])) > 0.1
    # quasi-periodic: it keeps coming back near the start even late in the run
    revisits = np.abs(sp - sp[0]) < 0.05
    assert revisits[len(sp) // 2:].any()


def test_derivative_of_relative_number_matches_commutator_observable():
    spec = LatticeSpec(n=2, params=junction())
    prop = ExactEvolution(build_hamiltonian(spec), initial_state(spec))
    c_op = relative_number(spec)
    cur_op = standard_observables(spec)["current"]
    h = 1e-3
    for t in (0.5, 7.3, 42.0):
        stencil = np.array([t - 2 * h, t - h, t + h, t + 2 * h])
        f = prop.expectations(c_op, stencil).real
        fd = (f[0] - 8 * f[1] + 8 * f[2] - f[3]) / (12 * h)
        exact = prop.expectations(cur_op, np.array([t]))[0].real
        assert fd == pytest.approx(exact, abs=1e-6)


def test_cesaro_average_requires_long_trajectory():
    spec = LatticeSpec(n=1, params=junction())
    traj = evolve(spec, initial_state(spec), t_max=10.0, steps=100)
    with pytest.raises(ValueError):
        cesaro_average(traj)


def test_cesaro_current_vanishes_like_inverse_time():
    spec = LatticeSpec(n=1, params=junction())
    traj = evolve(spec, initial_state(spec), t_max=1000.0, steps=8000)
    avg = cesaro_average(traj)
    c_max = float(spec.sites_per_plate)
    assert abs(avg["current"]) < 4.0 * c_max / 1000.0
    # fundamental-theorem value: (C(T) - C(0)) / T
    c_vals = traj.values["relative_number"].real
    ftc = (c_vals[-1] - c_vals[0]) / 1000.0
    assert avg["current"].real == pytest.approx(ftc, abs=1e-3)


def test_cesaro_decoupled_normal_plates_keep_equilibrium_averages():
    # for a single normal site per plate the plate Hamiltonians are diagonal,
    # the initial state is exactly invariant and every average stays put
    spec = LatticeSpec(n=1, params=junction(plate_i=NORMAL, plate_ii=NORMAL, gamma=0.0))
    traj = evolve(spec, initial_state(spec), t_max=150.0, steps=1500)
    avg = cesaro_average(traj)
    for key, series in traj.values.items():
        assert abs(avg[key] - series[0]) < 1e-10, key
        assert np.max(np.abs(series - series[0])) < 1e-10, key


def test_populations_invariant_for_single_site_plates_at_gamma_zero():
    # even superconducting coherences leave the populations frozen when each
    # plate is a single site (its Hamiltonian is then diagonal)
    spec = LatticeSpec(n=1, params=junction(gamma=0.0))
    traj = evolve(spec, initial_state(spec), t_max=150.0, steps=600)
    for key in ("sz_ib", "sz_iib", "relative_number", "energy_i", "energy_ii"):
        series = traj.values[key]
        assert np.max(np.abs(series - series[0])) < 1e-10, key


def test_time_averaged_surface_field_differs_from_bulk_when_coupled():
    spec = LatticeSpec(n=2, params=junction(gamma=1.0))
    traj = evolve(spec, initial_state(spec), t_max=400.0, steps=3000)
    avg = cesaro_average(traj)
    assert abs(avg["sp_ib"] - avg["sp_ia"]) > 1e-3


def test_evolve_rejects_bad_grid():
    spec = LatticeSpec(n=1, params=junction())
    with pytest.raises(ValueError):
        evolve(spec, initial_state(spec), t_max=-1.0, steps=10)
    with pytest.raises(ValueError):
        evolve(spec, initial_state(spec), t_max=10.0, steps=0)
