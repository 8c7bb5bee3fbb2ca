import math

import numpy as np
import pytest

from pmlwave import (AbsorberSide, FieldState, Medium, PmlSpec,
                     attenuation_factor, build_grid, build_pml_maps, cfl_dt,
                     discrete_energy, evanescent_factor,
                     sigma_max_for_round_trip, sigma_profile, step_pml,
                     stretch_factor)
from pmlwave.sources import GaussianPulse, PointSource, apply_source


# -- profile -------------------------------------------------------------

def test_sigma_profile_values():
    assert sigma_profile(0.5, 2, 4.0) == pytest.approx(1.0)
    assert sigma_profile(0.0, 3, 7.0) == 0.0
    assert sigma_profile(1.0, 0, 2.5) == pytest.approx(2.5)


def test_sigma_profile_rejects_out_of_range():
    with pytest.raises(ValueError):
        sigma_profile(1.5, 2, 1.0)
    with pytest.raises(ValueError):
        sigma_profile(-0.1, 2, 1.0)


def test_sigma_profile_continuity_at_inner_edge():
    # degree >= 1 starts from zero; the first discrete jump shrinks with dx
    for degree in (1, 2, 3):
        assert sigma_profile(0.0, degree, 5.0) == 0.0
    jump_coarse = sigma_profile(0.05, 2, 1.0)
    jump_fine = sigma_profile(0.025, 2, 1.0)
    assert jump_fine <= 0.6 * jump_coarse


# -- round-trip design -----------------------------------------------------

def test_sigma_max_round_trip_examples():
    assert sigma_max_for_round_trip(math.exp(-2), 1.0, 0, 1.0) == pytest.approx(1.0)
    expected = -3.0 * math.log(1e-6) / (2.0 * 0.5)
    assert sigma_max_for_round_trip(1e-6, 0.5, 2, 1.0) == pytest.approx(expected)
    assert expected == pytest.approx(41.447, abs=5e-4)
    assert sigma_max_for_round_trip(1.0, 0.3, 4, 2.0) == 0.0


def test_sigma_max_round_trip_rejects_bad_targets():
    with pytest.raises(ValueError):
        sigma_max_for_round_trip(0.0, 1.0, 2, 1.0)
    with pytest.raises(ValueError):
        sigma_max_for_round_trip(1.5, 1.0, 2, 1.0)


# -- coefficient maps -------------------------------------------------------

def test_maps_interior_is_trivial():
    g = build_grid(2.0, 20)
    spec = PmlSpec(x_hi=AbsorberSide(thickness=0.5, degree=2, sigma_max=10.0))
    c = build_pml_maps(g, spec)
    inside = g.x_centers() < 1.5
    assert np.all(c.sigma_x_u[inside] == 0.0)
    assert np.all(c.kappa_x_u[inside] == 1.0)


def test_maps_outermost_u_sample():
    # wall at the outer face: the last cell center sits at depth L - dx/2
    g = build_grid(2.0, 20)
    spec = PmlSpec(x_hi=AbsorberSide(thickness=0.5, degree=2, sigma_max=10.0))
    c = build_pml_maps(g, spec)
    xi = (0.5 - g.dx / 2) / 0.5
    assert c.sigma_x_u[-1] == pytest.approx(10.0 * xi ** 2)
    assert c.sigma_x_v[-1] == pytest.approx(10.0)  # face exactly on the wall


def test_maps_inner_edge_sample_is_zero_for_p_ge_1():
    g = build_grid(2.0, 20)
    spec = PmlSpec(x_hi=AbsorberSide(thickness=0.5, degree=2, sigma_max=10.0))
    c = build_pml_maps(g, spec)
    faces = g.x_faces()
    edge = np.argmin(np.abs(faces - 1.5))
    assert faces[edge] == pytest.approx(1.5)
    assert c.sigma_x_v[edge] == 0.0


def test_maps_monotone_toward_wall():
    g = build_grid(2.0, 40)
    spec = PmlSpec(x_lo=AbsorberSide(thickness=0.4, degree=3, sigma_max=5.0),
                   x_hi=AbsorberSide(thickness=0.5, degree=2, sigma_max=10.0,
                                     kappa_max=3.0))
    c = build_pml_maps(g, spec)
    n_hi = int(0.5 / g.dx)
    assert np.all(np.diff(c.sigma_x_u[-n_hi:]) >= 0)
    assert np.all(np.diff(c.kappa_x_u[-n_hi:]) >= 0)
    n_lo = int(0.4 / g.dx)
    assert np.all(np.diff(c.sigma_x_u[:n_lo]) <= 0)


def test_maps_corner_has_both_sigmas():
    g = build_grid((2.0, 2.0), 10)
    side = AbsorberSide(thickness=0.5, degree=2, sigma_max=8.0)
    spec = PmlSpec(x_hi=side, y_hi=side)
    c = build_pml_maps(g, spec)
    assert c.sigma_x_u[-1] > 0
    assert c.sigma_y_u[-1] > 0  # independent 1d maps overlap at the corner


def test_maps_reject_overlapping_spans():
    g = build_grid(1.0, 20)
    spec = PmlSpec(x_lo=AbsorberSide(thickness=0.6, sigma_max=1.0),
                   x_hi=AbsorberSide(thickness=0.6, sigma_max=1.0))
    with pytest.raises(ValueError):
        build_pml_maps(g, spec)


def test_maps_reject_y_absorber_on_periodic_grid():
    g = build_grid((1.0, 1.0), 10, boundary_y="periodic")
    spec = PmlSpec(y_hi=AbsorberSide(thickness=0.2, sigma_max=1.0))
    with pytest.raises(ValueError):
        build_pml_maps(g, spec)


def test_maps_reject_mixed_modes():
    spec_kwargs = dict(thickness=0.2, sigma_max=1.0)
    spec = PmlSpec(x_lo=AbsorberSide(mode="pml", **spec_kwargs),
                   x_hi=AbsorberSide(mode="nonpml_scalar", **spec_kwargs))
    g = build_grid(1.0, 20)
    with pytest.raises(ValueError):
        build_pml_maps(g, spec)


def test_r_target_resolution_needs_speed():
    g = build_grid(1.0, 20)
    spec = PmlSpec(x_hi=AbsorberSide(thickness=0.2, r_target=1e-4))
    with pytest.raises(ValueError):
        build_pml_maps(g, spec, c_ref=None)
    c = build_pml_maps(g, spec, c_ref=2.0)
    expected = sigma_max_for_round_trip(1e-4, 0.2, 2, 2.0)
    assert c.resolved_sigma_max["x_hi"] == pytest.approx(expected)


def test_absorber_side_validation():
    with pytest.raises(ValueError):
        AbsorberSide(thickness=0.1, sigma_max=1.0, r_target=0.5)
    with pytest.raises(ValueError):
        AbsorberSide(thickness=-1.0)
    with pytest.raises(ValueError):
        AbsorberSide(kappa_max=0.5)
    with pytest.raises(ValueError):
        AbsorberSide(mode="bogus")


# -- analytic factors --------------------------------------------------------

def test_attenuation_factor():
    assert attenuation_factor(1.0, 1.0, 0.0) == pytest.approx(1.0)
    assert attenuation_factor(1.0, 1.0, math.log(2.0)) == pytest.approx(0.5)
    # 60 degrees: k_x/omega = cos(60)/c = 1/2
    assert attenuation_factor(math.cos(math.radians(60.0)), 1.0, 1.0) == \
        pytest.approx(math.exp(-0.5))


def test_evanescent_factor_magnitude_ignores_sigma():
    v1 = evanescent_factor(2.0, sigma=5.0, omega=1.0, kappa_stretch=1.0, x=0.7)
    assert abs(v1) == pytest.approx(math.exp(-2.0 * 0.7))
    v2 = evanescent_factor(2.0, sigma=0.0, omega=1.0, kappa_stretch=2.0, x=0.7)
    assert abs(v2) == pytest.approx(math.exp(-2.0 * 2.0 * 0.7))
    v3 = evanescent_factor(1.0, sigma=1.0, omega=1.0, kappa_stretch=1.0, x=1.0)
    assert np.angle(v3) == pytest.approx(-1.0)


def test_stretch_factor():
    s = stretch_factor(sigma=2.0, omega=4.0, kappa=1.5)
    assert s == pytest.approx(1.5 + 0.5j)
    assert s.real >= 1.0 and s.imag >= 0.0
    with pytest.raises(ValueError):
        stretch_factor(1.0, -1.0)


# -- auxiliary-field confinement and dissipativity ---------------------------

def _pulse_run_2d(spec, n_steps=400):
    g = build_grid((2.0, 2.0), 15)
    m = Medium.uniform(g)
    coeffs = build_pml_maps(g, spec, c_ref=1.0)
    s = FieldState.allocate(g, with_aux=True)
    dt = cfl_dt(g, m, 0.5)
    src = PointSource((0.8, 1.0), GaussianPulse(omega0=2 * np.pi, tau=0.3, delay=1.2))
    for k in range(n_steps):
        step_pml(s, m, coeffs, g, dt)
        apply_source(s, src, g, dt, (k + 1) * dt)
    return g, m, coeffs, s


def test_aux_fields_confined_to_their_sigma_regions():
    spec = PmlSpec(x_hi=AbsorberSide(thickness=0.5, degree=2, r_target=1e-6),
                   y_hi=AbsorberSide(thickness=0.5, degree=2, r_target=1e-6))
    g, m, coeffs, s = _pulse_run_2d(spec)
    sig_x = coeffs.sigma_x_u[:, None] * np.ones_like(s.u)
    sig_y = coeffs.sigma_y_u[None, :] * np.ones_like(s.u)
    assert np.all(s.psi_x[sig_y == 0.0] == 0.0)
    assert np.all(s.psi_y[sig_x == 0.0] == 0.0)
    assert np.all(s.phi[(sig_x * sig_y) == 0.0] == 0.0)
    # and the updates did something where sigma is active
    assert np.any(s.psi_y[sig_x > 0.0] != 0.0)
    assert np.any(s.phi[(sig_x * sig_y) > 0.0] != 0.0)


def test_interior_energy_never_regrows():
    side = AbsorberSide(thickness=0.5, degree=2, r_target=1e-6)
    spec = PmlSpec(x_lo=side, x_hi=side, y_lo=side, y_hi=side)
    g = build_grid((2.0, 2.0), 15)
    m = Medium.uniform(g)
    coeffs = build_pml_maps(g, spec, c_ref=1.0)
    s = FieldState.allocate(g, with_aux=True)
    dt = cfl_dt(g, m, 0.5)
    src = PointSource((1.0, 1.0), GaussianPulse(omega0=2 * np.pi, tau=0.3, delay=1.2))
    energies = []
    for k in range(2000):
        step_pml(s, m, coeffs, g, dt)
        apply_source(s, src, g, dt, (k + 1) * dt)
        if (k + 1) % 20 == 0:
            energies.append(discrete_energy(s, m, g, x_range=(0.5, 1.5),
                                            y_range=(0.5, 1.5)))
    e = np.asarray(energies)
    peak = e.max()
    i_peak = e.argmax()
    running_max = np.maximum.accumulate(e[i_peak:])
    # once past the peak, no sample exceeds its own running maximum by more
    # than the 1e-6-of-peak floor
    assert np.all(e[i_peak:] <= running_max + 1e-6 * peak)
    assert e[-1] <= 1e-6 * peak
