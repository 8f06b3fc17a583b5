import math

import numpy as np
import pytest

from zbmeta.evolution import WaveState, density, evolve_exact_dirac
from zbmeta.grid import make_grid
from zbmeta.observables import (
    AnalyticZBInputs,
    TimeSeries,
    analytic_zb_gaussian,
    analytic_zb_general,
    center_of_mass_velocity,
    derivative_sign_changes,
    dominant_angular_frequency,
    linear_detrend,
    position_expectation,
    probability_in,
    zb_angular_frequency,
)


@pytest.fixture
def grid():
    return make_grid(101)


def test_even_density_has_zero_mean(grid):
    rho = np.exp(-grid.x_values**2)
    assert abs(position_expectation(rho, grid)) < 1e-15


def test_shift_covariance(grid):
    x = grid.x_values
    rho = np.exp(-(((x - 0.05) / 0.03) ** 2))
    rho /= rho.sum() * grid.dx
    shifted = np.roll(rho, 3)
    assert position_expectation(shifted, grid) - position_expectation(rho, grid) == pytest.approx(3 * grid.dx, rel=1e-9)


def test_batched_expectation(grid, rng):
    rho = rng.uniform(0, 1, (4, grid.n))
    out = position_expectation(rho, grid)
    assert out.shape == (4,)
    assert out[2] == pytest.approx(position_expectation(rho[2], grid))


def test_window_renormalizes(grid):
    x = grid.x_values
    c = x[62]
    rho = np.where(np.abs(x - c) < 0.02, 5.0, 0.0) + np.where(np.abs(x + 0.3) < 0.02, 1.0, 0.0)
    assert position_expectation(rho, grid, (0.0, 0.4)) == pytest.approx(c, abs=1e-12)


def test_window_errors(grid):
    with pytest.raises(ValueError, match="no grid points"):
        position_expectation(np.ones(grid.n), grid, (10.0, 11.0))
    with pytest.raises(ValueError, match="no probability"):
        position_expectation(np.zeros(grid.n), grid, (-0.1, 0.1))


def test_probability_in_full_window(grid, rng):
    rho = rng.uniform(0, 1, grid.n)
    assert probability_in(rho, grid, (-1, 1)) == pytest.approx(rho.sum() * grid.dx)


def test_time_series_validation():
    with pytest.raises(ValueError):
        TimeSeries([0.0, 0.0], [1.0, 2.0])
    with pytest.raises(ValueError):
        TimeSeries([0.0, 1.0], [1.0])
    with pytest.raises(ValueError):
        TimeSeries([0.0, 1.0], [1.0, 2.0], backend="fdtd")
    assert TimeSeries([0.0, 1.0], [1.0, -3.0]).peak() == 3.0


def test_analytic_vanishes_at_zero_time(sp, mass):
    assert analytic_zb_gaussian(sp, math.sqrt(2) * mass, 0.0, 0.0) == 0.0


def test_narrow_packet_limit(sp, mass):
    # sigma -> 0 leaves a single k = 0 mode: <x> = -sin(2 c_D m t) / (2 m)
    t = np.linspace(-3e-9, 3e-9, 31)
    got = analytic_zb_gaussian(sp, 1e-3 * mass, 0.0, t)
    expect = -np.sin(2 * sp.c_D * mass * t) / (2 * mass)
    np.testing.assert_allclose(got, expect, atol=1e-5 / mass)


def test_time_sign_mirrors_series(sp, mass):
    t = np.linspace(0, 3e-9, 7)
    a = analytic_zb_gaussian(sp, mass, 0.0, t, time_sign=1)
    b = analytic_zb_gaussian(sp, mass, 0.0, t, time_sign=-1)
    np.testing.assert_allclose(a, -b, atol=1e-15)


def test_general_form_handles_complex_coefficients(sp, mass, rng):
    # compare with the exact scaled-Dirac evolution on a grid; offset by the initial mean
    g = make_grid(401)
    env = np.exp(-((g.k_values / mass) ** 2))
    p = env * np.exp(1j * rng.uniform(-0.3, 0.3))
    q = env * (0.4 + 0.7j)
    st = WaveState.from_coefficients(g, p, q).normalize()
    t = np.linspace(-3e-9, 3e-9, 13)
    x_sim = position_expectation(density(evolve_exact_dirac(st, sp, t, -1)), g)
    x_sim = x_sim / (np.sum(density(evolve_exact_dirac(st, sp, t, -1)), axis=-1) * g.dx)
    x0 = x_sim[6]
    x_an = analytic_zb_general(AnalyticZBInputs(sp, g.k_values, st.phi_plus, st.phi_minus, x0, -1), t)
    assert np.max(np.abs(x_an - x_sim)) < 1e-6 * np.max(np.abs(x_sim - x0))


def test_analytic_matches_exact_simulation_for_counter_packet(sp, mass):
    # counterpropagating settings: k0 = 20/m, sigma = m0
    g = make_grid(625)
    env = np.exp(-(((g.k_values - 20.0) / mass) ** 2)) + 0j
    st = WaveState.from_coefficients(g, env, env).normalize()
    t = np.linspace(-4e-9, 4e-9, 41)
    sim = position_expectation(density(evolve_exact_dirac(st, sp, t, -1)), g)
    an = analytic_zb_gaussian(sp, mass, 20.0, t)
    assert np.max(np.abs(sim - an)) <= 0.02 * np.max(np.abs(an))


def test_amplitude_of_order_compton_length(sp, mass):
    t = np.linspace(-4e-9, 4e-9, 401)
    peak = np.max(np.abs(analytic_zb_gaussian(sp, math.sqrt(2) * mass, 0.0, t)))
    assert 0.1 / mass < peak < 1.0 / mass


def test_oscillation_decays_for_broad_packet(sp, mass):
    t = np.linspace(0, 20e-9, 2001)
    x = analytic_zb_gaussian(sp, math.sqrt(2) * mass, 0.0, t)
    early = np.max(np.abs(x[t < 3e-9]))
    late = np.max(np.abs(x[t > 15e-9]))
    assert late < 0.5 * early


def test_quadrature_doubling_changes_peak_by_less_than_a_thousandth(sp, mass):
    t = np.linspace(-4e-9, 4e-9, 161)
    for sigma in (math.sqrt(2) * mass, mass / 4):
        a = analytic_zb_gaussian(sp, sigma, 0.0, t, n_points=2001)
        b = analytic_zb_gaussian(sp, sigma, 0.0, t, n_points=4001)
        assert abs(np.max(np.abs(a)) - np.max(np.abs(b))) < 1e-3 * np.max(np.abs(b))


def test_zb_frequency_constant(sp, mass):
    assert zb_angular_frequency(sp) == pytest.approx(2 * sp.c_D * mass)
    assert zb_angular_frequency(sp) == pytest.approx(1.3705e9, rel=1e-3)


@pytest.mark.parametrize("fraction", [math.sqrt(2), 0.25])
def test_dominant_frequency_approaches_twice_mass(sp, mass, fraction):
    w = zb_angular_frequency(sp)
    t = np.linspace(0, 10 * 2 * np.pi / w, 2001)
    x = analytic_zb_gaussian(sp, fraction * mass, 0.0, t)
    assert dominant_angular_frequency(t, x) == pytest.approx(w, rel=0.01)


def test_dominant_frequency_of_pure_tone():
    t = np.linspace(0, 1e-6, 1000)
    assert dominant_angular_frequency(t, np.sin(2 * np.pi * 37e6 * t)) == pytest.approx(2 * np.pi * 37e6, rel=1e-3)


def test_dominant_frequency_needs_uniform_sampling():
    with pytest.raises(ValueError):
        dominant_angular_frequency([0.0, 1.0, 3.0], [0.0, 1.0, 0.0])


def test_detrend_and_velocity():
    t = np.linspace(0, 1, 50)
    resid, slope = linear_detrend(t, 3 * t + 2 + 0.01 * np.sin(40 * t))
    assert slope == pytest.approx(3.0, abs=1e-3)
    assert np.max(np.abs(resid)) < 0.02
    assert center_of_mass_velocity(t, -5 * t + 1) == pytest.approx(-5.0)


def test_sign_changes():
    assert derivative_sign_changes(np.sin(np.linspace(0, 4 * np.pi, 400))) == 4
    assert derivative_sign_changes([1, 2, 2, 3]) == 0
