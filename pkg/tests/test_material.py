import math

import numpy as np
import pytest

from zbmeta.material import (
    CODATA,
    REFERENCE_LINE,
    DomainError,
    MaterialParams,
    PhysicalConstants,
    band_edges,
    epsilon_r,
    mu_r,
)


def test_speed_of_light_from_codata():
    assert CODATA.c == pytest.approx(299792458.0, rel=1e-9)


def test_reference_line_values():
    assert (REFERENCE_LINE.d, REFERENCE_LINE.p, REFERENCE_LINE.C, REFERENCE_LINE.C0, REFERENCE_LINE.L, REFERENCE_LINE.L0) == (
        8e-3, 4.0, 2.82e-12, 58.8e-12, 19.5e-9, 314e-9,
    )


@pytest.mark.parametrize("field", ["d", "p", "C", "C0", "L", "L0"])
@pytest.mark.parametrize("bad", [0.0, -1.0, float("nan")])
def test_rejects_nonpositive_parameters(field, bad):
    with pytest.raises(ValueError):
        MaterialParams(**{field: bad})


def test_epsilon_vanishes_at_lower_edge():
    e = band_edges(REFERENCE_LINE, CODATA)
    assert abs(epsilon_r(REFERENCE_LINE, CODATA, e.omega1)) < 1e-12 * REFERENCE_LINE.C0 / (REFERENCE_LINE.p * CODATA.epsilon0)


def test_mu_vanishes_at_upper_edge():
    e = band_edges(REFERENCE_LINE, CODATA)
    assert abs(mu_r(REFERENCE_LINE, CODATA, e.omega2)) < 1e-12 * REFERENCE_LINE.p * REFERENCE_LINE.L0 / CODATA.mu0


def test_permittivity_literal_formula():
    w = 12.3e9
    expect = (58.8e-12 - 1 / (w * w * 19.5e-9 * 8e-3)) / (4 * 8.8541878128e-12)
    assert epsilon_r(REFERENCE_LINE, CODATA, w) == pytest.approx(expect, rel=1e-14)


def test_high_frequency_asymptotes():
    # eps_r -> C0/(p eps0), mu_r -> p L0/mu0 as w -> infinity
    w = 1e16
    assert epsilon_r(REFERENCE_LINE, CODATA, w) == pytest.approx(REFERENCE_LINE.C0 / (REFERENCE_LINE.p * CODATA.epsilon0), rel=1e-9)
    assert mu_r(REFERENCE_LINE, CODATA, w) == pytest.approx(REFERENCE_LINE.p * REFERENCE_LINE.L0 / CODATA.mu0, rel=1e-9)
    assert REFERENCE_LINE.C0 / (REFERENCE_LINE.p * CODATA.epsilon0) == pytest.approx(1.660, abs=1e-3)
    assert REFERENCE_LINE.p * REFERENCE_LINE.L0 / CODATA.mu0 == pytest.approx(0.9995, abs=1e-4)


def test_low_frequency_coefficients():
    # the 1/w^2 coefficients computed from the raw element values
    a = 1 / (REFERENCE_LINE.L * REFERENCE_LINE.d * REFERENCE_LINE.p * CODATA.epsilon0) / 1e18
    b = REFERENCE_LINE.p / (REFERENCE_LINE.C * REFERENCE_LINE.d * CODATA.mu0) / 1e18
    assert a == pytest.approx(180.995, rel=1e-4)
    assert b == pytest.approx(141.09, rel=1e-4)


@pytest.mark.parametrize("fn", [epsilon_r, mu_r])
def test_zero_frequency_is_a_pole(fn):
    with pytest.raises(DomainError):
        fn(REFERENCE_LINE, CODATA, 0.0)
    with pytest.raises(DomainError):
        fn(REFERENCE_LINE, CODATA, np.array([1e9, 0.0]))


def test_array_input_returns_array():
    w = np.linspace(1e9, 2e10, 7)
    out = epsilon_r(REFERENCE_LINE, CODATA, w)
    assert isinstance(out, np.ndarray) and out.shape == (7,)
    assert isinstance(epsilon_r(REFERENCE_LINE, CODATA, 1e10), float)


def test_band_edges_closed_forms():
    e = band_edges(REFERENCE_LINE, CODATA)
    assert e.omega1 == pytest.approx(1 / math.sqrt(REFERENCE_LINE.C0 * REFERENCE_LINE.L * REFERENCE_LINE.d), rel=1e-15)
    assert e.omega2 == pytest.approx(1 / math.sqrt(REFERENCE_LINE.L0 * REFERENCE_LINE.C * REFERENCE_LINE.d), rel=1e-15)
    assert e.omega1 < e.omega0 < e.omega2


def test_omega0_is_where_eps_plus_mu_vanishes():
    e = band_edges(REFERENCE_LINE, CODATA)
    s = epsilon_r(REFERENCE_LINE, CODATA, e.omega0) + mu_r(REFERENCE_LINE, CODATA, e.omega0)
    assert abs(s) < 1e-12


def test_custom_constants_change_edges_consistently():
    consts = PhysicalConstants(epsilon0=2 * CODATA.epsilon0, mu0=CODATA.mu0, hbar=CODATA.hbar)
    e = band_edges(REFERENCE_LINE, consts)
    assert abs(epsilon_r(REFERENCE_LINE, consts, e.omega0) + mu_r(REFERENCE_LINE, consts, e.omega0)) < 1e-12
