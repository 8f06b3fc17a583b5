import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zbmeta.grid import MomentumGrid, analyze, make_grid, synthesize, synthesize_direct


@pytest.mark.parametrize("n, dk", [(401, 1.9586), (625, 1.2566), (1001, 0.7846)])
def test_spacing(n, dk):
    g = make_grid(n)
    assert g.dk == pytest.approx(dk, abs=1e-4)
    assert g.dk * g.length == pytest.approx(2 * math.pi, rel=1e-12)
    np.testing.assert_allclose(np.diff(g.k_values), g.dk, rtol=1e-12)


def test_reported_interval_for_625_points():
    g = make_grid(625)
    assert g.half_width == pytest.approx(2.496)
    assert g.x_values[0] == pytest.approx(-2.496) and g.x_values[-1] == pytest.approx(2.496)


@pytest.mark.parametrize("n", [0, 2, 400, -3, 2.5])
def test_rejects_bad_sizes(n):
    with pytest.raises(ValueError):
        MomentumGrid(n)


def test_k_grid_symmetric():
    g = make_grid(31)
    np.testing.assert_array_equal(g.k_values, -g.k_values[::-1])
    assert g.k_values[15] == 0.0


def test_delta_at_zero_gives_constant():
    g = make_grid(31)
    c = np.zeros(31)
    c[15] = 1.0
    np.testing.assert_allclose(synthesize(g, c), g.dk, rtol=1e-14)


@pytest.mark.parametrize("n", [1, 31, 63, 101])
def test_matches_direct_sum(n, rng):
    g = make_grid(n)
    c = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    ph = np.exp(1j * rng.uniform(0, 2 * np.pi, n))
    a = synthesize(g, c, ph)
    b = synthesize_direct(g, c, ph)
    assert np.max(np.abs(a - b)) <= 1e-10 * np.max(np.abs(b))


def test_batched_rows(rng):
    g = make_grid(31)
    c = rng.standard_normal((4, 2, 31)) + 0j
    out = synthesize(g, c)
    for i in range(4):
        for j in range(2):
            np.testing.assert_allclose(out[i, j], synthesize_direct(g, c[i, j]), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=40).map(lambda h: 2 * h + 1), st.integers(0, 2**32 - 1))
def test_round_trip(n, seed):
    r = np.random.default_rng(seed)
    g = make_grid(n)
    c = r.standard_normal(n) + 1j * r.standard_normal(n)
    np.testing.assert_allclose(analyze(g, synthesize(g, c)), c, atol=1e-10 * np.max(np.abs(c)))


def test_linearity(rng):
    g = make_grid(31)
    a, b = rng.standard_normal(31), rng.standard_normal(31) * 1j
    np.testing.assert_allclose(synthesize(g, a + b), synthesize(g, a) + synthesize(g, b), atol=1e-13)


def test_constant_field_analyzes_to_zero_mode():
    g = make_grid(31)
    c = analyze(g, np.full(31, 2.0))
    assert c[15] == pytest.approx(2.0 / g.dk)
    assert np.max(np.abs(np.delete(c, 15))) < 1e-14


def test_parseval(rng):
    g = make_grid(63)
    c = rng.standard_normal(63) + 1j * rng.standard_normal(63)
    f = synthesize(g, c)
    assert np.sum(np.abs(f) ** 2) * g.dx == pytest.approx(2 * np.pi * np.sum(np.abs(c) ** 2) * g.dk, rel=1e-12)


def test_periodicity_off_grid(rng):
    g = make_grid(31)
    c = rng.standard_normal(31) + 1j * rng.standard_normal(31)
    x = rng.uniform(-0.1, 0.1, 7)
    np.testing.assert_allclose(synthesize_direct(g, c, x=x), synthesize_direct(g, c, x=x + g.length), atol=1e-11)


def test_length_mismatch():
    g = make_grid(31)
    with pytest.raises(ValueError):
        synthesize(g, np.zeros(29))
    with pytest.raises(ValueError):
        synthesize(g, np.zeros(31), np.ones(30))
    with pytest.raises(ValueError):
        analyze(g, np.zeros(32))


def test_mirror_is_minus_k():
    g = make_grid(11)
    np.testing.assert_array_equal(g.mirror(g.k_values), -g.k_values)
