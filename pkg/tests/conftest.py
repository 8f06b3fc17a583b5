import math

import numpy as np
import pytest

from zbmeta.dispersion import scaled_params
from zbmeta.material import CODATA, REFERENCE_LINE, epsilon_r, mu_r


@pytest.fixture(scope="session")
def sp():
    return scaled_params(REFERENCE_LINE, CODATA)


@pytest.fixture(scope="session")
def mass(sp):
    return sp.mass_wavenumber(CODATA)


def bisect(f, lo, hi, iters=200):
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def band_by_bisection(k, band, params=REFERENCE_LINE, consts=CODATA):
    """Root of w^2 eps_r mu_r / c^2 - k^2 bracketed on one side of the gap."""
    c = consts.c
    w1 = 1.0 / math.sqrt(params.C0 * params.L * params.d)
    w2 = 1.0 / math.sqrt(params.L0 * params.C * params.d)

    def f(w):
        return w * w * epsilon_r(params, consts, w) * mu_r(params, consts, w) / c**2 - k * k

    if band == "lower":
        if k == 0:
            return w1
        return bisect(f, 1e-3 * w1, w1)
    if k == 0:
        return w2
    return bisect(f, w2, 1e3 * w2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line; the line is printed now and again in the terminal summary."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def record(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
