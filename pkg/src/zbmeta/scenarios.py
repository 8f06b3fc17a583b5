"""The three wavepacket experiments: stationary Gaussian, counterpropagating Gaussian, slab injection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from zbmeta.boundary import BoundarySetup, InputPulse, inject, truncated_fraction
from zbmeta.dispersion import group_velocity, scaled_params
from zbmeta.evolution import WaveState, density, evolve_exact_dirac, evolve_metamaterial
from zbmeta.grid import MomentumGrid
from zbmeta.material import CODATA, REFERENCE_LINE, MaterialParams, PhysicalConstants
from zbmeta.observables import (
    TimeSeries,
    analytic_zb_gaussian,
    derivative_sign_changes,
    linear_detrend,
    position_expectation,
)

KINDS = ("gaussian", "counter", "boundary")
BACKEND_CHOICES = ("metamaterial", "exact_dirac", "both")

# (1 m) / (49.7 ns)
REFERENCE_DRIFT_SLOPE = 1.0 / 49.7e-9

DEFAULT_N = {"gaussian": 401, "counter": 625, "boundary": 1001}
DEFAULT_TIMES = {
    "gaussian": (-4e-9, 4e-9, 161),
    "counter": (-10e-9, 10e-9, 201),
    "boundary": (-4e-9, 24e-9, 281),
}


@dataclass(frozen=True)
class DriftModel:
    slope: float  # m/s
    description: str = ""

    def apply(self, times, values):
        return np.asarray(values) - self.slope * np.asarray(times)


REFERENCE_DRIFT = DriftModel(REFERENCE_DRIFT_SLOPE, "one metre per 49.7 ns")


@dataclass(frozen=True)
class BoundaryConfig:
    x_a: float = -1.0
    x_b: float = 1.0
    amplitude: float = 1.0
    sigma_omega: float = 0.52e9
    omega_a: float = 13.81e9
    omega_b: float = 8.95e9

    def pulses(self):
        return (
            InputPulse(self.amplitude, self.omega_a, self.sigma_omega, "left"),
            InputPulse(self.amplitude, self.omega_b, self.sigma_omega, "right"),
        )


@dataclass(frozen=True)
class ScenarioConfig:
    kind: str
    n: int
    sigma_k: float
    k0: float
    times: np.ndarray = field(compare=False)
    backend: str = "both"
    dx: float = 8e-3
    exact_time_sign: int = -1
    drift: DriftModel = REFERENCE_DRIFT
    boundary: BoundaryConfig | None = None
    params: MaterialParams = REFERENCE_LINE
    consts: PhysicalConstants = CODATA

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}")
        if self.backend not in BACKEND_CHOICES:
            raise ValueError(f"unknown backend {self.backend!r}")
        if self.kind == "boundary" and self.boundary is None:
            raise ValueError("boundary scenario needs pulse settings")
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or t.size < 2 or np.any(np.diff(t) <= 0):
            raise ValueError("times must be a strictly increasing 1-D array")
        object.__setattr__(self, "times", t)
        MomentumGrid(self.n, self.dx)

    @property
    def grid(self) -> MomentumGrid:
        return MomentumGrid(self.n, self.dx)

    def backends(self):
        return ("metamaterial", "exact_dirac") if self.backend == "both" else (self.backend,)


def default_config(kind: str, n=None, times=None, params=REFERENCE_LINE, consts=CODATA, **overrides) -> ScenarioConfig:
    """Reference settings for each scenario kind; time windows are sized so packets never wrap."""
    if kind not in KINDS:
        raise ValueError(f"unknown scenario kind {kind!r}")
    mass = scaled_params(params, consts).mass_wavenumber(consts)
    if times is None:
        start, stop, count = DEFAULT_TIMES[kind]
        times = np.linspace(start, stop, count)
    base = dict(
        kind=kind,
        n=DEFAULT_N[kind] if n is None else n,
        sigma_k=math.sqrt(2.0) * mass if kind == "gaussian" else mass,
        k0=20.0 if kind == "counter" else 0.0,
        times=times,
        backend="metamaterial" if kind == "boundary" else "both",
        boundary=BoundaryConfig() if kind == "boundary" else None,
        params=params,
        consts=consts,
    )
    base.update(overrides)
    return ScenarioConfig(**base)


def gaussian_coefficients(grid: MomentumGrid, sigma_k: float, k0: float) -> np.ndarray:
    return np.exp(-(((grid.k_values - k0) / sigma_k) ** 2)) + 0j


def build_initial_state(config: ScenarioConfig) -> WaveState:
    grid = config.grid
    if config.kind == "boundary":
        b = config.boundary
        left, right = b.pulses()
        return inject(BoundarySetup(b.x_a, b.x_b, grid), left, right, config.params, config.consts)
    g = gaussian_coefficients(grid, config.sigma_k, config.k0)
    return WaveState.from_coefficients(grid, g, g.copy()).normalize()


def evolve(config: ScenarioConfig, state: WaveState, backend: str, times=None):
    times = config.times if times is None else times
    if backend == "metamaterial":
        return evolve_metamaterial(state, times, config.params, config.consts)
    if backend == "exact_dirac":
        sp = scaled_params(config.params, config.consts)
        return evolve_exact_dirac(state, sp, times, config.exact_time_sign, config.consts)
    raise ValueError(f"unknown backend {backend!r}")


def window(config: ScenarioConfig):
    if config.kind == "boundary":
        return (config.boundary.x_a, config.boundary.x_b)
    return None


@dataclass
class BackendRun:
    psi: np.ndarray  # (nt, 2, n)
    series: TimeSeries

    @property
    def density(self):
        return density(self.psi)


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    state: WaveState
    runs: dict
    analytic: TimeSeries | None = None
    drift_subtracted: TimeSeries | None = None
    diagnostics: dict = field(default_factory=dict)


def analytic_series(config: ScenarioConfig) -> TimeSeries:
    sp = scaled_params(config.params, config.consts)
    v = analytic_zb_gaussian(sp, config.sigma_k, config.k0, config.times, config.consts, config.exact_time_sign)
    return TimeSeries(config.times, v, f"{config.kind} analytic", "analytic")


def run(config: ScenarioConfig) -> ScenarioResult:
    """Evolve the initial state on every requested backend and record <x(t)>."""
    state = build_initial_state(config)
    win = window(config)
    runs = {}
    for backend in config.backends():
        psi = evolve(config, state, backend)
        x = position_expectation(density(psi), config.grid, win)
        runs[backend] = BackendRun(psi, TimeSeries(config.times, x, f"{config.kind} {backend}", backend))
    result = ScenarioResult(config, state, runs)
    diag = result.diagnostics
    if config.kind in ("gaussian", "counter"):
        result.analytic = analytic_series(config)
        diag["min_central_probability"] = min(
            float(np.min(central_probability(r.density, config.grid))) for r in runs.values()
        )
    if config.kind == "counter" and "metamaterial" in runs:
        meta = runs["metamaterial"].series
        result.drift_subtracted = TimeSeries(
            config.times, config.drift.apply(meta.times, meta.values), "counter drift-subtracted", "metamaterial"
        )
        diag["drift_slope_reference"] = config.drift.slope
        diag["drift_slope_group_mean"] = drift_from_group_velocities(config)
        if "exact_dirac" in runs:
            diag["drift_slope_fitted"] = float(
                np.polyfit(config.times, meta.values - runs["exact_dirac"].series.values, 1)[0]
            )
    if config.kind == "boundary":
        left, right = config.boundary.pulses()
        diag["truncated_fraction_left"] = truncated_fraction(left, config.params, config.consts)
        diag["truncated_fraction_right"] = truncated_fraction(right, config.params, config.consts)
        if "metamaterial" in runs:
            diag["guard_ratio"] = float(np.max(guard_ratio(runs["metamaterial"].density, config.grid)))
    return result


def central_probability(rho, grid: MomentumGrid, fraction: float = 0.8):
    """Share of the total probability inside the central ``fraction`` of the window.

    Taken relative to the instantaneous total because mixed-band metamaterial
    states do not keep a constant position norm.
    """
    x = grid.x_values
    rho = np.asarray(rho)
    sel = np.abs(x) <= fraction * grid.half_width
    return np.sum(rho[..., sel], axis=-1) / np.sum(rho, axis=-1)


def guard_ratio(rho, grid: MomentumGrid, guard: float = 0.5):
    """Largest density within ``guard`` metres of the periodic edges, over the peak density."""
    x = grid.x_values
    sel = np.abs(x) >= grid.half_width - guard
    rho = np.asarray(rho)
    return np.max(rho[..., sel], axis=-1) / np.max(rho, axis=-1)


def drift_from_group_velocities(config: ScenarioConfig) -> float:
    """Mean of the two band group velocities at the packet centre."""
    vl = group_velocity(config.params, config.consts, config.k0, "lower")
    vu = group_velocity(config.params, config.consts, config.k0, "upper")
    return 0.5 * (vl + vu)


def branch_states(state: WaveState):
    """(phi+ only, phi- only) sub-states, each renormalized."""
    return state.only_plus().normalize(), state.only_minus().normalize()


def branch_densities(config: ScenarioConfig, state: WaveState, times=None, backend="metamaterial"):
    plus, minus = branch_states(state)
    return density(evolve(config, plus, backend, times)), density(evolve(config, minus, backend, times))


def overlap_measure(rho_a, rho_b, grid: MomentumGrid, window=None):
    """sum sqrt(rho_a rho_b) dx over the window (Bhattacharyya coefficient of the two packets)."""
    x = grid.x_values
    sel = np.ones_like(x, dtype=bool) if window is None else (x >= window[0]) & (x <= window[1])
    a = np.asarray(rho_a)[..., sel]
    b = np.asarray(rho_b)[..., sel]
    na = np.sum(a, axis=-1) * grid.dx
    nb = np.sum(b, axis=-1) * grid.dx
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.sum(np.sqrt(a * b), axis=-1) * grid.dx / np.sqrt(na * nb)
    return np.nan_to_num(out)


def overlap_epoch(config: ScenarioConfig, state: WaveState, threshold: float = 0.5, times=None):
    """Contiguous run of sample times, around the largest overlap, where overlap exceeds ``threshold``.

    Returns a boolean mask over ``times`` (default ``config.times``).
    """
    times = config.times if times is None else np.asarray(times)
    ra, rb = branch_densities(config, state, times)
    ov = overlap_measure(ra, rb, config.grid, window(config))
    mask = ov >= threshold
    if not np.any(mask):
        return mask
    i = int(np.argmax(ov))
    lo = i
    while lo > 0 and mask[lo - 1]:
        lo -= 1
    hi = i
    while hi < mask.size - 1 and mask[hi + 1]:
        hi += 1
    out = np.zeros_like(mask)
    out[lo : hi + 1] = True
    return out


def branch_velocities(config: ScenarioConfig, state: WaveState | None = None, times=None):
    """Centre-of-mass velocities (v of phi+ only, v of phi- only) from a linear fit."""
    state = build_initial_state(config) if state is None else state
    times = np.linspace(-4e-9, 4e-9, 41) if times is None else np.asarray(times)
    ra, rb = branch_densities(config, state, times)
    xa = position_expectation(ra, config.grid)
    xb = position_expectation(rb, config.grid)
    return float(np.polyfit(times, xa, 1)[0]), float(np.polyfit(times, xb, 1)[0])


def oscillation_count(times, values, mask):
    """Sign changes of the derivative of the linearly detrended series inside ``mask``."""
    t = np.asarray(times)[mask]
    v = np.asarray(values)[mask]
    if t.size < 3:
        return 0
    resid, _ = linear_detrend(t, v)
    return derivative_sign_changes(resid)
