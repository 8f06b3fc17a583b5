"""Injection of vacuum pulses into a metamaterial slab [x_a, x_b].

For every grid wavenumber k > 0 and each band, the slab mode (k, w(k)) is
matched to vacuum plane waves of the same frequency on both sides. Vacuum
amplitudes are referenced to their interface, so the region-1 field is

    E1(x) = I_L exp(i w (x - x_a)/c) + r exp(-i w (x - x_a)/c)

and region 3 uses x_b in the same way. Continuity of E_z and H_y at both
interfaces gives a 4x4 complex system for (r, A, B, T), with the slab field
A exp(ikx) + B exp(-ikx).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from zbmeta.dispersion import band_of_frequency, group_velocity, solve_bands
from zbmeta.evolution import FieldCoefficients, WaveState, wavefunction_from_field
from zbmeta.grid import MomentumGrid
from zbmeta.material import CODATA, REFERENCE_LINE, MaterialParams, PhysicalConstants, band_edges, epsilon_r, mu_r

CONDITION_LIMIT = 1e12
RESIDUAL_TOL = 1e-12


class SingularInterfaceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class BoundarySetup:
    x_a: float
    x_b: float
    grid: MomentumGrid

    def __post_init__(self):
        if not self.x_a < self.x_b:
            raise ValueError("x_a must lie left of x_b")
        hw = self.grid.half_width
        if not (-hw < self.x_a and self.x_b < hw):
            raise ValueError("interfaces must lie strictly inside the grid window")


@dataclass(frozen=True)
class InputPulse:
    """Gaussian pulse E(t) = amplitude exp(-i carrier t) exp(-(sigma_omega t / 2)^2) at an interface."""

    amplitude: float  # V/m
    carrier: float  # rad/s
    sigma_omega: float  # rad/s
    side: str  # "left" or "right"

    def __post_init__(self):
        if not self.sigma_omega > 0:
            raise ValueError("sigma_omega must be positive")
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")

    def signal(self, t):
        t = np.asarray(t, dtype=float)
        return self.amplitude * np.exp(-1j * self.carrier * t) * np.exp(-((self.sigma_omega * t / 2.0) ** 2))

    def spectral_density(self, omega):
        """Coefficient per unit angular frequency, so that E(t) = integral of it times exp(-i w t) dw."""
        omega = np.asarray(omega, dtype=float)
        return self.amplitude / (self.sigma_omega * math.sqrt(math.pi)) * np.exp(-(((omega - self.carrier) / self.sigma_omega) ** 2))


@dataclass(frozen=True)
class InterfaceSolution:
    """Amplitudes of one slab mode: reflected r, slab A (at +k) and B (at -k), transmitted T."""

    k: float
    omega: float
    reflected: complex
    forward: complex
    backward: complex
    transmitted: complex
    residual: float
    condition: float


@dataclass(frozen=True)
class RegionCoefficients:
    """Per band, slab amplitudes on the full k-grid plus per-mode diagnostics."""

    grid: MomentumGrid
    upper: np.ndarray
    lower: np.ndarray
    solutions: dict

    def max_residual(self) -> float:
        return max((s.residual for s in self.solutions.values()), default=0.0)


def slab_impedance_factor(params: MaterialParams, consts: PhysicalConstants, k, omega):
    """H_y / E_z of a slab plane wave, -k / (w mu0 mu_r(w))."""
    return -np.asarray(k) / (omega * consts.mu0 * mu_r(params, consts, omega))


def slab_impedance_factor_eps(params: MaterialParams, consts: PhysicalConstants, k, omega):
    """Same factor from the other Maxwell curl equation, -w eps0 eps_r(w) / k."""
    return -omega * consts.epsilon0 * epsilon_r(params, consts, omega) / np.asarray(k)


def _system(setup: BoundarySetup, params, consts, k, omega):
    Z = 1.0 / (consts.c * consts.mu0)
    fp = slab_impedance_factor(params, consts, k, omega)
    fm = slab_impedance_factor(params, consts, -k, omega)
    ea, eb = np.exp(1j * k * setup.x_a), np.exp(1j * k * setup.x_b)
    return np.array(
        [
            [-1.0, ea, 1.0 / ea, 0.0],
            [-Z, fp * ea, fm / ea, 0.0],
            [0.0, eb, 1.0 / eb, -1.0],
            [0.0, fp * eb, fm / eb, Z],
        ],
        dtype=complex,
    ), Z


def solve_interface(
    setup: BoundarySetup,
    params: MaterialParams,
    consts: PhysicalConstants,
    k: float,
    omega: float,
    incident_left: complex,
    incident_right: complex,
) -> InterfaceSolution:
    """Match one slab mode to the vacuum on both sides."""
    if not k > 0:
        raise ValueError("interface matching is done for k > 0 only")
    M, Z = _system(setup, params, consts, k, omega)
    rhs = np.array([incident_left, -Z * incident_left, incident_right, Z * incident_right], dtype=complex)
    cond = float(np.linalg.cond(M))
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularInterfaceError(f"interface system is singular at k={k:.6g} (condition number {cond:.3e})")
    sol = np.linalg.solve(M, rhs)
    scale = max(float(np.max(np.abs(M))) * float(np.max(np.abs(sol))), float(np.max(np.abs(rhs))), 1e-300)
    residual = float(np.max(np.abs(M @ sol - rhs))) / scale
    if residual > RESIDUAL_TOL:
        raise ArithmeticError(f"interface residual {residual:.3e} above tolerance at k={k:.6g}")
    r, A, B, T = (complex(v) for v in sol)
    return InterfaceSolution(float(k), float(omega), r, A, B, T, residual, cond)


def continuity_residuals(setup, params, consts, sol: InterfaceSolution, incident_left, incident_right):
    """E and H jumps at x_a and x_b, relative to the largest field amplitude."""
    k, w = sol.k, sol.omega
    Z = 1.0 / (consts.c * consts.mu0)
    fp = slab_impedance_factor(params, consts, k, w)
    fm = slab_impedance_factor(params, consts, -k, w)
    out = []
    for x, e_vac, h_vac in (
        (setup.x_a, incident_left + sol.reflected, -Z * incident_left + Z * sol.reflected),
        (setup.x_b, sol.transmitted + incident_right, -Z * sol.transmitted + Z * incident_right),
    ):
        a = sol.forward * np.exp(1j * k * x)
        b = sol.backward * np.exp(-1j * k * x)
        out.append(abs(e_vac - (a + b)))
        out.append(abs(h_vac - (fp * a + fm * b)) / Z)
    scale = max(abs(incident_left), abs(incident_right), abs(sol.forward), abs(sol.backward), 1e-300)
    return np.array(out) / scale


def poynting_fluxes(setup, params, consts, sol: InterfaceSolution, incident_left, incident_right):
    """Time-averaged rightward flux -Re(E H*)/2 in region 1, at both slab faces, and in region 3."""
    k, w = sol.k, sol.omega
    Z = 1.0 / (consts.c * consts.mu0)
    fp = slab_impedance_factor(params, consts, k, w)
    fm = slab_impedance_factor(params, consts, -k, w)

    def slab(x):
        a = sol.forward * np.exp(1j * k * x)
        b = sol.backward * np.exp(-1j * k * x)
        return -0.5 * (np.conj(fp * a + fm * b) * (a + b)).real

    s1 = 0.5 * Z * (abs(incident_left) ** 2 - abs(sol.reflected) ** 2)
    s3 = 0.5 * Z * (abs(sol.transmitted) ** 2 - abs(incident_right) ** 2)
    return s1, float(slab(setup.x_a)), float(slab(setup.x_b)), s3


def pulse_spectrum(
    pulse: InputPulse,
    grid: MomentumGrid,
    params: MaterialParams = REFERENCE_LINE,
    consts: PhysicalConstants = CODATA,
):
    """Interface amplitudes I(k) on the band hosting the carrier.

    Returns ``(band, amplitudes)``; amplitudes are zero for k <= 0 and follow
    |dw/dk| times the spectral density sampled at w(k). Summed with dk and
    exp(-i w(k) t) they rebuild the pulse at the interface.
    """
    band = band_of_frequency(params, consts, pulse.carrier)
    k = grid.k_values
    pos = k > 0
    kp = k[pos]
    s = solve_bands(params, consts, kp)
    w = s.omega_plus if band == "upper" else s.omega_minus
    amp = np.zeros(grid.n, dtype=complex)
    amp[pos] = np.abs(group_velocity(params, consts, kp, band)) * pulse.spectral_density(w)
    return band, amp


def reconstruct_interface_signal(pulse, grid, t, params=REFERENCE_LINE, consts=CODATA):
    """k-sum of :func:`pulse_spectrum` at the interface, for comparison with ``pulse.signal``."""
    band, amp = pulse_spectrum(pulse, grid, params, consts)
    s = solve_bands(params, consts, grid.k_values)
    w = s.omega_plus if band == "upper" else s.omega_minus
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return np.exp(-1j * np.outer(t, w)) @ amp * grid.dk


def _edge_distance(pulse, params, consts):
    edges = band_edges(params, consts)
    lo, hi = sorted((edges.omega1, edges.omega2))
    band = band_of_frequency(params, consts, pulse.carrier)
    return pulse.carrier - hi if band == "upper" else lo - pulse.carrier


def truncated_fraction(pulse: InputPulse, params=REFERENCE_LINE, consts=CODATA) -> float:
    """Share of the pulse's spectral energy lying on the gap side of its band edge."""
    return 0.5 * math.erfc(math.sqrt(2.0) * _edge_distance(pulse, params, consts) / pulse.sigma_omega)


def truncated_amplitude_fraction(pulse: InputPulse, params=REFERENCE_LINE, consts=CODATA) -> float:
    """Share of the spectral amplitude integral cut off at the band edge.

    Bounds the error of the rebuilt interface signal relative to its peak.
    """
    return 0.5 * math.erfc(_edge_distance(pulse, params, consts) / pulse.sigma_omega)


def solve_region(
    setup: BoundarySetup,
    left: InputPulse | None,
    right: InputPulse | None,
    params: MaterialParams = REFERENCE_LINE,
    consts: PhysicalConstants = CODATA,
) -> RegionCoefficients:
    """Slab amplitudes for both pulses on every k > 0 mode of both bands.

    The k = 0 mode is skipped since its two slab waves coincide.
    """
    grid = setup.grid
    n = grid.n
    k = grid.k_values
    s = solve_bands(params, consts, k)
    incident = {"upper": [np.zeros(n, complex), np.zeros(n, complex)], "lower": [np.zeros(n, complex), np.zeros(n, complex)]}
    for idx, pulse in ((0, left), (1, right)):
        if pulse is None:
            continue
        band, amp = pulse_spectrum(pulse, grid, params, consts)
        incident[band][idx] = incident[band][idx] + amp
    out = {"upper": np.zeros(n, complex), "lower": np.zeros(n, complex)}
    sols = {}
    for band, freqs in (("upper", s.omega_plus), ("lower", s.omega_minus)):
        il, ir = incident[band]
        for i in np.nonzero((k > 0) & ((il != 0) | (ir != 0)))[0]:
            sol = solve_interface(setup, params, consts, k[i], freqs[i], il[i], ir[i])
            sols[(band, int(i))] = sol
            out[band][i] = sol.forward
            out[band][n - 1 - i] = sol.backward
    return RegionCoefficients(grid, out["upper"], out["lower"], sols)


def region_field(region: RegionCoefficients) -> FieldCoefficients:
    """Slab field on all four branches; negative frequencies restored so the field is real."""
    g = region.grid
    return FieldCoefficients(
        g,
        region.upper.copy(),
        region.lower.copy(),
        np.conj(g.mirror(region.upper)),
        np.conj(g.mirror(region.lower)),
    )


def inject(
    setup: BoundarySetup,
    left: InputPulse | None,
    right: InputPulse | None,
    params: MaterialParams = REFERENCE_LINE,
    consts: PhysicalConstants = CODATA,
) -> WaveState:
    """Normalized slab wavefunction generated by the two input pulses."""
    region = solve_region(setup, left, right, params, consts)
    return wavefunction_from_field(region_field(region), params, consts)
