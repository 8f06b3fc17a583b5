"""Band structure of the loaded line and the scaled Dirac parameters.

Inserting the lumped-element permittivity and permeability into
k^2 = w^2 eps_r mu_r / c^2 gives, with s = w^2,

    C0 L0 s^2 - (C0/(C d) + L0/(L d) + k^2) s + 1/(C L d^2) = 0,

which is solved in closed form for both bands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from zbmeta.material import MaterialParams, PhysicalConstants, band_edges

BANDS = ("lower", "upper")


@dataclass(frozen=True)
class DispersionSample:
    k: np.ndarray | float
    omega_minus: np.ndarray | float
    omega_plus: np.ndarray | float


@dataclass(frozen=True)
class ScaledDiracParams:
    omega0: float  # rad/s
    c_D: float  # m/s
    m_prime: float  # kg

    def mass_wavenumber(self, consts: PhysicalConstants) -> float:
        """m' c_D / hbar in 1/m, the inverse reduced Compton length."""
        return self.m_prime * self.c_D / consts.hbar


def _coefficients(params: MaterialParams, consts: PhysicalConstants):
    a = 1.0 / (params.L * params.d)
    b = 1.0 / (params.C * params.d)
    # 1/(eps0 mu0 c^2) is exactly one; kept so that custom constants stay consistent
    kappa = 1.0 / (consts.epsilon0 * consts.mu0 * consts.c**2)
    A = params.C0 * params.L0 * kappa
    beta = (params.C0 * b + params.L0 * a) * kappa
    gamma = a * b * kappa
    return A, beta, gamma


def _roots(params, consts, k):
    A, beta, gamma = _coefficients(params, consts)
    k2 = np.asarray(k, dtype=float) ** 2
    disc = (beta + k2) ** 2 - 4.0 * A * gamma
    assert np.all(disc >= 0), "negative discriminant for real k"
    sq = np.sqrt(disc)
    q = 0.5 * (beta + k2 + sq)
    return gamma / q, q / A, sq


def solve_bands(params: MaterialParams, consts: PhysicalConstants, k) -> DispersionSample:
    """Lower and upper band angular frequencies at wavenumber(s) ``k``."""
    s_lo, s_hi, _ = _roots(params, consts, k)
    w_lo, w_hi = np.sqrt(s_lo), np.sqrt(s_hi)
    if np.ndim(w_lo) == 0:
        return DispersionSample(float(k), float(w_lo), float(w_hi))
    return DispersionSample(np.asarray(k, dtype=float), w_lo, w_hi)


def band_frequency(params, consts, k, band: str):
    sample = solve_bands(params, consts, k)
    if band == "lower":
        return sample.omega_minus
    if band == "upper":
        return sample.omega_plus
    raise ValueError(f"unknown band {band!r}")


def group_velocity(params: MaterialParams, consts: PhysicalConstants, k, band: str):
    """d omega / dk on the requested band, by implicit differentiation."""
    if band not in BANDS:
        raise ValueError(f"unknown band {band!r}")
    s_lo, s_hi, sq = _roots(params, consts, k)
    k = np.asarray(k, dtype=float)
    s = s_lo if band == "lower" else s_hi
    sign = -1.0 if band == "lower" else 1.0
    # d(s)/dk = 2 k s / (2 A s - beta - k^2) and the denominator is +-sqrt(disc)
    with np.errstate(invalid="ignore", divide="ignore"):
        ds_dk = np.where(k == 0, 0.0, sign * 2.0 * k * s / sq)
    out = ds_dk / (2.0 * np.sqrt(s))
    return float(out) if out.ndim == 0 else out


def effective_energy_slope(params: MaterialParams, consts: PhysicalConstants, omega: float) -> float:
    """Analytic derivative of the effective energy (1/m per rad/s)."""
    from zbmeta.dirac import effective_energy

    w = float(omega)
    d_eps = 2.0 / (w**3 * params.L * params.d * params.p * consts.epsilon0)
    d_mu = 2.0 * params.p / (w**3 * params.C * params.d * consts.mu0)
    return effective_energy(params, consts, w) / w - (w / (2.0 * consts.c)) * (d_eps + d_mu)


def scaled_params(params: MaterialParams, consts: PhysicalConstants) -> ScaledDiracParams:
    from zbmeta.dirac import effective_mass

    omega0 = band_edges(params, consts).omega0
    c_D = -1.0 / effective_energy_slope(params, consts, omega0)
    m_prime = effective_mass(params, consts, omega0) * consts.hbar / c_D
    return ScaledDiracParams(omega0=omega0, c_D=c_D, m_prime=m_prime)


def exact_dirac_energy(sp: ScaledDiracParams, consts: PhysicalConstants, k):
    """sqrt(c_D^2 hbar^2 k^2 + m'^2 c_D^4) in joules."""
    k = np.asarray(k, dtype=float)
    rest = sp.m_prime * sp.c_D**2
    out = np.hypot(sp.c_D * consts.hbar * k, rest)
    return float(out) if out.ndim == 0 else out


def exact_dirac_frequency(sp: ScaledDiracParams, consts: PhysicalConstants, k):
    """Energy over hbar, evaluated as c_D sqrt(k^2 + (m' c_D/hbar)^2) to avoid tiny SI numbers."""
    k = np.asarray(k, dtype=float)
    out = sp.c_D * np.hypot(k, sp.mass_wavenumber(consts))
    return float(out) if out.ndim == 0 else out


def gap_contains(params: MaterialParams, consts: PhysicalConstants, omega: float) -> bool:
    edges = band_edges(params, consts)
    lo, hi = sorted((edges.omega1, edges.omega2))
    return lo < omega < hi


def band_of_frequency(params, consts, omega: float) -> str:
    """Band hosting a propagating mode at positive frequency ``omega``."""
    edges = band_edges(params, consts)
    lo, hi = sorted((edges.omega1, edges.omega2))
    if omega <= 0 or not math.isfinite(omega):
        raise ValueError("frequency must be positive and finite")
    if omega <= lo:
        return "lower"
    if omega >= hi:
        return "upper"
    raise ValueError(f"no propagating mode at {omega:.6g} rad/s (inside the band gap)")
