"""Effective mass and energy of the line, and the two-component bi-spinors.

Metamaterial spinors live in wavenumber units (mass and energy in 1/m). The
vacuum spinors of the scaled theory are the same formulas after dividing
energies by hbar c_D, so both share :func:`bispinors`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from zbmeta.material import DomainError, MaterialParams, PhysicalConstants, epsilon_r, mu_r

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class Spinor2:
    """Two-component spinor; fields may be scalars or equally shaped arrays."""

    upper: complex | np.ndarray
    lower: complex | np.ndarray

    def as_array(self) -> np.ndarray:
        return np.stack([np.asarray(self.upper, dtype=complex), np.asarray(self.lower, dtype=complex)])

    def norm2(self):
        return np.abs(self.upper) ** 2 + np.abs(self.lower) ** 2


@dataclass(frozen=True)
class EffectiveScalars:
    mass_of_omega: float | np.ndarray
    energy_of_omega: float | np.ndarray


def sign(k):
    """Signum with sign(0) = +1."""
    return np.where(np.asarray(k) >= 0, 1.0, -1.0)


def effective_mass(params: MaterialParams, consts: PhysicalConstants, omega):
    """m(w) = (w / 2c) (eps_r - mu_r), in 1/m."""
    w = np.asarray(omega, dtype=float)
    out = w / (2.0 * consts.c) * (epsilon_r(params, consts, w) - mu_r(params, consts, w))
    return float(out) if np.ndim(out) == 0 else out


def effective_energy(params: MaterialParams, consts: PhysicalConstants, omega):
    """E(w) = -(w / 2c) (eps_r + mu_r), in 1/m."""
    w = np.asarray(omega, dtype=float)
    out = -w / (2.0 * consts.c) * (epsilon_r(params, consts, w) + mu_r(params, consts, w))
    return float(out) if np.ndim(out) == 0 else out


def effective_scalars(params, consts, omega) -> EffectiveScalars:
    return EffectiveScalars(effective_mass(params, consts, omega), effective_energy(params, consts, omega))


def dirac_matrix(k: float, mass: float) -> np.ndarray:
    """Plane-wave form [[m, k], [k, -m]] of the stationary operator."""
    return np.array([[mass, k], [k, -mass]], dtype=complex)


def bispinors(k, mass, energy_abs) -> tuple[Spinor2, Spinor2]:
    """Orthonormal eigenvectors of [[m, k], [k, -m]] for eigenvalues +-|E|.

    For m >= 0 the (|E| + m) form is used, otherwise the equivalent
    sign(k) (|E| - m) form, so the normalisation never divides by a
    cancelled difference.
    """
    k = np.asarray(k, dtype=float)
    m = np.asarray(mass, dtype=float)
    E = np.asarray(energy_abs, dtype=float)
    if np.any(E == 0):
        raise DomainError("zero effective energy: no spinor inside the gap")
    s = sign(k)
    with np.errstate(divide="ignore", invalid="ignore"):
        ap = E + m
        np_ = 1.0 / np.sqrt(2.0 * E * ap)
        am = E - m
        nm = s / np.sqrt(2.0 * E * am)
        use_plus = m >= 0
        pu = np.where(use_plus, ap * np_, k * nm)
        pl = np.where(use_plus, k * np_, am * nm)
        mu = np.where(use_plus, -k * np_, -am * nm)
        ml = np.where(use_plus, ap * np_, k * nm)
    scalar = k.ndim == 0 and m.ndim == 0 and E.ndim == 0
    pu, pl, mu, ml = (complex(v) if scalar else v.astype(complex) for v in (pu, pl, mu, ml))
    return Spinor2(pu, pl), Spinor2(mu, ml)


def bispinors_alternative(k, mass, energy_abs) -> tuple[Spinor2, Spinor2]:
    """The sign(k) (|E| - m) form for every input, without branch selection."""
    k = np.asarray(k, dtype=float)
    m = np.asarray(mass, dtype=float)
    E = np.asarray(energy_abs, dtype=float)
    n = sign(k) / np.sqrt(2.0 * E * (E - m))
    return Spinor2(k * n + 0j, (E - m) * n + 0j), Spinor2((m - E) * n + 0j, k * n + 0j)


def bispinors_standard(k, mass, energy_abs) -> tuple[Spinor2, Spinor2]:
    """The (|E| + m) form for every input, without branch selection."""
    k = np.asarray(k, dtype=float)
    m = np.asarray(mass, dtype=float)
    E = np.asarray(energy_abs, dtype=float)
    n = 1.0 / np.sqrt(2.0 * E * (E + m))
    return Spinor2((E + m) * n + 0j, k * n + 0j), Spinor2(-k * n + 0j, (E + m) * n + 0j)


def spinor_plus(params, consts, k, omega) -> Spinor2:
    m = effective_mass(params, consts, omega)
    E = np.abs(effective_energy(params, consts, omega))
    return bispinors(k, m, E)[0]


def spinor_minus(params, consts, k, omega) -> Spinor2:
    m = effective_mass(params, consts, omega)
    E = np.abs(effective_energy(params, consts, omega))
    return bispinors(k, m, E)[1]


def spinor_em_form(params: MaterialParams, consts: PhysicalConstants, k, band: str) -> Spinor2:
    """Band spinor written through the field ratio, (-mu_r, c k / w) / sqrt((eps_r + mu_r) mu_r).

    The lower band carries the positive-energy spinor, the upper band the
    negative-energy one with an extra sign(k).
    """
    from zbmeta.dispersion import band_frequency

    k = np.asarray(k, dtype=float)
    w = np.asarray(band_frequency(params, consts, k, band), dtype=float)
    er = np.asarray(epsilon_r(params, consts, w))
    mr = np.asarray(mu_r(params, consts, w))
    with np.errstate(divide="ignore", invalid="ignore"):
        n = 1.0 / np.sqrt((er + mr) * mr)
        up = -mr * n
        lo = consts.c * k / w * n
    if band == "upper":
        s = sign(k)
        up, lo = s * up, s * lo
        # mu_r vanishes at the upper edge; the k -> 0 limit is (0, 1)
        at_edge = (k == 0) & (np.abs(mr) < np.abs(er))
        up = np.where(at_edge, 0.0, up)
        lo = np.where(at_edge, 1.0, lo)
    if k.ndim == 0:
        return Spinor2(complex(up), complex(lo))
    return Spinor2(up.astype(complex), lo.astype(complex))


def vacuum_spinors(sp, consts: PhysicalConstants, k) -> tuple[Spinor2, Spinor2]:
    """Free Dirac spinors with c -> c_D and m0 -> m'."""
    mk = sp.mass_wavenumber(consts)
    k = np.asarray(k, dtype=float)
    return bispinors(k, np.full_like(k, mk), np.hypot(k, mk))


def metamaterial_spinors(params, consts, k) -> tuple[Spinor2, Spinor2]:
    """u+ evaluated on the lower band and u- on the upper band."""
    from zbmeta.dispersion import solve_bands

    sample = solve_bands(params, consts, k)
    up = spinor_plus(params, consts, k, sample.omega_minus)
    um = spinor_minus(params, consts, k, sample.omega_plus)
    return up, um
