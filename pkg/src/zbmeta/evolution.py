"""Plane-wave time evolution of the line's Dirac wavefunction and of the scaled Dirac theory.

Conventions
-----------
Coefficients carry no hidden measure; every k-sum carries an explicit dk. The
position-space wavefunction is

    psi(x, t) = N^{-1/2} sum_k [phi+_k u+_k e^{-i w-(k) t} + phi-_k u-_k e^{-i w+(k) t}] e^{ikx} dk

and by Parseval the position norm equals 2 pi sum_k (|phi+|^2 + |phi-|^2) dk / N.
``WaveState.norm_constant`` therefore stores N = 2 pi * (momentum norm).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from zbmeta.dirac import metamaterial_spinors, sign, vacuum_spinors
from zbmeta.dispersion import ScaledDiracParams, exact_dirac_frequency, solve_bands
from zbmeta.grid import MomentumGrid, synthesize, synthesize_direct
from zbmeta.material import CODATA, REFERENCE_LINE, DomainError, MaterialParams, PhysicalConstants, epsilon_r, mu_r


@dataclass(frozen=True)
class WaveState:
    """Expansion coefficients of u+ (lower band) and u- (upper band) on a grid."""

    grid: MomentumGrid
    phi_plus: np.ndarray
    phi_minus: np.ndarray
    norm_constant: float

    @classmethod
    def from_coefficients(cls, grid: MomentumGrid, phi_plus, phi_minus) -> "WaveState":
        phi_plus = np.asarray(phi_plus, dtype=complex)
        phi_minus = np.asarray(phi_minus, dtype=complex)
        if phi_plus.shape != (grid.n,) or phi_minus.shape != (grid.n,):
            raise ValueError("coefficient arrays must match the grid")
        mom = float(np.sum(np.abs(phi_plus) ** 2 + np.abs(phi_minus) ** 2) * grid.dk)
        if mom == 0:
            raise ValueError("empty state")
        return cls(grid, phi_plus, phi_minus, 2.0 * math.pi * mom)

    def momentum_norm(self) -> float:
        """sum_k (|phi+|^2 + |phi-|^2) dk of the stored coefficients."""
        return float(np.sum(np.abs(self.phi_plus) ** 2 + np.abs(self.phi_minus) ** 2) * self.grid.dk)

    def normalize(self) -> "WaveState":
        """Rescale so the momentum norm is one (and N = 2 pi)."""
        s = 1.0 / math.sqrt(self.momentum_norm())
        return replace(self, phi_plus=self.phi_plus * s, phi_minus=self.phi_minus * s, norm_constant=2.0 * math.pi)

    def position_norm_expected(self) -> float:
        return 2.0 * math.pi * self.momentum_norm() / self.norm_constant

    def only_plus(self) -> "WaveState":
        return WaveState.from_coefficients(self.grid, self.phi_plus, np.zeros_like(self.phi_minus))

    def only_minus(self) -> "WaveState":
        return WaveState.from_coefficients(self.grid, np.zeros_like(self.phi_plus), self.phi_minus)


def _times(t):
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("evolution time must be finite")
    return t


def _expand(state: WaveState, up, um, w_plus_coeff, w_minus_coeff, t, direct=False):
    """Synthesize both spinor components; returns (2, n) or (nt, 2, n)."""
    t = _times(t)
    scalar = t.ndim == 0
    tt = np.atleast_1d(t)[:, None]
    a = state.phi_plus * np.exp(-1j * w_plus_coeff * tt)
    b = state.phi_minus * np.exp(-1j * w_minus_coeff * tt)
    up_a, um_a = up.as_array(), um.as_array()
    comps = a[:, None, :] * up_a[None] + b[:, None, :] * um_a[None]
    syn = synthesize_direct if direct else synthesize
    out = syn(state.grid, comps) / math.sqrt(state.norm_constant)
    return out[0] if scalar else out


def evolve_metamaterial(
    state: WaveState,
    t,
    params: MaterialParams = REFERENCE_LINE,
    consts: PhysicalConstants = CODATA,
    *,
    direct: bool = False,
) -> np.ndarray:
    """Position-space spinor at time(s) ``t``.

    Positive-energy coefficients evolve with the lower band frequency,
    negative-energy ones with the upper band. ``direct=True`` uses the
    O(n^2) plane-wave sum instead of the FFT.
    """
    k = state.grid.k_values
    bands = solve_bands(params, consts, k)
    up, um = metamaterial_spinors(params, consts, k)
    return _expand(state, up, um, bands.omega_minus, bands.omega_plus, t, direct=direct)


def evolve_exact_dirac(
    state: WaveState,
    sp: ScaledDiracParams,
    t,
    time_sign: int = 1,
    consts: PhysicalConstants = CODATA,
    *,
    direct: bool = False,
) -> np.ndarray:
    """Free scaled Dirac evolution; ``time_sign=-1`` runs the clock backwards."""
    if time_sign not in (1, -1):
        raise ValueError("time_sign must be +1 or -1")
    k = state.grid.k_values
    up, um = vacuum_spinors(sp, consts, k)
    w = exact_dirac_frequency(sp, consts, k)
    return _expand(state, up, um, time_sign * w, -time_sign * w, t, direct=direct)


def density(psi: np.ndarray) -> np.ndarray:
    """|psi|^2 summed over the spinor axis (second to last)."""
    return np.sum(np.abs(psi) ** 2, axis=-2)


def position_norm(psi: np.ndarray, grid: MomentumGrid):
    return np.sum(density(psi), axis=-1) * grid.dx


# -- field <-> wavefunction ---------------------------------------------------


@dataclass(frozen=True)
class FieldCoefficients:
    """E_z expansion coefficients on the four frequency branches.

    ``e_plus`` sits on +w+(k), ``e_minus`` on +w-(k), ``e_neg_plus`` on
    -w+(k) and ``e_neg_minus`` on -w-(k). Magnetic coefficients are derived.
    """

    grid: MomentumGrid
    e_plus: np.ndarray
    e_minus: np.ndarray
    e_neg_plus: np.ndarray
    e_neg_minus: np.ndarray

    @classmethod
    def positive(cls, grid, e_plus, e_minus) -> "FieldCoefficients":
        z = np.zeros(grid.n, dtype=complex)
        return cls(grid, np.asarray(e_plus, dtype=complex), np.asarray(e_minus, dtype=complex), z, z.copy())

    def branches(self, params=REFERENCE_LINE, consts=CODATA):
        """(frequency array, E array) for the four branches in a fixed order."""
        b = solve_bands(params, consts, self.grid.k_values)
        return [
            (b.omega_plus, self.e_plus),
            (b.omega_minus, self.e_minus),
            (-b.omega_plus, self.e_neg_plus),
            (-b.omega_minus, self.e_neg_minus),
        ]

    def h_coefficients(self, params=REFERENCE_LINE, consts=CODATA, via: str = "mu"):
        """H_y per branch from the first (``via="mu"``) or second (``"eps"``) Maxwell relation."""
        k = self.grid.k_values
        out = []
        for w, e in self.branches(params, consts):
            if via == "mu":
                with np.errstate(divide="ignore", invalid="ignore"):
                    h = -k / (w * consts.mu0 * mu_r(params, consts, w)) * e
                h = np.where(k == 0, 0.0, h)
            elif via == "eps":
                with np.errstate(divide="ignore", invalid="ignore"):
                    h = -(w * consts.epsilon0 * epsilon_r(params, consts, w)) / k * e
                h = np.where(k == 0, np.nan, h)
            else:
                raise ValueError("via must be 'mu' or 'eps'")
            out.append(h)
        return out

    def has_negative_branches(self) -> bool:
        return bool(np.any(self.e_neg_plus != 0) or np.any(self.e_neg_minus != 0))

    def synthesize_e(self, t, params=REFERENCE_LINE, consts=CODATA):
        return _synthesize_branches(self.grid, self.branches(params, consts), t)

    def synthesize_h(self, t, params=REFERENCE_LINE, consts=CODATA):
        ws = [w for w, _ in self.branches(params, consts)]
        return _synthesize_branches(self.grid, list(zip(ws, self.h_coefficients(params, consts))), t)


def _synthesize_branches(grid, branches, t):
    t = _times(t)
    scalar = t.ndim == 0
    tt = np.atleast_1d(t)[:, None]
    total = sum(e * np.exp(-1j * w * tt) for w, e in branches)
    out = synthesize(grid, total)
    return out[0] if scalar else out


def field_factor(params: MaterialParams, consts: PhysicalConstants, omega):
    """c sqrt(mu0 |mu_r|) / sqrt(|eps_r + mu_r|), the E amplitude per unit coefficient."""
    er = epsilon_r(params, consts, omega)
    mr = mu_r(params, consts, omega)
    return consts.c * np.sqrt(consts.mu0 * np.abs(mr)) / np.sqrt(np.abs(er + mr))


def field_from_wavefunction(state: WaveState, params=REFERENCE_LINE, consts=CODATA) -> FieldCoefficients:
    k = state.grid.k_values
    b = solve_bands(params, consts, k)
    e_plus = -state.phi_minus * sign(k) * field_factor(params, consts, b.omega_plus)
    e_minus = state.phi_plus * field_factor(params, consts, b.omega_minus)
    return FieldCoefficients.positive(state.grid, e_plus, e_minus)


def _divide(e, f):
    bad = f == 0
    if np.any(bad & (e != 0)):
        raise DomainError("field coefficient on a mode with vanishing electric component")
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(bad, 0.0, e / np.where(bad, 1.0, f))


def wavefunction_from_field(
    coeffs: FieldCoefficients, params=REFERENCE_LINE, consts=CODATA, normalize: bool = True
) -> WaveState:
    """Inverse of :func:`field_from_wavefunction`; negative-frequency branches are ignored."""
    k = coeffs.grid.k_values
    b = solve_bands(params, consts, k)
    phi_minus = -_divide(coeffs.e_plus, field_factor(params, consts, b.omega_plus)) * sign(k)
    phi_plus = _divide(coeffs.e_minus, field_factor(params, consts, b.omega_minus))
    if not (np.any(phi_plus != 0) or np.any(phi_minus != 0)):
        raise ValueError("empty state")
    state = WaveState.from_coefficients(coeffs.grid, phi_plus, phi_minus)
    return state.normalize() if normalize else state


def evolve_field_coefficients(coeffs: FieldCoefficients, t, params=REFERENCE_LINE, consts=CODATA) -> FieldCoefficients:
    """Attach the exp(-i w t) phase of each branch to its coefficients."""
    br = coeffs.branches(params, consts)
    ph = [e * np.exp(-1j * w * t) for w, e in br]
    return FieldCoefficients(coeffs.grid, *ph)


def evolve_wavestate(state: WaveState, t, params=REFERENCE_LINE, consts=CODATA) -> WaveState:
    """Same state with its momentum-space coefficients advanced by ``t``."""
    b = solve_bands(params, consts, state.grid.k_values)
    return replace(
        state,
        phi_plus=state.phi_plus * np.exp(-1j * b.omega_minus * t),
        phi_minus=state.phi_minus * np.exp(-1j * b.omega_plus * t),
    )
