"""Physical constants and the lumped-element model of the loaded transmission line.

Angular frequencies are in rad/s throughout. The "GHz" figures quoted for this
kind of line (10.4, 11.8, 11.0) are angular frequencies in units of 1e9 rad/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np


class DomainError(ValueError):
    """Raised when a formula is evaluated at a pole or outside its domain."""


@dataclass(frozen=True)
class PhysicalConstants:
    epsilon0: float  # F/m
    mu0: float  # H/m
    hbar: float  # J s

    @property
    def c(self) -> float:
        return 1.0 / math.sqrt(self.epsilon0 * self.mu0)


# CODATA 2018
CODATA = PhysicalConstants(
    epsilon0=8.8541878128e-12,
    mu0=1.25663706212e-6,
    hbar=1.054571817e-34,
)


@dataclass(frozen=True)
class MaterialParams:
    """Lumped-element constants of one metamaterial unit cell.

    Attributes
    ----------
    d : float
        Element length (m).
    p : float
        Geometric factor.
    C : float
        Series capacitance of the loading elements (F).
    C0 : float
        Per-unit-length capacitance of the line segment (F/m).
    L : float
        Shunt inductance of the loading elements (H).
    L0 : float
        Per-unit-length inductance of the line segment (H/m).
    """

    d: float = 8e-3
    p: float = 4.0
    C: float = 2.82e-12
    C0: float = 58.8e-12
    L: float = 19.5e-9
    L0: float = 314e-9

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"material parameter {f.name} must be positive, got {v!r}")


REFERENCE_LINE = MaterialParams()


@dataclass(frozen=True)
class BandEdges:
    omega1: float  # epsilon_r = 0
    omega2: float  # mu_r = 0
    omega0: float  # effective energy = 0


def _check_omega(omega):
    omega = np.asarray(omega, dtype=float)
    if np.any(omega == 0):
        raise DomainError("omega = 0 is a pole of the Drude-like term")
    return omega


def epsilon_r(params: MaterialParams, consts: PhysicalConstants, omega):
    """Relative permittivity (C0 - 1/(w^2 L d)) / (p eps0)."""
    w = _check_omega(omega)
    out = (params.C0 - 1.0 / (w * w * params.L * params.d)) / (params.p * consts.epsilon0)
    return out if out.ndim else float(out)


def mu_r(params: MaterialParams, consts: PhysicalConstants, omega):
    """Relative permeability p (L0 - 1/(w^2 C d)) / mu0."""
    w = _check_omega(omega)
    out = params.p * (params.L0 - 1.0 / (w * w * params.C * params.d)) / consts.mu0
    return out if out.ndim else float(out)


def band_edges(params: MaterialParams, consts: PhysicalConstants) -> BandEdges:
    C, C0, L, L0, d, p = params.C, params.C0, params.L, params.L0, params.d, params.p
    eps0, mu0 = consts.epsilon0, consts.mu0
    omega1 = 1.0 / math.sqrt(C0 * L * d)
    omega2 = 1.0 / math.sqrt(L0 * C * d)
    omega0 = math.sqrt((mu0 * C + p * p * eps0 * L) / (C * L * d * (mu0 * C0 + p * p * eps0 * L0)))
    return BandEdges(omega1=omega1, omega2=omega2, omega0=omega0)
