"""Equidistant momentum/position grids and the plane-wave transform pair.

The k-grid is centred, k_m = (m - M) dk with M = (n - 1)/2, and likewise for x.
Since dk dx = 2 pi / n, the plane-wave sum

    f(x_j) = sum_m c_m exp(i k_m x_j) dk

is an ordinary DFT once the centred index is rotated to DFT order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class MomentumGrid:
    n: int
    dx: float = 8e-3
    k_values: np.ndarray = field(init=False, repr=False, compare=False)
    x_values: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1 or self.n % 2 == 0:
            raise ValueError(f"grid size must be a positive odd integer, got {self.n!r}")
        if not (self.dx > 0):
            raise ValueError("grid spacing must be positive")
        idx = np.arange(self.n) - (self.n - 1) // 2
        object.__setattr__(self, "k_values", idx * self.dk)
        object.__setattr__(self, "x_values", idx * self.dx)

    @property
    def length(self) -> float:
        return self.n * self.dx

    @property
    def dk(self) -> float:
        return 2.0 * math.pi / self.length

    @property
    def half_width(self) -> float:
        """Largest |x| on the grid, (n - 1) dx / 2."""
        return (self.n - 1) * self.dx / 2.0

    def mirror(self, values: np.ndarray) -> np.ndarray:
        """Values at -k (the centred grid is symmetric, so this is a reversal)."""
        return np.asarray(values)[..., ::-1]


def make_grid(n: int, dx: float = 8e-3) -> MomentumGrid:
    return MomentumGrid(n=n, dx=dx)


def _check(grid: MomentumGrid, arr, name):
    arr = np.asarray(arr)
    if arr.shape[-1] != grid.n:
        raise ValueError(f"{name} has length {arr.shape[-1]}, grid has {grid.n} points")
    return arr


def synthesize(grid: MomentumGrid, coeffs, phases=None) -> np.ndarray:
    """Evaluate sum_k coeffs_k phases_k exp(i k x_j) dk on the x-grid.

    Works along the last axis, so a stack of coefficient rows (for example one
    per time sample) is transformed in a single call.
    """
    c = _check(grid, coeffs, "coeffs").astype(complex)
    if phases is not None:
        c = c * _check(grid, phases, "phases")
    spec = np.fft.ifftshift(c, axes=-1)
    return np.fft.fftshift(np.fft.ifft(spec, axis=-1), axes=-1) * (grid.n * grid.dk)


def analyze(grid: MomentumGrid, field_values) -> np.ndarray:
    """Inverse of :func:`synthesize`."""
    f = _check(grid, field_values, "field").astype(complex)
    spec = np.fft.fft(np.fft.ifftshift(f, axes=-1), axis=-1)
    return np.fft.fftshift(spec, axes=-1) / (grid.n * grid.dk)


def synthesize_direct(grid: MomentumGrid, coeffs, phases=None, x=None) -> np.ndarray:
    """O(n^2) plane-wave sum; reference for :func:`synthesize`.

    ``x`` may be any set of positions, which makes it usable for periodicity
    checks off the grid.
    """
    c = _check(grid, coeffs, "coeffs").astype(complex)
    if phases is not None:
        c = c * _check(grid, phases, "phases")
    xs = grid.x_values if x is None else np.asarray(x, dtype=float)
    basis = np.exp(1j * np.outer(xs, grid.k_values))
    return (c @ basis.T) * grid.dk
