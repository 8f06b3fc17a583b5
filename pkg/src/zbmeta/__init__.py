"""Metamaterial transmission-line emulation of 1D Dirac dynamics and Zitterbewegung."""

from zbmeta.material import (
    BandEdges,
    MaterialParams,
    PhysicalConstants,
    CODATA,
    REFERENCE_LINE,
    band_edges,
    epsilon_r,
    mu_r,
)
from zbmeta.dispersion import (
    DispersionSample,
    ScaledDiracParams,
    exact_dirac_energy,
    group_velocity,
    scaled_params,
    solve_bands,
)
from zbmeta.grid import MomentumGrid, analyze, make_grid, synthesize
from zbmeta.evolution import (
    FieldCoefficients,
    WaveState,
    evolve_exact_dirac,
    evolve_metamaterial,
    field_from_wavefunction,
    wavefunction_from_field,
)

__version__ = "0.1.0"

__all__ = [
    "BandEdges",
    "MaterialParams",
    "PhysicalConstants",
    "CODATA",
    "REFERENCE_LINE",
    "band_edges",
    "epsilon_r",
    "mu_r",
    "DispersionSample",
    "ScaledDiracParams",
    "exact_dirac_energy",
    "group_velocity",
    "scaled_params",
    "solve_bands",
    "MomentumGrid",
    "analyze",
    "make_grid",
    "synthesize",
    "FieldCoefficients",
    "WaveState",
    "evolve_exact_dirac",
    "evolve_metamaterial",
    "field_from_wavefunction",
    "wavefunction_from_field",
]
