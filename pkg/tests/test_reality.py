import numpy as np
import pytest

from zbmeta.evolution import FieldCoefficients
from zbmeta.grid import make_grid
from zbmeta.reality import (
    SYMMETRY_ROWS,
    SymmetrySpec,
    build_symmetric_coefficients,
    classify,
    expected_outcome,
    field_outcome,
    real_field_round_trip,
    restore_negative_branches,
    synthesized_part_ratio,
    verify_maxwell_flip,
)

# the eight rows written out by hand: (part, frequency parity, momentum parity) -> outcome
ROWS = [
    ("real", "symmetric", "symmetric", "real"),
    ("real", "symmetric", "anti-symmetric", "imaginary"),
    ("real", "anti-symmetric", "symmetric", "imaginary"),
    ("real", "anti-symmetric", "anti-symmetric", "real"),
    ("imaginary", "symmetric", "symmetric", "imaginary"),
    ("imaginary", "symmetric", "anti-symmetric", "real"),
    ("imaginary", "anti-symmetric", "symmetric", "real"),
    ("imaginary", "anti-symmetric", "anti-symmetric", "imaginary"),
]


def test_rows_match_hand_written_table():
    assert sorted((s.part, s.freq_parity, s.mom_parity, s.expected) for s in SYMMETRY_ROWS) == sorted(ROWS)


@pytest.mark.parametrize("row", ROWS)
def test_expected_outcome(row):
    assert expected_outcome(*row[:3]) == row[3]


def test_spec_rejects_contradiction():
    with pytest.raises(ValueError):
        SymmetrySpec("real", "symmetric", "symmetric", "imaginary")
    with pytest.raises(ValueError):
        SymmetrySpec("real", "odd", "symmetric", "real")


@pytest.mark.parametrize("spec", SYMMETRY_ROWS, ids=lambda s: f"{s.part}-{s.freq_parity}-{s.mom_parity}")
@pytest.mark.parametrize("n", [15, 31])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_synthesized_field_has_predicted_part(spec, n, seed):
    g = make_grid(n)
    c = build_symmetric_coefficients(g, spec, seed)
    t = np.random.default_rng(seed).uniform(-5e-9, 5e-9, 5)
    v = c.synthesize_e(t)
    assert np.max(np.abs(v)) > 0
    assert synthesized_part_ratio(v, spec.expected) < 1e-12
    assert field_outcome(c) == spec.expected


@pytest.mark.parametrize("spec", SYMMETRY_ROWS, ids=lambda s: f"{s.part}-{s.freq_parity}-{s.mom_parity}")
def test_classification_recovers_parities(spec):
    c = build_symmetric_coefficients(make_grid(31), spec, 7)
    cls = {p.part: p for p in classify(c)}
    mine = cls[spec.part]
    assert (mine.freq_parity, mine.mom_parity) == (spec.freq_parity, spec.mom_parity)
    other = cls["imaginary" if spec.part == "real" else "real"]
    assert other.freq_parity == "zero"


@pytest.mark.parametrize("spec", SYMMETRY_ROWS, ids=lambda s: f"{s.part}-{s.freq_parity}-{s.mom_parity}")
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_maxwell_coupling_keeps_real_fields_real(spec, seed):
    g = make_grid(31)
    c = build_symmetric_coefficients(g, spec, seed)
    rep = verify_maxwell_flip(g, c, np.random.default_rng(seed).uniform(-5e-9, 5e-9, 5))
    assert rep.consistent
    assert rep.h_wrong_part_ratio < 1e-12
    # H flips both parities, so its outcome equals that of E
    assert rep.h_outcome == rep.e_outcome == spec.expected


def test_mixed_coefficients_have_no_outcome(rng):
    g = make_grid(15)
    z = lambda: rng.standard_normal(15) + 1j * rng.standard_normal(15)
    c = FieldCoefficients(g, z(), z(), z(), z())
    assert field_outcome(c) is None


def test_zero_coefficients():
    g = make_grid(7)
    z = np.zeros(7, complex)
    assert field_outcome(FieldCoefficients(g, z, z, z, z)) == "zero"
    assert synthesized_part_ratio(np.zeros(3, complex), "real") == 0.0


def test_restored_branches_give_real_field(rng):
    g = make_grid(31)
    c = FieldCoefficients.positive(g, rng.standard_normal(31) + 1j * rng.standard_normal(31),
                                   rng.standard_normal(31) + 1j * rng.standard_normal(31))
    full = restore_negative_branches(c)
    v = full.synthesize_e(np.array([0.0, 2e-9]))
    assert synthesized_part_ratio(v, "real") < 1e-12


@pytest.mark.parametrize("spec", [s for s in SYMMETRY_ROWS if s.expected == "real"],
                         ids=lambda s: f"{s.part}-{s.freq_parity}-{s.mom_parity}")
def test_real_field_survives_round_trip(spec):
    g = make_grid(31)
    c = build_symmetric_coefficients(g, spec, 3)
    back = real_field_round_trip(c)
    t = np.array([0.0, 1e-9, -3e-9])
    a, b = c.synthesize_e(t), back.synthesize_e(t)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.max(np.abs(a))
