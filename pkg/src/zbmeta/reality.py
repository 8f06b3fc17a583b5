"""Reality of four-branch field expansions and how the Maxwell coupling preserves it.

A coefficient set c(k, w) over the branches {+w+, +w-, -w+, -w-} is
"symmetric in frequency" when c(k, -w) = c(k, w) and "symmetric in momentum"
when c(-k, w) = c(k, w). A purely real (or purely imaginary) set whose two
parities multiply to +1 synthesizes to a real (imaginary) field; an odd
product swaps the outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from zbmeta.evolution import FieldCoefficients, field_from_wavefunction, wavefunction_from_field
from zbmeta.grid import MomentumGrid
from zbmeta.material import CODATA, REFERENCE_LINE

PARTS = ("real", "imaginary")
PARITIES = ("symmetric", "anti-symmetric")


@dataclass(frozen=True)
class SymmetrySpec:
    part: str
    freq_parity: str
    mom_parity: str
    expected: str

    def __post_init__(self):
        if self.part not in PARTS or self.expected not in PARTS:
            raise ValueError("part and expected must be 'real' or 'imaginary'")
        if self.freq_parity not in PARITIES or self.mom_parity not in PARITIES:
            raise ValueError("parities must be 'symmetric' or 'anti-symmetric'")
        if self.expected != expected_outcome(self.part, self.freq_parity, self.mom_parity):
            raise ValueError("expected outcome contradicts the parity rule")


def _sign(parity):
    return 1.0 if parity == "symmetric" else -1.0


def expected_outcome(part: str, freq_parity: str, mom_parity: str) -> str:
    even = _sign(freq_parity) * _sign(mom_parity) > 0
    if part == "real":
        return "real" if even else "imaginary"
    return "imaginary" if even else "real"


SYMMETRY_ROWS = tuple(
    SymmetrySpec(part, fp, mp, expected_outcome(part, fp, mp))
    for part in PARTS
    for fp in PARITIES
    for mp in PARITIES
)


def build_symmetric_coefficients(grid: MomentumGrid, spec: SymmetrySpec, seed: int, scale: float = 1.0) -> FieldCoefficients:
    """Random coefficients on k >= 0, w > 0 mirrored to the other branches per ``spec``.

    An anti-symmetric momentum parity forces the k = 0 line to zero.
    """
    rng = np.random.default_rng(seed)
    k = grid.k_values
    sk, sw = _sign(spec.mom_parity), _sign(spec.freq_parity)
    unit = 1.0 if spec.part == "real" else 1j
    out = []
    for _ in range(2):
        c = np.zeros(grid.n, dtype=complex)
        pos = k >= 0
        c[pos] = scale * unit * rng.standard_normal(np.count_nonzero(pos))
        c[k < 0] = sk * grid.mirror(c)[k < 0]
        if sk < 0:
            c[k == 0] = 0.0
        out.append(c)
    e_plus, e_minus = out
    return FieldCoefficients(grid, e_plus, e_minus, sw * e_plus, sw * e_minus)


def _branch_table(coeffs: FieldCoefficients):
    """Positive and negative frequency halves as (2, n) arrays."""
    pos = np.stack([coeffs.e_plus, coeffs.e_minus])
    neg = np.stack([coeffs.e_neg_plus, coeffs.e_neg_minus])
    return pos, neg


def _parity(a, b, tol):
    """'symmetric' if a == b, 'anti-symmetric' if a == -b, 'zero' if both vanish, else 'mixed'."""
    scale = max(np.max(np.abs(a)), np.max(np.abs(b)))
    if scale == 0:
        return "zero"
    if np.max(np.abs(a - b)) <= tol * scale:
        return "symmetric"
    if np.max(np.abs(a + b)) <= tol * scale:
        return "anti-symmetric"
    return "mixed"


@dataclass(frozen=True)
class PartClass:
    part: str
    freq_parity: str
    mom_parity: str

    @property
    def outcome(self) -> str | None:
        if self.freq_parity == "zero":
            return "zero"
        if "mixed" in (self.freq_parity, self.mom_parity):
            return None
        return expected_outcome(self.part, self.freq_parity, self.mom_parity)


def classify(coeffs: FieldCoefficients, tol: float = 1e-12):
    """Parity class of the real and of the imaginary part of a coefficient set."""
    pos, neg = _branch_table(coeffs)
    out = []
    for part, f in (("real", np.real), ("imaginary", np.imag)):
        p, q = f(pos), f(neg)
        fp = _parity(p, q, tol)
        allc = np.concatenate([p, q], axis=0)
        mp = _parity(allc, allc[..., ::-1], tol) if fp != "zero" else "zero"
        out.append(PartClass(part, fp, mp))
    return tuple(out)


def field_outcome(coeffs: FieldCoefficients, tol: float = 1e-12) -> str | None:
    """'real', 'imaginary' or 'zero' when both parts agree, otherwise None."""
    outs = {c.outcome for c in classify(coeffs, tol)} - {"zero"}
    if not outs:
        return "zero"
    return outs.pop() if len(outs) == 1 else None


def synthesized_part_ratio(values, expected: str) -> float:
    """max |wrong part| / max |values|; zero fields give 0."""
    v = np.asarray(values)
    scale = np.max(np.abs(v))
    if scale == 0:
        return 0.0
    wrong = v.imag if expected == "real" else v.real
    return float(np.max(np.abs(wrong)) / scale)


def h_field_coefficients(coeffs: FieldCoefficients, params=REFERENCE_LINE, consts=CODATA) -> FieldCoefficients:
    h = coeffs.h_coefficients(params, consts, via="mu")
    return FieldCoefficients(coeffs.grid, *h)


@dataclass(frozen=True)
class FlipReport:
    e_classes: tuple
    h_classes: tuple
    e_outcome: str | None
    h_outcome: str | None
    h_wrong_part_ratio: float

    @property
    def consistent(self) -> bool:
        if self.e_outcome in ("real", "zero"):
            return self.h_outcome in ("real", "zero")
        return True


def verify_maxwell_flip(grid: MomentumGrid, coeffs: FieldCoefficients, times=(0.0, 1e-9), params=REFERENCE_LINE, consts=CODATA) -> FlipReport:
    """Classify E and the H derived from it, and measure how real the synthesized H is."""
    h = h_field_coefficients(coeffs, params, consts)
    e_cls, h_cls = classify(coeffs), classify(h)
    h_out = field_outcome(h)
    # h holds H coefficients on the E slots, so synthesize_e yields H(x, t);
    # times are pooled because an odd-in-frequency field vanishes at t = 0
    values = h.synthesize_e(np.atleast_1d(np.asarray(times, dtype=float)), params, consts)
    ratio = synthesized_part_ratio(values, "imaginary" if h_out == "imaginary" else "real")
    return FlipReport(e_cls, h_cls, field_outcome(coeffs), h_out, ratio)


def restore_negative_branches(coeffs: FieldCoefficients) -> FieldCoefficients:
    """Fill the -w branches so that the field is real: c(k, -w) = conj(c(-k, w))."""
    g = coeffs.grid
    return FieldCoefficients(
        g, coeffs.e_plus, coeffs.e_minus, np.conj(g.mirror(coeffs.e_plus)), np.conj(g.mirror(coeffs.e_minus))
    )


def real_field_round_trip(coeffs: FieldCoefficients, params=REFERENCE_LINE, consts=CODATA) -> FieldCoefficients:
    """Drop the negative branches, map to a wavefunction and back, then restore them."""
    state = wavefunction_from_field(coeffs, params, consts, normalize=False)
    back = field_from_wavefunction(state, params, consts)
    return restore_negative_branches(back)
