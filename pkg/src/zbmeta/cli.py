"""Command-line front end: ``zbmeta bands|run|zb-analytic|verify``.

Every CSV starts with one ``# zbmeta-csv v1 ...`` comment line naming the
table and its key settings, followed by a header row. Numbers are written
with 17 significant digits so that files compare exactly between runs.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import sys
from pathlib import Path

import numpy as np

from zbmeta import __version__
from zbmeta import config as cfgmod
from zbmeta.boundary import BoundarySetup, solve_region, truncated_amplitude_fraction, truncated_fraction
from zbmeta.dirac import effective_energy
from zbmeta.dispersion import scaled_params, solve_bands
from zbmeta.evolution import (
    WaveState,
    evolve_exact_dirac,
    evolve_metamaterial,
    position_norm,
)
from zbmeta.grid import MomentumGrid
from zbmeta.material import CODATA, band_edges
from zbmeta.observables import analytic_zb_gaussian
from zbmeta.reality import SYMMETRY_ROWS, build_symmetric_coefficients, synthesized_part_ratio, verify_maxwell_flip
from zbmeta.scenarios import drift_from_group_velocities, run

SCHEMA = "zbmeta-csv v1"
EXIT_OK, EXIT_INVALID, EXIT_NUMERIC = 0, 2, 3


class NumericalCheckFailed(RuntimeError):
    pass


def fmt(v) -> str:
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def write_csv(path: Path, table: str, meta: dict, header, rows) -> Path:
    with open(path, "w", newline="") as fh:
        tags = " ".join(f"{k}={v}" for k, v in meta.items())
        fh.write(f"# {SCHEMA} table={table} {tags}".rstrip() + "\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(v) for v in r])
    return path


def read_csv(path):
    """Parse a file written by :func:`write_csv`; returns (comment line, header, rows of strings)."""
    with open(path, newline="") as fh:
        first = fh.readline().rstrip("\n")
        if not first.startswith(f"# {SCHEMA}"):
            raise ValueError(f"{path} is not a {SCHEMA} file")
        r = csv.reader(fh)
        header = next(r)
        return first, header, list(r)


def derived_constants(params, consts=CODATA, grid: MomentumGrid | None = None, drift=None) -> dict:
    e = band_edges(params, consts)
    sp = scaled_params(params, consts)
    out = {
        "omega1": e.omega1,
        "omega2": e.omega2,
        "omega0": e.omega0,
        "c_D": sp.c_D,
        "m_prime": sp.m_prime,
        "mass_wavenumber": sp.mass_wavenumber(consts),
    }
    if grid is not None:
        out.update(n=grid.n, dx=grid.dx, dk=grid.dk, interval_min=-grid.half_width, interval_max=grid.half_width)
    if drift is not None:
        out["drift_slope"] = drift
    return out


def _out_dir(cfg) -> Path:
    out = Path(cfg["output.dir"])
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write-test"
        probe.write_text("")
        probe.unlink()
    except OSError as exc:
        raise cfgmod.ConfigError(f"output directory {out} is not writable: {exc}") from None
    return out


def _manifest(out: Path, command: str, cfg: dict, constants: dict, files, extra=None) -> Path:
    data = {
        "tool": "zbmeta",
        "version": __version__,
        "command": command,
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "config": cfg,
        "derived": constants,
        "outputs": sorted(Path(f).name for f in files),
    }
    if extra:
        data.update(extra)
    path = out / f"manifest_{command}.json"
    path.write_text(json.dumps(data, indent=2, sort_keys=True, default=float) + "\n")
    return path


# -- subcommands ----------------------------------------------------------


def cmd_bands(cfg: dict) -> list:
    params = cfgmod.material(cfg)
    kmin, kmax = cfgmod._number(cfg, "bands.k_min"), cfgmod._number(cfg, "bands.k_max")
    count = cfgmod._number(cfg, "bands.count", int)
    if count < 2 or not kmax > kmin:
        raise cfgmod.ConfigError("bands need count >= 2 and k_max > k_min")
    k = np.linspace(kmin, kmax, count)
    if kmin <= 0 <= kmax and not np.any(k == 0):
        k = np.sort(np.append(k, 0.0))
    s = solve_bands(params, CODATA, k)
    out = _out_dir(cfg)
    meta = {"k_min": fmt(kmin), "k_max": fmt(kmax)}
    f1 = write_csv(
        out / "bands.csv",
        "bands",
        meta,
        ["k", "omega_minus", "omega_plus", "energy_lower", "energy_upper"],
        zip(k, s.omega_minus, s.omega_plus, effective_energy(params, CODATA, s.omega_minus), effective_energy(params, CODATA, s.omega_plus)),
    )
    # overlay: the curves k = E(w) and k = -E(w) drawn in the (k, w) plane
    w = np.linspace(float(s.omega_minus.min()), float(s.omega_plus.max()), 2 * count + 1)
    en = effective_energy(params, CODATA, w)
    f2 = write_csv(out / "bands_overlay.csv", "bands_overlay", {}, ["omega", "energy", "minus_energy"], zip(w, en, -en))
    files = [f1, f2]
    files.append(_manifest(out, "bands", cfg, derived_constants(params), files))
    return files


def cmd_run(cfg: dict) -> list:
    sc = cfgmod.scenario_config(cfg)
    out = _out_dir(cfg)
    result = run(sc)
    grid = sc.grid
    stride = cfgmod._number(cfg, "output.density_stride", int)
    if stride < 1:
        raise cfgmod.ConfigError("output.density_stride must be >= 1")
    meta = {"scenario": sc.kind, "n": grid.n}
    files = []
    for backend, br in result.runs.items():
        rows = []
        for it in range(0, len(sc.times), stride):
            psi = br.psi[it]
            rho = np.abs(psi[0]) ** 2 + np.abs(psi[1]) ** 2
            for j, x in enumerate(grid.x_values):
                rows.append((sc.times[it], x, rho[j], psi[0, j].real, psi[0, j].imag, psi[1, j].real, psi[1, j].imag))
        files.append(
            write_csv(out / f"density_{sc.kind}_{backend}.csv", "density", {**meta, "backend": backend},
                      ["t_seconds", "x_meters", "density", "re_psi1", "im_psi1", "re_psi2", "im_psi2"], rows)
        )
    series = [br.series for br in result.runs.values()]
    if result.analytic is not None:
        series.append(result.analytic)
    header = ["t_seconds", "x_meters", "backend", "scenario"]
    drift = result.drift_subtracted
    if drift is not None:
        header.append("x_drift_subtracted")
    rows = []
    for s in series:
        for i, (t, x) in enumerate(zip(s.times, s.values)):
            row = [t, x, s.backend, sc.kind]
            if drift is not None:
                row.append(drift.values[i] if s.backend == "metamaterial" else "")
            rows.append(row)
    emeta = dict(meta)
    if sc.kind == "boundary":
        emeta["window"] = f"[{fmt(sc.boundary.x_a)},{fmt(sc.boundary.x_b)}]"
    if drift is not None:
        emeta["drift_slope"] = fmt(sc.drift.slope)
    files.append(write_csv(out / f"expectation_{sc.kind}.csv", "expectation", emeta, header, rows))
    extra = {"diagnostics": result.diagnostics, "time_window": [sc.times[0], sc.times[-1], len(sc.times)]}
    if sc.kind == "boundary":
        files.append(_boundary_modes_csv(out, sc))
        left, right = sc.boundary.pulses()
        extra["truncation"] = {
            "left_energy": truncated_fraction(left, sc.params, sc.consts),
            "right_energy": truncated_fraction(right, sc.params, sc.consts),
            "left_amplitude": truncated_amplitude_fraction(left, sc.params, sc.consts),
            "right_amplitude": truncated_amplitude_fraction(right, sc.params, sc.consts),
        }
    slope = drift_from_group_velocities(sc) if sc.kind == "counter" else None
    consts = derived_constants(sc.params, sc.consts, grid, sc.drift.slope if sc.kind == "counter" else None)
    if slope is not None:
        consts["drift_slope_group_mean"] = slope
    files.append(_manifest(out, f"run_{sc.kind}", cfg, consts, files, extra))
    return files


def _boundary_modes_csv(out: Path, sc) -> Path:
    b = sc.boundary
    left, right = b.pulses()
    region = solve_region(BoundarySetup(b.x_a, b.x_b, sc.grid), left, right, sc.params, sc.consts)
    rows = []
    for (band, i), s in sorted(region.solutions.items()):
        rows.append((band, s.k, s.omega, s.reflected.real, s.reflected.imag, s.forward.real, s.forward.imag,
                     s.backward.real, s.backward.imag, s.transmitted.real, s.transmitted.imag, s.residual))
    header = ["band", "k", "omega", "re_reflected", "im_reflected", "re_forward", "im_forward",
              "re_backward", "im_backward", "re_transmitted", "im_transmitted", "residual"]
    return write_csv(out / "boundary_modes.csv", "boundary_modes", {"n": sc.grid.n}, header, rows)


def cmd_zb_analytic(cfg: dict) -> list:
    sc = cfgmod.scenario_config(cfg)
    if sc.kind == "boundary":
        raise cfgmod.ConfigError("the analytic curve needs a Gaussian scenario")
    sp = scaled_params(sc.params, sc.consts)
    v = analytic_zb_gaussian(sp, sc.sigma_k, sc.k0, sc.times, sc.consts, sc.exact_time_sign)
    out = _out_dir(cfg)
    f = write_csv(out / f"zb_analytic_{sc.kind}.csv", "zb_analytic",
                  {"sigma_k": fmt(sc.sigma_k), "k0": fmt(sc.k0), "time_sign": sc.exact_time_sign},
                  ["t_seconds", "x_meters"], zip(sc.times, v))
    return [f, _manifest(out, "zb-analytic", cfg, derived_constants(sc.params, sc.consts), [f])]


# -- verify suites --------------------------------------------------------


def _random_state(grid, rng):
    z = lambda: rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n)
    return WaveState.from_coefficients(grid, z(), z()).normalize()


def suite_oracle(seed: int):
    rng = np.random.default_rng(seed)
    sp = scaled_params(cfgmod.material(cfgmod.DEFAULTS), CODATA)
    out = []
    for n in (31, 63):
        g = MomentumGrid(n)
        st = _random_state(g, rng)
        ts = rng.uniform(-5e-9, 5e-9, 5)
        worst = 0.0
        for f in (lambda t, d: evolve_metamaterial(st, t, direct=d), lambda t, d: evolve_exact_dirac(st, sp, t, -1, direct=d)):
            a, b = f(ts, False), f(ts, True)
            worst = max(worst, float(np.max(np.abs(a - b)) / np.max(np.abs(b))))
        out.append((f"fft vs direct sum n={n}", worst <= 1e-10, worst))
    return out


def suite_norm(seed: int):
    rng = np.random.default_rng(seed)
    sp = scaled_params(cfgmod.material(cfgmod.DEFAULTS), CODATA)
    out = []
    for n in (31, 63):
        g = MomentumGrid(n)
        st = _random_state(g, rng)
        ts = np.concatenate([[0.0], rng.uniform(-50e-9, 50e-9, 5)])
        err = float(np.max(np.abs(position_norm(evolve_exact_dirac(st, sp, ts, -1), g) - 1.0)))
        out.append((f"exact-Dirac norm and Parseval n={n}", err <= 1e-10, err))
        for name, sub in (("lower band", st.only_plus().normalize()), ("upper band", st.only_minus().normalize())):
            err = float(np.max(np.abs(position_norm(evolve_metamaterial(sub, ts), g) - 1.0)))
            out.append((f"metamaterial {name} norm n={n}", err <= 1e-10, err))
    return out


def suite_reality(seed: int):
    out = []
    for n in (15, 31):
        g = MomentumGrid(n)
        for spec in SYMMETRY_ROWS:
            worst = 0.0
            flips_ok = True
            for s in range(seed, seed + 3):
                c = build_symmetric_coefficients(g, spec, s)
                ts = np.random.default_rng(s).uniform(-5e-9, 5e-9, 5)
                worst = max(worst, synthesized_part_ratio(c.synthesize_e(ts), spec.expected))
                rep = verify_maxwell_flip(g, c, ts)
                flips_ok &= rep.consistent and rep.h_wrong_part_ratio < 1e-12
            name = f"n={n} {spec.part}/{spec.freq_parity}/{spec.mom_parity} -> {spec.expected}"
            out.append((name, worst < 1e-12 and flips_ok, worst))
    return out


SUITES = {"oracle": suite_oracle, "norm": suite_norm, "reality": suite_reality}


def cmd_verify(cfg: dict, suite: str = "all") -> list:
    names = list(SUITES) if suite == "all" else [suite]
    seed = cfgmod._number(cfg, "seed", int)
    rows = []
    for name in names:
        for check, ok, value in SUITES[name](seed):
            rows.append((name, check, "PASS" if ok else "FAIL", value))
    width = max(len(r[1]) for r in rows)
    for name, check, status, value in rows:
        print(f"{status}  {name:8s} {check:<{width}s}  {value:.3e}")
    failed = [r for r in rows if r[2] == "FAIL"]
    if failed:
        raise NumericalCheckFailed(f"{len(failed)} of {len(rows)} checks failed")
    return rows


# -- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat key = value config file")
    common.add_argument("--scenario", choices=("gaussian", "counter", "boundary"), help="scenario kind")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--seed", type=int, help="random seed for the verify suites")
    common.add_argument("--n-override", type=int, metavar="N", help="replace the grid size")

    ap = argparse.ArgumentParser(prog="zbmeta", description="Zitterbewegung in a metamaterial transmission line")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    b = sub.add_parser("bands", parents=[common], help="band structure table")
    b.add_argument("--k-range", nargs=2, type=float, metavar=("KMIN", "KMAX"), help="wavenumber span in 1/m")
    sub.add_parser("run", parents=[common], help="evolve a scenario and write density and <x(t)> tables")
    sub.add_parser("zb-analytic", parents=[common], help="semi-analytic <x(t)> for a Gaussian packet")
    v = sub.add_parser("verify", parents=[common], help="run the built-in consistency suites")
    v.add_argument("suite", nargs="?", default="all", choices=("all", *SUITES))
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {
        "scenario.kind": args.scenario,
        "output.dir": args.out,
        "seed": args.seed,
        "grid.n": args.n_override,
    }
    if getattr(args, "k_range", None):
        overrides["bands.k_min"], overrides["bands.k_max"] = args.k_range
    try:
        cfg = cfgmod.load(args.config, overrides)
        if args.command == "bands":
            files = cmd_bands(cfg)
        elif args.command == "run":
            files = cmd_run(cfg)
        elif args.command == "zb-analytic":
            files = cmd_zb_analytic(cfg)
        else:
            cmd_verify(cfg, args.suite)
            files = []
    except NumericalCheckFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ArithmeticError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    for f in files:
        print(f)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
