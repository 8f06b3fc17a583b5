"""Flat key-value configuration files.

Grammar, one entry per line::

    # comment
    section.key = value

``value`` is a Python literal (number, quoted string, list, True/False);
an unquoted word is read as a plain string. A ``[section]`` line prefixes
the following bare keys with ``section.``.
"""

from __future__ import annotations

import ast
import math
from pathlib import Path

import numpy as np

from zbmeta.material import CODATA, MaterialParams
from zbmeta.scenarios import DEFAULT_N, DEFAULT_TIMES, KINDS, BoundaryConfig, DriftModel, ScenarioConfig, default_config


class ConfigError(ValueError):
    pass


DEFAULTS = {
    "scenario.kind": "gaussian",
    "scenario.backend": None,
    "scenario.exact_time_sign": -1,
    "grid.n": None,
    "grid.dx": 8e-3,
    "packet.sigma_k": None,
    "packet.k0": None,
    "material.d": 8e-3,
    "material.p": 4.0,
    "material.C": 2.82e-12,
    "material.C0": 58.8e-12,
    "material.L": 19.5e-9,
    "material.L0": 314e-9,
    "pulses.x_a": -1.0,
    "pulses.x_b": 1.0,
    "pulses.amplitude": 1.0,
    "pulses.sigma_omega": 0.52e9,
    "pulses.omega_a": 13.81e9,
    "pulses.omega_b": 8.95e9,
    "times.start": None,
    "times.stop": None,
    "times.count": None,
    "drift.slope": 1.0 / 49.7e-9,
    "bands.k_min": 0.0,
    "bands.k_max": 100.0,
    "bands.count": 201,
    "output.dir": "out",
    "output.density_stride": 4,
    "seed": 0,
}


def parse_text(text: str) -> dict:
    out = {}
    section = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if section and "." not in key:
            key = f"{section}.{key}"
        try:
            out[key] = ast.literal_eval(value)
        except (ValueError, SyntaxError):
            if not value or any(c in value for c in "'\"[]{}"):
                raise ConfigError(f"line {lineno}: cannot parse value {value!r}") from None
            out[key] = value
    return out


def _strip_comment(line: str) -> str:
    quote = None
    for i, ch in enumerate(line):
        if quote:
            if ch == quote:
                quote = None
        elif ch in "'\"":
            quote = ch
        elif ch == "#":
            return line[:i]
    return line


def load(path=None, overrides: dict | None = None) -> dict:
    """Defaults, then the file at ``path``, then ``overrides``; unknown keys are rejected."""
    cfg = dict(DEFAULTS)
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        cfg.update(_checked(parse_text(text)))
    cfg.update(_checked({k: v for k, v in (overrides or {}).items() if v is not None}))
    return cfg


def _checked(d: dict) -> dict:
    unknown = sorted(set(d) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    return d


def material(cfg: dict) -> MaterialParams:
    try:
        return MaterialParams(**{k: float(cfg[f"material.{k}"]) for k in ("d", "p", "C", "C0", "L", "L0")})
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _number(cfg, key, kind=float):
    v = cfg[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key} must be a number, got {v!r}")
    if kind is int and int(v) != v:
        raise ConfigError(f"{key} must be an integer, got {v!r}")
    if not math.isfinite(v):
        raise ConfigError(f"{key} must be finite")
    return kind(v)


def scenario_config(cfg: dict) -> ScenarioConfig:
    kind = cfg["scenario.kind"]
    if kind not in KINDS:
        raise ConfigError(f"invalid scenario kind {kind!r}; choose from {', '.join(KINDS)}")
    params = material(cfg)
    n = DEFAULT_N[kind] if cfg["grid.n"] is None else _number(cfg, "grid.n", int)
    start, stop, count = DEFAULT_TIMES[kind]
    start = start if cfg["times.start"] is None else _number(cfg, "times.start")
    stop = stop if cfg["times.stop"] is None else _number(cfg, "times.stop")
    count = count if cfg["times.count"] is None else _number(cfg, "times.count", int)
    if count < 2 or not stop > start:
        raise ConfigError("times need count >= 2 and stop > start")
    over = dict(dx=_number(cfg, "grid.dx"), exact_time_sign=_number(cfg, "scenario.exact_time_sign", int))
    if cfg["scenario.backend"] is not None:
        over["backend"] = cfg["scenario.backend"]
    if cfg["packet.sigma_k"] is not None:
        over["sigma_k"] = _number(cfg, "packet.sigma_k")
    if cfg["packet.k0"] is not None:
        over["k0"] = _number(cfg, "packet.k0")
    if kind == "counter":
        over["drift"] = DriftModel(_number(cfg, "drift.slope"), "configured drift slope")
    if kind == "boundary":
        over["boundary"] = BoundaryConfig(
            **{f: _number(cfg, f"pulses.{f}") for f in ("x_a", "x_b", "amplitude", "sigma_omega", "omega_a", "omega_b")}
        )
    try:
        return default_config(kind, n=n, times=np.linspace(start, stop, count), params=params, consts=CODATA, **over)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def render(cfg: dict) -> str:
    """Config back to text, one sorted key per line."""
    return "".join(f"{k} = {v!r}\n" for k, v in sorted(cfg.items()))
