"""Experiment configuration: a flat ``key = value`` text format.

Lines starting with ``#`` are comments, list values are comma separated and
``none`` clears an optional field.  Keys are the field names of
:class:`ExperimentConfig`; anything left out takes the default below.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from ..errors import ConfigError

__all__ = ["ExperimentConfig", "STUDIES", "parse_config", "load_config", "builtin_config", "builtin_names", "format_config"]

STUDIES = ("validate", "self_converge", "moments", "cost", "xmax_sweep")


@dataclass(frozen=True)
class ExperimentConfig:
    study: str = "validate"
    kernel: str = "constant"
    scheme: str = "both"
    x_min: float = 1e-3
    x_max: float = 50.0
    n_list: tuple = (100, 200, 400)
    t_span: tuple = (1.0, 3.0)
    sample_times: tuple = ()
    dt: float = 1e-3
    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    quad_rel_tol: float = 1e-6
    quad_abs_tol: float = 1e-10
    method: str = "RK45"
    flfm_integrator: str = "fixed"
    flux_path: str = "fast"
    flfm_max_n: Optional[int] = None
    x_max_list: tuple = ()
    dx_list: tuple = ()
    output_dir: str = "results"

    def __post_init__(self):
        problems = []
        if self.study not in STUDIES:
            problems.append(f"study must be one of {STUDIES}")
        if self.kernel not in ("constant", "multiplicative"):
            problems.append("kernel must be 'constant' or 'multiplicative'")
        if self.scheme not in ("fem", "flfm", "both"):
            problems.append("scheme must be 'fem', 'flfm' or 'both'")
        if self.method not in ("RK45", "RK23", "DOP853", "BDF", "Radau", "LSODA"):
            problems.append(f"unknown integrator method {self.method!r}")
        if self.flfm_integrator not in ("fixed", "adaptive"):
            problems.append("flfm_integrator must be 'fixed' or 'adaptive'")
        if self.flux_path not in ("fast", "naive"):
            problems.append("flux_path must be 'fast' or 'naive'")
        for name in ("x_max", "dt", "rel_tol", "abs_tol", "quad_rel_tol", "quad_abs_tol"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                problems.append(f"{name} must be finite and positive")
        if not (math.isfinite(self.x_min) and 0 <= self.x_min < self.x_max):
            problems.append("need 0 <= x_min < x_max")
        if list(self.n_list) != sorted(self.n_list) or any(n < 3 for n in self.n_list):
            problems.append("n_list must be ascending with every entry >= 3")
        if len(self.t_span) != 2 or not self.t_span[1] > self.t_span[0] >= 0:
            problems.append("t_span must be two times t0 < t_end with t0 >= 0")
        ts = list(self.sample_times)
        if ts != sorted(ts) or (ts and (ts[0] < self.t_span[0] or ts[-1] > self.t_span[1])):
            problems.append("sample_times must be ascending and inside t_span")
        if self.study == "self_converge" and self.n_list:
            fine = self.n_list[-1] - 1
            if any(fine % (n - 1) for n in self.n_list):
                problems.append("self_converge needs every (n - 1) to divide (max(n_list) - 1)")
        if self.study == "xmax_sweep" and not (self.x_max_list and self.dx_list):
            problems.append("xmax_sweep needs x_max_list and dx_list")
        if problems:
            raise ConfigError("; ".join(problems))

    @property
    def schemes(self) -> tuple:
        return ("fem", "flfm") if self.scheme == "both" else (self.scheme,)

    def samples(self) -> tuple:
        """Sample times, always including the final time."""
        ts = [float(t) for t in self.sample_times]
        if not ts or ts[-1] < self.t_span[1]:
            ts.append(float(self.t_span[1]))
        return tuple(ts)

    def replace(self, **changes) -> "ExperimentConfig":
        return dataclasses.replace(self, **changes)


_FIELDS = {f.name: f for f in dataclasses.fields(ExperimentConfig)}
_INT_LISTS = {"n_list"}
_FLOAT_LISTS = {"t_span", "sample_times", "x_max_list", "dx_list"}
_FLOATS = {"x_min", "x_max", "dt", "rel_tol", "abs_tol", "quad_rel_tol", "quad_abs_tol"}


def _convert(key, raw):
    raw = raw.strip()
    if key == "study":
        return raw.replace("-", "_")
    if key in _INT_LISTS:
        return tuple(int(v) for v in raw.split(",") if v.strip())
    if key in _FLOAT_LISTS:
        return tuple(float(v) for v in raw.split(",") if v.strip())
    if key in _FLOATS:
        return float(raw)
    if key == "flfm_max_n":
        return None if raw.lower() in ("", "none") else int(raw)
    return raw


def parse_config(text: str, **overrides) -> ExperimentConfig:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        if key not in _FIELDS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = _convert(key, raw)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from None
    values.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig(**values)


def load_config(path, **overrides) -> ExperimentConfig:
    return parse_config(Path(path).read_text(), **overrides)


def builtin_names() -> list[str]:
    root = resources.files(__package__) / "configs"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".cfg"))


def builtin_config(name: str, **overrides) -> ExperimentConfig:
    """One of the shipped configs, e.g. ``builtin_config("validate_constant")``."""
    path = resources.files(__package__) / "configs" / f"{name}.cfg"
    if not path.is_file():
        raise ConfigError(f"no built-in config {name!r}; have {builtin_names()}")
    return parse_config(path.read_text(), **overrides)


def _fmt(v):
    if isinstance(v, tuple):
        return ",".join(_fmt(x) for x in v)
    if v is None:
        return "none"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_config(cfg: ExperimentConfig) -> list[tuple[str, str]]:
    """Every field of ``cfg`` (defaults included) as ``(key, text)`` pairs."""
    return [(name, _fmt(getattr(cfg, name))) for name in _FIELDS]
