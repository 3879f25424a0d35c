"""Sweep configuration: flat ``key = value`` files plus command-line overrides."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, fields, replace
from typing import Optional

import numpy as np

from .model import EnvQubit, ModelConfig, SystemQubit, make_env_from_haziness
from .observables import METHODS


class ConfigError(ValueError):
    pass


_PI_TOKEN = re.compile(r"^(?:(\d+(?:\.\d*)?)\s*\*?\s*)?pi(?:\s*/\s*(\d+(?:\.\d*)?))?$")


def parse_time(token: str) -> float:
    """A float, or a symbolic multiple of pi such as ``pi/2`` or ``2*pi/3``."""
    tok = token.strip().lower()
    m = _PI_TOKEN.match(tok)
    if m:
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return math.pi * num / den
    try:
        return float(tok)
    except ValueError:
        raise ConfigError(f"cannot read {token!r} as a time") from None


def parse_grid(grid: str, conv=float) -> list:
    """``start:stop:count`` (inclusive), a comma list, or a single value."""
    grid = grid.strip()
    if not grid:
        raise ConfigError("empty grid")
    if ":" in grid:
        parts = grid.split(":")
        if len(parts) != 3:
            raise ConfigError(f"grid {grid!r} must look like start:stop:count")
        start, stop = conv(parts[0]), conv(parts[1])
        try:
            count = int(parts[2])
        except ValueError:
            raise ConfigError(f"grid count {parts[2]!r} is not an integer") from None
        if count < 1:
            raise ConfigError("grid count must be >= 1")
        return [float(v) for v in np.linspace(start, stop, count)]
    return [conv(p) for p in grid.split(",") if p.strip()]


def parse_frag_grid(grid: str, n_env: int) -> list:
    grid = grid.strip().lower()
    if grid == "all":
        return list(range(n_env + 1))
    out = set()
    for part in grid.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "-" in part:
                lo, hi = (int(x) for x in part.split("-"))
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
        except ValueError:
            raise ConfigError(f"bad fragment entry {part!r}") from None
    if not out:
        raise ConfigError("empty fragment grid")
    bad = [k for k in out if not 0 <= k <= n_env]
    if bad:
        raise ConfigError(f"fragment sizes {sorted(bad)} outside [0, {n_env}]")
    return sorted(out)


@dataclass(frozen=True)
class SweepConfig:
    n_env: int = 100
    s00: float = 0.5
    s01_re: float = 0.5
    s01_im: float = 0.0
    r00: float = 0.5
    r01: Optional[float] = None
    haziness: Optional[float] = None
    t_grid: Optional[str] = None
    frag_grid: str = "all"
    h_grid: Optional[str] = None
    n_frag: int = 50
    delta: float = 0.1
    method: str = "auto"
    threads: int = 1
    output: Optional[str] = None

    def validate(self) -> "SweepConfig":
        if self.n_env < 1:
            raise ConfigError("field 'n_env': must be >= 1")
        if self.r01 is not None and self.haziness is not None:
            raise ConfigError("fields 'r01' and 'haziness': give exactly one")
        if not 0.0 < self.delta < 1.0:
            raise ConfigError("field 'delta': must lie in (0, 1)")
        if self.threads < 1:
            raise ConfigError("field 'threads': must be >= 1")
        if self.n_frag < 1:
            raise ConfigError("field 'n_frag': must be >= 1")
        if self.method.replace("-", "_") not in METHODS:
            raise ConfigError(f"field 'method': unknown method {self.method!r}")
        try:
            self.system()
            self.env()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.t_grid is not None:
            self.times()
        parse_frag_grid(self.frag_grid, self.n_env)
        if self.h_grid is not None:
            for h in self.hazinesses():
                if not 0.0 <= h <= 1.0:
                    raise ConfigError(f"field 'h_grid': haziness {h} outside [0, 1]")
        return self

    def system(self) -> SystemQubit:
        return SystemQubit(self.s00, complex(self.s01_re, self.s01_im))

    def env(self, haziness: Optional[float] = None) -> EnvQubit:
        if haziness is not None:
            return make_env_from_haziness(haziness, self.r00)
        if self.r01 is not None:
            return EnvQubit(self.r00, self.r01)
        return make_env_from_haziness(self.haziness or 0.0, self.r00)

    def model(self, haziness: Optional[float] = None) -> ModelConfig:
        return ModelConfig(self.n_env, self.system(), self.env(haziness))

    def times(self, default: str = "pi/2") -> list:
        return parse_grid(self.t_grid or default, parse_time)

    def fragments(self) -> list:
        return parse_frag_grid(self.frag_grid, self.n_env)

    def hazinesses(self) -> list:
        if self.h_grid is None:
            return [self.env().haziness]
        return parse_grid(self.h_grid)

    def to_text(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                continue
            lines.append(f"{f.name} = {v!r}" if isinstance(v, float) else f"{f.name} = {v}")
        return "\n".join(lines) + "\n"


_TYPES = {f.name: f.type for f in fields(SweepConfig)}


def _convert(key: str, raw: str):
    kind = _TYPES[key]
    if "int" in kind:
        return int(raw)
    if "float" in kind:
        return float(raw)
    return raw


def parse_config_text(text: str, source: str = "<config>") -> dict:
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _TYPES:
            raise ConfigError(f"{source}:{lineno}: unknown field {key!r}")
        try:
            values[key] = _convert(key, raw)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: field {key!r}: cannot parse {raw!r}") from None
    return values


def load_config(path: Optional[str] = None, **overrides) -> SweepConfig:
    values = {}
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            values = parse_config_text(fh.read(), path)
    values.update({k: v for k, v in overrides.items() if v is not None})
    # an explicit r01 or haziness on the command line replaces the file's choice
    if overrides.get("r01") is not None and overrides.get("haziness") is None:
        values.pop("haziness", None)
    if overrides.get("haziness") is not None and overrides.get("r01") is None:
        values.pop("r01", None)
    return replace(SweepConfig(), **values).validate()
