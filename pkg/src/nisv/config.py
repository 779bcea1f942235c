"""Run configuration: defaults, ``key = value`` files, and overrides."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .errors import ConfigError

ENV_VAR = "NISV_CONFIG"


@dataclass(frozen=True)
class Config:
    order: int = 256
    lambda_samples: int = 64
    delta: float = 1.0
    tol_exact: float = 0.0
    tol_algebraic: float = 1e-10
    tol_finite: float = 1e-6
    tol_infinite: float = 1e-3
    tol_contain: float = 1e-4
    negative_floor: float = 0.05
    seed: int = 17
    dps: int = 60
    record_timing: bool = False

    def __post_init__(self):
        if self.order < 8:
            raise ConfigError("order must be at least 8")
        if self.lambda_samples < 1:
            raise ConfigError("lambda_samples must be positive")
        if self.delta <= 0:
            raise ConfigError("delta must be positive")
        for name in ("tol_exact", "tol_algebraic", "tol_finite", "tol_infinite", "tol_contain", "negative_floor"):
            if getattr(self, name) < 0:
                raise ConfigError(f"{name} must be nonnegative")
        if self.dps < 16:
            raise ConfigError("dps must be at least 16")

    def with_overrides(self, **kw) -> "Config":
        kw = {k: v for k, v in kw.items() if v is not None}
        unknown = set(kw) - {f.name for f in fields(self)}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return replace(self, **{k: _coerce(k, v) for k, v in kw.items()})

    def as_dict(self) -> dict:
        return asdict(self)


_TYPES = {f.name: f.type for f in fields(Config)}


def _coerce(key: str, value):
    kind = _TYPES[key]
    try:
        if kind == "bool":
            if isinstance(value, bool):
                return value
            text = str(value).strip().lower()
            if text in ("1", "true", "yes", "on"):
                return True
            if text in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        if kind == "int":
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(str(value).strip()) if not isinstance(value, (int, float)) else int(value)
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid value for {key}: {value!r}") from exc


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in _TYPES:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        out[key] = _coerce(key, value)
    return out


def load_config(path: str | os.PathLike | None = None, **overrides) -> Config:
    """Defaults, then the file (``path`` or ``$NISV_CONFIG``), then overrides."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    values = {}
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        values = parse_config_text(text)
    return Config().with_overrides(**values).with_overrides(**overrides)
