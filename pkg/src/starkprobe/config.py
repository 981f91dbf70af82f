"""Run configuration: unit-suffixed key/value files or JSON.

Text format, one `key = value [unit]` per line, `#` comments:

    omega_c   = 9 GHz
    gamma_c   = 100 kHz
    tau_c     = 1 ns

Frequencies convert to angular (times 2 pi); lengths, times and
capacitances convert to SI.  JSON files hold the same keys with values
either numbers (already SI-angular) or strings parsed like text values.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Union

TWO_PI = 2.0*math.pi


class ConfigError(ValueError):
    """Malformed configuration input."""


# unit -> (scale, is_frequency); frequencies additionally pick up 2 pi
_UNITS = {
    "hz": (1.0, True), "khz": (1e3, True), "mhz": (1e6, True),
    "ghz": (1e9, True),
    "rad/s": (1.0, False),
    "s": (1.0, False), "ms": (1e-3, False), "us": (1e-6, False),
    "ns": (1e-9, False), "ps": (1e-12, False), "fs": (1e-15, False),
    "m": (1.0, False), "mm": (1e-3, False), "um": (1e-6, False),
    "µm": (1e-6, False), "nm": (1e-9, False),
    "f": (1.0, False), "ff": (1e-15, False), "pf": (1e-12, False),
    "f/m": (1.0, False), "pf/m": (1e-12, False),
    "h/m": (1.0, False),
    "ohm": (1.0, False),
    "j": (1.0, False), "ev": (1.602176634e-19, False),
    "1/s": (1.0, False), "photons/s": (1.0, False),
    "m/s": (1.0, False),
}


def parse_quantity(text: str) -> float:
    """Parse '9 GHz' -> 2 pi 9e9, '6.6 um' -> 6.6e-6, '0.25' -> 0.25."""
    parts = str(text).strip().split()
    if not parts:
        raise ConfigError("empty value")
    try:
        value = float(parts[0])
    except ValueError as exc:
        raise ConfigError(f"bad number in {text!r}") from exc
    if len(parts) == 1:
        return value
    if len(parts) > 2:
        raise ConfigError(f"too many tokens in {text!r}")
    unit = parts[1].lower()
    if unit not in _UNITS:
        raise ConfigError(f"unknown unit {parts[1]!r}")
    scale, is_freq = _UNITS[unit]
    value *= scale
    if is_freq:
        value *= TWO_PI
    return value


def load_config(path: Union[str, Path]) -> dict[str, float]:
    """Read a text or JSON config into {key: SI-angular float}."""
    path = Path(path)
    try:
        raw = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".json":
        try:
            data = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad JSON in {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("JSON config must be an object")
        out = {}
        for key, val in data.items():
            if isinstance(val, (int, float)):
                out[str(key)] = float(val)
            elif isinstance(val, str):
                out[str(key)] = parse_quantity(val)
            else:
                raise ConfigError(f"config key {key!r}: unsupported value {val!r}")
        return out
    out = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = body.partition("=")
        try:
            out[key.strip()] = parse_quantity(value)
        except ConfigError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
    return out
