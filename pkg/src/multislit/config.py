"""Run configuration for the custom scan/screen/decay commands.

The configuration is a flat key-value mapping with dotted keys, loadable
from a JSON file and overridable by command-line flags.  Validation
failures name the offending key, e.g. ``geometry.ell: must be positive``.

Keys
----
mode                  "scan" | "screen" | "decay"
n                     path / slit count (int >= 2)
beta                  detector overlap in [0, 1] (default 1.0)
pi_path               1-based index of the pi-phased path, or null (default n)
amplitudes            list of path amplitudes (default equal weights)
samples               phase samples per scan, >= 256 (default 4096)
geometry.ell          slit spacing, m
geometry.eps          slit width, m
geometry.lambda       de Broglie wavelength, m
geometry.L            grating-to-screen distance, m
bath.gamma            bath friction rate, 1/s (absolute-time mode)
bath.temperature      bath temperature, K
bath.mass             particle mass, kg
time.t                evolution time, s (default: flight time L m lambda / h)
time.t_over_tau       scaled time (scaled mode; excludes bath.gamma)
screen.model          "selective" | "fraunhofer" | "exact" (default selective)
screen.x_points       samples across the screen window (default 2048)
screen.x_max_fringes  half-window in fringe widths (default 3.0)
decay.t_max           largest t/tau in a decay table (default 5.0)
decay.points          rows in a decay table (default 101)
output.format         "csv" | "json"
output.path           output directory

Exactly one way of setting the time is allowed: either ``bath.gamma`` (with
an optional ``time.t``) or ``time.t_over_tau``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import ConfigError

# Ultracold neon-atom benchmark: 20Ne mass, 2.5 mK source, 18 nm de Broglie
# wavelength, 6 um slit spacing, 2 um slit width, 37 mm slit-screen drop.
NEON_DEFAULTS = {
    "bath.mass": 3.349e-26,
    "bath.temperature": 2.5e-3,
    "geometry.lambda": 0.018e-6,
    "geometry.ell": 6e-6,
    "geometry.eps": 2e-6,
    "geometry.L": 37e-3,
}

MODES = ("scan", "screen", "decay")
SCREEN_MODELS = ("selective", "fraunhofer", "exact")
FORMATS = ("csv", "json")


def _positive(key: str, value) -> float:
    value = _number(key, value)
    if value <= 0.0:
        raise ConfigError("must be positive", field=key)
    return value


def _nonnegative(key: str, value) -> float:
    value = _number(key, value)
    if value < 0.0:
        raise ConfigError("must be nonnegative", field=key)
    return value


def _number(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"expected a number, got {value!r}", field=key)
    return float(value)


def _integer(key: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"expected an integer, got {value!r}", field=key)
    if value < minimum:
        raise ConfigError(f"must be at least {minimum}", field=key)
    return value


@dataclass
class RunConfig:
    """Validated parameters for one custom run."""

    mode: str
    n: int
    beta: float
    pi_path: int | None
    amplitudes: list[float] | None
    samples: int
    geometry: dict[str, float]
    bath: dict[str, float]
    t_over_tau: float | None
    time: float | None
    screen_model: str
    x_points: int
    x_max_fringes: float
    decay_t_max: float
    decay_points: int
    out_format: str
    out_path: str
    raw: dict = field(default_factory=dict)


def load_config_file(path) -> dict:
    """Read a flat JSON mapping of dotted keys."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError:
        raise
    except json.JSONDecodeError as exc:
        raise ConfigError(f"not valid JSON ({exc})", field=str(path))
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object", field=str(path))
    for key in data:
        if not isinstance(key, str):
            raise ConfigError(f"non-string key {key!r}", field=str(path))
    return data


_KNOWN_KEYS = {
    "mode", "n", "beta", "pi_path", "amplitudes", "samples",
    "geometry.ell", "geometry.eps", "geometry.lambda", "geometry.L",
    "bath.gamma", "bath.temperature", "bath.mass",
    "time.t", "time.t_over_tau",
    "screen.model", "screen.x_points", "screen.x_max_fringes",
    "decay.t_max", "decay.points",
    "output.format", "output.path",
}


def resolve(mode: str, file_values: dict | None = None, overrides: dict | None = None) -> RunConfig:
    """Merge file values and overrides into a validated RunConfig.

    ``overrides`` (from command-line flags) win over ``file_values``; keys
    set to None in overrides are ignored.
    """
    merged: dict = dict(NEON_DEFAULTS)
    for source in (file_values or {}), (overrides or {}):
        for key, value in source.items():
            if value is None:
                continue
            if key not in _KNOWN_KEYS:
                raise ConfigError("unknown configuration key", field=key)
            merged[key] = value

    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}; expected one of {MODES}", field="mode")

    n = _integer("n", merged.get("n", 4), 2)
    beta = _number("beta", merged.get("beta", 1.0))
    if not 0.0 <= beta <= 1.0:
        raise ConfigError("must lie in [0, 1]", field="beta")

    pi_path = merged.get("pi_path", n)
    if pi_path is not None:
        pi_path = _integer("pi_path", pi_path, 1)
        if pi_path > n:
            raise ConfigError(f"path index {pi_path} exceeds n = {n}", field="pi_path")

    amplitudes = merged.get("amplitudes")
    if amplitudes is not None:
        if not isinstance(amplitudes, (list, tuple)):
            raise ConfigError("expected a list of numbers", field="amplitudes")
        amplitudes = [_number("amplitudes", a) for a in amplitudes]
        if len(amplitudes) != n:
            raise ConfigError(f"expected {n} entries", field="amplitudes")

    samples = _integer("samples", merged.get("samples", 4096), 256)

    geometry = {
        "ell": _positive("geometry.ell", merged["geometry.ell"]),
        "eps": _positive("geometry.eps", merged["geometry.eps"]),
        "lambda": _positive("geometry.lambda", merged["geometry.lambda"]),
        "L": _positive("geometry.L", merged["geometry.L"]),
    }
    bath = {
        "temperature": _positive("bath.temperature", merged["bath.temperature"]),
        "mass": _positive("bath.mass", merged["bath.mass"]),
    }

    has_gamma = "bath.gamma" in merged
    has_scaled = "time.t_over_tau" in merged
    if has_gamma and has_scaled:
        raise ConfigError(
            "set either bath.gamma (absolute mode) or time.t_over_tau (scaled mode), not both",
            field="time.t_over_tau",
        )
    t_over_tau = None
    if has_scaled:
        t_over_tau = _nonnegative("time.t_over_tau", merged["time.t_over_tau"])
    if has_gamma:
        bath["gamma"] = _nonnegative("bath.gamma", merged["bath.gamma"])
    time_abs = None
    if "time.t" in merged:
        time_abs = _positive("time.t", merged["time.t"])

    screen_model = merged.get("screen.model", "selective")
    if screen_model not in SCREEN_MODELS:
        raise ConfigError(f"expected one of {SCREEN_MODELS}", field="screen.model")

    out_format = merged.get("output.format", "csv")
    if out_format not in FORMATS:
        raise ConfigError(f"expected one of {FORMATS}", field="output.format")
    out_path = merged.get("output.path", "out")
    if not isinstance(out_path, str) or not out_path:
        raise ConfigError("expected a non-empty path", field="output.path")

    return RunConfig(
        mode=mode,
        n=n,
        beta=beta,
        pi_path=pi_path,
        amplitudes=amplitudes,
        samples=samples,
        geometry=geometry,
        bath=bath,
        t_over_tau=t_over_tau,
        time=time_abs,
        screen_model=screen_model,
        x_points=_integer("screen.x_points", merged.get("screen.x_points", 2048), 16),
        x_max_fringes=_positive("screen.x_max_fringes", merged.get("screen.x_max_fringes", 3.0)),
        decay_t_max=_positive("decay.t_max", merged.get("decay.t_max", 5.0)),
        decay_points=_integer("decay.points", merged.get("decay.points", 101), 2),
        out_format=out_format,
        out_path=out_path,
        raw=merged,
    )
