"""Report runners: canned figure reproductions plus config-driven sweeps.

Each runner writes deterministic CSV or JSON tables (17-significant-digit
floats, LF line endings) to an output directory, renders a PNG of the same
data unless plotting is switched off, and returns the list of written paths.
CSV runs also write a ``*_meta.json`` sidecar echoing the parameters; JSON
output embeds the same metadata in the file itself.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import plotting
from .config import NEON_DEFAULTS, RunConfig
from .constants import HBAR, K_B, PLANCK
from .decoherence import (
    BathParameters,
    SlitGeometry,
    bath_from_scaled_time,
    flight_time,
    screen_density_exact,
    screen_density_fraunhofer,
    screen_density_selective,
    selective_bracket,
)
from .errors import ValidationError
from .interference import DEFAULT_SCAN_SAMPLES, channel_intensity, sweep_beta
from .metrology import visibility_vs_time
from .serialize import dumps_json, write_csv, write_json
from .states import DetectorOverlapMatrix, PathConfiguration

FIG_NS = (3, 4, 5, 6)
FIG4_TIMES = (0.0, 1.0 / 12.0, 0.25, 0.5, 2.0)
FIG5_T_MAX = 5.0
FIG5_POINTS = 101
BETA_POINTS = 101

_PLOT_SCRIPT = '''\
#!/usr/bin/env python3
"""Replot every CSV table in this directory.

Reads each *.csv (skipping *_meta.json sidecars), treats the first column
as the abscissa and plots every remaining column against it, then saves
<name>_replot.png next to the data.
"""
import csv
import glob
import os

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
for path in sorted(glob.glob(os.path.join(here, "*.csv"))):
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        cols = [[] for _ in header]
        for row in reader:
            for i, cell in enumerate(row):
                cols[i].append(float(cell))
    fig, ax = plt.subplots()
    for name, values in zip(header[1:], cols[1:]):
        ax.plot(cols[0], values, label=name)
    ax.set_xlabel(header[0])
    ax.legend(loc="best")
    fig.tight_layout()
    out = os.path.splitext(path)[0] + "_replot.png"
    fig.savefig(out, dpi=150)
    plt.close(fig)
    print(out)
'''


def _constants() -> dict:
    return {"hbar": HBAR, "k_B": K_B, "h": PLANCK}


def _require_unit_interval(label: str, values) -> None:
    arr = np.asarray(values, dtype=float)
    if np.any(arr < -1e-12) or np.any(arr > 1.0 + 1e-12):
        raise ValidationError(f"{label} column leaves [0, 1]")


def _require_nonnegative(label: str, values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if np.any(arr < -1e-12):
        raise ValidationError(f"{label} column has negative entries")
    return np.clip(arr, 0.0, None)


def _out_dir(out) -> Path:
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_meta(path: Path, meta: dict) -> str:
    text = dumps_json({"meta": meta}) + "\n"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return str(path)


def _write_table(directory: Path, stem: str, fmt: str, meta: dict, columns, rows) -> list[str]:
    if fmt == "json":
        path = directory / f"{stem}.json"
        write_json(path, meta, columns, rows)
        return [str(path)]
    path = directory / f"{stem}.csv"
    write_csv(path, columns, rows)
    return [str(path)]


def neon_geometry(n: int) -> SlitGeometry:
    """Grating/screen layout of the ultracold neon benchmark with n slits."""
    return SlitGeometry(
        n=n,
        ell=NEON_DEFAULTS["geometry.ell"],
        eps=NEON_DEFAULTS["geometry.eps"],
        wavelength=NEON_DEFAULTS["geometry.lambda"],
        L=NEON_DEFAULTS["geometry.L"],
    )


def run_fig2_fig3(
    out,
    ns=FIG_NS,
    beta_points: int = BETA_POINTS,
    samples: int = DEFAULT_SCAN_SAMPLES,
    fmt: str = "csv",
    prefix: str = "fig2",
    plot: bool = True,
) -> list[str]:
    """Visibility and coherence against one-path knowledge, one table per n.

    Rows are ordered by increasing one-path knowledge 1 - beta; columns are
    one_path_knowledge, visibility, coherence.
    """
    directory = _out_dir(out)
    grid = np.linspace(0.0, 1.0, beta_points)
    written: list[str] = []
    columns = ["one_path_knowledge", "visibility", "coherence"]
    for n in ns:
        table = sweep_beta(n, grid, samples=samples)
        _require_unit_interval("visibility", table.visibility)
        _require_unit_interval("coherence", table.coherence)
        order = range(len(grid) - 1, -1, -1)
        rows = [
            (table.one_path_knowledge[i], table.visibility[i], table.coherence[i])
            for i in order
        ]
        meta = {
            "command": prefix,
            "n": n,
            "pi_path": n,
            "beta_points": beta_points,
            "samples": samples,
            "constants": _constants(),
        }
        written += _write_table(directory, f"{prefix}_n{n}", fmt, meta, columns, rows)
        if plot:
            opk = table.one_path_knowledge[::-1]
            written.append(
                plotting.plot_beta_sweep(
                    opk, table.visibility[::-1], table.coherence[::-1], n,
                    directory / f"{prefix}_n{n}.png",
                )
            )
    if fmt == "csv":
        meta = {
            "command": prefix,
            "n": list(ns),
            "beta_points": beta_points,
            "samples": samples,
            "constants": _constants(),
        }
        written.append(_write_meta(directory / f"{prefix}_meta.json", meta))
    return written


def run_fig4(
    out,
    t_over_tau=FIG4_TIMES,
    x_points: int = 2048,
    x_max_fringes: float = 3.0,
    n: int = 4,
    fmt: str = "csv",
    plot: bool = True,
) -> list[str]:
    """Normalized neon screen patterns under selective decoherence.

    One file per scaled time t/tau with columns x, density, bracket.  The
    density column is rho(x, x, t) / rho(0, 0, 0), i.e. normalized by the
    undamped pattern's value at the envelope center.  The bracket column is
    the envelope-free fringe profile, handy for extracting visibilities.
    """
    directory = _out_dir(out)
    geom = neon_geometry(n)
    mass = NEON_DEFAULTS["bath.mass"]
    temperature = NEON_DEFAULTS["bath.temperature"]
    t_flight = flight_time(geom, mass)
    half = x_max_fringes * geom.fringe_width
    x = np.linspace(-half, half, x_points)
    phi = 2.0 * math.pi * geom.ell * x / (geom.wavelength * geom.L)

    bath0 = bath_from_scaled_time(0.0, temperature, mass, geom.ell, t_flight)
    rho_center = screen_density_selective(geom, bath0, t_flight, 0.0, n)
    reference = None
    written: list[str] = []
    columns = ["x", "density", "bracket"]
    for s in t_over_tau:
        bath = bath_from_scaled_time(s, temperature, mass, geom.ell, t_flight)
        density = screen_density_selective(geom, bath, t_flight, x, n) / rho_center
        density = _require_nonnegative("density", density)
        bracket = _require_nonnegative("bracket", selective_bracket(n, s, phi))
        if s == 0.0:
            reference = density
        stem = f"fig4_s{s:g}"
        meta = {
            "command": "fig4",
            "n": n,
            "t_over_tau": float(s),
            "x_points": x_points,
            "x_max_fringes": x_max_fringes,
            "geometry": {
                "ell": geom.ell,
                "eps": geom.eps,
                "lambda": geom.wavelength,
                "L": geom.L,
            },
            "bath": {"mass": mass, "temperature": temperature, "gamma": bath.gamma},
            "flight_time": t_flight,
            "normalization": rho_center,
            "constants": _constants(),
        }
        rows = list(zip(x, density, bracket))
        written += _write_table(directory, stem, fmt, meta, columns, rows)
        if plot:
            if reference is None or s == 0.0:
                curves, labels = [density], ["t/tau = 0"]
            else:
                curves = [reference, density]
                labels = ["t/tau = 0", f"t/tau = {s:g}"]
            written.append(
                plotting.plot_screen_pattern(
                    x, curves, labels, geom.fringe_width, directory / f"{stem}.png"
                )
            )
    if fmt == "csv":
        meta = {
            "command": "fig4",
            "n": n,
            "t_over_tau": [float(s) for s in t_over_tau],
            "x_points": x_points,
            "x_max_fringes": x_max_fringes,
            "flight_time": t_flight,
            "normalization": rho_center,
            "constants": _constants(),
        }
        written.append(_write_meta(directory / "fig4_meta.json", meta))
    return written


def run_fig5(
    out,
    ns=FIG_NS,
    t_max: float = FIG5_T_MAX,
    points: int = FIG5_POINTS,
    samples: int = DEFAULT_SCAN_SAMPLES,
    fmt: str = "csv",
    plot: bool = True,
) -> list[str]:
    """Visibility and coherence against scaled time, one table per n."""
    directory = _out_dir(out)
    grid = np.linspace(0.0, t_max, points)
    written: list[str] = []
    columns = ["t_over_tau", "visibility", "coherence"]
    for n in ns:
        table = visibility_vs_time(n, grid, samples=samples)
        _require_unit_interval("visibility", table.visibility)
        _require_unit_interval("coherence", table.coherence)
        rows = list(zip(table.t_over_tau, table.visibility, table.coherence))
        meta = {
            "command": "fig5",
            "n": n,
            "t_max": t_max,
            "points": points,
            "samples": samples,
            "constants": _constants(),
        }
        written += _write_table(directory, f"fig5_n{n}", fmt, meta, columns, rows)
        if plot:
            written.append(
                plotting.plot_time_sweep(
                    table.t_over_tau, table.visibility, table.coherence, n,
                    directory / f"fig5_n{n}.png",
                )
            )
    if fmt == "csv":
        meta = {
            "command": "fig5",
            "n": list(ns),
            "t_max": t_max,
            "points": points,
            "samples": samples,
            "constants": _constants(),
        }
        written.append(_write_meta(directory / "fig5_meta.json", meta))
    return written


def _normalized_amplitudes(cfg: RunConfig) -> np.ndarray | None:
    if cfg.amplitudes is None:
        return None
    amps = np.asarray(cfg.amplitudes, dtype=float)
    norm = math.sqrt(float(np.sum(amps**2)))
    if norm <= 0.0:
        raise ValidationError("must not be all zero", field="amplitudes")
    return amps / norm


def _custom_paths(cfg: RunConfig) -> tuple[PathConfiguration, DetectorOverlapMatrix]:
    amps = _normalized_amplitudes(cfg)
    if amps is None:
        paths = PathConfiguration.equal(cfg.n, pi_path=cfg.pi_path)
    else:
        paths = PathConfiguration(amps.astype(complex), pi_path=cfg.pi_path)
    return paths, DetectorOverlapMatrix.one_path(cfg.n, cfg.beta)


def _geometry(cfg: RunConfig) -> SlitGeometry:
    g = cfg.geometry
    return SlitGeometry(n=cfg.n, ell=g["ell"], eps=g["eps"], wavelength=g["lambda"], L=g["L"])


def _bath_and_time(cfg: RunConfig, geom: SlitGeometry) -> tuple[BathParameters, float]:
    mass = cfg.bath["mass"]
    temperature = cfg.bath["temperature"]
    t = cfg.time if cfg.time is not None else flight_time(geom, mass)
    if cfg.t_over_tau is not None:
        return bath_from_scaled_time(cfg.t_over_tau, temperature, mass, geom.ell, t), t
    return BathParameters(cfg.bath.get("gamma", 0.0), temperature, mass), t


def _config_echo(cfg: RunConfig) -> dict:
    echo = {
        "mode": cfg.mode,
        "n": cfg.n,
        "beta": cfg.beta,
        "pi_path": cfg.pi_path,
        "samples": cfg.samples,
        "geometry": dict(sorted(cfg.geometry.items())),
        "bath": dict(sorted(cfg.bath.items())),
    }
    if cfg.amplitudes is not None:
        echo["amplitudes"] = list(cfg.amplitudes)
    if cfg.t_over_tau is not None:
        echo["t_over_tau"] = cfg.t_over_tau
    if cfg.time is not None:
        echo["time"] = cfg.time
    echo["constants"] = _constants()
    return echo


def run_custom(cfg: RunConfig, plot: bool = True, emit_script: bool = False) -> list[str]:
    """Dispatch a validated RunConfig to the matching evaluator."""
    if cfg.mode == "scan":
        written = _run_scan(cfg, plot)
    elif cfg.mode == "screen":
        written = _run_screen(cfg, plot)
    else:
        written = _run_decay(cfg, plot)
    if emit_script:
        written.append(write_plot_script(cfg.out_path))
    return written


def _run_scan(cfg: RunConfig, plot: bool) -> list[str]:
    directory = _out_dir(cfg.out_path)
    paths, overlaps = _custom_paths(cfg)
    theta = np.linspace(0.0, 2.0 * math.pi, cfg.samples, endpoint=False)
    intensity = _require_nonnegative("intensity", channel_intensity(paths, overlaps, theta))
    meta = _config_echo(cfg)
    meta["grid_i_max"] = float(np.max(intensity))
    meta["grid_i_min"] = float(np.min(intensity))
    written = _write_table(
        directory, "scan", cfg.out_format, meta,
        ["theta", "intensity"], list(zip(theta, intensity)),
    )
    if cfg.out_format == "csv":
        written.append(_write_meta(directory / "scan_meta.json", meta))
    if plot:
        written.append(
            plotting.plot_phase_scan(theta, intensity, cfg.n, cfg.beta, directory / "scan.png")
        )
    return written


def _run_screen(cfg: RunConfig, plot: bool) -> list[str]:
    directory = _out_dir(cfg.out_path)
    geom = _geometry(cfg)
    bath, t = _bath_and_time(cfg, geom)
    half = cfg.x_max_fringes * geom.fringe_width
    x = np.linspace(-half, half, cfg.x_points)
    if cfg.screen_model == "selective":
        density = screen_density_selective(geom, bath, t, x, cfg.n, _normalized_amplitudes(cfg))
    else:
        paths, overlaps = _custom_paths(cfg)
        evaluate = (
            screen_density_fraunhofer if cfg.screen_model == "fraunhofer" else screen_density_exact
        )
        density = evaluate(geom, paths, overlaps, bath, t, x)
    density = _require_nonnegative("density", density)
    meta = _config_echo(cfg)
    meta["model"] = cfg.screen_model
    meta["x_points"] = cfg.x_points
    meta["x_max_fringes"] = cfg.x_max_fringes
    meta["evolution_time"] = t
    meta["gamma"] = bath.gamma
    written = _write_table(
        directory, "screen", cfg.out_format, meta, ["x", "density"], list(zip(x, density))
    )
    if cfg.out_format == "csv":
        written.append(_write_meta(directory / "screen_meta.json", meta))
    if plot:
        written.append(
            plotting.plot_screen_pattern(
                x, [density], [cfg.screen_model], geom.fringe_width,
                directory / "screen.png", ylabel="density (1/m)",
            )
        )
    return written


def _run_decay(cfg: RunConfig, plot: bool) -> list[str]:
    directory = _out_dir(cfg.out_path)
    grid = np.linspace(0.0, cfg.decay_t_max, cfg.decay_points)
    table = visibility_vs_time(cfg.n, grid, samples=cfg.samples)
    _require_unit_interval("visibility", table.visibility)
    _require_unit_interval("coherence", table.coherence)
    meta = _config_echo(cfg)
    meta["t_max"] = cfg.decay_t_max
    meta["points"] = cfg.decay_points
    written = _write_table(
        directory, "decay", cfg.out_format, meta,
        ["t_over_tau", "visibility", "coherence"],
        list(zip(table.t_over_tau, table.visibility, table.coherence)),
    )
    if cfg.out_format == "csv":
        written.append(_write_meta(directory / "decay_meta.json", meta))
    if plot:
        written.append(
            plotting.plot_decay_table(
                table.t_over_tau, table.visibility, table.coherence, cfg.n,
                directory / "decay.png",
            )
        )
    return written


def write_plot_script(out) -> str:
    """Drop the generic replot script into an output directory."""
    directory = _out_dir(out)
    path = directory / "plot_data.py"
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(_PLOT_SCRIPT)
    return str(path)
