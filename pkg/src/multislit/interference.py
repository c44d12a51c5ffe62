"""Output-channel intensity and fringe visibility under a phase scan.

The interferometer ramps the path phases as phi_k = k * theta (plus any
constant offsets and the pi flag from the PathConfiguration) and records
the intensity in one output channel,

    I(theta) = 1 + sum_{j != k} |c_j| |c_k| Re[ O_jk exp(i (phi_j - phi_k)) ],

normalized so a fully dephased beam gives 1 at every theta.  Visibility is
(I_max - I_min) / (I_max + I_min) over one period, with the grid extrema
refined by golden-section search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._search import refine_grid_extrema
from .errors import DimensionMismatchError, ValidationError
from .states import (
    DetectorOverlapMatrix,
    PathConfiguration,
    _check_one_path_domain,
    coherence_closed_form,
)

MIN_SCAN_SAMPLES = 256
DEFAULT_SCAN_SAMPLES = 4096
INTENSITY_FLOOR = -1e-12


def channel_intensity(
    paths: PathConfiguration,
    overlaps: DetectorOverlapMatrix,
    theta: float | np.ndarray,
):
    """Intensity at phase-ramp parameter theta (scalar or array).

    Nonnegative for every valid overlap matrix: the sum equals a quadratic
    form of the Gram matrix with the vector w_j = |c_j| exp(-i phi_j).
    """
    if paths.n != overlaps.n:
        raise DimensionMismatchError(
            f"{paths.n} paths but a {overlaps.n} x {overlaps.n} overlap matrix"
        )
    th = np.asarray(theta, dtype=float)
    mags = np.abs(paths.amplitudes)
    base = paths.effective_phases()
    total = np.ones(th.shape)
    for j in range(paths.n):
        for k in range(j + 1, paths.n):
            delta = (j - k) * th + (base[j] - base[k])
            cross = (overlaps.entries[j, k] * np.exp(1j * delta)).real
            total = total + 2.0 * mags[j] * mags[k] * cross
    return float(total) if th.ndim == 0 else total


def intensity_n3(beta: float, theta):
    """Three-path one-path-knowledge pattern.

    1 + (2 (1 - beta) / 3) cos(theta) - (2 beta / 3) cos(2 theta)
    """
    _check_one_path_domain(3, beta)
    th = np.asarray(theta, dtype=float)
    out = 1.0 + (2.0 * (1.0 - beta) / 3.0) * np.cos(th) - (2.0 * beta / 3.0) * np.cos(2.0 * th)
    return float(out) if th.ndim == 0 else out


def intensity_n4(beta: float, theta):
    """Four-path one-path-knowledge pattern.

    1 + ((2 - beta)/2) cos(theta) + ((1 - beta)/2) cos(2 theta)
      - (beta/2) cos(3 theta)
    """
    _check_one_path_domain(4, beta)
    th = np.asarray(theta, dtype=float)
    out = (
        1.0
        + ((2.0 - beta) / 2.0) * np.cos(th)
        + ((1.0 - beta) / 2.0) * np.cos(2.0 * th)
        - (beta / 2.0) * np.cos(3.0 * th)
    )
    return float(out) if th.ndim == 0 else out


def closed_form_intensity(n: int, beta: float, theta):
    """General one-path-knowledge pattern for n >= 3.

    The coherent block of the first n - 1 paths contributes
    (2/n) sum_{d=1}^{n-2} (n - 1 - d) cos(d theta); the pi-phased n-th path
    subtracts (2 beta / n) [cos((n-1) theta) + cos((n-1) theta / 2)
    sin((n-2) theta / 2) / sin(theta / 2)], with the removable singularity
    at sin(theta/2) = 0 filled by its limit n - 2.
    """
    _check_one_path_domain(n, beta)
    if n < 3:
        raise ValidationError(f"closed form requires n >= 3, got {n}")
    th = np.asarray(theta, dtype=float)
    coherent = np.zeros(th.shape)
    for d in range(1, n - 1):
        coherent = coherent + (n - 1 - d) * np.cos(d * th)
    half_sin = np.sin(th / 2.0)
    safe = np.where(half_sin == 0.0, 1.0, half_sin)
    ratio = np.cos((n - 1) * th / 2.0) * np.sin((n - 2) * th / 2.0) / safe
    ratio = np.where(half_sin == 0.0, float(n - 2), ratio)
    out = 1.0 + (2.0 / n) * coherent - (2.0 * beta / n) * (np.cos((n - 1) * th) + ratio)
    return float(out) if th.ndim == 0 else out


def one_path_configuration(
    n: int, beta: float, pi_phase: bool = True
) -> tuple[PathConfiguration, DetectorOverlapMatrix]:
    """Equal-amplitude paths plus the one-path-knowledge overlap matrix."""
    paths = PathConfiguration.equal(n, pi_path=n if pi_phase else None)
    return paths, DetectorOverlapMatrix.one_path(n, beta)


@dataclass(frozen=True)
class FringeScan:
    """Sampled intensity over one scan period with refined extrema."""

    axis: str
    abscissa: np.ndarray
    intensity: np.ndarray
    i_max: float
    i_min: float
    visibility: float

    def __post_init__(self):
        if self.axis not in ("phase", "screen"):
            raise ValidationError(f"unknown scan axis {self.axis!r}")
        absc = np.asarray(self.abscissa, dtype=float)
        vals = np.asarray(self.intensity, dtype=float)
        object.__setattr__(self, "abscissa", absc)
        object.__setattr__(self, "intensity", vals)
        if absc.shape != vals.shape or absc.ndim != 1:
            raise DimensionMismatchError("abscissa and intensity must be equal-length 1-d arrays")
        if self.axis == "phase":
            step = 2.0 * math.pi / absc.size
            expected = step * np.arange(absc.size)
            if absc[0] != 0.0 or not np.allclose(absc, expected, atol=1e-9, rtol=0.0):
                raise ValidationError("phase scans must cover [0, 2 pi) uniformly from 0")
        if float(vals.min()) < INTENSITY_FLOOR:
            raise ValidationError(
                f"negative intensity sample ({float(vals.min()):.3e}) below tolerance"
            )
        if not (self.i_max >= self.i_min >= 0.0):
            raise ValidationError("extrema must satisfy i_max >= i_min >= 0")
        if not 0.0 <= self.visibility <= 1.0:
            raise ValidationError(f"visibility {self.visibility!r} outside [0, 1]")
        denom = self.i_max + self.i_min
        ratio = 0.0 if denom == 0.0 else (self.i_max - self.i_min) / denom
        if abs(self.visibility - ratio) > 1e-9:
            raise ValidationError("visibility is inconsistent with the recorded extrema")


def _scan(f, grid: np.ndarray, values: np.ndarray, axis: str) -> FringeScan:
    i_max, i_min = refine_grid_extrema(f, grid, values)
    if i_min < INTENSITY_FLOOR:
        raise ValidationError(f"scan found negative intensity {i_min:.3e}")
    i_min = max(i_min, 0.0)  # clip rounding residue of exact zeros
    visibility = 0.0 if i_max <= 0.0 else (i_max - i_min) / (i_max + i_min)
    return FringeScan(axis, grid, values, i_max, i_min, visibility)


def scan_phase(
    n: int,
    beta: float,
    samples: int = DEFAULT_SCAN_SAMPLES,
    pi_phase: bool = True,
) -> FringeScan:
    """Scan the one-path-knowledge pattern over theta in [0, 2 pi).

    The visibility of the returned scan is accurate to better than 1e-6.
    """
    if samples < MIN_SCAN_SAMPLES:
        raise ValidationError(f"samples = {samples} below the minimum of {MIN_SCAN_SAMPLES}")
    paths, overlaps = one_path_configuration(n, beta, pi_phase)
    grid = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    values = channel_intensity(paths, overlaps, grid)

    def f(th: float) -> float:
        return channel_intensity(paths, overlaps, th)

    return _scan(f, grid, values, "phase")


@dataclass(frozen=True)
class BetaSweepTable:
    """Visibility and coherence across a grid of overlap values beta."""

    n: int
    beta: np.ndarray
    one_path_knowledge: np.ndarray
    visibility: np.ndarray
    coherence: np.ndarray

    def __post_init__(self):
        for name in ("beta", "one_path_knowledge", "visibility", "coherence"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not (self.beta.shape == self.one_path_knowledge.shape == self.visibility.shape == self.coherence.shape):
            raise DimensionMismatchError("all sweep columns must share one length")
        if np.any(np.diff(self.beta) <= 0.0):
            raise ValidationError("beta grid must be strictly increasing")
        if self.beta[0] < 0.0 or self.beta[-1] > 1.0:
            raise ValidationError("beta grid must lie inside [0, 1]")
        if np.any(np.abs(self.one_path_knowledge - (1.0 - self.beta)) > 1e-12):
            raise ValidationError("one_path_knowledge column must equal 1 - beta")
        expected = np.array([coherence_closed_form(self.n, b) for b in self.beta])
        if np.any(np.abs(self.coherence - expected) > 1e-12):
            raise ValidationError("coherence column disagrees with the closed form")
        if np.any(self.visibility < 0.0) or np.any(self.visibility > 1.0):
            raise ValidationError("visibility column outside [0, 1]")


def sweep_beta(
    n: int,
    grid,
    samples: int = DEFAULT_SCAN_SAMPLES,
    pi_phase: bool = True,
) -> BetaSweepTable:
    """Visibility and closed-form coherence over an increasing beta grid."""
    beta = np.asarray(grid, dtype=float)
    if beta.ndim != 1 or beta.size < 2:
        raise ValidationError("beta grid must hold at least two values")
    if np.any(beta < 0.0) or np.any(beta > 1.0):
        raise ValidationError("beta grid must lie inside [0, 1]")
    if np.any(np.diff(beta) <= 0.0):
        raise ValidationError("beta grid must be strictly increasing")
    visibility = np.array([scan_phase(n, b, samples, pi_phase).visibility for b in beta])
    coherence = np.array([coherence_closed_form(n, b) for b in beta])
    return BetaSweepTable(n, beta, 1.0 - beta, visibility, coherence)
