"""Operational coherence estimates and their behavior under decoherence.

Two protocols recover the l1-norm coherence from measurable intensities:

* peak ratio: compare the primary interference maximum against the flat
  pattern of fully distinguished paths.  Valid only when no path carries a
  constrained phase; the pi flag moves the primary maximum and breaks the
  identity, so the runner refuses such configurations.
* pairwise visibility: sum the two-slit visibilities of every path pair,
  weighting pairs against their combined intensity.

Under n-th-path-only decoherence with equal weights, coherence decays as

    C(t) = (n - 2)/n + (2 / (n (n - 1))) sum_{j=1}^{n-1} exp(-(n - j)^2 t/tau)

towards the plateau (n - 2)/n held up by the untouched n - 1 coherent paths,
while the fringe visibility of the same pattern can rise: visibility_vs_time
tabulates both sides of that trade-off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._search import golden_section_argmax, refine_grid_extrema
from .decoherence import selective_bracket
from .errors import (
    DimensionMismatchError,
    NormalizationError,
    ProtocolError,
    ValidationError,
)
from .interference import DEFAULT_SCAN_SAMPLES, MIN_SCAN_SAMPLES, channel_intensity
from .states import DetectorOverlapMatrix, PathConfiguration


@dataclass(frozen=True)
class ProtocolResult:
    """Outcome of a coherence-measurement protocol.

    ``inputs_digest`` records the measured quantities the estimate was
    computed from (intensities or per-pair visibilities).
    """

    method: str
    value: float
    inputs_digest: dict

    def __post_init__(self):
        if self.method not in ("peak-ratio", "pairwise"):
            raise ValidationError(f"unknown protocol {self.method!r}")
        if not -1e-10 <= self.value <= 1.0 + 1e-10:
            raise ValidationError(f"protocol value {self.value!r} outside [0, 1]")


def peak_ratio_coherence(i_parallel_max: float, i_perp_max: float, n: int) -> float:
    """Coherence estimate (I_par - I_perp) / (I_perp (n - 1)).

    ``i_parallel_max`` is the primary maximum with all detector states
    aligned, ``i_perp_max`` the intensity at the same screen location with
    the paths fully distinguished.
    """
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    if i_perp_max <= 0.0:
        raise ValidationError("reference intensity must be positive")
    return (i_parallel_max - i_perp_max) / (i_perp_max * (n - 1))


def run_peak_ratio_protocol(
    paths: PathConfiguration,
    overlaps: DetectorOverlapMatrix,
    samples: int = DEFAULT_SCAN_SAMPLES,
) -> ProtocolResult:
    """Simulate the peak-ratio protocol on a phase-scanned channel.

    Scans the intensity of the configured beam for its primary maximum,
    reads the fully-distinguished intensity at the same phase and forms the
    peak-ratio estimate.  Raises ProtocolError when any path carries a
    constrained phase (the pi flag or a nonzero offset): the primary
    maximum is then displaced and the protocol's identity fails.
    """
    if paths.pi_path is not None or np.any(paths.phases != 0.0):
        raise ProtocolError(
            "peak-ratio protocol requires unconstrained path phases; "
            "remove the pi flag and phase offsets"
        )
    if samples < MIN_SCAN_SAMPLES:
        raise ValidationError(f"samples = {samples} below the minimum of {MIN_SCAN_SAMPLES}")
    grid = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    values = channel_intensity(paths, overlaps, grid)
    step = grid[1] - grid[0]
    i_best = int(values.argmax())

    def f(th: float) -> float:
        return channel_intensity(paths, overlaps, th)

    theta_peak, refined = golden_section_argmax(f, grid[i_best] - step, grid[i_best] + step)
    if values[i_best] >= refined:
        theta_peak, refined = float(grid[i_best]), float(values[i_best])
    perp = DetectorOverlapMatrix.identity(paths.n)
    i_perp = channel_intensity(paths, perp, theta_peak)
    value = peak_ratio_coherence(refined, i_perp, paths.n)
    digest = {
        "i_parallel_max": float(refined),
        "i_perp_max": float(i_perp),
        "theta_peak": float(theta_peak),
    }
    return ProtocolResult("peak-ratio", float(value), digest)


def pairwise_visibility_coherence(amplitudes, damping, n: int) -> float:
    """Coherence from summed two-slit visibilities.

    Pairs among the first n - 1 paths keep visibility 2 |c_j| |c_k| /
    (|c_j|^2 + |c_k|^2); pairs (j, n) are damped by the factors in
    ``damping`` (length n - 1, values in (0, 1]).  The unordered pair sum
    is normalized by n (n - 1) / 2.
    """
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    mags = np.abs(np.atleast_1d(np.asarray(amplitudes, dtype=complex)))
    if mags.size != n:
        raise DimensionMismatchError(f"expected {n} amplitudes, got {mags.size}")
    norm = float(np.sum(mags**2))
    if abs(norm - 1.0) > 1e-12:
        raise NormalizationError(f"sum |c_j|^2 = {norm:.17g}, expected 1")
    f = np.asarray(damping, dtype=float)
    if f.shape != (n - 1,):
        raise DimensionMismatchError(f"expected {n - 1} damping factors, got shape {f.shape}")
    if np.any(f <= 0.0) or np.any(f > 1.0):
        raise ValidationError("damping factors must lie in (0, 1]")

    def pair_vis(a: float, b: float) -> float:
        denom = a * a + b * b
        return 0.0 if denom == 0.0 else 2.0 * a * b / denom

    total = 0.0
    for j in range(1, n):
        for k in range(j + 1, n):
            total += pair_vis(mags[j - 1], mags[k - 1])
    for j in range(1, n):
        total += pair_vis(mags[j - 1], mags[n - 1]) * f[j - 1]
    return 2.0 * total / (n * (n - 1))


def run_pairwise_protocol(amplitudes, damping, n: int) -> ProtocolResult:
    """Pairwise protocol with a digest of the individual pair visibilities."""
    value = pairwise_visibility_coherence(amplitudes, damping, n)
    mags = np.abs(np.atleast_1d(np.asarray(amplitudes, dtype=complex)))
    f = np.asarray(damping, dtype=float)
    digest: dict[str, float] = {}
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            a, b = mags[j - 1], mags[k - 1]
            denom = a * a + b * b
            vis = 0.0 if denom == 0.0 else 2.0 * a * b / denom
            if k == n:
                vis *= f[j - 1]
            digest[f"{j},{k}"] = float(vis)
    return ProtocolResult("pairwise", float(value), digest)


def coherence_decay(n: int, t_over_tau):
    """Equal-weight coherence under n-th-path-only decoherence.

    (n - 2)/n + (2 / (n (n - 1))) sum_{j=1}^{n-1} exp(-(n - j)^2 t/tau);
    decays from 1 at t = 0 to the plateau (n - 2)/n.
    """
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    s = np.asarray(t_over_tau, dtype=float)
    if np.any(s < 0.0):
        raise ValidationError("t_over_tau must be nonnegative")
    tail = np.zeros(s.shape)
    for j in range(1, n):
        tail = tail + np.exp(-((n - j) ** 2) * s)
    out = (n - 2.0) / n + 2.0 * tail / (n * (n - 1.0))
    return float(out) if s.ndim == 0 else out


def bracket_visibility(
    n: int, t_over_tau: float, samples: int = DEFAULT_SCAN_SAMPLES
) -> float:
    """Fringe visibility of the selective-decoherence profile at one time.

    Scans one fringe period phi in [0, 2 pi) with the envelope removed,
    refining both extrema; accurate to better than 1e-6.
    """
    if samples < MIN_SCAN_SAMPLES:
        raise ValidationError(f"samples = {samples} below the minimum of {MIN_SCAN_SAMPLES}")
    grid = np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False)
    values = selective_bracket(n, t_over_tau, grid)

    def f(ph: float) -> float:
        return selective_bracket(n, t_over_tau, ph)

    hi, lo = refine_grid_extrema(f, grid, values)
    if lo < -1e-12:
        raise ValidationError(f"fringe profile turned negative ({lo:.3e})")
    lo = max(lo, 0.0)
    return 0.0 if hi <= 0.0 else (hi - lo) / (hi + lo)


@dataclass(frozen=True)
class TimeSweepTable:
    """Visibility and coherence across a grid of scaled times t / tau."""

    n: int
    t_over_tau: np.ndarray
    visibility: np.ndarray
    coherence: np.ndarray

    def __post_init__(self):
        for name in ("t_over_tau", "visibility", "coherence"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if not (self.t_over_tau.shape == self.visibility.shape == self.coherence.shape):
            raise DimensionMismatchError("all sweep columns must share one length")
        if np.any(self.t_over_tau < 0.0) or np.any(np.diff(self.t_over_tau) <= 0.0):
            raise ValidationError("time grid must be nonnegative and strictly increasing")
        expected = coherence_decay(self.n, self.t_over_tau)
        if np.any(np.abs(self.coherence - expected) > 1e-12):
            raise ValidationError("coherence column disagrees with the decay law")
        if np.any(self.visibility < 0.0) or np.any(self.visibility > 1.0):
            raise ValidationError("visibility column outside [0, 1]")


def visibility_vs_time(
    n: int, t_over_tau_grid, samples: int = DEFAULT_SCAN_SAMPLES
) -> TimeSweepTable:
    """Tabulate visibility and coherence over a scaled-time grid."""
    grid = np.asarray(t_over_tau_grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2:
        raise ValidationError("time grid must hold at least two values")
    visibility = np.array([bracket_visibility(n, s, samples) for s in grid])
    coherence = coherence_decay(n, grid)
    return TimeSweepTable(n, grid, visibility, coherence)
