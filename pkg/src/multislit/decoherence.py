"""Momentum-diffusion decoherence of an n-slit pattern on a distant screen.

A particle of mass m crosses an n-slit grating (slit spacing ell, Gaussian
slit width eps) and flies a distance L to the screen while weakly coupled
to a thermal bath of harmonic oscillators (friction gamma, temperature T).
The bath decoheres path superpositions at the momentum-diffusion rate set by

    D = 2 m gamma k_B T,

and a pair of paths j, k separated by (j - k) ell loses fringe contrast as

    f_jk(t) = exp(-D (j - k)^2 ell^2 t / (12 hbar^2)),

so the pair decoherence time tau_jk = 12 hbar^2 / (D (j - k)^2 ell^2) falls
off with the square of the separation.  Widely separated pairs die first.

Screen densities come in four flavors: the full per-slit-envelope form, the
far-field (Fraunhofer) form with a common envelope, and two path-selective
variants in which the bath couples to the n-th path only while the first
n - 1 paths stay mutually coherent (the n-th path also carries the pi phase
of the one-path-knowledge convention, folded in as an explicit minus sign).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import HBAR, K_B, PLANCK
from .errors import (
    DimensionMismatchError,
    FraunhoferLimitError,
    NormalizationError,
    ValidationError,
)
from .states import DetectorOverlapMatrix, PathConfiguration

FRAUNHOFER_MAX_RATIO = 0.1
# Below this value of gamma * t the closed form for the spreading width
# cancels catastrophically and a cubic-order series takes over.
SERIES_SWITCHOVER = 1e-3


@dataclass(frozen=True)
class BathParameters:
    """Ohmic-bath coupling: friction rate, temperature and particle mass.

    gamma = 0 is admitted as the decoherence-free limit (then D = 0 and all
    pair factors stay 1); temperature and mass must be positive.
    """

    gamma: float
    temperature: float
    mass: float

    def __post_init__(self):
        if self.gamma < 0.0:
            raise ValidationError("gamma must be nonnegative", field="bath.gamma")
        if self.temperature <= 0.0:
            raise ValidationError("temperature must be positive", field="bath.temperature")
        if self.mass <= 0.0:
            raise ValidationError("mass must be positive", field="bath.mass")

    @property
    def diffusion(self) -> float:
        """Momentum-diffusion coefficient D = 2 m gamma k_B T."""
        return 2.0 * self.mass * self.gamma * K_B * self.temperature

    @classmethod
    def from_diffusion(cls, diffusion: float, temperature: float, mass: float) -> "BathParameters":
        """Bath with the friction rate implied by a target D."""
        if diffusion < 0.0:
            raise ValidationError("diffusion coefficient must be nonnegative")
        gamma = diffusion / (2.0 * mass * K_B * temperature)
        return cls(gamma, temperature, mass)


def diffusion_coefficient(bath: BathParameters) -> float:
    """Momentum-diffusion coefficient D = 2 m gamma k_B T of a bath."""
    return bath.diffusion


@dataclass(frozen=True)
class SlitGeometry:
    """Grating and screen layout, all lengths in meters.

    Slit j sits at position j * ell for j = 1..n; eps is the Gaussian slit
    width, wavelength the de Broglie wavelength at the selected speed and L
    the grating-to-screen distance.
    """

    n: int
    ell: float
    eps: float
    wavelength: float
    L: float

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValidationError("slit count must be a positive integer", field="geometry.n")
        for name in ("ell", "eps", "wavelength", "L"):
            if getattr(self, name) <= 0.0:
                raise ValidationError("must be positive", field=f"geometry.{name}")

    @property
    def fringe_width(self) -> float:
        """Spacing wavelength * L / ell of nearest-pair fringes on the screen."""
        return self.wavelength * self.L / self.ell

    @property
    def envelope_scale(self) -> float:
        """Far-field envelope scale wavelength * L / pi (units m^2)."""
        return self.wavelength * self.L / math.pi

    @property
    def fraunhofer_ratio(self) -> float:
        """eps * ell / (wavelength * L); far field requires < 0.1."""
        return self.eps * self.ell / (self.wavelength * self.L)

    @property
    def centroid(self) -> float:
        """Center ell (n + 1) / 2 of the slit array."""
        return self.ell * (self.n + 1) / 2.0

    def require_fraunhofer(self) -> None:
        ratio = self.fraunhofer_ratio
        if not ratio < FRAUNHOFER_MAX_RATIO:
            raise FraunhoferLimitError(
                f"eps * ell / (wavelength * L) = {ratio:.4g} "
                f"but the far-field evaluators require < {FRAUNHOFER_MAX_RATIO}"
            )


def flight_time(geom: SlitGeometry, mass: float) -> float:
    """Grating-to-screen flight time L m wavelength / h.

    Follows from L / v with the de Broglie relation v = h / (m wavelength).
    """
    if mass <= 0.0:
        raise ValidationError("mass must be positive", field="bath.mass")
    return geom.L * mass * geom.wavelength / PLANCK


def decoherence_time(D: float, ell: float, j: int, k: int) -> float:
    """Pair decoherence time 12 hbar^2 / (D (j - k)^2 ell^2).

    Returns inf for the decoherence-free bath D = 0.
    """
    if j == k:
        raise ValidationError("decoherence time is undefined for a path paired with itself")
    if D < 0.0 or ell <= 0.0:
        raise ValidationError("need D >= 0 and ell > 0")
    if D == 0.0:
        return math.inf
    return 12.0 * HBAR**2 / (D * (j - k) ** 2 * ell**2)


def pair_decoherence_factor(D: float, ell: float, t: float, j: int, k: int) -> float:
    """Fringe damping exp(-D (j - k)^2 ell^2 t / (12 hbar^2)) of pair (j, k)."""
    if t < 0.0:
        raise ValidationError("time must be nonnegative")
    if D < 0.0 or ell <= 0.0:
        raise ValidationError("need D >= 0 and ell > 0")
    return math.exp(-D * (j - k) ** 2 * ell**2 * t / (12.0 * HBAR**2))


@dataclass(frozen=True)
class DecoherenceSchedule:
    """Per-pair damping factors and time scales for an n-slit grating.

    ``factors`` and ``times`` are symmetric n x n arrays; the diagonal holds
    1 and inf respectively.
    """

    n: int
    factors: np.ndarray
    times: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.factors, dtype=float)
        tau = np.asarray(self.times, dtype=float)
        object.__setattr__(self, "factors", f)
        object.__setattr__(self, "times", tau)
        if f.shape != (self.n, self.n) or tau.shape != (self.n, self.n):
            raise DimensionMismatchError("schedule arrays must be n x n")
        if not np.allclose(f, f.T) or not np.array_equal(tau, tau.T):
            raise ValidationError("schedule arrays must be symmetric")
        off = ~np.eye(self.n, dtype=bool)
        if np.any(f[off] <= 0.0) or np.any(f[off] > 1.0):
            raise ValidationError("pair factors must lie in (0, 1]")
        if np.any(np.diag(f) != 1.0):
            raise ValidationError("diagonal factors must equal 1")

    @classmethod
    def from_bath(cls, bath: BathParameters, ell: float, n: int, t: float) -> "DecoherenceSchedule":
        D = bath.diffusion
        factors = np.ones((n, n))
        times = np.full((n, n), math.inf)
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                factors[j - 1, k - 1] = factors[k - 1, j - 1] = pair_decoherence_factor(D, ell, t, j, k)
                times[j - 1, k - 1] = times[k - 1, j - 1] = decoherence_time(D, ell, j, k)
        return cls(n, factors, times)

    def pair_times(self) -> dict[tuple[int, int], float]:
        """Time scale per unordered pair (1-based indices), n (n - 1) / 2 entries."""
        return {
            (j, k): float(self.times[j - 1, k - 1])
            for j in range(1, self.n + 1)
            for k in range(j + 1, self.n + 1)
        }

    def selective_factors(self) -> np.ndarray:
        """Damping of the pairs (j, n) for j = 1..n-1."""
        return self.factors[: self.n - 1, self.n - 1].copy()


def spreading_width(bath: BathParameters, geom: SlitGeometry, t: float) -> float:
    """Mean-square envelope width alpha(t) of the evolving wave packet.

    Closed form

        alpha = eps^2 + hbar^2 (1 - e^{-2 gamma t})^2 / (eps^2 m^2 gamma^2)
              + D (4 gamma t + 4 e^{-2 gamma t} - e^{-4 gamma t} - 3) / (8 m^2 gamma^3)

    for gamma t >= 1e-3.  Below that the bracketed combinations cancel to
    third order and double precision loses most digits, so a series in
    gamma t (kept through relative order (gamma t)^3) is used instead:

        alpha ~ eps^2 + (4 hbar^2 t^2 / (eps^2 m^2)) (1 - 2 g + 7 g^2 / 3 - 2 g^3)
              + (D t^3 / m^2) (2/3 - g + 14 g^2 / 15 - 2 g^3 / 3),   g = gamma t.
    """
    if t < 0.0:
        raise ValidationError("time must be nonnegative")
    eps, m = geom.eps, bath.mass
    g = bath.gamma * t
    D = bath.diffusion
    if g < SERIES_SWITCHOVER:
        free = (4.0 * HBAR**2 * t**2 / (eps**2 * m**2)) * (
            1.0 - 2.0 * g + (7.0 / 3.0) * g**2 - 2.0 * g**3
        )
        diff = (D * t**3 / m**2) * (
            2.0 / 3.0 - g + (14.0 / 15.0) * g**2 - (2.0 / 3.0) * g**3
        )
    else:
        gamma = bath.gamma
        free = HBAR**2 * (1.0 - math.exp(-2.0 * g)) ** 2 / (eps**2 * m**2 * gamma**2)
        diff = D * (4.0 * g + 4.0 * math.exp(-2.0 * g) - math.exp(-4.0 * g) - 3.0) / (
            8.0 * m**2 * gamma**3
        )
    return eps**2 + free + diff


def bath_from_scaled_time(
    t_over_tau: float, temperature: float, mass: float, ell: float, time: float
) -> BathParameters:
    """Bath whose shortest-separation pair reaches t / tau_d at the given time.

    Inverts tau_d = 12 hbar^2 / (D ell^2): D = 12 hbar^2 (t/tau) / (time ell^2),
    then gamma = D / (2 m k_B T).
    """
    if t_over_tau < 0.0:
        raise ValidationError("t_over_tau must be nonnegative", field="time.t_over_tau")
    if time <= 0.0:
        raise ValidationError("reference time must be positive", field="time.t")
    if ell <= 0.0:
        raise ValidationError("must be positive", field="geometry.ell")
    D = 12.0 * HBAR**2 * t_over_tau / (time * ell**2)
    return BathParameters.from_diffusion(D, temperature, mass)


def _prefactor(bath: BathParameters, geom: SlitGeometry, t: float) -> float:
    return 1.0 / math.sqrt(math.pi * spreading_width(bath, geom, t) / 2.0)


def _check_screen_args(geom: SlitGeometry, paths: PathConfiguration, overlaps: DetectorOverlapMatrix, t: float) -> None:
    if not (geom.n == paths.n == overlaps.n):
        raise DimensionMismatchError(
            f"geometry has {geom.n} slits, {paths.n} paths, {overlaps.n}-state overlap matrix"
        )
    if t < 0.0:
        raise ValidationError("time must be nonnegative")


def screen_density_exact(
    geom: SlitGeometry,
    paths: PathConfiguration,
    overlaps: DetectorOverlapMatrix,
    bath: BathParameters,
    t: float,
    x,
):
    """Screen density with one Gaussian envelope per slit (units 1/m).

    Each pair (j, k) contributes fringes referenced to the pair midpoint:

        |c_j| |c_k| |O_jk| E_j E_k f_jk
            cos(2 pi ell (k - j) (x - ell (k + j)/2) / (wavelength L) + phi_k - phi_j)

    with E_j = exp(-eps^2 (x - j ell)^2 / (wavelength L / pi)^2), so the
    pattern is centered on the slit centroid at ell (n + 1) / 2.  No
    far-field condition is assumed.
    """
    _check_screen_args(geom, paths, overlaps, t)
    xs = np.asarray(x, dtype=float)
    sc2 = geom.envelope_scale**2
    lamL = geom.wavelength * geom.L
    mags = np.abs(paths.amplitudes)
    phi = paths.effective_phases()
    D = bath.diffusion
    n = geom.n
    envs = [np.exp(-(geom.eps**2) * (xs - j * geom.ell) ** 2 / sc2) for j in range(1, n + 1)]
    total = np.zeros(xs.shape)
    for j in range(1, n + 1):
        total = total + mags[j - 1] ** 2 * envs[j - 1] ** 2
    for j in range(1, n + 1):
        for k in range(j + 1, n + 1):
            f_jk = pair_decoherence_factor(D, geom.ell, t, j, k)
            arg = (
                2.0 * math.pi * geom.ell * (k - j) * (xs - geom.ell * (k + j) / 2.0) / lamL
                + phi[k - 1]
                - phi[j - 1]
            )
            total = total + (
                2.0
                * mags[j - 1]
                * mags[k - 1]
                * abs(overlaps.entries[j - 1, k - 1])
                * envs[j - 1]
                * envs[k - 1]
                * f_jk
                * np.cos(arg)
            )
    out = _prefactor(bath, geom, t) * total
    return float(out) if xs.ndim == 0 else out


def screen_density_fraunhofer(
    geom: SlitGeometry,
    paths: PathConfiguration,
    overlaps: DetectorOverlapMatrix,
    bath: BathParameters,
    t: float,
    x,
):
    """Far-field screen density with a common envelope (units 1/m).

    exp(-2 eps^2 x^2 / (wavelength L / pi)^2) / sqrt(pi alpha / 2) times

        1 + sum_{j != k} |c_j| |c_k| |O_jk| f_jk
                cos(2 pi ell (k - j) x / (wavelength L) + phi_k - phi_j).

    The pattern is referenced to its own center at x = 0.  Raises
    FraunhoferLimitError if eps * ell / (wavelength * L) >= 0.1.
    """
    _check_screen_args(geom, paths, overlaps, t)
    geom.require_fraunhofer()
    xs = np.asarray(x, dtype=float)
    lamL = geom.wavelength * geom.L
    mags = np.abs(paths.amplitudes)
    phi = paths.effective_phases()
    D = bath.diffusion
    bracket = np.ones(xs.shape)
    for j in range(1, geom.n + 1):
        for k in range(j + 1, geom.n + 1):
            f_jk = pair_decoherence_factor(D, geom.ell, t, j, k)
            arg = 2.0 * math.pi * geom.ell * (k - j) * xs / lamL + phi[k - 1] - phi[j - 1]
            bracket = bracket + (
                2.0
                * mags[j - 1]
                * mags[k - 1]
                * abs(overlaps.entries[j - 1, k - 1])
                * f_jk
                * np.cos(arg)
            )
    env = np.exp(-2.0 * geom.eps**2 * xs**2 / geom.envelope_scale**2)
    out = _prefactor(bath, geom, t) * env * bracket
    return float(out) if xs.ndim == 0 else out


def _equal_or_given_amplitudes(n: int, amplitudes) -> np.ndarray:
    if amplitudes is None:
        return np.full(n, 1.0 / math.sqrt(n))
    mags = np.abs(np.atleast_1d(np.asarray(amplitudes, dtype=complex)))
    if mags.size != n:
        raise DimensionMismatchError(f"expected {n} amplitudes, got {mags.size}")
    norm = float(np.sum(mags**2))
    if abs(norm - 1.0) > 1e-12:
        raise NormalizationError(f"sum |c_j|^2 = {norm:.17g}, expected 1")
    return mags


def selective_bracket(n: int, t_over_tau: float, phi, amplitudes=None):
    """Dimensionless fringe profile under n-th-path-only decoherence.

    phi = 2 pi ell x / (wavelength L) is the scaled screen coordinate and
    t_over_tau the elapsed time over the shortest-pair decoherence time:

        1 + sum_{j != k <= n-1} |c_j| |c_k| cos((k - j) phi)
          - 2 sum_{j <= n-1} |c_j| |c_n| exp(-(n - j)^2 t/tau) cos((n - j) phi).

    The minus sign is the pi phase on path n; the first n - 1 paths keep
    full mutual coherence at all times.
    """
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    if t_over_tau < 0.0:
        raise ValidationError("t_over_tau must be nonnegative")
    ph = np.asarray(phi, dtype=float)
    mags = _equal_or_given_amplitudes(n, amplitudes)
    out = np.ones(ph.shape)
    for j in range(1, n):
        for k in range(j + 1, n):
            out = out + 2.0 * mags[j - 1] * mags[k - 1] * np.cos((k - j) * ph)
    for j in range(1, n):
        damp = math.exp(-((n - j) ** 2) * t_over_tau)
        out = out - 2.0 * mags[j - 1] * mags[n - 1] * damp * np.cos((n - j) * ph)
    return float(out) if ph.ndim == 0 else out


def screen_density_selective(
    geom: SlitGeometry,
    bath: BathParameters,
    t: float,
    x,
    n: int,
    amplitudes=None,
):
    """Far-field density when the bath couples to the n-th path only (1/m).

    The first n - 1 paths stay mutually coherent; each pair (j, n) is damped
    by exp(-D (n - j)^2 ell^2 t / (12 hbar^2)) and path n carries the pi
    phase.  Amplitudes default to equal weights.
    """
    if n != geom.n:
        raise DimensionMismatchError(f"geometry has {geom.n} slits but n = {n}")
    if t < 0.0:
        raise ValidationError("time must be nonnegative")
    geom.require_fraunhofer()
    xs = np.asarray(x, dtype=float)
    mags = _equal_or_given_amplitudes(n, amplitudes)
    lamL = geom.wavelength * geom.L
    D = bath.diffusion
    ph = 2.0 * math.pi * geom.ell * xs / lamL
    bracket = np.ones(xs.shape)
    for j in range(1, n):
        for k in range(j + 1, n):
            bracket = bracket + 2.0 * mags[j - 1] * mags[k - 1] * np.cos((k - j) * ph)
    for j in range(1, n):
        f_jn = pair_decoherence_factor(D, geom.ell, t, j, n)
        bracket = bracket - 2.0 * mags[j - 1] * mags[n - 1] * f_jn * np.cos((n - j) * ph)
    env = np.exp(-2.0 * geom.eps**2 * xs**2 / geom.envelope_scale**2)
    out = _prefactor(bath, geom, t) * env * bracket
    return float(out) if xs.ndim == 0 else out


def screen_density_maxcoherent(
    geom: SlitGeometry,
    bath: BathParameters,
    t: float,
    x,
    n: int,
):
    """Selective-decoherence density at exactly equal weights 1/n (1/m).

    Coded directly from the 1/n-weight fringe profile

        1 + (1/n) sum_{j != k <= n-1} cos((k - j) phi)
          - (2/n) sum_{j <= n-1} exp(-D (n - j)^2 ell^2 t / 12 hbar^2)
                cos((n - j) phi)

    as an independent cross-check of screen_density_selective.
    """
    if n != geom.n:
        raise DimensionMismatchError(f"geometry has {geom.n} slits but n = {n}")
    if n < 2:
        raise ValidationError(f"need n >= 2, got {n}")
    if t < 0.0:
        raise ValidationError("time must be nonnegative")
    geom.require_fraunhofer()
    xs = np.asarray(x, dtype=float)
    lamL = geom.wavelength * geom.L
    D = bath.diffusion
    ph = 2.0 * math.pi * geom.ell * xs / lamL
    bracket = np.ones(xs.shape)
    for j in range(1, n):
        for k in range(1, n):
            if k != j:
                bracket = bracket + (1.0 / n) * np.cos((k - j) * ph)
    for j in range(1, n):
        f_jn = pair_decoherence_factor(D, geom.ell, t, j, n)
        bracket = bracket - (2.0 / n) * f_jn * np.cos((n - j) * ph)
    env = np.exp(-2.0 * geom.eps**2 * xs**2 / geom.envelope_scale**2)
    out = _prefactor(bath, geom, t) * env * bracket
    return float(out) if xs.ndim == 0 else out
