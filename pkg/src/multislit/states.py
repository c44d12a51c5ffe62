"""Reduced density matrices for n-path interference with which-path detectors.

A quanton traversing n paths, entangled with normalized detector states
|chi_j>, is described after tracing out the detector by the n x n matrix

    rho[j, k] = c_j conj(c_k) exp(i (phi_j - phi_k)) <chi_k | chi_j>

in the path basis.  Coherence is quantified by the normalized l1 norm:
the sum of off-diagonal moduli divided by (n - 1), so that 1 means a
maximally coherent superposition and 0 a fully dephased mixture.

The one-path-knowledge family models a detector that tells path n apart
from the rest with overlap beta while leaving the first n - 1 paths
mutually indistinguishable.  An extra pi phase is placed on path n; the
closed form for its coherence is (n - 2 + 2 beta) / n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DensityMatrixError,
    DimensionMismatchError,
    NormalizationError,
    OverlapMatrixError,
    ValidationError,
)

# Numerical slack shared by the validators below.
NORMALIZATION_ATOL = 1e-12
HERMITICITY_ATOL = 1e-12
PSD_EIGENVALUE_FLOOR = -1e-10


def _as_complex_vector(values) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=complex))
    if arr.ndim != 1 or arr.size < 1:
        raise ValidationError("expected a non-empty 1-d sequence")
    return arr


@dataclass(frozen=True)
class PathConfiguration:
    """Path amplitudes, constant phase offsets and the optional pi-phase path.

    ``pi_path`` is a 1-based index; the designated path picks up an extra
    phase of pi on top of its ``phases`` entry.  Amplitudes must satisfy
    sum |c_j|^2 = 1 within 1e-12.  A single path (n = 1) is admitted as the
    degenerate no-interference case used by the screen evaluators;
    interference operations themselves require n >= 2 and say so.
    """

    amplitudes: np.ndarray
    phases: np.ndarray | None = None
    pi_path: int | None = None

    def __post_init__(self):
        amps = _as_complex_vector(self.amplitudes)
        object.__setattr__(self, "amplitudes", amps)
        if self.phases is None:
            phases = np.zeros(amps.size, dtype=float)
        else:
            phases = np.atleast_1d(np.asarray(self.phases, dtype=float))
        object.__setattr__(self, "phases", phases)
        if phases.shape != amps.shape:
            raise DimensionMismatchError(
                f"got {amps.size} amplitudes but {phases.size} phases"
            )
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORMALIZATION_ATOL:
            raise NormalizationError(
                f"sum |c_j|^2 = {norm:.17g}, expected 1 within {NORMALIZATION_ATOL:g}"
            )
        if self.pi_path is not None:
            if not isinstance(self.pi_path, (int, np.integer)):
                raise ValidationError("pi_path must be an integer path index")
            if not 1 <= self.pi_path <= amps.size:
                raise ValidationError(
                    f"pi_path = {self.pi_path} outside 1..{amps.size}"
                )

    @property
    def n(self) -> int:
        return self.amplitudes.size

    @classmethod
    def equal(cls, n: int, pi_path: int | None = None) -> "PathConfiguration":
        """Equal-amplitude configuration c_j = 1/sqrt(n) with zero phases."""
        if n < 1:
            raise ValidationError(f"need at least one path, got n = {n}")
        return cls(np.full(n, 1.0 / math.sqrt(n)), pi_path=pi_path)

    def effective_phases(self) -> np.ndarray:
        """Constant phases with the pi flag folded in."""
        phi = self.phases.astype(float).copy()
        if self.pi_path is not None:
            phi[self.pi_path - 1] += math.pi
        return phi


@dataclass(frozen=True)
class DetectorOverlapMatrix:
    """Gram matrix of detector states, entries O[j, k] = <chi_k | chi_j>.

    Hermitian with unit diagonal, every modulus at most 1, and positive
    semidefinite (eigenvalues above -1e-10).
    """

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise OverlapMatrixError(f"expected a square matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, atol=HERMITICITY_ATOL, rtol=0.0):
            raise OverlapMatrixError("matrix is not Hermitian")
        if not np.allclose(np.diag(m), 1.0, atol=NORMALIZATION_ATOL, rtol=0.0):
            raise OverlapMatrixError("diagonal entries must equal 1 (normalized states)")
        if np.any(np.abs(m) > 1.0 + NORMALIZATION_ATOL):
            raise OverlapMatrixError("overlap moduli cannot exceed 1")
        lo = float(np.linalg.eigvalsh(m).min())
        if lo < PSD_EIGENVALUE_FLOOR:
            raise OverlapMatrixError(
                f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})"
            )

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, n: int) -> "DetectorOverlapMatrix":
        """Fully distinguishing detector: orthogonal states on every path."""
        return cls(np.eye(n, dtype=complex))

    @classmethod
    def one_path(cls, n: int, beta: float) -> "DetectorOverlapMatrix":
        """One-path-knowledge detector.

        The first n - 1 detector states are identical; each overlaps the
        n-th state by beta in [0, 1].
        """
        _check_one_path_domain(n, beta)
        m = np.ones((n, n), dtype=complex)
        m[: n - 1, n - 1] = beta
        m[n - 1, : n - 1] = beta
        return cls(m)

    @classmethod
    def from_detector_states(cls, states) -> "DetectorOverlapMatrix":
        """Build the overlap matrix from explicit state vectors (rows)."""
        vecs = np.atleast_2d(np.asarray(states, dtype=complex))
        norms = np.linalg.norm(vecs, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            raise OverlapMatrixError("detector states must be normalized")
        gram = vecs.conj() @ vecs.T  # gram[j, k] = <chi_j | chi_k>
        return cls(gram.T)           # entries[j, k] = <chi_k | chi_j>


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """Validated n x n density matrix of the quanton in the path basis."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        object.__setattr__(self, "entries", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DensityMatrixError(f"expected a square matrix, got shape {m.shape}")
        if not np.allclose(m, m.conj().T, atol=HERMITICITY_ATOL, rtol=0.0):
            raise DensityMatrixError("matrix is not Hermitian")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > NORMALIZATION_ATOL:
            raise DensityMatrixError(f"trace = {tr:.17g}, expected 1 within 1e-12")
        lo = float(np.linalg.eigvalsh(m).min())
        if lo < PSD_EIGENVALUE_FLOOR:
            raise DensityMatrixError(
                f"matrix is not positive semidefinite (min eigenvalue {lo:.3e})"
            )

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def build_reduced_density(
    paths: PathConfiguration, overlaps: DetectorOverlapMatrix
) -> ReducedDensityMatrix:
    """Trace out the detector and return the quanton's reduced state.

    rho[j, k] = c_j conj(c_k) exp(i (phi_j - phi_k)) O[j, k], with the
    pi flag folded into the phases.
    """
    if paths.n != overlaps.n:
        raise DimensionMismatchError(
            f"{paths.n} paths but a {overlaps.n} x {overlaps.n} overlap matrix"
        )
    phi = paths.effective_phases()
    phase = np.exp(1j * (phi[:, None] - phi[None, :]))
    rho = np.outer(paths.amplitudes, paths.amplitudes.conj()) * phase * overlaps.entries
    return ReducedDensityMatrix(rho)


def _check_one_path_domain(n, beta) -> None:
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ValidationError(f"one-path knowledge needs an integer n >= 2, got {n!r}")
    if not 0.0 <= beta <= 1.0:
        raise ValidationError(f"beta = {beta!r} outside [0, 1]")


def one_path_knowledge_state(n: int, beta: float) -> ReducedDensityMatrix:
    """Reduced state for equal amplitudes under one-path knowledge.

    Every entry equals 1/n except the row and column of path n, which carry
    -beta/n off the diagonal; the sign records the pi phase on path n.
    """
    _check_one_path_domain(n, beta)
    m = np.full((n, n), 1.0 / n, dtype=complex)
    m[n - 1, : n - 1] = -beta / n
    m[: n - 1, n - 1] = -beta / n
    return ReducedDensityMatrix(m)


def l1_coherence(rho: ReducedDensityMatrix | np.ndarray) -> float:
    """Normalized l1-norm coherence: sum of |off-diagonals| / (n - 1).

    Accepts either a validated ReducedDensityMatrix or a raw array; the raw
    form exists for effective fringe-weight matrices that arise from
    path-selective damping, which the strict validator would reject.
    """
    m = rho.entries if isinstance(rho, ReducedDensityMatrix) else np.asarray(rho)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    if n < 2:
        return 0.0
    mods = np.abs(m)
    return float((mods.sum() - np.trace(mods)) / (n - 1))


def coherence_closed_form(n: int, beta: float) -> float:
    """Coherence of the one-path-knowledge state: (n - 2 + 2 beta) / n."""
    _check_one_path_domain(n, beta)
    return (n - 2.0 + 2.0 * beta) / n
