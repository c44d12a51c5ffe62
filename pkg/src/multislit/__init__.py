"""n-path interference with which-path detectors and bath decoherence.

The package models a quanton crossing an n-slit grating while a detector
records partial which-path information and a thermal bath decoheres widely
separated path pairs.  It provides the reduced density matrix and its l1
coherence, channel intensities and fringe visibilities, screen-density
evaluators, two coherence-measurement protocols, and a CLI that reproduces
the standard figures as deterministic CSV/JSON tables plus PNG plots.
"""

from .constants import HBAR, K_B, PLANCK
from .decoherence import (
    BathParameters,
    DecoherenceSchedule,
    SlitGeometry,
    bath_from_scaled_time,
    decoherence_time,
    diffusion_coefficient,
    flight_time,
    pair_decoherence_factor,
    screen_density_exact,
    screen_density_fraunhofer,
    screen_density_maxcoherent,
    screen_density_selective,
    selective_bracket,
    spreading_width,
)
from .errors import (
    ConfigError,
    DensityMatrixError,
    DimensionMismatchError,
    FraunhoferLimitError,
    NormalizationError,
    OverlapMatrixError,
    ProtocolError,
    ValidationError,
)
from .interference import (
    BetaSweepTable,
    FringeScan,
    channel_intensity,
    closed_form_intensity,
    intensity_n3,
    intensity_n4,
    one_path_configuration,
    scan_phase,
    sweep_beta,
)
from .metrology import (
    ProtocolResult,
    bracket_visibility,
    coherence_decay,
    pairwise_visibility_coherence,
    peak_ratio_coherence,
    run_pairwise_protocol,
    run_peak_ratio_protocol,
    visibility_vs_time,
)
from .states import (
    DetectorOverlapMatrix,
    PathConfiguration,
    ReducedDensityMatrix,
    build_reduced_density,
    coherence_closed_form,
    l1_coherence,
    one_path_knowledge_state,
)

__version__ = "0.1.0"

__all__ = [
    "HBAR",
    "K_B",
    "PLANCK",
    "BathParameters",
    "BetaSweepTable",
    "ConfigError",
    "DecoherenceSchedule",
    "DensityMatrixError",
    "DetectorOverlapMatrix",
    "DimensionMismatchError",
    "FraunhoferLimitError",
    "FringeScan",
    "NormalizationError",
    "OverlapMatrixError",
    "PathConfiguration",
    "ProtocolError",
    "ProtocolResult",
    "ReducedDensityMatrix",
    "SlitGeometry",
    "ValidationError",
    "bath_from_scaled_time",
    "bracket_visibility",
    "build_reduced_density",
    "channel_intensity",
    "closed_form_intensity",
    "coherence_closed_form",
    "coherence_decay",
    "decoherence_time",
    "diffusion_coefficient",
    "flight_time",
    "intensity_n3",
    "intensity_n4",
    "l1_coherence",
    "one_path_configuration",
    "one_path_knowledge_state",
    "pair_decoherence_factor",
    "pairwise_visibility_coherence",
    "peak_ratio_coherence",
    "run_pairwise_protocol",
    "run_peak_ratio_protocol",
    "scan_phase",
    "screen_density_exact",
    "screen_density_fraunhofer",
    "screen_density_maxcoherent",
    "screen_density_selective",
    "selective_bracket",
    "spreading_width",
    "sweep_beta",
    "visibility_vs_time",
    "__version__",
]
