"""Exception types raised across the package.

The CLI maps these onto exit codes: validation failures exit with 2,
a failed Fraunhofer check with 3 and I/O problems with 4.
"""


class ValidationError(ValueError):
    """Invalid physical configuration or malformed input.

    ``field`` optionally names the offending parameter with a dotted path
    (e.g. ``geometry.ell``) so command-line diagnostics can point at it.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field


class DimensionMismatchError(ValidationError):
    """Array or matrix sizes disagree with the declared path count."""


class NormalizationError(ValidationError):
    """Path amplitudes do not satisfy sum |c_j|^2 = 1."""


class OverlapMatrixError(ValidationError):
    """Detector overlap matrix is not a valid Gram matrix."""


class DensityMatrixError(ValidationError):
    """Matrix is not Hermitian, unit-trace and positive semidefinite."""


class FraunhoferLimitError(ValidationError):
    """Geometry violates the far-field condition required by an evaluator."""


class ProtocolError(ValidationError):
    """A measurement protocol was invoked outside its domain of validity."""


class ConfigError(ValidationError):
    """Malformed run configuration (file or command-line)."""
