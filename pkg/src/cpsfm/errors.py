"""Exception and warning types shared across the package."""


class CpsfmError(Exception):
    """Base class for all package-specific errors."""


class DegenerateFitError(CpsfmError):
    """Weighted least-squares system is rank deficient (too few distinct
    abscissae with positive weight for the requested order)."""


class BesselRangeError(CpsfmError):
    """Bessel evaluation left the representable range (overflow)."""


class TruncationCapError(CpsfmError):
    """Required series truncation order exceeds the configured hard cap."""


class DurationMismatchError(CpsfmError):
    """Correlation-type transforms require waveforms of identical duration."""


class QuadratureConvergenceError(CpsfmError):
    """Numerical integration failed to converge within the subdivision budget."""


class InadequateSampleRateError(CpsfmError):
    """Discrete reference computations refuse sample rates that would alias."""


class SpecFileError(CpsfmError):
    """Waveform spec file is malformed; the message names the offending field."""


class AliasingWarning(UserWarning):
    """Sample rate is below twice the peak instantaneous frequency."""


class TruncationWarning(UserWarning):
    """Requested truncation order leaves estimated tail mass above tolerance."""
