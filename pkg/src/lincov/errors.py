"""Exception hierarchy.

Everything raised deliberately by this package derives from
:class:`LincovError` so callers can catch one type at the boundary (the
CLI maps these to exit code 2).
"""


class LincovError(Exception):
    """Base class for all errors raised by lincov."""


class DomainError(LincovError, ValueError):
    """A parameter is outside its mathematically valid domain."""


class RangeError(LincovError, ValueError):
    """A requested lag or index range is not covered by the data."""


class NonStationaryError(DomainError):
    """An AR polynomial has a root on or inside the closed unit disk."""


class NonInvertibleError(DomainError):
    """An MA polynomial has a root on or inside the closed unit disk."""


class ConfigError(DomainError):
    """A simulation configuration is inconsistent (e.g. burn-in too short)."""


class TailUnknownError(LincovError):
    """An operation needs a certified tail bound the sequence does not carry."""


class InsufficientLagsError(RangeError):
    """An input autocovariance sequence is too short for the requested lags."""


class NoGeometricEnvelopeError(LincovError):
    """No geometric envelope C*r^k with r bounded away from 1 fits the data.

    Raised by the envelope fitter when the per-lag decay rate estimate
    approaches 1 over the computed range (the signature of a power-law
    tail at desk scale).
    """
