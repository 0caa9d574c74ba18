"""Exception types shared across the package.

Every error raised by ellipkurt derives from :class:`EllipkurtError`, so
callers (notably the simulation harness, which counts per-replication
failures) can catch package errors without swallowing genuine bugs.
"""


class EllipkurtError(Exception):
    """Base class for all ellipkurt errors."""


class InvalidParameterError(EllipkurtError, ValueError):
    """An argument is outside its documented domain."""


class NotPSDError(EllipkurtError, ValueError):
    """A matrix required to be positive semidefinite has a significantly
    negative eigenvalue."""


class SingularMatrixError(EllipkurtError, ValueError):
    """A matrix required to be invertible is singular."""


class InsufficientSampleError(EllipkurtError, ValueError):
    """Fewer observations than the statistic needs (n < 4 for the
    fourth-order statistics)."""


class DegenerateDataError(EllipkurtError, ValueError):
    """All observations coincide (or nearly so); the requested quantity is
    undefined."""


class MomentDoesNotExistError(EllipkurtError, ValueError):
    """The requested moment of the squared-radius law is infinite."""


class UndefinedDofError(EllipkurtError, ValueError):
    """The plug-in degrees of freedom are undefined (kurtosis estimate at
    or below 1)."""


class InvalidDofError(EllipkurtError, ValueError):
    """The plug-in degrees of freedom are too small for the heavy-tail
    interval formula (needs dof > 8)."""


class SchemaError(EllipkurtError, ValueError):
    """A configuration document contains unknown or malformed keys."""


class CsvParseError(EllipkurtError, ValueError):
    """An input CSV could not be parsed as a numeric matrix."""
