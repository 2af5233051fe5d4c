"""Exception hierarchy shared by all modules."""


class QPredictError(Exception):
    """Base class for library errors."""


class NonPhysical(QPredictError, ValueError):
    """Input does not describe a positive semidefinite, unit-trace state."""


class DomainError(QPredictError, ValueError):
    """Argument outside the domain of a function."""


class InvalidRotation(QPredictError, ValueError):
    """Matrix is not a proper rotation (orthogonal, det +1)."""


class ZeroProbabilityBranch(QPredictError, ValueError):
    """Conditioning on a measurement outcome that has (numerically) zero probability."""


class DegenerateB(QPredictError, ValueError):
    """Bob's reduced state is pure, so the steering-ellipsoid centroid is undefined."""


class NotOrthogonal(QPredictError, ValueError):
    """Two measurement directions required to be orthogonal are not."""


class NoSignChange(QPredictError, ValueError):
    """Bracketing interval for a root search does not straddle zero."""
