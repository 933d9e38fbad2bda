"""Exception types shared across the package."""


class KscopeError(Exception):
    """Base class for all kscope errors."""


class NonConvergence(KscopeError):
    """An iterative factorization or fit exceeded its iteration cap."""


class RankDeficient(KscopeError):
    """Least-squares matrix is numerically rank deficient."""


class ZeroInitialVector(KscopeError):
    """Arnoldi/GMRES started from a zero vector."""


class SingularHk(KscopeError):
    """Square Hessenberg block is singular; harmonic Ritz values undefined."""


class SingularMatrix(KscopeError):
    """Operation requires a nonsingular matrix."""


class ClusterSplit(KscopeError):
    """A spectral partition separates eigenvalues of a flagged cluster."""


class RepeatedEigenvalues(KscopeError):
    """Operation requires simple eigenvalues."""


class IntervalContainsOrigin(KscopeError):
    """Closed-form interval minimax needs 0 outside [a, b]."""


class ResolventBoundViolated(KscopeError):
    """A user-supplied contour/epsilon pair fails the resolvent-norm check."""


class LevelTouchesBoundary(UserWarning):
    """Isoline clipped by the grid box; contour length is a lower estimate."""


class UnknownEntry(KscopeError):
    """Gallery name not registered."""
