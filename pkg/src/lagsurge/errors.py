"""Exception types shared across the package."""


class LagsurgeError(Exception):
    """Base class for all package errors."""


class InvalidFrame(LagsurgeError):
    """Frame matrix is not unitary within tolerance."""


class DegenerateAngle(LagsurgeError):
    """An eigenvalue sits numerically at 1 but its direction is not a true
    intersection direction; the caller must perturb."""


class InvalidSpace(LagsurgeError):
    """Symplectic space does not have the shape required by the operation."""


class InvalidParameter(LagsurgeError):
    """Numeric argument outside the allowed range."""


class NotInvertible(LagsurgeError):
    """Curve component is not monotone, so the profile cannot be recovered."""


class BandMismatch(LagsurgeError):
    """Profile endpoints lie in different multiples-of-pi bands."""


class LiftFailure(LagsurgeError):
    """Continuous phase lift could not keep the per-step jump under the cap."""


class AmbiguousGluing(LagsurgeError):
    """Codimension-one seam: the constant-offset gluing is not determined."""


class ZeroCovector(LagsurgeError):
    """Normalized geodesic flow is undefined on the zero section."""


class ProfileMismatch(LagsurgeError):
    """Profiles disagree on the region where coincidence is required."""


class InvalidLift(LagsurgeError):
    """Lift function violates the admissibility conditions for orbit charts."""


class NonTransverse(LagsurgeError):
    """Curves meet at an angle below the transversality tolerance."""


class ObstructionDetected(LagsurgeError):
    """The combinatorial differential does not square to zero."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class InvalidComplex(LagsurgeError):
    """Differential does not raise degree by one or does not square to zero."""


class InvalidMap(LagsurgeError):
    """Matrix does not commute with the differentials."""


class NotHomotopic(LagsurgeError):
    """No chain homotopy exists between the two maps at the given scale."""
