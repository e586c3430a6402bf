"""Exception hierarchy shared by every ringcert module."""


class RingcertError(Exception):
    """Base class for all library errors."""


class RingMismatchError(RingcertError, ValueError):
    """Operands live in different coefficient rings."""


class UnsupportedRingError(RingcertError, ValueError):
    """The operation is not defined for the given coefficient ring."""


class ShapeError(RingcertError, ValueError):
    """Index sets are not conformable, not square, or not subsets."""


class HypothesisFailure(RingcertError):
    """An invertible transversal submatrix exists.

    Carries the offending column set and its determinant so callers can
    report a checkable witness.
    """

    def __init__(self, columns, determinant, ring):
        self.columns = tuple(columns)
        self.determinant = determinant
        self.ring = ring
        cols = ",".join(str(c) for c in self.columns)
        super().__init__(
            f"hypothesis fails: columns {{{cols}}} give an invertible "
            f"transversal submatrix (determinant {ring.format(determinant)})"
        )


class CertificateError(RingcertError):
    """A constructed certificate failed its own verification.

    ``audit`` holds whatever the engine recorded up to the failure.
    """

    def __init__(self, message, audit=None):
        super().__init__(message)
        self.audit = audit


class GenerationError(RingcertError):
    """Rejection sampling exceeded its attempt cap."""
