"""Exception types raised by the analysis pipeline."""


class TriprodError(Exception):
    """Base class for all library errors."""


class DegenerateTriangle(TriprodError, ValueError):
    pass


class NoConvergence(TriprodError, ArithmeticError):
    """Newton polishing could not bring a bracketed root under tolerance."""


class AmbiguousClassification(TriprodError):
    pass


class NotIsosceles(TriprodError, ValueError):
    pass


class OutOfDomain(TriprodError, ValueError):
    pass


class InternalInconsistency(TriprodError):
    """Two independent routes to the same answer disagree."""
