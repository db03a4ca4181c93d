"""Exception hierarchy for the folinv package."""


class FolinvError(Exception):
    """Base class for all package errors."""


class ParseError(FolinvError):
    """Malformed polynomial or input text."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class InputError(FolinvError):
    """Structurally invalid job input (missing fields, bad coordinates, ...)."""


class ZeroPolynomial(FolinvError):
    """An operation that needs a nonzero polynomial received zero."""


class NotDivisible(FolinvError):
    """Exact polynomial or bundle-order division failed."""


class PrecisionExhausted(FolinvError):
    """A series order could not be certified below the working precision."""

    def __init__(self, precision):
        super().__init__(f"order not certified below precision {precision}")
        self.precision = precision


class DegreeCapExceeded(FolinvError):
    """No colength certificate was found up to the configured degree cap."""

    def __init__(self, cap):
        super().__init__(f"no colength certificate up to degree {cap}")
        self.cap = cap


class CommonComponent(FolinvError):
    """Two curves share a component through the origin."""


class NotReduced(FolinvError):
    """Curve equation has a repeated factor."""


class NonIsolated(FolinvError):
    """Singular locus is positive-dimensional."""


class NotSaturated(FolinvError):
    """1-form coefficients share a factor vanishing at the base point."""


class NotInvariant(FolinvError):
    """Curve is not invariant under the foliation."""


class UnitInput(FolinvError):
    """Germ data expected to vanish at the origin does not."""


class BundleUnsupported(FolinvError):
    """Operation needs an explicit parametrization, got a conjugate bundle."""


class UnsupportedSplitting(FolinvError):
    """Newton-Puiseux hit an irrational characteristic root of multiplicity > 1."""


class WindowTooSmall(FolinvError):
    """Differential-value staircase did not stabilize within the monomial window."""


class EulerViolation(FolinvError):
    """Homogeneous 1-form fails x*A + y*B + z*C = 0."""


class PointOutsideChart(FolinvError):
    """Projective point not visible in the requested affine chart."""


class NonsingularPoint(FolinvError):
    """A supplied point is not a singular point of the foliation."""


class NonIntegerDelta(FolinvError):
    """mu + r - 1 odd at a curve point: inconsistent local data."""


class NegativeGenus(FolinvError):
    """Genus formula went negative: singular point list is wrong or incomplete."""


class CrossCheckError(FolinvError):
    """Two independent computation paths disagree (internal bug trap)."""
