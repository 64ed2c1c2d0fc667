"""Exception hierarchy shared by all heightlab modules."""


class HeightLabError(Exception):
    """Base class for all errors raised by heightlab."""


class InvalidPointError(HeightLabError, ValueError):
    """A projective point with no nonzero coordinate."""


class ZeroPolynomialError(HeightLabError, ValueError):
    """Gauss norms and heights are undefined for the zero polynomial."""


class DimensionMismatchError(HeightLabError, ValueError):
    """Vector or variable counts do not agree."""


class NotHomogeneousError(HeightLabError, ValueError):
    """A homogeneous polynomial was required."""


class SingularMatrixError(HeightLabError, ValueError):
    """A coordinate change needs a nonzero determinant."""


class CommonZeroError(HeightLabError, ValueError):
    """All components of a rational map vanish at the given point."""


class DegreeError(HeightLabError, ValueError):
    """Operation restricted to a specific degree (e.g. sextics)."""


class DegenerateCurveError(HeightLabError, ValueError):
    """The defining sextic has a repeated root, so the curve is not of genus 2."""


class ParseError(HeightLabError, ValueError):
    """Malformed inline polynomial or rational input."""


class ResourceLimitError(HeightLabError, RuntimeError):
    """An enumeration exceeded its configured budget.

    ``best_so_far`` carries any partial result that was already found.
    """

    def __init__(self, message, best_so_far=None):
        super().__init__(message)
        self.best_so_far = best_so_far


class RootFindingError(HeightLabError, RuntimeError):
    """The complex root finder failed to converge."""


class PrecisionError(HeightLabError, RuntimeError):
    """Numerical data too close to the tolerance; re-run at higher precision."""
