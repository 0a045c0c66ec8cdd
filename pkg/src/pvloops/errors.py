"""Exception types raised by the library."""


class InvalidArgument(ValueError):
    pass


class DegenerateCurveError(ValueError):
    """Curve has (numerically) zero speed somewhere."""


class NotSimpleCurveError(ValueError):
    """Sampled polyline self-intersects."""


class TubeOverlapError(ValueError):
    """Requested tube half-width exceeds the estimated reach of the curve."""


class NotAreaTangentError(ValueError):
    """Tangent field changes the enclosed area to first order."""


class ConvergenceError(RuntimeError):
    pass


class SingularityError(ValueError):
    """Unregularized kernel evaluated on top of a vortex element."""


class SimulationHalted(RuntimeError):
    """Evolution produced an invalid state.

    ``state`` is the last valid state and ``rows`` the diagnostics gathered
    before the halt, so callers can flush partial output.
    """

    def __init__(self, message, state=None, rows=None):
        super().__init__(message)
        self.state = state
        self.rows = rows if rows is not None else []
