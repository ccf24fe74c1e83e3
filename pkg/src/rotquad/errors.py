"""Exception types raised by the geometric and algebraic pipeline."""


class RotquadError(Exception):
    """Base class for every library-specific failure."""


class CoincidentPoints(RotquadError):
    """Two marked points that must be distinct coincide."""


class PointOnLoop(RotquadError):
    """A reference point sits on (or within tolerance of) a loop edge,
    so the winding number is undefined."""


class NonIntegerWinding(RotquadError):
    """An accumulated angle failed to land near an integer multiple of a
    full turn.  Signals numerical trouble, never a legitimate value."""


class DegenerateCrossing(RotquadError):
    """Two segments touch at an endpoint, overlap collinearly, or cross
    too close to parallel for the sign to be trusted."""


class SamplingFailure(RotquadError):
    """Adaptive refinement exhausted its point budget."""


class MixedCoincidence(RotquadError):
    """A marked tuple repeats a point across the two pairs.  These values
    exist only through the blow-up routines, not the loop methods."""


class TangentCondition(RotquadError):
    """The map is not certified rigid at the blow-up point, so the
    direction-circle dynamics cannot be pinned down."""


class ParseError(RotquadError):
    """Malformed cycle notation or scenario text."""


class RelationViolated(RotquadError):
    """A function table fails an identity that a requested operation
    needs as a precondition."""


class ScenarioError(RotquadError):
    """A scenario file or configuration is structurally invalid."""


class InconclusiveComputation(RotquadError):
    """All jitter retries for one check were exhausted.  Counted as a
    failure by every verification entry point."""


class NotFixed(RotquadError):
    """A declared marked point is not actually fixed by the map."""

    def __init__(self, point, residual):
        self.point = point
        self.residual = residual
        super().__init__(f"declared fixed point {point} moves by {residual:.3e}")
