"""Exception hierarchy shared by all pqg modules."""


class PqgError(Exception):
    """Base class for every error raised by this package."""


class SpaceMismatch(PqgError):
    """Two arguments belong to different spaces."""


class NonFiniteInput(PqgError):
    """A coordinate or tangent entry is NaN or infinite."""


class AntipodalPoints(PqgError):
    """Sphere operation hit the excluded antipodal configuration."""


class AntipodalInterpolation(AntipodalPoints):
    """Pointwise sphere interpolation would pass through antipodes."""


class EndpointMismatch(PqgError):
    """concat() called on paths whose seam points disagree."""


class EndsMismatch(PqgError):
    """Operation requires equal (start, end) pairs."""


class RowEndpointMismatch(PqgError):
    """Row-wise homotopy concatenation has a mismatched seam."""


class RowCountMismatch(PqgError):
    """Homotopies have different numbers of rows."""


class BadEpsilon(PqgError):
    """Plateau width outside (0, 1/2)."""


class NotALoop(PqgError):
    """Path does not close up (mod deck on the cone)."""


class ContractionUnavailable(PqgError):
    """No default contraction exists; caller must supply one."""


class ComposeMismatch(PqgError):
    """Morphisms are not composable (endpoints, groups, or trivializations)."""


class GroupMismatch(PqgError):
    """Phase arithmetic across different period groups."""


class NoPrimitive(PqgError):
    """The space has no distinguished one-form primitive."""


class DegenerateGrid(PqgError):
    """A parameter grid is too small for the requested stencil."""


class InsufficientResolutions(PqgError):
    """Convergence-order estimation needs at least three resolutions."""
