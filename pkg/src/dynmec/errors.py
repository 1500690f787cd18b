"""Exception hierarchy shared by every module."""


class DynMecError(Exception):
    """Base class for all library errors."""


class InvalidInput(DynMecError, ValueError):
    """Raised for malformed coordinates (NaN/inf, wrong shape)."""


class DegenerateInput(DynMecError, ValueError):
    """Raised when fewer than two distinct sites remain after merging."""


class CollinearInput(DynMecError, ValueError):
    """Raised when a circumcenter is requested for collinear points."""


class GeneralPositionViolation(DynMecError):
    """Four or more hull vertices are co-circular."""

    def __init__(self, violations):
        self.violations = [tuple(v) for v in violations]
        super().__init__(
            "sites are not in general position: %d co-circular 4-tuple(s), first %r"
            % (len(self.violations), self.violations[0] if self.violations else None)
        )


class VertexCoincidence(DynMecError):
    """The weight point coincides with a hull vertex.

    Every point of that vertex's farthest-point cell is then optimal, so no
    single optimizer exists.  ``cell`` describes the cell: the site index and
    the ids of the graph edges bounding it.
    """

    def __init__(self, site_index, cell=None):
        self.site_index = site_index
        self.cell = cell or {}
        super().__init__("weight point coincides with hull vertex %d" % site_index)


class NotApplicable(DynMecError):
    """Query does not apply to this node (INFINITY or a split root)."""


class DepthOutOfRange(DynMecError, ValueError):
    """Truncation depth outside [0, D]."""


class ZeroRotation(DynMecError, ValueError):
    """TRE contour requested for a pure translation."""


class BudgetOutOfRange(DynMecError, ValueError):
    """Displacement budget C outside (0, 2 r(S)]."""
