"""Minimum enclosing circle with a dynamic weight point.

For sites S and a weight point p the center x maximizing
|x - p| / max_i |x - x_i| lies on the farthest-point Voronoi boundary.
The package builds that boundary, solves the problem in closed form per
edge, partitions the plane of weight points by optimizer, and turns the
answer into a worst-case target registration error bound.
"""

from .center_function import (
    CenterFunction,
    Locus,
    PlaneDivision,
    Region,
    Solution,
    enumerate_regions,
    solve,
    solve_by_descent,
    solve_by_traversal,
)
from .division_tree import DivisionTree, build_division_tree, truncate
from .edge_solver import EdgeFrame, EdgeLocus, EdgeSolution, classify, make_frame
from .errors import (
    BudgetOutOfRange,
    CollinearInput,
    DegenerateInput,
    DepthOutOfRange,
    DynMecError,
    GeneralPositionViolation,
    InvalidInput,
    NotApplicable,
    VertexCoincidence,
    ZeroRotation,
)
from .fpvd import FvbEdge, FvbGraph, FvbNode, build_fvb, compute_mec, node_inverse_region
from .geometry import INFINITY, Point, SiteSet, check_general_position, convex_hull, evaluate_objective
from .rigid_motion import (
    DisplacementBound,
    RigidMotion,
    TreContour,
    contour,
    max_displacement,
    rigid_constraint_check,
    tre,
)

__version__ = "0.1.0"
