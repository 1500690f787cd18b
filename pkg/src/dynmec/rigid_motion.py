"""Target registration error of planar rigid motions and its worst case."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .center_function import CenterFunction, Locus, Solution
from .errors import BudgetOutOfRange, ZeroRotation
from .geometry import Point, as_point, as_siteset, dist, norm, sub, unit

FEASIBILITY_TOL = 1e-9
ZERO_ANGLE = 1e-12


def _wrap(theta: float) -> float:
    t = math.remainder(theta, 2.0 * math.pi)
    return math.pi if t == -math.pi else t


@dataclass(frozen=True)
class RigidMotion:
    """Rotation by ``theta`` about the origin followed by translation ``s``."""

    theta: float
    s: Point

    def __post_init__(self):
        object.__setattr__(self, "theta", _wrap(float(self.theta)))
        object.__setattr__(self, "s", as_point(self.s))

    @property
    def rotation(self) -> np.ndarray:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return np.array([[c, -s], [s, c]])

    def apply(self, q) -> Point:
        c, s = math.cos(self.theta), math.sin(self.theta)
        return Point(c * q[0] - s * q[1] + self.s[0], s * q[0] + c * q[1] + self.s[1])


@dataclass(frozen=True)
class TreContour:
    center: Point
    scale: float


@dataclass(frozen=True)
class DisplacementBound:
    value: float
    witness: RigidMotion
    solution: Solution


def tre(q, motion: RigidMotion) -> Point:
    """Displacement Rq + s - q, evaluated as (R - I) q + s."""
    c, s = math.cos(motion.theta) - 1.0, math.sin(motion.theta)
    return Point(c * q[0] - s * q[1] + motion.s[0], s * q[0] + c * q[1] + motion.s[1])


def contour(motion: RigidMotion) -> TreContour:
    """Fixed point of the motion and the growth rate of |TRE| around it.

    |TRE(q)| = scale * |q - center| for every q.
    """
    th = motion.theta
    if abs(th) <= ZERO_ANGLE:
        raise ZeroRotation("TRE is constant (|s|) for a pure translation")
    k = 1.0 / math.tan(th / 2.0)
    sx, sy = motion.s
    center = Point(0.5 * (sx - sy * k), 0.5 * (sx * k + sy))
    return TreContour(center, 2.0 * math.sin(abs(th) / 2.0))


def motion_about(center, theta: float) -> RigidMotion:
    """Rotation by theta that keeps ``center`` fixed."""
    c, s = math.cos(theta), math.sin(theta)
    x, y = center
    return RigidMotion(theta, Point(x - (c * x - s * y), y - (s * x + c * y)))


def rigid_constraint_check(sites, motion: RigidMotion, C: float) -> bool:
    return all(norm(tre(x, motion)) <= C + FEASIBILITY_TOL for x in as_siteset(sites))


def max_displacement(sites, p, C: float, method: str = "traversal") -> DisplacementBound:
    """Largest |TRE(p)| over rigid motions keeping every site within C.

    Equals C times the dynamic-weight objective at its optimizer, for
    0 < C <= 2 r(S).  The witness rotates about the optimizer x* with the
    smallest positive angle that makes the farthest site's constraint tight.
    """
    cf = sites if isinstance(sites, CenterFunction) else CenterFunction(sites)
    C = float(C)
    r = cf.fvb.mec.radius
    if not C > 0.0:
        raise BudgetOutOfRange("budget must be positive, got %r" % C)
    if C > 2.0 * r * (1.0 + 1e-12):
        raise BudgetOutOfRange("budget %.9g exceeds 2 r(S) = %.9g" % (C, 2.0 * r))
    p = as_point(p)
    sol = cf.solve_by_descent(p) if method == "descent" else cf.solve(p)
    hull = [cf.sites.points[i] for i in cf.fvb.hull.indices]

    if sol.locus is Locus.AT_INFINITY:
        centroid = Point(sum(v[0] for v in hull) / len(hull), sum(v[1] for v in hull) / len(hull))
        d = sub(p, centroid)
        direction = unit(d) if norm(d) > cf.sites.length_tol() else Point(1.0, 0.0)
        witness = RigidMotion(0.0, Point(C * direction[0], C * direction[1]))
        return DisplacementBound(C, witness, sol)

    x = sol.point
    far = max(dist(x, v) for v in hull)
    theta = 2.0 * math.asin(min(1.0, C / (2.0 * far)))
    return DisplacementBound(C * sol.value, motion_about(x, theta), sol)
