"""Planar primitives: points, circles, arcs, hulls and the objective.

Construction predicates run on *normalized* coordinates (centroid at the
origin, bounding-box diagonal 1) so that the absolute tolerances below mean
the same thing for every input scale.  Everything handed back to callers is
in the original frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import CollinearInput, DegenerateInput, InvalidInput

ORIENT_TOL = 1e-12  # orientation / in-circle determinants, normalized frame
DIST_TOL = 1e-9  # distance comparisons and snapping, normalized frame


class Point(NamedTuple):
    x: float
    y: float


class _Infinity:
    """The symbolic node at infinity shared by all unbounded edges."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()


def as_point(q) -> Point:
    x, y = float(q[0]), float(q[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidInput("non-finite coordinate in %r" % (q,))
    return Point(x, y)


def sub(a, b) -> Point:
    return Point(a[0] - b[0], a[1] - b[1])


def add(a, b) -> Point:
    return Point(a[0] + b[0], a[1] + b[1])


def scale(a, k: float) -> Point:
    return Point(a[0] * k, a[1] * k)


def dot(a, b) -> float:
    return a[0] * b[0] + a[1] * b[1]


def cross(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


def norm(a) -> float:
    return math.hypot(a[0], a[1])


def dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def unit(a) -> Point:
    n = norm(a)
    return Point(a[0] / n, a[1] / n)


def midpoint(a, b) -> Point:
    return Point(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]))


def orientation(a, b, c) -> float:
    """Twice the signed area of triangle abc; positive when counterclockwise."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def incircle(a, b, c, d) -> float:
    """In-circle determinant; zero iff the four points are co-circular."""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]
    ad = adx * adx + ady * ady
    bd = bdx * bdx + bdy * bdy
    cd = cdx * cdx + cdy * cdy
    return (
        adx * (bdy * cd - bd * cdy)
        - ady * (bdx * cd - bd * cdx)
        + ad * (bdx * cdy - bdy * cdx)
    )


def circumcenter(a, b, c, tol: float = ORIENT_TOL) -> Point:
    """Center of the circle through ``a``, ``b`` and ``c``.

    Raises CollinearInput when the orientation determinant is within ``tol``
    of zero.
    """
    # work relative to the centroid so the result is permutation-stable
    ox = (a[0] + b[0] + c[0]) / 3.0
    oy = (a[1] + b[1] + c[1]) / 3.0
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    if abs(d) <= 2.0 * tol:
        raise CollinearInput("points %r, %r, %r are collinear" % (a, b, c))
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    return Point(ox + ux, oy + uy)


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius >= 0.0:
            raise InvalidInput("circle radius must be nonnegative")

    def contains(self, q, tol: float = 0.0) -> bool:
        return dist(self.center, q) <= self.radius + tol


@dataclass(frozen=True)
class Arc:
    """Counterclockwise circular arc from angle ``start`` through ``sweep``."""

    center: Point
    radius: float
    start: float
    sweep: float

    def point_at(self, t: float) -> Point:
        ang = self.start + t * self.sweep
        return Point(
            self.center[0] + self.radius * math.cos(ang),
            self.center[1] + self.radius * math.sin(ang),
        )

    @property
    def endpoints(self) -> tuple[Point, Point]:
        return self.point_at(0.0), self.point_at(1.0)


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point


@dataclass(frozen=True)
class Line:
    """Infinite line through ``point`` along ``direction``."""

    point: Point
    direction: Point


def far_arc(o, a, b, tol: float = ORIENT_TOL) -> Arc | None:
    """Arc of the circle through o, a, b cut off by chord ab, away from o.

    Returns None when o lies on line ab (the arc degenerates to a half-plane).
    """
    if abs(orientation(a, b, o)) <= tol * max(1.0, dist(a, b) ** 2):
        return None
    c = circumcenter(o, a, b, tol=0.0)
    rad = dist(c, a)
    ta = math.atan2(a[1] - c[1], a[0] - c[0])
    tb = math.atan2(b[1] - c[1], b[0] - c[0])
    to = math.atan2(o[1] - c[1], o[0] - c[0])
    sweep = (tb - ta) % (2.0 * math.pi)
    if (to - ta) % (2.0 * math.pi) < sweep:
        # o is on the a->b counterclockwise arc: take the other one
        return Arc(c, rad, tb, 2.0 * math.pi - sweep)
    return Arc(c, rad, ta, sweep)


@dataclass(frozen=True)
class SiteSet:
    """Validated static point set with its normalizing similarity.

    ``points`` are the distinct sites in the caller's frame; ``index_map``
    sends each raw input index to the index of the site it was merged into.
    normalized = (world - shift) * scale.
    """

    points: tuple[Point, ...]
    shift: Point
    scale: float
    index_map: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def from_points(cls, raw: Iterable[Sequence[float]], tol: float = DIST_TOL) -> "SiteSet":
        pts = [as_point(q) for q in raw]
        if len(pts) < 2:
            raise DegenerateInput("need at least two sites, got %d" % len(pts))
        arr = np.asarray(pts, dtype=float)
        lo, hi = arr.min(axis=0), arr.max(axis=0)
        diag = float(np.hypot(*(hi - lo)))
        if diag == 0.0:
            raise DegenerateInput("all sites coincide")
        shift = arr.mean(axis=0)
        k = 1.0 / diag
        normed = (arr - shift) * k
        parent = list(range(len(pts)))
        for i, j in sorted(cKDTree(normed).query_pairs(tol)):
            ri, rj = _root(parent, i), _root(parent, j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
        keep = sorted({_root(parent, i) for i in range(len(pts))})
        if len(keep) < 2:
            raise DegenerateInput("fewer than two distinct sites after merging")
        pos = {old: new for new, old in enumerate(keep)}
        index_map = tuple(pos[_root(parent, i)] for i in range(len(pts)))
        kept = arr[keep]
        shift = kept.mean(axis=0)
        lo, hi = kept.min(axis=0), kept.max(axis=0)
        k = 1.0 / float(np.hypot(*(hi - lo)))
        return cls(
            points=tuple(Point(float(x), float(y)) for x, y in kept),
            shift=Point(float(shift[0]), float(shift[1])),
            scale=k,
            index_map=index_map,
        )

    def __len__(self):
        return len(self.points)

    def __getitem__(self, i) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    @cached_property
    def normalized(self) -> tuple[Point, ...]:
        return tuple(self.to_local(q) for q in self.points)

    def to_local(self, q) -> Point:
        return Point((q[0] - self.shift[0]) * self.scale, (q[1] - self.shift[1]) * self.scale)

    def to_world(self, q) -> Point:
        return Point(q[0] / self.scale + self.shift[0], q[1] / self.scale + self.shift[1])

    def length_tol(self, tol: float = DIST_TOL) -> float:
        """A normalized-frame length tolerance expressed in world units."""
        return tol / self.scale


def _root(parent, i):
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def as_siteset(sites) -> SiteSet:
    return sites if isinstance(sites, SiteSet) else SiteSet.from_points(sites)


@dataclass(frozen=True)
class ConvexHull:
    """Counterclockwise hull; ``indices`` point into the owning SiteSet."""

    indices: tuple[int, ...]
    vertices: tuple[Point, ...]

    @property
    def m(self) -> int:
        return len(self.indices)

    def contains(self, q, tol: float = 0.0) -> bool:
        """Closed containment test (boundary counts as inside)."""
        v = self.vertices
        if len(v) == 2:
            a, b = v
            ab = dist(a, b)
            return abs(orientation(a, b, q)) <= tol * ab and (
                -tol <= dot(sub(q, a), sub(b, a)) / ab <= ab + tol
            )
        for k in range(len(v)):
            a, b = v[k], v[(k + 1) % len(v)]
            if orientation(a, b, q) < -tol * dist(a, b):
                return False
        return True


def convex_hull(sites) -> ConvexHull:
    """Strictly convex hull by Andrew's monotone chain."""
    sites = as_siteset(sites)
    pts = sites.normalized
    order = sorted(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))

    def chain(seq):
        out = []
        for i in seq:
            while len(out) > 1 and orientation(pts[out[-2]], pts[out[-1]], pts[i]) <= ORIENT_TOL:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    idx = lower[:-1] + upper[:-1]
    if len(idx) < 2:
        # every site collinear with the two extremes collapsed onto one index
        idx = [order[0], order[-1]]
    return ConvexHull(tuple(idx), tuple(sites.points[i] for i in idx))


@dataclass(frozen=True)
class GeneralPositionReport:
    violations: tuple[tuple[int, int, int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok


def check_general_position(sites, hull: ConvexHull | None = None,
                           tol: float = DIST_TOL) -> GeneralPositionReport:
    """Report every co-circular 4-tuple of hull vertices (site indices).

    A 4-tuple is co-circular when one point lies within ``tol`` (normalized
    frame) of the circle through the other three; the triple spanning the
    largest area is used as the reference circle.  Exhaustive over all
    4-subsets, so O(m^4) in the hull size.
    """
    sites = as_siteset(sites)
    hull = hull or convex_hull(sites)
    idx = hull.indices
    if len(idx) < 4:
        return GeneralPositionReport(())
    h = np.asarray([sites.normalized[i] for i in idx], dtype=float)
    found = []
    combos = combinations(range(len(idx)), 4)
    while True:
        block = np.fromiter(
            (k for quad in _take(combos, 200_000) for k in quad), dtype=np.int64
        ).reshape(-1, 4)
        if not len(block):
            break
        gap = _circle_gap(h[block])
        for row in block[gap <= tol]:
            found.append(tuple(idx[k] for k in row))
    return GeneralPositionReport(tuple(found))


def _take(it, n):
    for _, item in zip(range(n), it):
        yield item


_TRIPLES = ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 3, 1), (1, 2, 3, 0))


def _circle_gap(quads: np.ndarray) -> np.ndarray:
    """Distance of the odd point out from the circle through the other three."""
    areas = np.stack([
        np.abs(_orient_many(quads[:, i], quads[:, j], quads[:, k])) for i, j, k, _ in _TRIPLES
    ], axis=1)
    pick = np.argmax(areas, axis=1)
    order = np.asarray(_TRIPLES)[pick]
    rows = np.arange(len(quads))
    a, b, c, d = (quads[rows, order[:, t]] for t in range(4))
    ax, ay = a[:, 0], a[:, 1]
    bx, by = b[:, 0], b[:, 1]
    cx, cy = c[:, 0], c[:, 1]
    den = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / den
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / den
    rad = np.hypot(ax - ux, ay - uy)
    return np.abs(np.hypot(d[:, 0] - ux, d[:, 1] - uy) - rad)


def _orient_many(a, b, c):
    return (b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0])


def evaluate_objective(x, sites, p) -> float:
    """||x - p|| / max_i ||x - x_i||."""
    pts = sites.points if isinstance(sites, SiteSet) else sites
    far = max(dist(x, q) for q in pts)
    return dist(x, p) / far
