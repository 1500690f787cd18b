"""Closed-form maximization of the distance ratio along one bisector edge.

Local frame of an edge: the start node O1 is the origin, the edge runs along
the negative x-axis and both sites sit at (gamma, +/-h).  A point at offset
lam along the edge scores

    f(lam) = sqrt((rho^2 + 2 rho lam cos(theta) + lam^2) / (r^2 + 2 gamma lam + lam^2))

for a weight point with local polar coordinates (rho, theta).  The sign of
f' is that of a*lam^2 + b*lam + c with

    a = gamma - rho cos(theta),  b = r^2 - rho^2,  c = rho r^2 cos(theta) - rho^2 gamma

and the sign pattern of (a, b, c), refined by two circles on bounded edges,
decides whether the maximum sits at an endpoint or at the stationary point
lam* > 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .geometry import DIST_TOL, INFINITY, Point, dist, dot
from .fpvd import UNBOUNDED

# half the 1e-9 agreement budget, so any tied primary stays within it
VALUE_TIE = 5e-10


class EdgeLocus(enum.Enum):
    START_NODE = "start_node"
    END_NODE = "end_node"
    INTERIOR = "interior"
    INFINITY = "infinity"


@dataclass(frozen=True)
class EdgeFrame:
    origin: Point
    axis: Point  # unit vector from O1 toward O2 in the caller's frame
    gamma: float
    r: float
    delta: float
    half_chord: float
    site_i: Point
    site_j: Point

    @property
    def bounded(self) -> bool:
        return self.delta != UNBOUNDED

    def to_local(self, q) -> Point:
        dx, dy = q[0] - self.origin[0], q[1] - self.origin[1]
        ux, uy = self.axis
        return Point(-(dx * ux + dy * uy), dx * uy - dy * ux)

    def to_global(self, q) -> Point:
        ux, uy = self.axis
        return Point(self.origin[0] - q[0] * ux + q[1] * uy,
                     self.origin[1] - q[0] * uy - q[1] * ux)

    def point_at(self, lam: float) -> Point:
        return Point(self.origin[0] + lam * self.axis[0], self.origin[1] + lam * self.axis[1])

    def polar(self, p) -> tuple[float, float]:
        lx, ly = self.to_local(p)
        return math.hypot(lx, ly), math.atan2(ly, lx)


@dataclass(frozen=True)
class EdgeCoefficients:
    a: float
    b: float
    c: float
    lam_star: float | None


@dataclass(frozen=True)
class EdgeSolution:
    kind: EdgeLocus
    lam: float
    value: float
    unique: bool = True
    region: str = ""
    ties: tuple[tuple[EdgeLocus, float], ...] = ()


def make_frame(edge, graph) -> EdgeFrame:
    """Frame of ``edge`` (anchor = O1, direction toward O2); ``graph`` supplies sites."""
    xi, xj = graph.site(edge.site_pair[0]), graph.site(edge.site_pair[1])
    o, u = edge.anchor, edge.direction
    r = dist(o, xi)
    half = 0.5 * dist(xi, xj)
    gamma = -0.5 * (dot((xi[0] - o[0], xi[1] - o[1]), u) + dot((xj[0] - o[0], xj[1] - o[1]), u))
    if gamma < 0.0:
        gamma = 0.0  # O1 on the chord up to rounding
    return EdgeFrame(o, u, gamma, r, edge.length, half, xi, xj)


def objective_on_edge(frame: EdgeFrame, p, lam: float) -> float:
    if lam == math.inf:
        return 1.0
    px, py = frame.to_local(p)
    rho2 = px * px + py * py
    num = rho2 + 2.0 * px * lam + lam * lam
    den = frame.r ** 2 + 2.0 * frame.gamma * lam + lam * lam
    return math.sqrt(max(num, 0.0) / den)


def _positive_roots(a: float, b: float, c: float, r: float) -> list[float]:
    if abs(a) <= 1e-12 * r:
        # the quadratic degenerates to b*lam + c
        if b == 0.0:
            return []
        lam = -c / b
        return [lam] if lam > 0.0 else []
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    # cancellation-free pair of roots
    q = -0.5 * (b + math.copysign(sq, b))
    roots = [q / a] + ([c / q] if q != 0.0 else [])
    return sorted(t for t in roots if t > 0.0)


def _positive_root(a: float, b: float, c: float, r: float) -> float | None:
    """lam* where g = a lam^2 + b lam + c changes sign from + to -."""
    pos = _positive_roots(a, b, c, r)
    if not pos:
        return None
    if len(pos) == 1:
        return pos[0]
    return pos[0] if a > 0.0 else pos[-1]


def coefficients(frame: EdgeFrame, p) -> EdgeCoefficients:
    px, py = frame.to_local(p)
    rho2 = px * px + py * py
    r2 = frame.r ** 2
    a = frame.gamma - px
    b = r2 - rho2
    c = r2 * px - rho2 * frame.gamma
    lam = _positive_root(a, b, c, frame.r) if (a * c < 0.0 or abs(a) <= 1e-12 * frame.r) else None
    return EdgeCoefficients(a, b, c, lam)


def _signs(frame: EdgeFrame, p):
    """Signs of a, b, c, each zeroed when p is within tolerance of its curve."""
    px, py = frame.to_local(p)
    rho2 = px * px + py * py
    r2, g = frame.r ** 2, frame.gamma
    tol = DIST_TOL * frame.r
    a = g - px
    b = r2 - rho2
    c = r2 * px - rho2 * g
    grad_b = 2.0 * math.sqrt(rho2)
    grad_c = math.hypot(r2 - 2.0 * g * px, 2.0 * g * py)
    return (
        _sgn(a, tol),
        _sgn(b, tol * grad_b),
        _sgn(c, tol * grad_c),
        px, py, rho2,
    )


def _sgn(v: float, tol: float) -> int:
    if v > tol:
        return 1
    if v < -tol:
        return -1
    return 0


def _interior(frame, p, region):
    co = coefficients(frame, p)
    lam = co.lam_star
    if lam is None or not (0.0 < lam < frame.delta):
        return _by_value(frame, p, region)
    return EdgeSolution(EdgeLocus.INTERIOR, lam, objective_on_edge(frame, p, lam), True, region)


def _end(frame) -> tuple[EdgeLocus, float]:
    return (EdgeLocus.END_NODE, frame.delta) if frame.bounded else (EdgeLocus.INFINITY, math.inf)


def _by_value(frame: EdgeFrame, p, region: str) -> EdgeSolution:
    """Boundary fallback: compare f at every candidate and report ties."""
    cands = [(EdgeLocus.START_NODE, 0.0), _end(frame)]
    co = coefficients(frame, p)
    lam_tol = DIST_TOL * frame.r
    for lam in _positive_roots(co.a, co.b, co.c, frame.r):
        if lam_tol < lam < frame.delta - lam_tol:
            cands.append((EdgeLocus.INTERIOR, lam))
    scored = [(objective_on_edge(frame, p, t), kind, t) for kind, t in cands]
    best = max(s[0] for s in scored)
    tied = [(kind, t) for v, kind, t in scored if v >= best - VALUE_TIE]
    order = {EdgeLocus.START_NODE: 0, EdgeLocus.INTERIOR: 1, EdgeLocus.END_NODE: 2, EdgeLocus.INFINITY: 3}
    tied.sort(key=lambda kt: order[kt[0]])
    kind, t = tied[0]
    return EdgeSolution(kind, t, objective_on_edge(frame, p, t), len(tied) == 1,
                        region or "boundary", tuple(tied))


def _single(frame, p, kind, region):
    lam = {EdgeLocus.START_NODE: 0.0, EdgeLocus.END_NODE: frame.delta,
           EdgeLocus.INFINITY: math.inf}[kind]
    return EdgeSolution(kind, lam, objective_on_edge(frame, p, lam), True, region)


def classify_unbounded(frame: EdgeFrame, p) -> EdgeSolution:
    """Optimum of f over lam >= 0, by the sign pattern of (a, b, c)."""
    sa, sb, sc, *_ = _signs(frame, p)
    if sa < 0 and sc > 0:
        return _interior(frame, p, "3u5")
    if sa < 0 and sb < 0 and sc < 0:
        return _single(frame, p, EdgeLocus.START_NODE, "1")
    if sa > 0 and sb < 0 and sc < 0:
        return _single(frame, p, EdgeLocus.START_NODE, "2")
    if sa > 0 and sb > 0 and sc < 0:
        return _single(frame, p, EdgeLocus.INFINITY, "4")
    if sa > 0 and sb > 0 and sc > 0:
        return _single(frame, p, EdgeLocus.INFINITY, "6")
    return _by_value(frame, p, "boundary")


def b1_circle(frame: EdgeFrame) -> tuple[Point, float]:
    """Circle where lam* = delta: passes through both sites and O2 (local frame)."""
    g, d, r2 = frame.gamma, frame.delta, frame.r ** 2
    cx = (r2 - d * d) / (2.0 * g + 2.0 * d)
    return Point(cx, 0.0), math.hypot(g - cx, frame.half_chord)


def b2_circle(frame: EdgeFrame) -> tuple[Point, float]:
    """Circle where f(0) = f(delta): passes through both sites (local frame)."""
    g, d, r2 = frame.gamma, frame.delta, frame.r ** 2
    cx = r2 / (2.0 * g + d)
    return Point(cx, 0.0), math.hypot(g - cx, frame.half_chord)


def c_circle(frame: EdgeFrame) -> tuple[Point, float] | None:
    """Circle c = 0 through both sites and O1 (local frame); None when gamma = 0."""
    if frame.gamma <= 0.0:
        return None
    cx = frame.r ** 2 / (2.0 * frame.gamma)
    return Point(cx, 0.0), cx


def _b1(frame, px, rho2):
    g, d, r2 = frame.gamma, frame.delta, frame.r ** 2
    val = (g + d) * rho2 - (r2 - d * d) * px - (g * d + r2) * d
    grad = math.hypot(2.0 * (g + d) * px - (r2 - d * d), 2.0 * (g + d) * math.sqrt(max(rho2 - px * px, 0.0)))
    return val, grad


def _b2(frame, px, rho2):
    g, d, r2 = frame.gamma, frame.delta, frame.r ** 2
    val = (2.0 * g + d) * rho2 - 2.0 * r2 * px - r2 * d
    grad = math.hypot(2.0 * (2.0 * g + d) * px - 2.0 * r2, 2.0 * (2.0 * g + d) * math.sqrt(max(rho2 - px * px, 0.0)))
    return val, grad


def classify_bounded(frame: EdgeFrame, p) -> EdgeSolution:
    """Optimum of f over 0 <= lam <= delta."""
    sa, sb, sc, px, py, rho2 = _signs(frame, p)
    tol = DIST_TOL * frame.r
    if sa < 0 and sc > 0:
        val, grad = _b1(frame, px, rho2)
        s1 = _sgn(val, tol * grad)
        if s1 > 0:
            return _interior(frame, p, "3'")
        if s1 < 0:
            return _single(frame, p, EdgeLocus.END_NODE, "5'")
        return _by_value(frame, p, "b1")
    if sa < 0 and sb < 0 and sc < 0:
        return _single(frame, p, EdgeLocus.START_NODE, "1")
    if sa > 0 and sb > 0 and sc > 0:
        return _single(frame, p, EdgeLocus.END_NODE, "6")
    if sa > 0 and sc < 0:
        val, grad = _b2(frame, px, rho2)
        s2 = _sgn(val, tol * grad)
        if s2 > 0:
            return _single(frame, p, EdgeLocus.START_NODE, "2'")
        if s2 < 0:
            return _single(frame, p, EdgeLocus.END_NODE, "4'")
        return _by_value(frame, p, "b2")
    return _by_value(frame, p, "boundary")


def classify(frame: EdgeFrame, p) -> EdgeSolution:
    return classify_bounded(frame, p) if frame.bounded else classify_unbounded(frame, p)


def arch_contains(o, xi, xj, edge_direction, p, tol: float = DIST_TOL) -> bool:
    """Strict membership of p in Arch(o, xi, xj).

    The arch is cut off by chord xi xj on the side away from ``o`` by the
    circle through o, xi, xj; when o lies on the chord it is the open
    half-plane not containing the edge leaving o along ``edge_direction``.
    Arch(INFINITY, .) is empty.
    """
    if o is INFINITY:
        return False
    ux, uy = edge_direction
    dxi = (xi[0] - o[0], xi[1] - o[1])
    dxj = (xj[0] - o[0], xj[1] - o[1])
    gamma = max(0.0, -0.5 * (dxi[0] * ux + dxi[1] * uy + dxj[0] * ux + dxj[1] * uy))
    r2 = 0.5 * (dxi[0] ** 2 + dxi[1] ** 2 + dxj[0] ** 2 + dxj[1] ** 2)
    dx, dy = p[0] - o[0], p[1] - o[1]
    px = -(dx * ux + dy * uy)
    py = dx * uy - dy * ux
    rho2 = dx * dx + dy * dy
    scale = math.sqrt(r2)
    if px - gamma <= tol * scale:
        return False
    c = r2 * px - rho2 * gamma
    grad_c = math.hypot(r2 - 2.0 * gamma * px, 2.0 * gamma * py)
    return c > tol * scale * grad_c


def dominant_region_contains(edge, p, graph, end_position=None) -> bool:
    """p in Arch(O1) minus Arch(O2) for an edge oriented parent -> child.

    ``end_position`` is O2 (or INFINITY); looked up in ``graph`` when omitted.
    """
    xi, xj = graph.site(edge.site_pair[0]), graph.site(edge.site_pair[1])
    if end_position is None:
        end_position = graph.node_position(edge.end_node)
    if not arch_contains(edge.anchor, xi, xj, edge.direction, p):
        return False
    return not arch_contains(end_position, xi, xj, edge.direction, p)
