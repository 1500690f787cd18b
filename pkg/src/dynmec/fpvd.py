"""Farthest-point Voronoi boundary FVB(S) and the minimum enclosing circle."""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from functools import cached_property

from .errors import GeneralPositionViolation, NotApplicable
from .geometry import (
    DIST_TOL,
    INFINITY,
    Arc,
    Circle,
    ConvexHull,
    Point,
    SiteSet,
    as_siteset,
    check_general_position,
    circumcenter,
    convex_hull,
    dist,
    dot,
    far_arc,
    midpoint,
    orientation,
    sub,
    unit,
)

UNBOUNDED = math.inf
INFINITY_ID = 0


@dataclass(frozen=True)
class FvbNode:
    id: int
    position: Point | object  # Point, or INFINITY
    defining_sites: tuple[int, ...] = ()

    @property
    def is_infinity(self) -> bool:
        return self.position is INFINITY


@dataclass(frozen=True)
class FvbEdge:
    """Piece of the bisector of ``site_pair`` between two nodes.

    ``anchor`` is the start node's position (for the two-site bisector line,
    whose ends are both at infinity, it is the midpoint of the pair) and
    ``direction`` points from the start toward the end node.
    """

    id: int
    site_pair: tuple[int, int]
    start_node: int
    end_node: int
    anchor: Point
    direction: Point
    length: float

    @property
    def bounded(self) -> bool:
        return self.length != UNBOUNDED

    @property
    def is_line(self) -> bool:
        return self.start_node == INFINITY_ID

    def point_at(self, lam: float) -> Point:
        return Point(self.anchor[0] + lam * self.direction[0],
                     self.anchor[1] + lam * self.direction[1])


@dataclass(frozen=True)
class FvbGraph:
    sites: SiteSet
    hull: ConvexHull
    nodes: tuple[FvbNode, ...]
    edges: tuple[FvbEdge, ...]
    mec: Circle

    @property
    def m(self) -> int:
        return self.hull.m

    @property
    def finite_nodes(self) -> tuple[FvbNode, ...]:
        return tuple(n for n in self.nodes if not n.is_infinity)

    @cached_property
    def incident(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {n.id: [] for n in self.nodes}
        for e in self.edges:
            out[e.start_node].append(e.id)
            if e.end_node != e.start_node:
                out[e.end_node].append(e.id)
        return {k: tuple(v) for k, v in out.items()}

    def site(self, i: int) -> Point:
        return self.sites.points[i]

    def node_position(self, node_id: int):
        return self.nodes[node_id].position

    def distance_to(self, q) -> float:
        """Euclidean distance from q to the union of all edges."""
        return min(_dist_to_edge(e, q) for e in self.edges)

    def farthest_sites(self, q, tol: float = DIST_TOL) -> tuple[int, ...]:
        """Hull vertex indices whose distance to q ties the maximum within tol."""
        d = [(dist(q, self.site(i)), i) for i in self.hull.indices]
        top = max(d)[0]
        slack = self.sites.length_tol(tol)
        return tuple(sorted(i for di, i in d if di >= top - slack))


def _dist_to_edge(e: FvbEdge, q) -> float:
    t = dot(sub(q, e.anchor), e.direction)
    if e.is_line:
        pass
    elif t < 0.0:
        t = 0.0
    elif t > e.length:
        t = e.length
    return dist(q, e.point_at(t))


MEC_SEED = 0x5EC


def compute_mec(sites, seed: int = MEC_SEED) -> Circle:
    """Minimum enclosing circle by the move-to-front incremental method.

    ``seed`` only fixes the insertion order; the circle does not depend on it.
    """
    return _mec(as_siteset(sites), seed)[0]


def _mec(sites: SiteSet, seed: int = MEC_SEED) -> tuple[Circle, tuple[int, ...]]:
    hull = convex_hull(sites)
    pts = [sites.normalized[i] for i in hull.indices]
    order = list(range(len(pts)))
    random.Random(seed).shuffle(order)
    circle, support = None, ()
    for n, i in enumerate(order):
        if circle is None or not _inside(circle, pts[i]):
            circle, support = _mec_one(pts, order[: n + 1], i)
    center = sites.to_world(circle[0])
    support = tuple(sorted(hull.indices[k] for k in support))
    radius = max(dist(center, sites.points[k]) for k in support)
    return Circle(center, radius), support


def _inside(c, q) -> bool:
    return dist(c[0], q) <= c[1] * (1 + 1e-12) + 1e-14


def _mec_one(pts, idx, i):
    c, sup = (pts[i], 0.0), (i,)
    for n, j in enumerate(idx):
        if not _inside(c, pts[j]):
            if c[1] == 0.0:
                c, sup = (midpoint(pts[i], pts[j]), dist(pts[i], pts[j]) / 2), (i, j)
            else:
                c, sup = _mec_two(pts, idx[: n + 1], i, j)
    return c, sup


def _mec_two(pts, idx, i, j):
    p, q = pts[i], pts[j]
    c, sup = (midpoint(p, q), dist(p, q) / 2), (i, j)
    for k in idx:
        if not _inside(c, pts[k]):
            cc = circumcenter(p, q, pts[k], tol=0.0)
            c, sup = (cc, dist(cc, p)), (i, j, k)
    return c, sup


def farthest_delaunay(sites: SiteSet, hull: ConvexHull) -> list[tuple[int, int, int]]:
    """Farthest-point Delaunay triangulation of the hull vertices.

    Repeatedly clips the ear whose circumcircle is largest (ties broken by
    the larger ear angle); each clipped ear's circle contains every
    remaining vertex.  Triangles are returned as positions into
    ``hull.indices`` in counterclockwise order.
    """
    m = hull.m
    if m < 3:
        return []
    pts = [sites.normalized[i] for i in hull.indices]
    prev = [(k - 1) % m for k in range(m)]
    nxt = [(k + 1) % m for k in range(m)]
    alive = [True] * m
    stamp = [0] * m

    def key(k):
        a, b, c = pts[prev[k]], pts[k], pts[nxt[k]]
        area2 = orientation(a, b, c)
        rad = dist(a, b) * dist(b, c) * dist(c, a) / (2.0 * area2)
        u, v = sub(a, b), sub(c, b)
        ang = math.atan2(abs(u[0] * v[1] - u[1] * v[0]), dot(u, v))
        return (-rad, -ang)

    heap = [(key(k), k, 0) for k in range(m)]
    heapq.heapify(heap)
    tris = []
    left = m
    while left > 3:
        _, k, s = heapq.heappop(heap)
        if not alive[k] or s != stamp[k]:
            continue
        a, c = prev[k], nxt[k]
        tris.append((a, k, c))
        alive[k] = False
        nxt[a], prev[c] = c, a
        left -= 1
        for j in (a, c):
            stamp[j] += 1
            heapq.heappush(heap, (key(j), j, stamp[j]))
    k = next(i for i in range(m) if alive[i])
    tris.append((prev[k], k, nxt[k]))
    return tris


def build_fvb(sites, check: bool = True) -> FvbGraph:
    """Construct FVB(S) from the hull vertices.

    Raises GeneralPositionViolation when four hull vertices are co-circular.
    """
    sites = as_siteset(sites)
    hull = convex_hull(sites)
    if check:
        report = check_general_position(sites, hull)
        if not report.ok:
            raise GeneralPositionViolation(report.violations)
    mec, _ = _mec(sites)
    m = hull.m
    hidx = hull.indices
    nodes = [FvbNode(INFINITY_ID, INFINITY)]
    edges: list[FvbEdge] = []

    if m == 2:
        a, b = (sites.points[i] for i in hidx)
        d = unit(Point(-(b[1] - a[1]), b[0] - a[0]))
        edges.append(FvbEdge(0, (hidx[0], hidx[1]), INFINITY_ID, INFINITY_ID,
                             midpoint(a, b), d, UNBOUNDED))
        return FvbGraph(sites, hull, tuple(nodes), tuple(edges), mec)

    tris = farthest_delaunay(sites, hull)
    owner: dict[tuple[int, int], list[int]] = {}
    for t, (a, b, c) in enumerate(tris):
        cc = circumcenter(*(sites.normalized[hidx[k]] for k in (a, b, c)), tol=0.0)
        nodes.append(FvbNode(t + 1, sites.to_world(cc), tuple(sorted(hidx[k] for k in (a, b, c)))))
        for u, v in ((a, b), (b, c), (c, a)):
            owner.setdefault((min(u, v), max(u, v)), []).append(t + 1)

    for (u, v), tri_nodes in sorted(owner.items()):
        pair = (hidx[u], hidx[v])
        if len(tri_nodes) == 1:
            # hull side: the ray leaves along the inward normal of the side
            if (v - u) % m == 1:
                s, t = sites.points[hidx[u]], sites.points[hidx[v]]
            else:
                s, t = sites.points[hidx[v]], sites.points[hidx[u]]
            d = unit(Point(-(t[1] - s[1]), t[0] - s[0]))
            start = tri_nodes[0]
            edges.append(FvbEdge(len(edges), pair, start, INFINITY_ID,
                                 nodes[start].position, d, UNBOUNDED))
        else:
            n1, n2 = tri_nodes
            x = sites.points[pair[0]]
            if dist(nodes[n2].position, x) < dist(nodes[n1].position, x):
                n1, n2 = n2, n1
            p1, p2 = nodes[n1].position, nodes[n2].position
            edges.append(FvbEdge(len(edges), pair, n1, n2, p1,
                                 unit(sub(p2, p1)), dist(p1, p2)))
    return FvbGraph(sites, hull, tuple(nodes), tuple(edges), mec)


def node_inverse_region(fvb: FvbGraph, node: FvbNode | int) -> list[Arc]:
    """Arcs bounding the weight points whose optimizer is this node.

    One far arc per pair of the node's three defining sites.  Not defined for
    INFINITY or for the node sitting at the MEC center (the root), whose
    region is handled by the division tree.
    """
    if isinstance(node, int):
        node = fvb.nodes[node]
    if node.is_infinity or len(node.defining_sites) != 3:
        raise NotApplicable("node %d has no arc-bounded inverse image" % node.id)
    if dist(node.position, fvb.mec.center) <= fvb.sites.length_tol():
        raise NotApplicable("node %d is the root" % node.id)
    i, j, k = (fvb.site(s) for s in node.defining_sites)
    return [far_arc(node.position, a, b) for a, b in ((i, j), (i, k), (j, k))]
