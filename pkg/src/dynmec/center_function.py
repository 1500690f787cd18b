"""The center function: weight point p -> unique maximizer of the ratio.

Two solvers share one DivisionTree:

* traversal scores every edge with the closed-form edge solver and keeps
  the best;
* descent walks from the root, testing the weight point against the arch
  regions of one subtree per level and skipping all other branches.

``enumerate_regions`` materializes the inverse images of every node and
edge as arc-bounded regions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

from .division_tree import DivisionTree, build_division_tree
from .edge_solver import (
    VALUE_TIE,
    EdgeLocus,
    arch_contains,
    classify,
    classify_bounded,
    classify_unbounded,
)
from .errors import VertexCoincidence
from .fpvd import INFINITY_ID, FvbGraph, build_fvb
from .geometry import (
    INFINITY,
    Line,
    Point,
    Segment,
    SiteSet,
    as_point,
    dist,
    evaluate_objective,
    far_arc,
    orientation,
)


class Locus(enum.Enum):
    NODE = "node"
    EDGE_INTERIOR = "edge_interior"
    AT_INFINITY = "infinity"


@dataclass(frozen=True)
class Candidate:
    locus: Locus
    node_id: int | None
    edge_id: int | None
    lam: float | None
    point: Point | object
    value: float

    def sort_key(self):
        big = math.inf
        return (
            self.node_id if self.node_id is not None else big,
            self.edge_id if self.edge_id is not None else -1,
            self.lam if self.lam is not None else 0.0,
        )


@dataclass(frozen=True)
class Solution:
    """Optimizer x* = phi(p).

    ``value`` is the objective at x*; for AT_INFINITY it is the limiting
    ratio 1, approached but not attained (``attained`` is False).  When the
    optimum is tied, ``unique`` is False and ``ties`` lists every tied locus
    (the primary one first).
    """

    locus: Locus
    point: Point | object
    value: float
    unique: bool = True
    node_id: int | None = None
    edge_id: int | None = None
    lam: float | None = None
    ties: tuple[Candidate, ...] = ()
    levels: int | None = None

    @property
    def attained(self) -> bool:
        return self.locus is not Locus.AT_INFINITY

    @classmethod
    def from_candidates(cls, cands, levels=None) -> "Solution":
        cands = sorted(cands, key=Candidate.sort_key)
        c = cands[0]
        return cls(c.locus, c.point, c.value, len(cands) == 1, c.node_id, c.edge_id,
                   c.lam, tuple(cands), levels)


@dataclass(frozen=True)
class Region:
    """One cell of the plane division.

    ``label`` is ("node", id), ("edge", fvb edge id) or ("infinity",);
    ``boundary`` lists Arc / Segment / Line primitives; ``contains`` is an
    open-set membership predicate.
    """

    label: tuple
    boundary: tuple
    contains: Callable[[Point], bool] = field(repr=False, compare=False)


@dataclass(frozen=True)
class PlaneDivision:
    regions: tuple[Region, ...]
    m: int

    @property
    def count(self) -> int:
        """Regions with area; for two sites the hull is a segment and is left out."""
        return len(self.regions) - (self.m == 2)

    def locate(self, p) -> list[tuple]:
        return [r.label for r in self.regions if r.contains(p)]


class CenterFunction:
    """Solvers bound to one static site set."""

    def __init__(self, sites):
        if isinstance(sites, DivisionTree):
            self.tree = sites
        else:
            self.tree = build_division_tree(build_fvb(sites))

    @property
    def fvb(self) -> FvbGraph:
        return self.tree.fvb

    @property
    def sites(self) -> SiteSet:
        return self.tree.fvb.sites

    # -- helpers -----------------------------------------------------------

    def check_vertex(self, p):
        tol = self.sites.length_tol()
        for i in self.fvb.hull.indices:
            if dist(p, self.sites.points[i]) <= tol:
                cell = {
                    "site": i,
                    "edges": sorted(e.id for e in self.fvb.edges if i in e.site_pair),
                }
                raise VertexCoincidence(i, cell)

    def _node_candidate(self, node_id, p) -> Candidate:
        if node_id == INFINITY_ID:
            return Candidate(Locus.AT_INFINITY, INFINITY_ID, None, None, INFINITY, 1.0)
        pos = self.tree.node_position(node_id)
        return Candidate(Locus.NODE, node_id, None, None, pos, evaluate_objective(pos, self.sites, p))

    def _edge_candidates(self, edge_id, p, es) -> list[Candidate]:
        e = self.tree.edges[edge_id]
        out = []
        for kind, lam in (es.ties or ((es.kind, es.lam),)):
            if kind is EdgeLocus.START_NODE:
                out.append(self._node_candidate(e.start_node, p))
            elif kind in (EdgeLocus.END_NODE, EdgeLocus.INFINITY):
                out.append(self._node_candidate(e.end_node, p))
            else:
                x = e.point_at(lam)
                out.append(Candidate(Locus.EDGE_INTERIOR, None, edge_id, lam, x,
                                     evaluate_objective(x, self.sites, p)))
        return out

    # -- solvers -----------------------------------------------------------

    def solve(self, p) -> Solution:
        return self.solve_by_traversal(p)

    def solve_by_traversal(self, p) -> Solution:
        p = as_point(p)
        self.check_vertex(p)
        frames = self.tree.frames
        cands: list[Candidate] = []
        for eid in self.tree.edges:
            cands.extend(self._edge_candidates(eid, p, classify(frames[eid], p)))
        best = max(c.value for c in cands)
        tol = self.sites.length_tol()
        return Solution.from_candidates(_dedupe((c for c in cands if c.value >= best - VALUE_TIE), tol))

    def solve_by_descent(self, p) -> Solution:
        p = as_point(p)
        self.check_vertex(p)
        tree = self.tree
        root = tree.root
        kids = tree.children[root]
        if self._in_root_hull(p):
            return Solution.from_candidates([self._node_candidate(INFINITY_ID, p)], levels=1)
        for eid in kids:
            if self._in_arch(eid, p):
                return self._descend(eid, p, 2)
        return Solution.from_candidates([self._node_candidate(root, p)], levels=1)

    def _in_arch(self, eid, p, at_end=False) -> bool:
        e = self.tree.edges[eid]
        xi, xj = (self.tree.site(s) for s in e.site_pair)
        o = self.tree.node_position(e.end_node) if at_end else e.anchor
        return arch_contains(o, xi, xj, e.direction, p)

    def _in_root_hull(self, p) -> bool:
        tree = self.tree
        tol = self.sites.length_tol()
        node = tree.nodes[tree.root]
        pts = [tree.site(s) for s in node.defining_sites]
        if len(pts) == 2:
            a, b = pts
            ab = dist(a, b)
            return dist(a, p) + dist(p, b) <= ab + tol
        return _in_triangle(pts, p, tol)

    def _descend(self, eid, p, level) -> Solution:
        tree = self.tree
        e = tree.edges[eid]
        frame = tree.frames[eid]
        if e.end_node == INFINITY_ID:
            es = classify_unbounded(frame, p)
            return Solution.from_candidates(self._edge_candidates(eid, p, es), levels=level)
        end = tree.nodes[e.end_node]
        tri = [tree.site(s) for s in end.defining_sites]
        if _in_triangle(tri, p, self.sites.length_tol()):
            return Solution.from_candidates([self._node_candidate(INFINITY_ID, p)], levels=level + 1)
        for child in tree.children[e.end_node]:
            if self._in_arch(child, p):
                return self._descend(child, p, level + 1)
        if not self._in_arch(eid, p, at_end=True):
            es = classify_bounded(frame, p)
            return Solution.from_candidates(self._edge_candidates(eid, p, es), levels=level)
        return Solution.from_candidates([self._node_candidate(e.end_node, p)], levels=level + 1)

    # -- plane division ----------------------------------------------------

    def enumerate_regions(self) -> PlaneDivision:
        tree = self.tree
        fvb = tree.fvb
        regions: list[Region] = []
        hull = fvb.hull
        hull_tol = self.sites.length_tol()
        hv = hull.vertices
        regions.append(Region(
            ("infinity",),
            tuple(Segment(hv[k], hv[(k + 1) % len(hv)]) for k in range(len(hv) if len(hv) > 2 else 1)),
            lambda q, h=hull, t=hull_tol: h.contains(q, t) and min(dist(q, v) for v in h.vertices) > t,
        ))

        split = tree.split_edge_record
        # two sites: the halves of the bisector own opposite half-planes, so
        # they stay separate regions
        merge = split is not None and fvb.m > 2
        split_ids = set(split[1]) if merge else set()
        for eid, e in sorted(tree.edges.items()):
            if eid in split_ids:
                continue
            regions.append(Region(("edge", tree.original_edge(eid)), self._edge_boundary(e), self._dr_predicate(eid)))
        if merge:
            regions.append(self._merged_split_region(split))

        for nid, node in sorted(tree.nodes.items()):
            if nid == INFINITY_ID:
                continue
            if nid == tree.root:
                if split:
                    continue  # its inverse image is absorbed by the split edge region
                regions.append(self._root_region())
            else:
                regions.append(self._node_region(nid))
        return PlaneDivision(tuple(regions), fvb.m)

    def _arch_boundary(self, o, e):
        xi, xj = (self.tree.site(s) for s in e.site_pair)
        arc = far_arc(o, xi, xj)
        if arc is None:
            return Line(xi, Point(xj[0] - xi[0], xj[1] - xi[1]))
        return arc

    def _edge_boundary(self, e):
        out = [self._arch_boundary(e.anchor, e)]
        if e.end_node != INFINITY_ID:
            out.append(self._arch_boundary(self.tree.node_position(e.end_node), e))
        else:
            xi, xj = (self.tree.site(s) for s in e.site_pair)
            if not isinstance(out[0], Line):
                out.append(Segment(xi, xj))
        return tuple(out)

    def _dr_predicate(self, eid):
        e = self.tree.edges[eid]
        has_end = e.end_node != INFINITY_ID

        def contains(q):
            return self._in_arch(eid, q) and not (has_end and self._in_arch(eid, q, at_end=True))
        return contains

    def _merged_split_region(self, split):
        tree = self.tree
        orig, (ea, eb) = split
        halves = [tree.edges[ea], tree.edges[eb]]
        xi, xj = (tree.site(s) for s in halves[0].site_pair)
        tol = self.sites.length_tol()
        boundary = [Segment(xi, xj)]
        for h in halves:
            if h.end_node != INFINITY_ID:
                boundary.append(self._arch_boundary(tree.node_position(h.end_node), h))

        def contains(q):
            if dist(xi, q) + dist(q, xj) <= dist(xi, xj) + tol:
                return False
            return not any(h.end_node != INFINITY_ID and self._in_arch(h.id, q, at_end=True)
                           for h in halves)
        return Region(("edge", orig), tuple(boundary), contains)

    def _root_region(self):
        tree = self.tree
        kids = tree.children[tree.root]
        boundary = tuple(self._arch_boundary(tree.root_position, tree.edges[k]) for k in kids)
        tol = self.sites.length_tol()
        tri = [tree.site(s) for s in tree.nodes[tree.root].defining_sites]

        def contains(q):
            if _in_triangle(tri, q, tol):
                return False
            return not any(self._in_arch(k, q) for k in kids)
        return Region(("node", tree.root), boundary, contains)

    def _node_region(self, nid):
        tree = self.tree
        up = tree.parent_edge[nid]
        kids = tree.children[nid]
        boundary = (self._arch_boundary(tree.node_position(nid), tree.edges[up]),) + tuple(
            self._arch_boundary(tree.node_position(nid), tree.edges[k]) for k in kids)
        tol = self.sites.length_tol()
        tri = [tree.site(s) for s in tree.nodes[nid].defining_sites]

        def contains(q):
            if not self._in_arch(up, q, at_end=True):
                return False
            if _in_triangle(tri, q, tol):
                return False
            return not any(self._in_arch(k, q) for k in kids)
        return Region(("node", nid), boundary, contains)


def _in_triangle(tri, p, tol) -> bool:
    a, b, c = tri
    if orientation(a, b, c) < 0:
        b, c = c, b
    return all(orientation(u, v, p) >= -tol * dist(u, v) for u, v in ((a, b), (b, c), (c, a)))


def _dedupe(cands, tol) -> list[Candidate]:
    out: list[Candidate] = []
    for c in cands:
        if not any(_same_place(c, o, tol) for o in out):
            out.append(c)
    return out


def _same_place(c: Candidate, o: Candidate, tol: float) -> bool:
    if c.locus is Locus.AT_INFINITY or o.locus is Locus.AT_INFINITY:
        return c.locus is o.locus
    return dist(c.point, o.point) <= max(tol, 1e-12 * max(abs(c.point[0]), abs(c.point[1])))


def solve(sites, p) -> Solution:
    return CenterFunction(sites).solve(p)


def solve_by_traversal(sites, p) -> Solution:
    return CenterFunction(sites).solve_by_traversal(p)


def solve_by_descent(sites, p) -> Solution:
    return CenterFunction(sites).solve_by_descent(p)


def enumerate_regions(sites) -> PlaneDivision:
    return CenterFunction(sites).enumerate_regions()
