"""FVB(S) re-rooted at the MEC center, with node and edge depths."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from functools import cached_property

from .edge_solver import EdgeFrame, make_frame
from .errors import DepthOutOfRange
from .fpvd import INFINITY_ID, UNBOUNDED, FvbEdge, FvbGraph, FvbNode, _dist_to_edge
from .geometry import Point, dist, dot, sub, unit


@dataclass(frozen=True, eq=False)
class DivisionTree:
    """Rooted view of FVB(S).

    Every edge is stored oriented parent -> child: ``start_node`` is the
    parent, ``anchor`` its position and ``direction`` points at the child.
    When the MEC center fell inside an edge, ``split_edge_record`` holds the
    original edge id and the ids of its two halves.
    """

    fvb: FvbGraph
    root: int
    nodes: dict[int, FvbNode]
    edges: dict[int, FvbEdge]
    children: dict[int, tuple[int, ...]]
    node_depth: dict[int, int]
    edge_depth: dict[int, int]
    split_edge_record: tuple[int, tuple[int, int]] | None = None
    parent_edge: dict[int, int] = field(default_factory=dict)

    @property
    def sites(self):
        return self.fvb.sites

    @property
    def depth(self) -> int:
        return max(self.edge_depth.values())

    @property
    def root_position(self) -> Point:
        return self.nodes[self.root].position

    def site(self, i: int) -> Point:
        return self.fvb.sites.points[i]

    def node_position(self, node_id: int):
        return self.nodes[node_id].position

    @cached_property
    def frames(self) -> dict[int, EdgeFrame]:
        return {eid: make_frame(e, self) for eid, e in self.edges.items()}

    def involved_sites(self) -> tuple[int, ...]:
        return tuple(sorted({s for e in self.edges.values() for s in e.site_pair}))

    def original_edge(self, edge_id: int) -> int:
        """Id of the FVB edge this tree edge came from."""
        if self.split_edge_record and edge_id in self.split_edge_record[1]:
            return self.split_edge_record[0]
        return edge_id


def _locate_root(fvb: FvbGraph):
    eps = fvb.mec.center
    tol = fvb.sites.length_tol()
    finite = fvb.finite_nodes
    if finite:
        near = min(finite, key=lambda n: dist(n.position, eps))
        if dist(near.position, eps) <= tol:
            return near, None
    host = min(fvb.edges, key=lambda e: _dist_to_edge(e, eps))
    return None, host


def build_division_tree(fvb: FvbGraph) -> DivisionTree:
    nodes = {n.id: n for n in fvb.nodes}
    edges = {e.id: e for e in fvb.edges}
    near, host = _locate_root(fvb)
    split = None
    if near is not None:
        root = near.id
    else:
        root = max(nodes) + 1
        t = dot(sub(fvb.mec.center, host.anchor), host.direction)
        eps = host.point_at(t)
        nodes[root] = FvbNode(root, eps, tuple(host.site_pair))
        del edges[host.id]
        a_id = max(e.id for e in fvb.edges) + 1
        b_id = a_id + 1
        d = host.direction
        back = Point(-d[0], -d[1])
        if host.is_line:
            halves = [(INFINITY_ID, d, UNBOUNDED), (INFINITY_ID, back, UNBOUNDED)]
        elif host.bounded:
            s = nodes[host.start_node].position
            e = nodes[host.end_node].position
            halves = [(host.start_node, unit(sub(s, eps)), dist(s, eps)),
                      (host.end_node, unit(sub(e, eps)), dist(e, eps))]
        else:
            s = nodes[host.start_node].position
            halves = [(host.start_node, back, dist(s, eps)), (INFINITY_ID, d, UNBOUNDED)]
        for eid, (end, direction, length) in zip((a_id, b_id), halves):
            edges[eid] = FvbEdge(eid, host.site_pair, root, end, eps, direction, length)
        split = (host.id, (a_id, b_id))

    adj: dict[int, list[int]] = {k: [] for k in nodes}
    for e in edges.values():
        adj[e.start_node].append(e.id)
        if e.end_node != e.start_node:
            adj[e.end_node].append(e.id)

    oriented: dict[int, FvbEdge] = {}
    children: dict[int, list[int]] = {}
    node_depth = {root: 0}
    edge_depth: dict[int, int] = {}
    parent_edge: dict[int, int] = {}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        children[u] = []
        for eid in sorted(adj[u]):
            if eid in oriented:
                continue
            e = edges[eid]
            if e.start_node != u:
                pos = nodes[u].position
                e = replace(e, start_node=u, end_node=e.start_node, anchor=pos,
                            direction=Point(-e.direction[0], -e.direction[1]))
            oriented[eid] = e
            children[u].append(eid)
            edge_depth[eid] = node_depth[u] + 1
            if e.end_node != INFINITY_ID:
                node_depth[e.end_node] = node_depth[u] + 1
                parent_edge[e.end_node] = eid
                queue.append(e.end_node)

    return DivisionTree(
        fvb=fvb,
        root=root,
        nodes=nodes,
        edges=oriented,
        children={k: tuple(v) for k, v in children.items()},
        node_depth=node_depth,
        edge_depth=edge_depth,
        split_edge_record=split,
        parent_edge=parent_edge,
    )


def truncate(tree: DivisionTree, d: int) -> DivisionTree:
    """Keep edges of depth <= d; edges cut at depth d run on to infinity."""
    if not 1 <= d <= tree.depth:
        raise DepthOutOfRange("depth %d outside [1, %d]" % (d, tree.depth))
    edges = {}
    for eid, e in tree.edges.items():
        depth = tree.edge_depth[eid]
        if depth > d:
            continue
        if depth == d and e.end_node != INFINITY_ID:
            e = replace(e, end_node=INFINITY_ID, length=UNBOUNDED)
        edges[eid] = e
    kept = {k for k, v in tree.node_depth.items() if v < d} | {INFINITY_ID}
    return DivisionTree(
        fvb=tree.fvb,
        root=tree.root,
        nodes={k: v for k, v in tree.nodes.items() if k in kept},
        edges=edges,
        children={k: tuple(e for e in v if e in edges) for k, v in tree.children.items() if k in kept},
        node_depth={k: v for k, v in tree.node_depth.items() if k in kept},
        edge_depth={k: v for k, v in tree.edge_depth.items() if k in edges},
        split_edge_record=tree.split_edge_record,
        parent_edge={k: v for k, v in tree.parent_edge.items() if k in kept},
    )
