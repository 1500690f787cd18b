"""SVG rendering of FVB(S), the hull and the plane division.

Region fills are painted back to front along the division tree: the
viewport starts in the root's class, each edge paints its start arch in the
edge color and its end arch in the node color, and the hull is painted last
in the infinity color.  The inverse images are disjoint (up to the hull),
so the painter's order reproduces them.
"""

from __future__ import annotations

import math

from .center_function import CenterFunction, Solution
from .fpvd import INFINITY_ID, FvbGraph
from .geometry import Arc, Line, Segment, far_arc

FILL = {"node": "#f4c27a", "edge": "#9cc9e8", "infinity": "#d9d9d9"}
SITE_R = 0.006  # marker radius as a fraction of the image width


def _f(v: float) -> str:
    s = "%.6g" % v
    return "0" if s == "-0" else s


class _Frame:
    """World -> pixel map (y flipped)."""

    def __init__(self, x0, y0, side, width):
        self.x0, self.y1, self.k = x0, y0 + side, width / side

    def pt(self, q) -> str:
        return "%s %s" % (_f((q[0] - self.x0) * self.k), _f((self.y1 - q[1]) * self.k))

    def len(self, v) -> str:
        return _f(v * self.k)


def viewport(fvb: FvbGraph, factor: float = 4.0):
    """Square (x0, y0, side) centered on the hull, ``factor`` times its
    bounding box's longer side."""
    xs = [v[0] for v in fvb.hull.vertices]
    ys = [v[1] for v in fvb.hull.vertices]
    side = factor * max(max(xs) - min(xs), max(ys) - min(ys))
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    return cx - side / 2, cy - side / 2, side


def _arc_path(fr: _Frame, arc: Arc) -> str:
    # counterclockwise in the world is clockwise on screen: sweep flag 0
    a, b = arc.endpoints
    large = 1 if arc.sweep > math.pi else 0
    r = fr.len(arc.radius)
    return "M %s A %s %s 0 %d 0 %s" % (fr.pt(a), r, r, large, fr.pt(b))


def _arch_fill(fr: _Frame, o, xi, xj, toward, far: float) -> str:
    """Closed path of Arch(o, xi, xj); a half-plane when o is on the chord."""
    arc = far_arc(o, xi, xj)
    if arc is not None:
        return _arc_path(fr, arc) + " Z"
    dx, dy = xj[0] - xi[0], xj[1] - xi[1]
    n = math.hypot(dx, dy)
    ux, uy = dx / n * far, dy / n * far
    nx, ny = -uy, ux
    if nx * toward[0] + ny * toward[1] < 0:
        nx, ny = -nx, -ny
    c = (xi[0] - ux, xi[1] - uy)
    d = (xi[0] + ux, xi[1] + uy)
    return "M %s L %s L %s L %s Z" % (fr.pt(c), fr.pt(d), fr.pt((d[0] + nx, d[1] + ny)),
                                      fr.pt((c[0] + nx, c[1] + ny)))


def _boundary_path(fr: _Frame, prim, far: float) -> str:
    if isinstance(prim, Arc):
        return _arc_path(fr, prim)
    if isinstance(prim, Segment):
        return "M %s L %s" % (fr.pt(prim.a), fr.pt(prim.b))
    if isinstance(prim, Line):
        d = prim.direction
        n = math.hypot(*d)
        a = (prim.point[0] - d[0] / n * far, prim.point[1] - d[1] / n * far)
        b = (prim.point[0] + d[0] / n * far, prim.point[1] + d[1] / n * far)
        return "M %s L %s" % (fr.pt(a), fr.pt(b))
    raise TypeError(prim)


def render(cf: CenterFunction, regions: bool = True, p=None, solution: Solution | None = None,
           width: int = 800) -> str:
    tree = cf.tree
    fvb = tree.fvb
    x0, y0, side = viewport(fvb)
    far = 4.0 * side
    fr = _Frame(x0, y0, side, width)
    out = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">'
        % (width, width, width, width),
        '<clipPath id="view"><rect x="0" y="0" width="%d" height="%d"/></clipPath>' % (width, width),
        '<g clip-path="url(#view)">',
    ]

    if regions:
        root_class = "edge" if tree.split_edge_record else "node"
        out.append('<rect class="%s" x="0" y="0" width="%d" height="%d" fill="%s"/>'
                   % (root_class, width, width, FILL[root_class]))
        order = sorted(tree.edges, key=lambda eid: (tree.edge_depth[eid], eid))
        split = set(tree.split_edge_record[1]) if tree.split_edge_record else set()
        for eid in order:
            e = tree.edges[eid]
            xi, xj = (tree.site(s) for s in e.site_pair)
            if eid not in split and e.start_node != INFINITY_ID:
                out.append('<path class="edge" d="%s" fill="%s"/>'
                           % (_arch_fill(fr, e.anchor, xi, xj, e.direction, far), FILL["edge"]))
            if e.end_node != INFINITY_ID:
                o = tree.node_position(e.end_node)
                out.append('<path class="node" d="%s" fill="%s"/>'
                           % (_arch_fill(fr, o, xi, xj, e.direction, far), FILL["node"]))
        hv = fvb.hull.vertices
        out.append('<path class="infinity" d="M %s Z" fill="%s" stroke="none"/>'
                   % (" L ".join(fr.pt(v) for v in hv), FILL["infinity"]))
        for r in cf.enumerate_regions().regions:
            for prim in r.boundary:
                out.append('<path class="boundary" d="%s" fill="none" stroke="#555" stroke-width="1"/>'
                           % _boundary_path(fr, prim, far))

    hv = fvb.hull.vertices
    out.append('<path class="hull" d="M %s%s" fill="none" stroke="#000" stroke-width="1.5"/>'
               % (" L ".join(fr.pt(v) for v in hv), " Z" if len(hv) > 2 else ""))
    for e in fvb.edges:
        if e.is_line:
            a, b = e.point_at(-far), e.point_at(far)
        else:
            a, b = e.anchor, e.point_at(e.length if e.bounded else far)
        out.append('<path class="fvb" d="M %s L %s" fill="none" stroke="#c0392b" stroke-width="1.5" '
                   'stroke-dasharray="8 3 1.5 3"/>' % (fr.pt(a), fr.pt(b)))
    rad = SITE_R * width
    for q in cf.sites.points:
        out.append('<circle class="site" %s r="%s" fill="#000"/>' % (_circ(fr, q), _f(rad)))
    if p is not None:
        out.append('<circle class="weight" %s r="%s" fill="#27ae60"/>'
                   % (_circ(fr, p), _f(rad)))
    if solution is not None and solution.attained:
        x = solution.point
        out.append('<circle class="optimizer" %s r="%s" fill="none" stroke="#8e44ad" '
                   'stroke-width="2"/>' % (_circ(fr, x), _f(1.6 * rad)))
    out += ["</g>", "</svg>", ""]
    return "\n".join(out)


def _circ(fr: _Frame, q) -> str:
    x, y = fr.pt(q).split()
    return 'cx="%s" cy="%s"' % (x, y)
