"""Random problem instances shared by the test modules."""

import math
import random

from dynmec.geometry import as_siteset, check_general_position, convex_hull
from dynmec.oracle import plane_box


def ellipse_sites(rng: random.Random, m: int, interior: int = 0):
    """m points in convex position on a random ellipse, plus interior points."""
    if m == 2:
        a = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        ang = rng.uniform(0, 2 * math.pi)
        ln = rng.uniform(0.5, 2.0)
        return [a, (a[0] + ln * math.cos(ang), a[1] + ln * math.sin(ang))]
    while True:
        ang = sorted(rng.uniform(0, 2 * math.pi) for _ in range(m))
        gaps = [(ang[(k + 1) % m] - ang[k]) % (2 * math.pi) for k in range(m)]
        if min(gaps) > 0.2 / m:
            break
    ax, by = rng.uniform(0.6, 1.5), rng.uniform(0.35, 1.0)
    rot = rng.uniform(0, math.pi)
    cx, cy = rng.uniform(-1, 1), rng.uniform(-1, 1)
    cr, sr = math.cos(rot), math.sin(rot)

    def place(u, v):
        return (cx + u * cr - v * sr, cy + u * sr + v * cr)

    pts = [place(ax * math.cos(t), by * math.sin(t)) for t in ang]
    for _ in range(interior):
        t, s = rng.uniform(0, 2 * math.pi), 0.6 * math.sqrt(rng.random())
        pts.append(place(s * ax * math.cos(t), s * by * math.sin(t)))
    return pts


def random_instance(rng: random.Random, m_lo: int = 2, m_hi: int = 15, interior: int = 3):
    """(sites, m) in general position with exactly m hull vertices."""
    while True:
        m = rng.randint(m_lo, m_hi)
        pts = ellipse_sites(rng, m, rng.randint(0, interior) if m > 2 else 0)
        s = as_siteset(pts)
        hull = convex_hull(s)
        if hull.m == m and check_general_position(s, hull).ok:
            return pts, m


def random_weight_point(rng: random.Random, sites, margin: float = 1e-6):
    """Uniform in the 4x bounding square, away from hull vertices."""
    corner, side = plane_box(sites)
    hull = convex_hull(as_siteset(sites)).vertices
    while True:
        p = (corner[0] + side * rng.random(), corner[1] + side * rng.random())
        if min(math.dist(p, v) for v in hull) > margin * side:
            return p
