import itertools
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dynmec.errors import CollinearInput, DegenerateInput, InvalidInput
from dynmec.geometry import (
    SiteSet,
    check_general_position,
    circumcenter,
    convex_hull,
    dist,
    evaluate_objective,
    far_arc,
    orientation,
)

SQ3 = math.sqrt(3.0)


def test_hull_square_drops_interior_point():
    hull = convex_hull([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
    assert hull.m == 4
    assert set(hull.vertices) == {(0, 0), (2, 0), (2, 2), (0, 2)}
    assert orientation(*hull.vertices[:3]) > 0


def test_hull_two_points():
    hull = convex_hull([(-1, 0), (1, 0)])
    assert hull.m == 2
    assert set(hull.vertices) == {(-1, 0), (1, 0)}


def test_hull_collinear_keeps_extremes():
    hull = convex_hull([(0, 0), (1, 1), (3, 3), (2, 2)])
    assert hull.m == 2
    assert set(hull.vertices) == {(0, 0), (3, 3)}


def test_hull_against_brute_force():
    rng = random.Random(11)
    for _ in range(20):
        pts = [(rng.random(), rng.random()) for _ in range(50)]
        hull = convex_hull(pts)
        v = hull.vertices
        for k in range(hull.m):
            u, w = v[k], v[(k + 1) % hull.m]
            assert all(orientation(u, w, q) >= -1e-12 for q in pts)
        # every extreme point of the brute-force O(n^3) hull is reported
        for i, q in enumerate(pts):
            others = pts[:i] + pts[i + 1:]
            inside = any(
                orientation(a, b, q) > 0 and orientation(b, c, q) > 0 and orientation(c, a, q) > 0
                for a, b, c in itertools.combinations(others, 3)
                if orientation(a, b, c) > 0
            ) or any(
                orientation(a, c, q) > 0 and orientation(c, b, q) > 0 and orientation(b, a, q) > 0
                for a, b, c in itertools.combinations(others, 3)
                if orientation(a, b, c) < 0
            )
            if not inside:
                assert q in v


def test_circumcenter_examples():
    assert circumcenter((0, 0), (2, 0), (0, 2)) == pytest.approx((1, 1), abs=1e-12)
    c = circumcenter((1, 0), (-0.5, SQ3 / 2), (-0.5, -SQ3 / 2))
    assert c == pytest.approx((0, 0), abs=1e-12)


def test_circumcenter_collinear_raises():
    with pytest.raises(CollinearInput):
        circumcenter((0, 0), (1, 1), (2, 2))


def test_circumcenter_equidistant_and_symmetric():
    rng = random.Random(5)
    done = 0
    while done < 200:
        a, b, c = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3)]
        if abs(orientation(a, b, c)) < 0.05:
            continue
        o = circumcenter(a, b, c)
        ds = [dist(o, q) for q in (a, b, c)]
        assert max(ds) - min(ds) <= 1e-9
        for perm in itertools.permutations((a, b, c)):
            assert dist(circumcenter(*perm), o) <= 1e-12 * max(1.0, ds[0])
        done += 1


def test_general_position_examples():
    assert not check_general_position([(1, 0), (0, 1), (-1, 0), (0, -1)]).ok
    assert check_general_position([(-1, 0), (1, 0), (0, 2)]).ok


def test_general_position_matches_brute_force():
    rng = random.Random(2)
    for _ in range(20):
        pts = [(rng.random(), rng.random()) for _ in range(10)]
        report = check_general_position(pts)
        hull = convex_hull(pts).vertices
        brute = []
        for quad in itertools.combinations(hull, 4):
            for k in range(4):
                tri = [q for j, q in enumerate(quad) if j != k]
                if abs(orientation(*tri)) < 1e-3:
                    continue
                o = circumcenter(*tri)
                if abs(dist(o, quad[k]) - dist(o, tri[0])) <= 1e-9:
                    brute.append(quad)
                break
        assert report.ok == (not brute)


def test_general_position_reports_near_cocircular():
    pts = [(math.cos(t), math.sin(t)) for t in (0.1, 1.3, 2.9, 4.4)]
    assert not check_general_position(pts).ok
    nudged = pts[:3] + [(pts[3][0] * 1.001, pts[3][1] * 1.001)]
    assert check_general_position(nudged).ok


def test_objective_examples():
    s = [(-1, 0), (1, 0)]
    assert evaluate_objective((3, 4), s, (3, 4)) == 0.0
    assert evaluate_objective((0, -2), s, (0, 0.5)) == pytest.approx(math.sqrt(5) / 2, abs=1e-12)
    assert evaluate_objective((0, 0), s, (2, 0)) == pytest.approx(2.0, abs=1e-12)


coord = st.floats(-10, 10, allow_nan=False)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=2, max_size=6), st.tuples(coord, coord),
       st.tuples(coord, coord), st.floats(0.01, 100), st.tuples(coord, coord))
def test_objective_scale_invariant(sites, x, p, k, center):
    if max(dist(x, s) for s in sites) < 1e-3:
        return
    def sim(q):
        return (center[0] + k * (q[0] - center[0]), center[1] + k * (q[1] - center[1]))
    a = evaluate_objective(x, sites, p)
    b = evaluate_objective(sim(x), [sim(s) for s in sites], sim(p))
    assert b == pytest.approx(a, rel=1e-9, abs=1e-12)


def test_objective_tends_to_one():
    rng = random.Random(4)
    sites = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(6)]
    p = (0.3, -2.0)
    for _ in range(50):
        t = rng.uniform(0, 2 * math.pi)
        x = (1e6 * math.cos(t), 1e6 * math.sin(t))
        assert evaluate_objective(x, sites, p) == pytest.approx(1.0, abs=1e-4)


def test_siteset_merges_duplicates():
    s = SiteSet.from_points([(0, 0), (1, 0), (1 + 1e-12, 0), (0, 1)])
    assert len(s) == 3
    assert s.index_map == (0, 1, 1, 2)


def test_siteset_rejects_bad_input():
    with pytest.raises(DegenerateInput):
        SiteSet.from_points([(1, 1)])
    with pytest.raises(DegenerateInput):
        SiteSet.from_points([(1, 1), (1, 1)])
    with pytest.raises(InvalidInput):
        SiteSet.from_points([(0, 0), (math.nan, 1)])


def test_siteset_normalization_round_trip():
    s = SiteSet.from_points([(100, 200), (110, 200), (105, 230)])
    for q in s.points:
        assert s.to_world(s.to_local(q)) == pytest.approx(q, abs=1e-9)
    n = s.normalized
    span = max(dist(a, b) for a in n for b in n)
    assert span <= 1.0 + 1e-12


def test_far_arc_is_away_from_center_point():
    a, b = (-1, 0), (1, 0)
    arc = far_arc((0, -1), a, b)
    mid = arc.point_at(0.5)
    assert mid[1] > 0
    assert {tuple(round(c, 9) for c in e) for e in arc.endpoints} == {(-1, 0), (1, 0)}
    assert far_arc((0, 0), a, b) is None
