import math
import random

import numpy as np
import pytest

from dynmec import CenterFunction, evaluate_objective
from dynmec.oracle import OracleConfig, oracle_rigid_max, oracle_solve, plane_box, scan_edge, zoom_max

from instances import random_instance, random_weight_point
from test_edge_solver import downward_frame

TWO = [(-1, 0), (1, 0)]
SMALL = OracleConfig(edge_samples=20_000, plane_grid=400)


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(plane_grid=1)
    with pytest.raises(ValueError):
        OracleConfig(edge_samples=0)


def test_plane_box_is_four_times_bounding_box():
    corner, side = plane_box([(0, 0), (2, 1)])
    assert side == pytest.approx(8)
    assert (corner[0] + side / 2, corner[1] + side / 2) == pytest.approx((1, 0.5))


def test_zoom_max_refines_a_peak():
    lam, val, at_end = zoom_max(lambda t: -(t - 0.123456789) ** 2, np.linspace(0, 1, 11))
    assert lam == pytest.approx(0.123456789, abs=1e-9) and not at_end


@pytest.mark.parametrize("p, point, value", [
    ((0, 0.5), (0, -2), math.sqrt(5) / 2),
    ((0, -3), (0, 1 / 3), math.sqrt(10)),
    ((2, 0), (0, 0), 2.0),
])
def test_oracle_on_worked_values(p, point, value):
    o = oracle_solve(TWO, p)
    assert o.value == pytest.approx(value, abs=1e-6)
    assert math.dist(o.point, point) <= 1e-2
    assert not o.grid_beats_fvb


def test_oracle_inside_hull_stays_below_one():
    o = oracle_solve(TWO, (0.5, 0), SMALL)
    assert o.fvb_value < 1.0 and o.grid_value < 1.0


def test_oracle_matches_solver_small_grid():
    rng = random.Random(9)
    for _ in range(10):
        pts, _ = random_instance(rng, 2, 10)
        p = random_weight_point(rng, pts)
        sol = CenterFunction(pts).solve(p)
        o = oracle_solve(pts, p, SMALL)
        assert not o.grid_beats_fvb
        assert o.value <= sol.value + 1e-9
        if sol.attained:
            assert o.value == pytest.approx(sol.value, abs=1e-4)
        assert evaluate_objective(o.point, pts, p) == pytest.approx(o.value, abs=1e-12)


def test_scan_edge_reports_infinity():
    lam, val = scan_edge(downward_frame(), (0, -0.5))
    assert math.isinf(lam) and val == pytest.approx(1.0)


def test_rigid_oracle_two_site_example():
    o = oracle_rigid_max(TWO, (0, -3), 1.0, OracleConfig(theta_steps=361, s_steps=61))
    assert o.value == pytest.approx(math.sqrt(10), rel=1e-3)
    assert o.value <= math.sqrt(10) + 1e-6


def test_rigid_oracle_translation_case():
    o = oracle_rigid_max(TWO, (0.5, 0), 1.0, OracleConfig(theta_steps=181, s_steps=41, refine_rounds=3))
    assert o.value == pytest.approx(1.0, abs=1e-9)
