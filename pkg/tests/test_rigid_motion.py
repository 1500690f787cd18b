import math
import random

import numpy as np
import pytest

from dynmec import (
    BudgetOutOfRange,
    CenterFunction,
    Locus,
    RigidMotion,
    VertexCoincidence,
    ZeroRotation,
    contour,
    max_displacement,
    rigid_constraint_check,
    tre,
)
from dynmec.geometry import dist, norm
from dynmec.oracle import OracleConfig, oracle_rigid_max
from dynmec.rigid_motion import motion_about

from instances import random_instance, random_weight_point

TWO = [(-1, 0), (1, 0)]


def test_tre_examples():
    assert tre((5, -7), RigidMotion(0, (1, 2))) == (1, 2)
    assert tre((1, 0), RigidMotion(math.pi, (0, 0))) == pytest.approx((-2, 0), abs=1e-15)
    assert tre((0, 0), RigidMotion(math.pi / 2, (1, 0))) == pytest.approx((1, 0))


def test_theta_wrapped():
    assert RigidMotion(3 * math.pi, (0, 0)).theta == pytest.approx(math.pi)
    assert RigidMotion(-math.pi, (0, 0)).theta == math.pi
    assert RigidMotion(-3 * math.pi / 2, (0, 0)).theta == pytest.approx(math.pi / 2)


def test_rotation_is_proper():
    rng = random.Random(1)
    for _ in range(50):
        R = RigidMotion(rng.uniform(-10, 10), (0, 0)).rotation
        assert np.allclose(R @ R.T, np.eye(2), atol=1e-12)
        assert np.linalg.det(R) == pytest.approx(1.0, abs=1e-12)


def test_contour_examples():
    c = contour(RigidMotion(math.pi / 2, (1, 0)))
    assert c.center == pytest.approx((0.5, 0.5))
    assert c.scale == pytest.approx(math.sqrt(2))
    assert c.scale * dist((0, 0), c.center) == pytest.approx(1.0)
    c = contour(RigidMotion(math.pi, (0, 0)))
    assert c.center == pytest.approx((0, 0), abs=1e-15) and c.scale == pytest.approx(2)


def test_contour_zero_rotation():
    with pytest.raises(ZeroRotation):
        contour(RigidMotion(0.0, (1, 1)))


def test_contour_identity_random():
    rng = random.Random(2)
    for _ in range(100):
        m = RigidMotion(rng.uniform(-math.pi, math.pi), (rng.uniform(-5, 5), rng.uniform(-5, 5)))
        if abs(m.theta) < 1e-3:
            continue
        c = contour(m)
        for _ in range(20):
            q = (rng.uniform(-10, 10), rng.uniform(-10, 10))
            assert norm(tre(q, m)) == pytest.approx(c.scale * dist(q, c.center), abs=1e-9)


def test_contour_center_round_trip():
    rng = random.Random(3)
    for _ in range(100):
        m = RigidMotion(rng.uniform(0.01, math.pi), (rng.uniform(-5, 5), rng.uniform(-5, 5)))
        back = motion_about(contour(m).center, m.theta)
        assert back.s == pytest.approx(m.s, abs=1e-9)


def test_pure_translation_constant():
    rng = random.Random(4)
    m = RigidMotion(0.0, (0.3, -0.4))
    for _ in range(100):
        q = (rng.uniform(-1e3, 1e3), rng.uniform(-1e3, 1e3))
        assert norm(tre(q, m)) == 0.5


def test_max_displacement_two_site_example():
    b = max_displacement(TWO, (0, -3), 1.0)
    assert b.value == pytest.approx(math.sqrt(10), abs=1e-9)
    assert b.witness.theta == pytest.approx(2 * math.asin(3 / (2 * math.sqrt(10))), abs=1e-12)
    assert contour(b.witness).center == pytest.approx((0, 1 / 3), abs=1e-12)
    assert norm(tre((0, -3), b.witness)) == pytest.approx(b.value, abs=1e-9)
    assert rigid_constraint_check(TWO, b.witness, 1.0)


def test_max_displacement_inside_hull_is_translation():
    b = max_displacement(TWO, (0.5, 0), 1.0)
    assert b.value == 1.0 and b.solution.locus is Locus.AT_INFINITY
    assert b.witness.theta == 0.0 and b.witness.s == pytest.approx((1, 0))
    assert rigid_constraint_check(TWO, b.witness, 1.0)
    # p at the hull centroid falls back to the x axis
    b = max_displacement([(0, 0), (2, 0), (1, 3)], (1, 1), 0.5)
    assert b.witness.s == pytest.approx((0.5, 0))


def test_max_displacement_linear_in_budget():
    rng = random.Random(5)
    pts, _ = random_instance(rng, 4, 8)
    p = random_weight_point(rng, pts)
    vals = [max_displacement(pts, p, c).value for c in (1e-6, 2e-6, 4e-6)]
    assert vals[1] == pytest.approx(2 * vals[0], rel=1e-9)
    assert vals[2] == pytest.approx(4 * vals[0], rel=1e-9)


def test_budget_range():
    for c in (0.0, -1.0, 2.0 + 1e-6):
        with pytest.raises(BudgetOutOfRange):
            max_displacement(TWO, (0, -3), c)
    max_displacement(TWO, (0, -3), 2.0)


def test_vertex_coincidence_propagates():
    with pytest.raises(VertexCoincidence):
        max_displacement(TWO, (1, 0), 1.0)


def test_witness_tight_at_binding_sites():
    rng = random.Random(6)
    for _ in range(100):
        pts, _ = random_instance(rng, 2, 12)
        p = random_weight_point(rng, pts)
        cf = CenterFunction(pts)
        C = rng.uniform(0.01, 1.0) * 2 * cf.fvb.mec.radius
        b = max_displacement(cf, p, C)
        w = b.witness
        assert rigid_constraint_check(pts, w, C)
        assert norm(tre(p, w)) == pytest.approx(b.value, rel=1e-9)
        if b.solution.locus is Locus.AT_INFINITY:
            continue
        x = b.solution.point
        far = max(dist(x, q) for q in pts)
        for q in pts:
            if dist(x, q) >= far - 1e-12 * far:
                assert norm(tre(q, w)) == pytest.approx(C, abs=1e-6)
        # a slightly larger angle violates the binding constraint
        bigger = motion_about(x, w.theta * 1.01)
        assert not rigid_constraint_check(pts, bigger, C)


def test_descent_method_gives_same_bound():
    rng = random.Random(7)
    pts, _ = random_instance(rng, 5, 10)
    p = random_weight_point(rng, pts)
    a = max_displacement(pts, p, 0.3)
    b = max_displacement(pts, p, 0.3, method="descent")
    assert a.value == pytest.approx(b.value, abs=1e-9)


@pytest.mark.parametrize("seed", range(3))
def test_against_rigid_oracle(seed):
    rng = random.Random(50 + seed)
    cfg = OracleConfig(theta_steps=361, s_steps=61, refine_rounds=5)
    pts, _ = random_instance(rng, 2, 6)
    p = random_weight_point(rng, pts)
    cf = CenterFunction(pts)
    C = rng.uniform(0.1, 1.0) * 2 * cf.fvb.mec.radius
    b = max_displacement(cf, p, C)
    o = oracle_rigid_max(pts, p, C, cfg)
    assert o.value <= b.value + 1e-6
    assert o.value >= b.value * (1 - 1e-3)
    assert rigid_constraint_check(pts, o.motion, C)
    assert all(x <= y for x, y in zip(o.history, o.history[1:]))
