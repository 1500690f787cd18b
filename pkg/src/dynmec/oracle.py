"""Brute-force references for the analytic solvers.

Nothing here uses the edge tables or the division tree: the objective is
sampled densely on a plane grid and along every FVB edge, and rigid motions
are searched on a refined (theta, s) grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .fpvd import FvbGraph, build_fvb
from .geometry import Point, as_point, as_siteset
from .rigid_motion import RigidMotion, rigid_constraint_check


@dataclass(frozen=True)
class OracleConfig:
    edge_samples: int = 100_000
    plane_grid: int = 2000
    box_factor: float = 4.0
    theta_steps: int = 721
    s_steps: int = 121
    refine_rounds: int = 6
    refine_keep: int = 4

    def __post_init__(self):
        for name in ("edge_samples", "plane_grid", "theta_steps", "s_steps", "refine_rounds", "refine_keep"):
            if getattr(self, name) <= 0:
                raise ValueError("%s must be positive" % name)
        if self.s_steps < 2 or self.plane_grid < 2:
            raise ValueError("grids need at least two steps per axis")


@dataclass(frozen=True)
class OracleSolution:
    point: Point
    value: float
    grid_point: Point
    grid_value: float
    fvb_point: Point
    fvb_value: float
    grid_bound: float
    cell: float

    @property
    def grid_beats_fvb(self) -> bool:
        """True if an off-boundary grid sample wins beyond discretization."""
        return self.grid_value > self.fvb_value + self.grid_bound


@dataclass(frozen=True)
class RigidOracleResult:
    value: float
    motion: RigidMotion
    history: tuple[float, ...]


def plane_box(sites, factor: float = 4.0) -> tuple[Point, float]:
    """Lower-left corner and side of the square covering ``factor`` times the
    bounding box of the sites (longest side, same center)."""
    a = as_siteset(sites).array
    lo, hi = a.min(axis=0), a.max(axis=0)
    side = factor * max(float(np.max(hi - lo)), 1e-12)
    mid = (lo + hi) / 2.0
    return Point(mid[0] - side / 2, mid[1] - side / 2), side


def _lambdas(e, n: int) -> np.ndarray:
    if e.bounded:
        return np.linspace(0.0, e.length, n)
    t = np.linspace(0.0, 1.0, n, endpoint=False)
    lam = t / (1.0 - t)
    if e.is_line:
        lam = np.concatenate([-lam[:0:-1], lam])
    return lam


def _along(e, lam) -> np.ndarray:
    return np.column_stack([e.anchor[0] + lam * e.direction[0], e.anchor[1] + lam * e.direction[1]])


def edge_samples(fvb: FvbGraph, n: int) -> np.ndarray:
    """Points along every edge; unbounded edges use lambda = t / (1 - t)."""
    return np.vstack([_along(e, _lambdas(e, n)) for e in fvb.edges])


def zoom_max(f, lam: np.ndarray, rounds: int = 4, n: int = 1001):
    """Argmax of f over the sorted samples ``lam``, then repeatedly resampled
    between the neighbours of the best sample.  Returns (lam, value, at_end)
    where at_end flags a maximum at the last sample."""
    vals = f(lam)
    k = int(np.argmax(vals))
    best_lam, best = float(lam[k]), float(vals[k])
    at_end = k == len(lam) - 1
    lo, hi = lam[max(k - 1, 0)], lam[min(k + 1, len(lam) - 1)]
    for _ in range(rounds):
        if not hi > lo:
            break
        grid = np.linspace(lo, hi, n)
        v = f(grid)
        j = int(np.argmax(v))
        if v[j] > best:
            best_lam, best = float(grid[j]), float(v[j])
        step = (hi - lo) / (n - 1)
        lo, hi = max(lo, best_lam - step), min(hi, best_lam + step)
    return best_lam, best, at_end


def scan_edge(frame, p, n: int = 100_000, rounds: int = 4):
    """Brute-force maximum of the ratio along one edge frame.

    Returns (lam, value); lam is inf when the scan keeps rising to its last
    sample on an unbounded edge.
    """
    px, py = frame.to_local(p)
    rho2 = px * px + py * py
    r2, g = frame.r ** 2, frame.gamma

    def f(lam):
        return np.sqrt(np.maximum(rho2 + 2.0 * px * lam + lam * lam, 0.0) / (r2 + 2.0 * g * lam + lam * lam))

    if frame.bounded:
        lam = np.linspace(0.0, frame.delta, n)
    else:
        t = np.linspace(0.0, 1.0, n, endpoint=False)
        lam = t / (1.0 - t)
    best_lam, best, at_end = zoom_max(f, lam, rounds)
    if at_end and not frame.bounded:
        return math.inf, 1.0 if best < 1.0 else best
    return best_lam, best


def oracle_solve(sites, p, config: OracleConfig | None = None, fvb: FvbGraph | None = None) -> OracleSolution:
    """Dense-sampling maximizer of |x - p| / max_i |x - x_i|."""
    config = config or OracleConfig()
    sites = as_siteset(sites)
    fvb = fvb or build_fvb(sites, check=False)
    p = as_point(p)
    hull = np.array([sites.points[i] for i in fvb.hull.indices])

    corner, side = plane_box(sites, config.box_factor)
    n = config.plane_grid
    h = side / (n - 1)
    gv, gi, gj = kernels.grid_max(corner[0], corner[1], h, n, hull, p)
    gv = float(gv)
    grid_point = Point(float(corner[0] + gi * h), float(corner[1] + gj * h))

    fv, best_edge, best_lam = -math.inf, None, None
    for e in fvb.edges:
        lam = _lambdas(e, config.edge_samples)
        vals = kernels.objective_values(_along(e, lam), hull, p)
        k = int(np.argmax(vals))
        if vals[k] > fv:
            fv, best_edge, best_lam = float(vals[k]), e, lam
    # resample around the winning sample of the winning edge
    lam, fv, _ = zoom_max(lambda t: kernels.objective_values(_along(best_edge, t), hull, p), best_lam)
    fvb_point = best_edge.point_at(lam)

    # |grad f| <= (1 + f) / max_i |x - x_i| <= (1 + f) / r(S)
    bound = (1.0 + max(gv, fv)) / fvb.mec.radius * h * math.sqrt(2.0)
    point, value = (fvb_point, fv) if fv >= gv else (grid_point, gv)
    return OracleSolution(point, value, grid_point, gv, fvb_point, fv, bound, h)


def _feasible_box(theta: float, rel: np.ndarray, C: float):
    """Bounding box of the translations u keeping every site within C.

    Site i forces u into the disk of radius C around -(R - I) x_i.
    """
    c, s = math.cos(theta) - 1.0, math.sin(theta)
    cx = -(c * rel[:, 0] - s * rel[:, 1])
    cy = -(s * rel[:, 0] + c * rel[:, 1])
    lo = np.array([cx.max() - C, cy.max() - C])
    hi = np.array([cx.min() + C, cy.min() + C])
    return lo, hi


def oracle_rigid_max(sites, p, C: float, config: OracleConfig | None = None) -> RigidOracleResult:
    """Grid search of max |TRE(p)| subject to |TRE(x_i)| <= C.

    Translations are written relative to the MEC center so that the search
    box per angle is the bounding box of the feasible set.
    """
    config = config or OracleConfig()
    sites = as_siteset(sites)
    fvb = build_fvb(sites, check=False)
    ref = np.array(fvb.mec.center)
    hull = np.array([sites.points[i] for i in fvb.hull.indices])
    rel = hull - ref
    prel = np.asarray(as_point(p)) - ref
    n = config.s_steps

    def scan(thetas, boxes):
        lo = np.array([b[0] for b in boxes])
        hi = np.array([b[1] for b in boxes])
        return kernels.rigid_scan(np.asarray(thetas), lo, hi, n, rel, prel, C)

    thetas = np.linspace(-math.pi, math.pi, config.theta_steps)
    boxes = [_feasible_box(t, rel, C) for t in thetas]
    vals, us = scan(thetas, boxes)
    # the pure translation slice is exactly solvable: any |s| = C is feasible
    best = (C, 0.0, np.array([C, 0.0]))
    if vals.max() > best[0]:
        k = int(np.argmax(vals))
        best = (float(vals[k]), float(thetas[k]), us[k])
    history = [best[0]]

    dtheta = 2.0 * math.pi / (config.theta_steps - 1)
    # the best u moves with theta at a rate bounded by the lever arm
    arm = float(max(np.hypot(*rel.T).max(), np.hypot(*prel)))
    seeds = _top(vals, thetas, us, boxes, config.refine_keep)
    for _ in range(config.refine_rounds):
        cand_t, cand_b = [], []
        for th, u, box in seeds:
            for t in np.linspace(th - dtheta, th + dtheta, 9):
                lo, hi = _feasible_box(t, rel, C)
                span = (box[1] - box[0]) / (n - 1) * 2.0 + 2.0 * dtheta * arm
                lo2 = np.maximum(lo, u - span)
                hi2 = np.minimum(hi, u + span)
                if np.all(hi2 >= lo2):
                    cand_t.append(t)
                    cand_b.append((lo2, hi2))
        if not cand_t:
            break
        vals, us = scan(cand_t, cand_b)
        k = int(np.argmax(vals))
        if vals[k] > best[0]:
            best = (float(vals[k]), float(cand_t[k]), us[k])
        history.append(best[0])
        seeds = _top(vals, np.asarray(cand_t), us, cand_b, config.refine_keep)
        dtheta /= 4.0

    value, theta, u = best
    s = u - _rot_minus_id(theta) @ ref
    motion = RigidMotion(theta, Point(float(s[0]), float(s[1])))
    if not rigid_constraint_check(sites, motion, C):
        # rounding in the frame change; fall back on the exact translation slice
        motion, value = RigidMotion(0.0, Point(C, 0.0)), C
    return RigidOracleResult(value, motion, tuple(history))


def _rot_minus_id(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c - 1.0, -s], [s, c - 1.0]])


def _top(vals, thetas, us, boxes, k):
    order = np.argsort(vals)[::-1]
    out = []
    for i in order:
        if not np.isfinite(vals[i]) or len(out) == k:
            break
        out.append((float(thetas[i]), us[i].copy(), boxes[i]))
    return out
