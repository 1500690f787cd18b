"""numpy implementations of the dense-evaluation kernels."""

import numpy as np

_CHUNK = 1 << 18


def max_distances(xy, sites):
    xy = np.asarray(xy, dtype=float)
    sites = np.asarray(sites, dtype=float)
    out = np.zeros(len(xy))
    for sx, sy in sites:
        np.maximum(out, np.hypot(xy[:, 0] - sx, xy[:, 1] - sy), out=out)
    return out


def objective_values(xy, sites, p):
    xy = np.asarray(xy, dtype=float)
    num = np.hypot(xy[:, 0] - p[0], xy[:, 1] - p[1])
    return num / max_distances(xy, sites)


def grid_max(x0, y0, h, n, sites, p):
    """Best objective value on the n x n grid x0 + i h, y0 + j h.

    Returns (value, i, j).
    """
    xs = x0 + h * np.arange(n)
    best = (-np.inf, 0, 0)
    rows = max(1, _CHUNK // n)
    for j0 in range(0, n, rows):
        ys = y0 + h * np.arange(j0, min(n, j0 + rows))
        gx, gy = np.meshgrid(xs, ys)
        f = objective_values(np.column_stack([gx.ravel(), gy.ravel()]), sites, p)
        k = int(np.argmax(f))
        if f[k] > best[0]:
            best = (float(f[k]), k % n, j0 + k // n)
    return best


def rigid_scan(thetas, lo, hi, n, sites, p, C, tol=1e-9):
    """For every angle, grid search the translation box [lo, hi] (n x n).

    ``sites`` and ``p`` are given relative to a common reference point and
    the translation is expressed relative to it as well.  Returns the best
    feasible |TRE(p)| per angle (-inf when nothing is feasible) and the
    translation attaining it.
    """
    sites = np.asarray(sites, dtype=float)
    thetas = np.asarray(thetas, dtype=float)
    vals = np.full(len(thetas), -np.inf)
    us = np.zeros((len(thetas), 2))
    t = np.arange(n) / float(max(n - 1, 1))
    limit = (C + tol) ** 2
    for k, th in enumerate(thetas):
        c, s = np.cos(th) - 1.0, np.sin(th)
        ux = lo[k][0] + (hi[k][0] - lo[k][0]) * t
        uy = lo[k][1] + (hi[k][1] - lo[k][1]) * t
        gx, gy = np.meshgrid(ux, uy)
        ok = np.ones(gx.shape, dtype=bool)
        for x, y in sites:
            dx = gx + c * x - s * y
            dy = gy + s * x + c * y
            ok &= dx * dx + dy * dy <= limit
        if not ok.any():
            continue
        px = gx + c * p[0] - s * p[1]
        py = gy + s * p[0] + c * p[1]
        v = np.where(ok, px * px + py * py, -1.0)
        i = int(np.argmax(v))
        vals[k] = float(np.sqrt(v.flat[i]))
        us[k] = gx.flat[i], gy.flat[i]
    return vals, us
