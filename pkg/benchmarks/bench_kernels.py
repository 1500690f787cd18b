"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]

Each kernel is run on the same inputs under both backends; outputs are
checked for agreement before timings are reported.
"""

import argparse
import math
import time

import numpy as np

from dynmec.kernels import backends


def _sites(m, seed=3):
    rng = np.random.default_rng(seed)
    t = np.sort(rng.uniform(0, 2 * math.pi, m))
    return np.column_stack([np.cos(t), 0.7 * np.sin(t)])


def _time(fn, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(quick):
    n_pts = 200_000 if quick else 2_000_000
    grid = 500 if quick else 2000
    n_theta, n_s = (90, 61) if quick else (361, 121)
    sites = _sites(15)
    p = np.array([1.7, -0.4])
    xy = np.random.default_rng(0).uniform(-4, 4, (n_pts, 2))
    thetas = np.linspace(-math.pi, math.pi, n_theta)
    lo = np.full((n_theta, 2), -1.5)
    hi = np.full((n_theta, 2), 1.5)
    return [
        ("max_distances  %d pts" % n_pts, lambda k: k.max_distances(xy, sites)),
        ("objective      %d pts" % n_pts, lambda k: k.objective_values(xy, sites, p)),
        ("grid_max       %dx%d" % (grid, grid), lambda k: k.grid_max(-4.0, -4.0, 8.0 / (grid - 1), grid, sites, p)),
        ("rigid_scan     %d x %d^2" % (n_theta, n_s), lambda k: k.rigid_scan(thetas, lo, hi, n_s, sites, p, 0.5)),
    ]


def _agree(a, b):
    if isinstance(a, tuple):
        return all(_agree(x, y) for x, y in zip(a, b))
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    return bool(np.allclose(a, b, rtol=1e-12, atol=1e-12, equal_nan=True))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    args = ap.parse_args(argv)

    impls = backends()
    if "cython" not in impls:
        print("compiled kernels not built; timing the numpy backend only")
    names = sorted(impls)
    print("%-32s" % "kernel" + "".join("%12s" % n for n in names) + "%10s" % "speedup")
    rows = []
    for label, fn in cases(args.quick):
        times, outs = {}, {}
        for n in names:
            times[n], outs[n] = _time(lambda: fn(impls[n]), args.repeat)
        if len(names) == 2 and not _agree(outs["cython"], outs["python"]):
            raise SystemExit("backends disagree on %s" % label)
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print("%-32s" % label + "".join("%11.4fs" % times[n] for n in names) + "%9.1fx" % speed)
        rows.append((label, times, speed))
    return rows


if __name__ == "__main__":
    main()
