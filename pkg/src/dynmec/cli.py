"""Command-line front end.

    dynmec mec|fvd|solve|regions|tre-max|oracle PROBLEM.json [options]

PROBLEM.json holds {"sites": [[x, y], ...], "p": [x, y], "C": number} and
optionally "config" (oracle settings) and "seed" (MEC insertion order).  Results go to stdout as JSON with
floats at 9 significant digits; diagnostics go to stderr.

Exit codes: 0 ok, 2 parse error, 3 sites not in general position,
4 weight point on a hull vertex, 5 budget out of range.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import fields

from .center_function import CenterFunction, Locus, Solution
from .division_tree import build_division_tree
from .errors import (
    BudgetOutOfRange,
    DegenerateInput,
    DynMecError,
    GeneralPositionViolation,
    InvalidInput,
    VertexCoincidence,
)
from .fpvd import MEC_SEED, build_fvb, compute_mec
from .geometry import DIST_TOL, Arc, Line, Segment, as_siteset, check_general_position, convex_hull
from .oracle import OracleConfig, oracle_rigid_max, oracle_solve
from .rigid_motion import max_displacement, rigid_constraint_check

EXIT_OK, EXIT_PARSE, EXIT_GENERAL_POSITION, EXIT_VERTEX, EXIT_BUDGET = 0, 2, 3, 4, 5


class ParseError(Exception):
    pass


# -- JSON output ---------------------------------------------------------------

def fmt_float(v: float) -> str:
    if math.isnan(v):
        return "null"
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    s = "%.9g" % v
    return "0" if s == "-0" else s


def dumps(obj) -> str:
    """Compact JSON with fixed float formatting; dict order is preserved."""
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ",".join("%s:%s" % (json.dumps(str(k)), dumps(v)) for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item())
    raise TypeError("cannot serialize %r" % type(obj))


def _xy(q):
    return None if q is None or not hasattr(q, "__len__") else [float(q[0]), float(q[1])]


def solution_json(sol: Solution, tree=None) -> dict:
    """Edge ids are reported as FVB edge ids (a split root edge maps back
    to the edge it was cut from)."""
    def eid(e):
        return tree.original_edge(e) if tree is not None and e is not None else e

    out = {
        "locus": sol.locus.value,
        "point": _xy(sol.point) if sol.attained else None,
        "value": sol.value,
        "unique": sol.unique,
        "ties": [
            {"locus": c.locus.value, "point": _xy(c.point) if c.locus is not Locus.AT_INFINITY else None,
             "value": c.value, "node": c.node_id, "edge": eid(c.edge_id)}
            for c in sol.ties[1:]
        ],
        "node": sol.node_id,
        "edge": eid(sol.edge_id),
        "lambda": sol.lam,
    }
    if sol.levels is not None:
        out["levels"] = sol.levels
    return out


def primitive_json(prim) -> dict:
    if isinstance(prim, Arc):
        a, b = prim.endpoints
        return {"type": "arc", "center": _xy(prim.center), "radius": prim.radius,
                "start": prim.start, "sweep": prim.sweep, "from": _xy(a), "to": _xy(b)}
    if isinstance(prim, Segment):
        return {"type": "segment", "a": _xy(prim.a), "b": _xy(prim.b)}
    if isinstance(prim, Line):
        return {"type": "line", "point": _xy(prim.point), "direction": _xy(prim.direction)}
    raise TypeError(prim)


# -- input ---------------------------------------------------------------------

def _pair(v, what):
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ParseError("%s must be an [x, y] pair" % what)
    try:
        x, y = float(v[0]), float(v[1])
    except (TypeError, ValueError):
        raise ParseError("%s must hold numbers" % what) from None
    if isinstance(v[0], bool) or isinstance(v[1], bool) or not (math.isfinite(x) and math.isfinite(y)):
        raise ParseError("%s must hold finite numbers" % what)
    return (x, y)


def load_problem(path: str) -> dict:
    try:
        if path == "-":
            raw = json.load(sys.stdin)
        else:
            with open(path) as fh:
                raw = json.load(fh)
    except (OSError, ValueError) as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from None
    if not isinstance(raw, dict) or "sites" not in raw:
        raise ParseError("problem must be an object with a 'sites' list")
    sites = raw["sites"]
    if not isinstance(sites, list) or len(sites) < 2:
        raise ParseError("'sites' needs at least two [x, y] pairs")
    prob = {"sites": [_pair(s, "site %d" % i) for i, s in enumerate(sites)]}
    if raw.get("p") is not None:
        prob["p"] = _pair(raw["p"], "p")
    if raw.get("C") is not None:
        try:
            prob["C"] = float(raw["C"])
        except (TypeError, ValueError):
            raise ParseError("'C' must be a number") from None
        if not math.isfinite(prob["C"]):
            raise ParseError("'C' must be finite")
    if raw.get("seed") is not None:
        if isinstance(raw["seed"], bool) or not isinstance(raw["seed"], int):
            raise ParseError("'seed' must be an integer")
        prob["seed"] = raw["seed"]
    cfg = raw.get("config") or {}
    if not isinstance(cfg, dict):
        raise ParseError("'config' must be an object")
    known = {f.name for f in fields(OracleConfig)}
    unknown = set(cfg) - known
    if unknown:
        raise ParseError("unknown config keys: %s" % ", ".join(sorted(unknown)))
    try:
        prob["config"] = OracleConfig(**cfg)
    except (TypeError, ValueError) as exc:
        raise ParseError("bad config: %s" % exc) from None
    return prob


def load_batch(path: str) -> list:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, ValueError) as exc:
        raise ParseError("cannot read batch %s: %s" % (path, exc)) from None
    if isinstance(raw, dict):
        raw = raw.get("p", raw.get("points"))
    if not isinstance(raw, list):
        raise ParseError("batch file must be a list of [x, y] weight points")
    return [_pair(q, "batch entry %d" % i) for i, q in enumerate(raw)]


def _need(prob, key, cmd):
    if key not in prob:
        raise ParseError("'%s' needs '%s' in the problem file" % (cmd, key))
    return prob[key]


# -- commands --------------------------------------------------------------------

def _center_function(prob, tol) -> CenterFunction:
    sites = as_siteset(prob["sites"])
    report = check_general_position(sites, convex_hull(sites), tol=tol)
    if not report.ok:
        raise GeneralPositionViolation(report.violations)
    return CenterFunction(build_division_tree(build_fvb(sites, check=False)))


def cmd_mec(prob, args):
    c = compute_mec(prob["sites"], prob.get("seed", MEC_SEED))
    return {"center": _xy(c.center), "radius": c.radius}


def cmd_fvd(prob, args):
    cf = _center_function(prob, args.tolerance)
    fvb = cf.fvb
    out = {
        "m": fvb.m,
        "hull": list(fvb.hull.indices),
        "mec": {"center": _xy(fvb.mec.center), "radius": fvb.mec.radius},
        "nodes": [{"id": n.id, "position": None if n.is_infinity else _xy(n.position),
                   "sites": list(n.defining_sites)} for n in fvb.nodes],
        "edges": [{"id": e.id, "sites": list(e.site_pair), "start": e.start_node, "end": e.end_node,
                   "anchor": _xy(e.anchor), "direction": _xy(e.direction),
                   "length": e.length if e.bounded else None} for e in fvb.edges],
        "root": cf.tree.root,
        "depth": cf.tree.depth,
    }
    _maybe_svg(cf, args, regions=False)
    return out


def _solve_one(cf, p, args):
    sol = cf.solve_by_descent(p) if args.method == "descent" else cf.solve_by_traversal(p)
    out = solution_json(sol, cf.tree)
    if args.oracle:
        o = oracle_solve(cf.sites, p, args.config, fvb=cf.fvb)
        out["oracle"] = {"value": o.value, "point": _xy(o.point), "grid_value": o.grid_value,
                         "fvb_value": o.fvb_value, "grid_bound": o.grid_bound,
                         "difference": sol.value - o.value}
    return sol, out


def cmd_solve(prob, args):
    cf = _center_function(prob, args.tolerance)
    if args.batch:
        results, code = [], EXIT_OK
        for p in load_batch(args.batch):
            try:
                results.append(_solve_one(cf, p, args)[1])
            except VertexCoincidence as exc:
                results.append(_vertex_payload(exc))
                code = EXIT_VERTEX
        return {"results": results}, code
    p = _need(prob, "p", "solve")
    sol, out = _solve_one(cf, p, args)
    _maybe_svg(cf, args, regions=False, p=p, solution=sol)
    return out


def cmd_regions(prob, args):
    cf = _center_function(prob, args.tolerance)
    div = cf.enumerate_regions()
    out = {
        "m": div.m,
        "count": div.count,
        "bound": max(3 * div.m - 4, 2),
        "regions": [{"label": list(r.label), "boundary": [primitive_json(b) for b in r.boundary]}
                    for r in div.regions],
    }
    _maybe_svg(cf, args, regions=True, p=prob.get("p"))
    return out


def _motion_json(m):
    return {"theta": m.theta, "s": _xy(m.s)}


def cmd_tre_max(prob, args):
    cf = _center_function(prob, args.tolerance)
    p = _need(prob, "p", "tre-max")
    C = _need(prob, "C", "tre-max")
    bound = max_displacement(cf, p, C, method=args.method)
    out = {"value": bound.value, "witness": _motion_json(bound.witness),
           "feasible": rigid_constraint_check(cf.sites, bound.witness, C),
           "solution": solution_json(bound.solution, cf.tree)}
    if args.oracle:
        o = oracle_rigid_max(cf.sites, p, C, args.config)
        out["oracle"] = {"value": o.value, "witness": _motion_json(o.motion),
                         "relative_gap": (bound.value - o.value) / bound.value}
    return out


def cmd_oracle(prob, args):
    cf = _center_function(prob, args.tolerance)
    p = _need(prob, "p", "oracle")
    cf.check_vertex(p)
    o = oracle_solve(cf.sites, p, args.config, fvb=cf.fvb)
    sol = cf.solve(p)
    out = {
        "value": o.value, "point": _xy(o.point),
        "grid": {"value": o.grid_value, "point": _xy(o.grid_point), "cell": o.cell, "bound": o.grid_bound},
        "fvb": {"value": o.fvb_value, "point": _xy(o.fvb_point)},
        "grid_beats_fvb": o.grid_beats_fvb,
        "analytic": {"locus": sol.locus.value, "value": sol.value,
                     "difference": sol.value - o.value},
    }
    if "C" in prob:
        r = oracle_rigid_max(cf.sites, p, prob["C"], args.config)
        out["rigid"] = {"value": r.value, "witness": _motion_json(r.motion), "rounds": list(r.history)}
    return out


def _maybe_svg(cf, args, regions, p=None, solution=None):
    if getattr(args, "svg", None):
        from .svg import render
        with open(args.svg, "w") as fh:
            fh.write(render(cf, regions=regions, p=p, solution=solution))


def _vertex_payload(exc: VertexCoincidence) -> dict:
    return {"error": "vertex_coincidence", "site": exc.site_index, "cell": exc.cell}


COMMANDS = {
    "mec": cmd_mec,
    "fvd": cmd_fvd,
    "solve": cmd_solve,
    "regions": cmd_regions,
    "tre-max": cmd_tre_max,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dynmec", description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("problem", help="problem JSON file, or - for stdin")
    ap.add_argument("--method", choices=("traversal", "descent"), default="traversal")
    ap.add_argument("--oracle", action="store_true", help="append a brute-force comparison")
    ap.add_argument("--svg", metavar="PATH", help="write a drawing of FVB(S) (and regions)")
    ap.add_argument("--batch", metavar="PATH", help="JSON list of weight points for solve")
    ap.add_argument("--tolerance", type=float, default=DIST_TOL,
                    help="co-circularity tolerance in normalized units (default %(default)g)")
    return ap


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    code = EXIT_OK
    try:
        if not args.tolerance >= 0.0:
            raise ParseError("--tolerance must be nonnegative")
        prob = load_problem(args.problem)
        args.config = prob["config"]
        result = COMMANDS[args.command](prob, args)
        if isinstance(result, tuple):
            result, code = result
        payload = result
    except (ParseError, InvalidInput, DegenerateInput) as exc:
        print("parse error: %s" % exc, file=stderr)
        payload, code = {"error": "parse", "message": str(exc)}, EXIT_PARSE
    except GeneralPositionViolation as exc:
        print(str(exc), file=stderr)
        payload = {"error": "general_position", "violations": [list(v) for v in exc.violations]}
        code = EXIT_GENERAL_POSITION
    except VertexCoincidence as exc:
        print(str(exc), file=stderr)
        payload, code = _vertex_payload(exc), EXIT_VERTEX
    except BudgetOutOfRange as exc:
        print(str(exc), file=stderr)
        payload, code = {"error": "budget", "message": str(exc)}, EXIT_BUDGET
    except DynMecError as exc:
        print(str(exc), file=stderr)
        payload, code = {"error": type(exc).__name__, "message": str(exc)}, EXIT_PARSE
    stdout.write(dumps(payload) + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
