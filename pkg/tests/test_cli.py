import io
import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from dynmec import CenterFunction, RigidMotion, rigid_constraint_check
from dynmec.cli import dumps, fmt_float, run
from dynmec.geometry import dist

DATA = Path(__file__).parent / "data"
TWO = [[-1, 0], [1, 0]]
SQ3 = math.sqrt(3.0)


def call(tmp_path, command, problem, *flags):
    f = tmp_path / "problem.json"
    f.write_text(json.dumps(problem))
    out, err = io.StringIO(), io.StringIO()
    code = run([command, str(f), *flags], stdout=out, stderr=err)
    return code, json.loads(out.getvalue()), out.getvalue()


def test_float_format():
    assert fmt_float(1.118033988749895) == "1.11803399"
    assert fmt_float(-0.0) == "0"
    assert fmt_float(1e-20) == "1e-20"
    assert fmt_float(math.inf) == '"inf"'
    assert dumps({"b": 1.0, "a": [0.5, None, True]}) == '{"b":1,"a":[0.5,null,true]}'


def test_mec_examples(tmp_path):
    assert call(tmp_path, "mec", {"sites": [[0, 0], [2, 0]]})[2] == '{"center":[1,0],"radius":1}\n'
    assert call(tmp_path, "mec", {"sites": [[0, 0], [2, 0], [1, 1]]})[2] == '{"center":[1,0],"radius":1}\n'
    # co-circular sites are fine for the circle alone
    code, res, _ = call(tmp_path, "mec", {"sites": [[1, 0], [0, 1], [-1, 0], [0, -1]]})
    assert code == 0 and res["radius"] == 1


def test_general_position_exit(tmp_path):
    code, res, _ = call(tmp_path, "fvd", {"sites": [[1, 0], [0, 1], [-1, 0], [0, -1]]})
    assert code == 3 and res["error"] == "general_position" and res["violations"]


def test_solve_examples(tmp_path):
    code, res, _ = call(tmp_path, "solve", {"sites": TWO, "p": [0, 0.5]})
    assert code == 0
    assert list(res)[:4] == ["locus", "point", "value", "unique"]
    assert res["locus"] == "edge_interior" and res["point"] == [0, -2] and res["value"] == 1.11803399
    code, res, _ = call(tmp_path, "solve", {"sites": TWO, "p": [0.5, 0]})
    assert code == 0 and res["locus"] == "infinity" and res["value"] == 1
    code, res, _ = call(tmp_path, "solve", {"sites": TWO, "p": [1, 0]})
    assert code == 4 and res["site"] == 1


def test_solve_methods_and_oracle(tmp_path):
    prob = {"sites": TWO, "p": [0, -3], "config": {"plane_grid": 300, "edge_samples": 5000}}
    _, a, _ = call(tmp_path, "solve", prob, "--method", "traversal")
    _, b, _ = call(tmp_path, "solve", prob, "--method", "descent", "--oracle")
    assert a["value"] == b["value"] and a["point"] == b["point"]
    assert abs(b["oracle"]["difference"]) <= 1e-4


def test_batch(tmp_path):
    batch = tmp_path / "batch.json"
    batch.write_text(json.dumps([[0, 0.5], [1, 0], [2, 0]]))
    code, res, _ = call(tmp_path, "solve", {"sites": TWO}, "--batch", str(batch))
    assert code == 4
    r = res["results"]
    assert r[0]["value"] == 1.11803399 and r[1]["error"] == "vertex_coincidence" and r[2]["value"] == 2


def test_regions_examples(tmp_path):
    eq = [[1, 0], [-0.5, SQ3 / 2], [-0.5, -SQ3 / 2]]
    code, res, _ = call(tmp_path, "regions", {"sites": eq})
    assert code == 0 and res["count"] == 5
    code, res, _ = call(tmp_path, "regions", {"sites": TWO})
    assert res["count"] == 2
    assert sorted(r["label"][0] for r in res["regions"]) == ["edge", "edge", "infinity"]


def test_tre_max_examples(tmp_path):
    code, res, _ = call(tmp_path, "tre-max", {"sites": TWO, "p": [0, -3], "C": 1})
    assert code == 0 and res["value"] == 3.16227766 and res["feasible"]
    code, res, _ = call(tmp_path, "tre-max", {"sites": TWO, "p": [0, -3], "C": 3})
    assert code == 5
    code, res, _ = call(tmp_path, "tre-max", {"sites": TWO, "p": [0.5, 0], "C": 1})
    assert res["value"] == 1 and res["witness"]["theta"] == 0


def test_oracle_command(tmp_path):
    prob = {"sites": TWO, "p": [0, 0.5], "C": 1,
            "config": {"plane_grid": 300, "edge_samples": 5000, "theta_steps": 91, "s_steps": 21,
                       "refine_rounds": 3}}
    code, res, _ = call(tmp_path, "oracle", prob)
    assert code == 0 and not res["grid_beats_fvb"]
    assert abs(res["analytic"]["difference"]) <= 1e-4
    assert res["rigid"]["value"] <= res["analytic"]["value"] + 1e-6


@pytest.mark.parametrize("problem", [
    "not json",
    {"sites": [[0, 0]]},
    {"sites": [[0, 0], [1, "x"]]},
    {"sites": [[0, 0], [1, 1]], "config": {"bogus": 1}},
    {"sites": [[0, 0], [1, 1]], "seed": 1.5},
    {"sites": [[0, 0], [0, 0]]},
])
def test_parse_errors(tmp_path, problem):
    f = tmp_path / "bad.json"
    f.write_text(problem if isinstance(problem, str) else json.dumps(problem))
    out, err = io.StringIO(), io.StringIO()
    assert run(["mec", str(f)], stdout=out, stderr=err) == 2
    assert json.loads(out.getvalue())["error"] == "parse"
    assert err.getvalue()


def test_missing_keys_and_bad_flags(tmp_path):
    assert call(tmp_path, "solve", {"sites": TWO})[0] == 2
    assert call(tmp_path, "tre-max", {"sites": TWO, "p": [0, 3]})[0] == 2
    out, err = io.StringIO(), io.StringIO()
    assert run(["frobnicate", "x.json"], stdout=out, stderr=err) == 2


def test_deterministic_output(tmp_path):
    prob = json.loads((DATA / "heptagon.json").read_text())
    for cmd in ("fvd", "solve", "regions"):
        outs = {call(tmp_path, cmd, prob)[2] for _ in range(3)}
        assert len(outs) == 1


def test_round_trip_verification(tmp_path):
    prob = json.loads((DATA / "heptagon.json").read_text())
    cf = CenterFunction(prob["sites"])
    _, res, _ = call(tmp_path, "solve", prob)
    x = res["point"]
    # 9 significant digits put the printed point within ~1e-8 of FVB(S)
    assert cf.fvb.distance_to(x) <= 1e-7
    prob["C"] = 0.2
    _, res, _ = call(tmp_path, "tre-max", prob)
    w = RigidMotion(res["witness"]["theta"], res["witness"]["s"])
    assert rigid_constraint_check(prob["sites"], w, 0.2 + 1e-7)
    _, res, _ = call(tmp_path, "fvd", prob)
    for n in res["nodes"]:
        if n["position"] is None:
            continue
        d = [dist(n["position"], prob["sites"][i]) for i in n["sites"]]
        assert max(d) - min(d) <= 1e-7


def test_golden_svg(tmp_path):
    svg = tmp_path / "out.svg"
    code, res, _ = call(tmp_path, "regions", json.loads((DATA / "heptagon.json").read_text()),
                        "--svg", str(svg))
    assert code == 0 and res["count"] <= 17
    text = svg.read_text()
    assert text == (DATA / "golden_heptagon.svg").read_text()
    assert 'class="fvb"' in text and "stroke-dasharray" in text and " A " in text


def test_module_entry_point(tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"sites": TWO, "p": [2, 0]}))
    out = subprocess.run([sys.executable, "-m", "dynmec", "solve", str(f)], capture_output=True,
                         text=True, env=dict(os.environ))
    assert out.returncode == 0
    assert json.loads(out.stdout)["locus"] == "node"
