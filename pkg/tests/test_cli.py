import io
import json

import numpy as np
import pytest

from linfty_disks import disks
from linfty_disks.cli import run
from linfty_disks.io import algebra_from_json, algebra_to_json, filtered_to_json
from linfty_disks.samples import end_algebra, gauge_mc_element

VDEG = [0, 1, 1, 2]
DMAT = [[0, 1, -1, 0], [0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 0]]

SO3_BAD = {
    "space": {"generators": [{"name": "e1", "degree": 0}, {"name": "e2", "degree": 0},
                             {"name": "e3", "degree": 0}]},
    "brackets": {"2": [{"args": ["e1", "e2"], "value": {"e3": "1", "e1": "1"}},
                       {"args": ["e2", "e3"], "value": {"e1": "1"}},
                       {"args": ["e3", "e1"], "value": {"e2": "1"}}]},
}


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], stdout=out)
    text = out.getvalue()
    return code, (json.loads(text) if text.strip() else None), text


@pytest.fixture
def files(tmp_path):
    alg = end_algebra(VDEG, DMAT, upper=True, weighted=True)
    paths = {}

    def write(name, data):
        p = tmp_path / name
        p.write_text(json.dumps(data))
        paths[name] = p
    write("dglie.json", algebra_to_json(alg))
    write("mc.json", filtered_to_json(gauge_mc_element(
        alg, VDEG, DMAT, [[0] * 4, [0, 0, 1, 0], [0] * 4, [0] * 4], 4)))
    write("vec.json", {"terms": [{"level": 0, "word": ["E12"], "c": "1"}]})
    write("bad.json", SO3_BAD)
    fr = disks.circle_frames(2, 256)
    write("circle_d2.json", [[[[u.real, u.imag] for u in row] for row in f] for f in fr])
    write("path.json", {"vertices": ["0", "1", "2"], "edges": [["0", "1"], ["1", "2"]]})
    write("cycle.json", {"vertices": ["0", "1", "2"],
                         "edges": [["0", "1"], ["1", "2"], ["2", "0"]]})
    (tmp_path / "broken.json").write_text('{"space": {"generators": [}')
    paths["broken.json"] = tmp_path / "broken.json"
    th = 2 * np.pi * np.arange(128) / 128
    lines = ["theta,re,im"] + ["%.17g,%.17g,%.17g" % (t, np.cos(t), -np.sin(t)) for t in th]
    (tmp_path / "loop.csv").write_text("\n".join(lines) + "\n")
    paths["loop.csv"] = tmp_path / "loop.csv"
    return paths


def test_algebra_json_round_trip(files):
    data = json.loads(files["dglie.json"].read_text())
    assert algebra_to_json(algebra_from_json(data)) == data


def test_check_pass_and_fail(files):
    code, rep, _ = call("check", "--alg", files["dglie.json"], "--max-len", 3)
    assert code == 0 and rep["status"] == "pass" and rep["residuals"] == []
    code, rep, _ = call("check", "--alg", files["bad.json"], "--max-len", 3)
    assert code == 1 and rep["status"] == "fail"
    assert rep["residuals"][0]["location"].endswith("e1*e2*e3")


def test_transfer(files, tmp_path):
    out = tmp_path / "h.json"
    code, rep, _ = call("transfer", "--alg", files["dglie.json"], "--output", out)
    assert code == 0 and rep["result"]["homology_dim"] == 2
    assert json.loads(out.read_text()) == rep["result"]["homology"]


def test_mc_and_twist(files):
    code, rep, _ = call("mc-verify", "--alg", files["dglie.json"], "--element", files["mc.json"])
    assert code == 0 and rep["result"]["twisted_square_zero"]
    code, rep, _ = call("twist", "--alg", files["dglie.json"], "--element", files["mc.json"],
                        "--vector", files["vec.json"])
    assert code == 0 and rep["result"]["maurer_cartan"]


def test_fukaya_and_degrees():
    code, rep, _ = call("fukaya-check", "--toy", 3)
    assert code == 0 and rep["result"]["consistent"]
    assert rep["result"]["signs"] == {"mc": [1, -1, -1, 1], "pair": [1, 1, -1, -1]}
    code, rep, _ = call("degree-constraints", "--n", 3)
    assert code == 0 and rep["result"]["mu_a"] == [2, 4] and rep["result"]["mu_ai"] == [-1, 2]
    code, rep, _ = call("degree-constraints", "--n", 3, "--mu-ai", "0,-2")
    assert code == 1 and rep["result"]["contradiction"] is True


def test_maslov_and_disks(files, tmp_path):
    code, rep, _ = call("maslov", "--frames", files["circle_d2.json"])
    assert code == 0 and rep["result"]["maslov"] == 4
    code, rep, _ = call("maslov", "--torus", "1,2", "--expect", 5)
    assert code == 1
    csv_path = tmp_path / "b.csv"
    code, rep, _ = call("disk-demo", "--zeros", "0.3,0.1;-0.2,0.4", "--csv", csv_path)
    assert code == 0 and rep["result"]["degree"] == 2
    assert csv_path.read_text().startswith("theta,re,im")
    code, rep, _ = call("stokes", "--loop", files["loop.csv"])
    assert code == 0 and abs(rep["result"]["value"] - 2) < 1e-6


def test_trees_commands(files):
    assert call("tree-validate", "--tree", files["path.json"])[0] == 0
    code, rep, _ = call("tree-validate", "--tree", files["cycle.json"])
    assert code == 1 and rep["residuals"][0]["value"] == "no cycles"
    code, rep, _ = call("gromov-t2", "--w", 1.0, "--direction", -1)
    assert code == 0 and rep["result"]["case"] == "ii"


def test_input_errors(files, tmp_path):
    code, rep, _ = call("check", "--alg", files["broken.json"])
    assert code == 2 and rep["status"] == "error"
    assert rep["location"].startswith(str(files["broken.json"]) + ":1:")
    floaty = tmp_path / "float.json"
    data = dict(SO3_BAD)
    data["brackets"] = {"2": [{"args": ["e1", "e2"], "value": {"e3": 0.5}}]}
    floaty.write_text(json.dumps(data))
    code, rep, _ = call("check", "--alg", floaty)
    assert code == 2 and "brackets.2[0].value.e3" in rep["location"]
    assert call("nonsense")[0] == 2
    assert call("maslov")[0] == 2
    bad_csv = tmp_path / "bad.csv"
    bad_csv.write_text("theta,re,im\n0,1\n")
    code, rep, _ = call("stokes", "--loop", bad_csv)
    assert code == 2 and rep["location"].endswith(":2")


def test_reports_are_deterministic(files):
    a = call("check", "--alg", files["dglie.json"], "--max-len", 3)[2]
    b = call("check", "--alg", files["dglie.json"], "--max-len", 3)[2]
    assert a == b
    a = call("gromov-t2", "--w", 2.0)[2]
    assert a == call("gromov-t2", "--w", 2.0)[2]


def test_quiet_and_timing(files):
    code, rep, text = call("check", "--alg", files["dglie.json"], "--max-len", 2, "--quiet")
    assert code == 0 and text == ""
    code, rep, _ = call("check", "--alg", files["dglie.json"], "--max-len", 2, "--timing")
    assert "timing_ms" in rep
