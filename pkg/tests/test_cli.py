import json

import pytest

from halfplane import cli
from halfplane.combstruct import uniform_matroid
from halfplane.obstruction import fano
from halfplane.polynomial import Polynomial, variables


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return _write


TRIANGLE = {"n": 3, "edges": [{"u": 1, "v": 2, "w": "1"}, {"u": 1, "v": 3, "w": "1"},
                              {"u": 2, "v": 3, "w": "1"}]}


def strip_timing(report):
    return {k: v for k, v in report.items() if k != "elapsed_seconds"}


def test_verify_jump_reports_violation(write):
    code, rep = cli.run(["verify", "jump", write("j.json", {"dim": 1, "points": [[0], [3]]})])
    assert code == 1
    assert rep["result"]["violation"] == {"alpha": [0], "beta": [3], "sigma": [1]}


def test_obstruct_fano(write):
    code, rep = cli.run(["obstruct", write("f.json", fano().to_json())])
    assert code == 10 and rep["result"]["status"] == "NotHPP"


def test_obstruct_inconclusive(write):
    code, rep = cli.run(["obstruct", write("u.json", uniform_matroid(3, 6).to_json())])
    assert code == 0 and rep["result"]["status"] == "Inconclusive"


def test_construct_matching_triangle(write):
    code, rep = cli.run(["construct", "matching", write("t.json", TRIANGLE)])
    z1, z2, z3 = variables(3)
    assert code == 0
    assert Polynomial.from_json(rep["result"]["polynomial"]) == 1 + z1 * z2 + z1 * z3 + z2 * z3
    assert rep["result"]["tag"]["halfplane"] == "right"


@pytest.mark.parametrize("kind,payload", [
    ("det-pencil", {"A": [[["1", "0"], ["0", "0"]], [["0", "0"], ["0", "1"]]],
                    "B": [["0", "1"], ["1", "0"]]}),
    ("principal-minors", [["0", "1"], ["-1", "0"]]),
    ("principal-minors", {"matrix": [["2", {"re": "0", "im": "1"}], [{"re": "0", "im": "-1"}, "2"]]}),
    ("forest", TRIANGLE),
    ("spanning-tree", TRIANGLE),
    ("degree", TRIANGLE),
    ("representable", [["1", "0", "1"], ["0", "1", "1"]]),
    ("basis-generating", {"n": 3, "bases": [[1, 2], [1, 3], [2, 3]]}),
])
def test_construct_round_trip(write, kind, payload):
    code, rep = cli.run(["construct", kind, write("in.json", payload)])
    assert code == 0
    poly = rep["result"]["polynomial"]
    again = Polynomial.from_json(json.loads(json.dumps(poly)))
    assert again.to_json() == poly


def test_check_stability_codes(write):
    a, b = variables(2)
    code, rep = cli.run(["check-stability", write("p.json", (1 + a * b).to_json())])
    assert code == 1 and rep["result"]["status"] == "RefutedWithWitness"
    code, rep = cli.run(["check-stability", write("q.json", (1 + a + b + a * b).to_json())])
    assert code == 0 and rep["result"]["method"] == "bivariate-determinant"


def test_rayleigh_codes(write):
    code, _ = cli.run(["rayleigh", write("u.json", uniform_matroid(2, 3).to_json())])
    assert code == 0
    code, rep = cli.run(["rayleigh", write("f.json", fano().to_json())])
    assert code == 1 and rep["result"]["verdict"] is False


def test_check_support_and_polarize(write):
    (t,) = variables(1)
    code, rep = cli.run(["check-support", write("p.json", (1 + t ** 3).to_json())])
    assert code == 1 and not rep["result"]["jump_system"]
    code, rep = cli.run(["polarize", write("q.json", (t ** 2 + 2 * t + 1).to_json())])
    assert code == 0 and rep["result"]["groups"] == [[1, 2]]


def test_verify_delta_and_matroid(write):
    path = write("d.json", {"dim": 3, "points": [[0, 0, 0], [1, 1, 0]]})
    assert cli.run(["verify", "delta", path])[0] == 0
    assert cli.run(["verify", "delta", path, "--require-cover"])[0] == 1
    assert cli.run(["verify", "matroid", write("m.json", {"n": 3, "bases": [[1], [2, 3]]})])[0] == 1
    assert cli.run(["verify", "matroid", write("f.json", fano().to_json())])[0] == 0


def test_realify(write):
    f = {"nvars": 1, "terms": [{"exp": [0], "re": "1/1", "im": "1/1"},
                               {"exp": [1], "re": "1/1", "im": "0/1"}]}
    code, rep = cli.run(["realify", write("r.json", f), "--alpha", "1"])
    assert code == 0 and rep["result"]["text"] == str(2 + variables(1)[0])


def test_parse_and_precondition_errors(write):
    assert cli.run(["polarize", write("bad.json", "{oops")])[0] == 2
    assert cli.run(["polarize", "/nonexistent/file.json"])[0] == 2
    dup = {"nvars": 1, "terms": [{"exp": [1], "re": "1/1", "im": "0/1"}] * 2}
    assert cli.run(["polarize", write("dup.json", dup)])[0] == 2
    code, rep = cli.run(["obstruct", write("u.json", uniform_matroid(2, 3).to_json())])
    assert code == 3 and rep["error"]["kind"] == "precondition"
    code, rep = cli.run(["construct", "principal-minors", write("m.json", [["1", "2"], ["3", "4"]])])
    assert code == 3


def test_reports_are_deterministic(write):
    a, b, c = variables(3)
    path = write("p.json", (a * b * c + a + b - c + 2).to_json())
    r1 = cli.run(["check-stability", path, "--seed", "3", "--samples", "200"])
    r2 = cli.run(["check-stability", path, "--seed", "3", "--samples", "200"])
    assert r1[0] == r2[0]
    assert json.dumps(strip_timing(r1[1])) == json.dumps(strip_timing(r2[1]))
    rep = r1[1]
    assert {"version", "seed", "budget", "input_sha256", "elapsed_seconds"} <= set(rep)
    assert rep["budget"]["samples"] == 200


def test_main_writes_out_file(write, tmp_path, capsys):
    out = tmp_path / "report.json"
    code = cli.main(["construct", "matching", write("t.json", TRIANGLE), "--out", str(out)])
    assert code == 0 and capsys.readouterr().out == ""
    assert json.loads(out.read_text())["exit_code"] == 0
