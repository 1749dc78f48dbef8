import csv
import json
import shutil
from fractions import Fraction as Q

import pytest

from barrierlab import cli
from barrierlab.ramsey import Coloring, is_monochromatic


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def test_roundtrip_scenario(tmp_path):
    sc = write(tmp_path, "rt.json", {"command": "ramsey.roundtrip", "seed": 7,
                                     "inputs": {"k": 2, "window": 20}})
    out = tmp_path / "out"
    assert cli.main(["run", "--scenario", sc, "--out", str(out)]) == 0
    rep = json.loads((out / "report.json").read_text())
    res = rep["result"]
    assert rep["status"] == "ok" and res["verified"] and len(res["M"]) >= 4
    C = Coloring.random(2, range(1, 21), 7)
    assert is_monochromatic(C, res["M"]) == res["color"]
    assert (out / "report.csv").read_text().startswith("set,norm")


def test_spreading_scenario_table_is_l1(tmp_path):
    sc = write(tmp_path, "sp.json", {"command": "model.spreading",
                                     "inputs": {"host": "schreier", "count": 10, "nmax": 3}})
    out = tmp_path / "out"
    assert cli.main(["run", "--scenario", sc, "--out", str(out)]) == 0
    with open(out / "report.csv") as f:
        rows = list(csv.DictReader(f))
    assert rows
    for r in rows:
        a = [Q(x) for x in r["a"].split()]
        assert Q(r["rho"]) == sum(abs(x) for x in a)


def test_malformed_json_exits_1(tmp_path, capsys):
    sc = write(tmp_path, "bad.json", '{"command": ')
    assert cli.main(["run", "--scenario", sc]) == 1
    assert "SchemaError" in capsys.readouterr().err


@pytest.mark.parametrize("scenario", [
    {"command": "nope"},
    {"command": "plegma.enum", "inputs": {"barrier": {"cube": 1}}},
    {"command": "norm.net", "inputs": {"k": 0}},
    {"command": "ramsey.roundtrip", "extra": 1},
])
def test_schema_violations(tmp_path, capsys, scenario):
    sc = write(tmp_path, "s.json", scenario)
    assert cli.main(["run", "--scenario", sc]) == 1
    assert "SchemaError" in capsys.readouterr().err


def test_missing_file_is_io_failure(capsys):
    assert cli.main(["run", "--scenario", "/nonexistent/x.json"]) == 1
    assert "IOFailure" in capsys.readouterr().err


def test_partial_result_exit_2(capsys):
    code = cli.main(["ramsey", "homogenize", '{"k": 2, "window": 4, "target": 9}'])
    assert code == 2
    assert json.loads(capsys.readouterr().out)["status"] == "partial"


def test_window_and_mesh_overrides(capsys):
    assert cli.main(["barrier", "front", '{"barrier": {"schreier": {}}}', "--window", "5"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["count"] == 5
    args = '{"a": {"W": "l1", "positions": [1, 2]}, "b": {"W": "sup", "positions": [1, 2]}}'
    assert cli.main(["norm", "dist", args, "--mesh", "1/16"]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["interval"] == ["1", "17/16"]


def test_run_is_deterministic(tmp_path):
    sc = {"command": "model.glide", "seed": 4, "inputs": {}}
    assert cli.scenario_report_bytes(sc) == cli.scenario_report_bytes(sc)


def test_parallel_scenarios(tmp_path, monkeypatch):
    monkeypatch.setenv("BARRIERLAB_THREADS", "3")
    paths = [write(tmp_path, f"s{i}.json", {"command": "plegma.check",
                                            "inputs": {"tuple": [[i], [i + 1]]}})
             for i in (1, 2, 3)]
    out = tmp_path / "out"
    args = ["run", "--out", str(out)]
    for p in paths:
        args += ["--scenario", p]
    assert cli.main(args) == 0
    assert sorted(d.name for d in out.iterdir()) == ["s1", "s2", "s3"]


def test_bad_threads_value(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("BARRIERLAB_THREADS", "many")
    sc = write(tmp_path, "s.json", {"command": "plegma.check", "inputs": {"tuple": [[1]]}})
    assert cli.main(["run", "--scenario", sc]) == 1


def test_golden_fixtures_pass():
    assert all(ok for _, ok, _ in cli.check_golden(cli.default_golden_dir()))


def test_corrupted_golden_is_a_named_failure(tmp_path):
    d = tmp_path / "golden"
    shutil.copytree(cli.default_golden_dir(), d)
    (d / "norm_w5.json").write_text("{ not json")
    target = d / "plegma_schreier.json"
    doc = json.loads(target.read_text())
    doc["report"]["result"]["count"] += 1
    target.write_text(json.dumps(doc))
    res = {name: (ok, why) for name, ok, why in cli.check_golden(d)}
    assert res["norm_w5.json"][0] is False and "JSONDecodeError" in res["norm_w5.json"][1]
    assert res["plegma_schreier.json"] == (False, "report differs")
    assert res["roundtrip_seed7.json"][0]


def test_selftest_reports_corrupted_golden(tmp_path, capsys):
    d = tmp_path / "golden"
    shutil.copytree(cli.default_golden_dir(), d)
    (d / "norm_w5.json").write_text("garbage")
    code = cli.main(["selftest", "--only", "2", "--golden-dir", str(d)])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL  golden  norm_w5.json" in out and "PASS  2" in out
