import io
import json
from pathlib import Path

import jsonschema
import pytest

from linkforge.cli import run

SCHEMAS = Path(__file__).resolve().parent.parent / "docs" / "schemas"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    data = json.loads(out.getvalue()) if code == 0 else None
    return code, data, err.getvalue()


def validated(command, *rest):
    code, data, err = call(command, *rest)
    assert code == 0, err
    schema = json.loads((SCHEMAS / f"{command}.json").read_text())
    jsonschema.validate(data, schema)
    return data


def test_milnor_example():
    data = validated("milnor", "--index", "123", "fixtures/borromean.pd")
    assert data["index"] == "123" and abs(data["value"]) == 1 and data["indeterminacy"] == 0


def test_verify_example():
    data = validated("verify", "fixtures/fig4.fpg", "fixtures/fig4_rep.json")
    assert data["valid"] and data["eta_prime_image"] == [[3, 1], [4, 0]]


def test_tree_example():
    assert validated("tree", "--m", "7") == {"h": 3, "k": 2, "leaf_depths": [4, 4, 4, 4, 3, 3, 1]}


@pytest.mark.parametrize("argv", [
    ["parse", "trefoil.pd"],
    ["lk", "borromean.pd"],
    ["wirtinger", "figure8.pd"],
    ["surgery", "borromean.pd", "--components", "1,2"],
    ["alex", "borromean.pd", "--component", "2"],
    ["conway", "borromean.pd"],
    ["arf", "stevedore.pd"],
    ["torres", "hopf.pd"],
    ["milnor", "borromean.pd", "--upto", "3"],
    ["bing", "--index", "123"],
    ["satellite", "hopf.pd", "--pattern", "cable:2"],
    ["satellite", "borromean_bing.pd", "--axis", "3,1", "--companion", "trefoil.pd"],
    ["repsearch", "hopf.pd", "--p", "3"],
    ["repsearch", "fig4.fpg", "--word", "eta_prime"],
    ["rho", "--seifert", "trefoil_seifert.csv"],
    ["nj", "--R", "4", "--count", "3"],
])
def test_every_command_matches_schema(argv):
    validated(*argv)


def test_output_is_deterministic():
    a = call("repsearch", "figure8.pd", "--p", "5")
    b = call("repsearch", "figure8.pd", "--p", "5", "--workers", "2")
    assert a[1] == b[1]


def test_values():
    assert validated("conway", "trefoil.pd")["conway"] == [1, 0, 1]
    assert validated("arf", "trefoil.pd")["arf"] == 1
    assert validated("lk", "hopf.pd")["linking_matrix"] == [[0, -1], [-1, 0]]
    assert validated("nj", "--R", "4", "--count", "3")["N"] == [4, 8, 12]
    assert abs(abs(validated("rho", "--seifert", "trefoil_seifert.csv")["rho"]) - 4 / 3) < 1e-9


def test_writes_files(tmp_path):
    out = tmp_path / "b.pd"
    validated("bing", "--index", "123", "--out", str(out))
    assert validated("milnor", str(out), "--index", "123")["value"] == 1
    fpg = tmp_path / "s.fpg"
    validated("surgery", "hopf.pd", "--out", str(fpg))
    assert fpg.read_text().startswith("generators")


def test_exit_codes(tmp_path):
    assert call("nonsense")[0] == 2
    assert call("tree")[0] == 2
    assert call("lk", "no_such_file.pd")[0] == 1
    bad = tmp_path / "bad.pd"
    bad.write_text("X(1,2,3)\n")
    assert call("lk", str(bad))[0] == 1
    assert call("arf", "hopf.pd")[0] == 1
    assert call("milnor", "hopf.pd", "--index", "19")[0] == 1


def test_fixture_env_override(tmp_path, monkeypatch):
    (tmp_path / "only.pd").write_text("X(4,1,3,2)\nX(2,3,1,4)\ncomponent 1 basepoint 1\ncomponent 2 basepoint 3\n")
    monkeypatch.setenv("LINKFORGE_FIXTURES", str(tmp_path))
    assert validated("lk", "only.pd")["linking_matrix"] == [[0, -1], [-1, 0]]
    assert call("lk", "trefoil.pd")[0] == 1


def test_run_report(tmp_path):
    rep = tmp_path / "report.json"
    code, data, _ = call("--report", str(rep), "lk", "hopf.pd")
    assert code == 0
    report = json.loads(rep.read_text())
    assert report["command"] == "lk" and report["outputs"] == data
    assert len(report["inputs"]) == 1 and len(report["inputs"][0]["sha256"]) == 64
    assert report["wall_time"] >= 0
