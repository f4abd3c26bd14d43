import json
from pathlib import Path

import jsonschema
import pytest

from fusion_obstruct import charbound
from fusion_obstruct.cli import main

ROOT = Path(__file__).resolve().parents[1]
SCHEMAS = ROOT / "docs" / "schemas"
DATA = ROOT / "src" / "fusion_obstruct" / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def test_golay_obstruct_prints_verdict(capsys):
    code, out, _ = run(capsys, "golay", "obstruct", "--n", "22")
    assert code == 0
    assert out.startswith("R+ empty: true")
    assert "feasible_pairs: 8" in out


def test_dual_obstruct_json(capsys):
    code, out, _ = run(capsys, "golay", "obstruct", "--n", "dual", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    jsonschema.validate(rep, schema("report"))
    assert rep["result"]["R+ empty"] is False
    assert rep["result"]["certificate"]["survivors"] == 15


def test_alperin_table_markdown(capsys):
    code, out, _ = run(capsys, "alperin", "--n", "3", "--table")
    assert code == 0
    assert "| H | centralizer_order |" in out
    assert "| <s2,t> | 4 |" in out


@pytest.mark.parametrize("argv", [
    ["golay", "build"], ["golay", "tables"], ["threem22", "build"], ["threem22", "obstruct"],
    ["alperin", "--n", "4", "--theorem"], ["alperin", "--n", "5", "--onan"], ["alperin", "--n", "2", "--obstruct"],
    ["charbound", "--oracle"], ["pgext"],
])
def test_commands_pass(capsys, argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0, out
    rep = json.loads(out)
    jsonschema.validate(rep, schema("report"))
    assert rep["passed"] and rep["mismatches"] == []


def test_output_is_deterministic(capsys):
    first = run(capsys, "golay", "obstruct", "--n", "23", "--format", "json")[1]
    second = run(capsys, "golay", "obstruct", "--n", "23", "--format", "json")[1]
    assert first == second
    assert "seconds" not in first
    timed = run(capsys, "golay", "build", "--timings", "--format", "json")[1]
    assert "seconds" in timed


def test_usage_errors(capsys):
    code, _, err = run(capsys, "golay", "obstruct", "--n", "24")
    assert code == 2 and "22" in err and "dual" in err
    assert run(capsys, "golay", "obstruct")[0] == 2
    assert run(capsys, "nosuch")[0] == 2
    assert run(capsys, "alperin", "--n", "1")[0] == 2
    assert run(capsys, "alperin", "--n", "2", "--theorem")[0] == 2
    assert run(capsys, "m12", "verify", "--gens", "/nonexistent.json")[0] == 2


def test_bad_json_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "m12", "verify", "--gens", str(bad))[0] == 2
    assert run(capsys, "pgext", "--group", str(bad))[0] == 2
    assert run(capsys, "charbound", "--char-data", str(bad))[0] == 2
    empty = tmp_path / "empty.json"
    empty.write_text("{}")
    code, _, err = run(capsys, "charbound", "--char-data", str(empty))
    assert code == 2 and "rows" in err


def test_m12_exit_codes(capsys, tmp_path):
    gens = DATA / "m12_generators.json"
    jsonschema.validate(json.loads(gens.read_text()), schema("permutation_generators"))
    assert run(capsys, "m12", "verify", "--gens", str(gens))[0] == 0
    data = json.loads(gens.read_text())
    data["generators"] = data["generators"][:2]
    small = tmp_path / "m11.json"
    small.write_text(json.dumps(data))
    assert run(capsys, "m12", "verify", "--gens", str(small))[0] == 1
    data["generators"] = [[[1, 2]], [list(range(1, 13))]]
    big = tmp_path / "s12.json"
    big.write_text(json.dumps(data))
    assert run(capsys, "m12", "verify", "--gens", str(big))[0] == 2


def test_charbound_mismatch_lists_cells(capsys, tmp_path):
    data = json.loads(charbound.default_table_path().read_text())
    jsonschema.validate(data, schema("character_data"))
    next(r for r in data["rows"] if r["group"] == "M12" and r["p"] == 3)["threshold"] = "4"
    path = tmp_path / "chars.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "charbound", "--char-data", str(path), "--format", "json")
    assert code == 1
    rep = json.loads(out)
    assert "rows[7].ok" in rep["mismatches"]


def test_group_file_schema_and_run(capsys):
    path = DATA / "sl2_3.json"
    jsonschema.validate(json.loads(path.read_text()), schema("group"))
    assert run(capsys, "pgext", "--group", str(path))[0] == 0


def test_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("FUSION_OBSTRUCT_CAP", "16")
    code, _, err = run(capsys, "golay", "obstruct", "--n", "22")
    assert code == 2 and "cap" in err
