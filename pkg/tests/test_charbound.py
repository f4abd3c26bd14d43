import json
import random
from fractions import Fraction

import pytest

from fusion_obstruct import charbound
from fusion_obstruct.abelian import HomocyclicModule, ModuleAut, jordan_count
from fusion_obstruct.charbound import BoundConfig, BoundError, bound, ceil_bound


def test_formula_examples():
    assert bound(BoundConfig("dihedral2q", 2, 5), 21, 1) == 8
    assert bound(BoundConfig("A4", 3), 13, 1) == 3
    b = bound(BoundConfig("twoA4", 3), 10, 0)
    assert b == Fraction(5, 2) and ceil_bound(b) == 3
    for kind, p, q in [("dihedral2q", 2, 5), ("A4", 3, None), ("twoA4", 3, None), ("nonabelian_pq", 2, 3)]:
        assert bound(BoundConfig(kind, p, q), 7, 7) == 0


@pytest.mark.parametrize("kind,p,q", [
    ("dihedral2q", 2, 7),   # 2 has order 3 mod 7
    ("dihedral2q", 3, 5),
    ("dihedral2q", 2, 9),
    ("A4", 2, None),
    ("nonabelian_pq", 3, 5),
    ("cyclic", 2, 3),
])
def test_config_validation(kind, p, q):
    with pytest.raises(BoundError):
        BoundConfig(kind, p, q)


def test_table_report_passes():
    r = charbound.table_report()
    assert r["passed"]
    rows = {(x["group"], x["p"]): x for x in r["rows"]}
    assert len(rows) == 13
    assert Fraction(rows[("M24", 2)]["min_bound"]) >= 8
    assert rows[("M24", 2)]["tau_classes"] == ["2a", "2b"]
    assert rows[("M24", 3)]["min_bound"] == "6"
    assert rows[("2M12", 3)]["min_bound"] == "5/2"
    assert rows[("M11", 3)]["conditional"]


def test_every_entry_passes_integrality():
    for row in charbound.load_table():
        for e in row.entries:
            assert not charbound.consistency_problems(row, e), (row.group, e.module_label)
            assert e.source_note


def _write(tmp_path, data):
    path = tmp_path / "chars.json"
    path.write_text(json.dumps(data))
    return path


def _data():
    return json.loads(charbound.default_table_path().read_text())


def test_bad_value_is_caught(tmp_path):
    data = _data()
    entry = next(e for e in data["characters"] if e["group"] == "M22" and e["p"] == 2)
    entry["value"] = "1"  # 34 + 4 = 38 is not divisible by 5
    r = charbound.table_report(charbound.load_table(_write(tmp_path, data)))
    assert not r["passed"]


def test_raised_threshold_fails(tmp_path):
    data = _data()
    row = next(r for r in data["rows"] if r["group"] == "M12" and r["p"] == 3)
    row["threshold"] = "4"
    r = charbound.table_report(charbound.load_table(_write(tmp_path, data)))
    assert not r["passed"]
    bad = [x for x in r["rows"] if not x["ok"]]
    assert [(x["group"], x["p"]) for x in bad] == [("M12", 3)]


def test_empty_or_incomplete_data(tmp_path):
    with pytest.raises(BoundError, match="rows, characters"):
        charbound.load_table(_write(tmp_path, {}))
    data = _data()
    data["characters"] = [e for e in data["characters"] if e["group"] != "M23"]
    with pytest.raises(BoundError, match="M23"):
        charbound.table_report(charbound.load_table(_write(tmp_path, data)))
    data = _data()
    del data["rows"][0]["threshold"]
    with pytest.raises(BoundError, match="threshold"):
        charbound.load_table(_write(tmp_path, data))


def test_d10_oracle_is_tight():
    r = charbound.oracle_check(charbound.d10_module())
    assert r["bound"] == 2 and r["jordan"] == 2 and r["tight"]


@pytest.mark.parametrize("make", [charbound.d10_module, charbound.s3_module, charbound.a4_module,
                                  charbound.sl23_module])
def test_oracle_sound_on_sums_and_regular(make):
    mod = make()
    assert charbound.oracle_check(mod)["sound"]
    assert charbound.oracle_check(charbound.regular_module(mod))["sound"]
    padded = charbound.direct_sum([mod, charbound.trivial_module(mod, 2)])
    assert charbound.oracle_check(padded)["bound"] == charbound.oracle_check(mod)["bound"]
    twice = charbound.direct_sum([mod, mod])
    assert charbound.oracle_check(twice)["bound"] == 2 * charbound.oracle_check(mod)["bound"]


def test_character_values_are_basis_free():
    rng = random.Random(2)
    mod = charbound.d10_module()
    while True:
        g = tuple(tuple(rng.randrange(2) for _ in range(4)) for _ in range(4))
        try:
            conj = charbound.conjugate(mod, g)
            break
        except ValueError:
            continue
    assert charbound.brauer_from_matrices(conj) == charbound.brauer_from_matrices(mod)


def test_trivial_module_gives_zero():
    mod = charbound.trivial_module(charbound.d10_module(), 3)
    one, val = charbound.brauer_from_matrices(mod)
    assert bound(BoundConfig("dihedral2q", 2, 5), one, val) == 0
    assert jordan_count(ModuleAut(HomocyclicModule(2, 1, 3), mod.x)) == 0


def test_wrong_subgroup_type_rejected():
    mod = charbound.d10_module()
    bad = charbound.SmallModule("wrong", 2, mod.x, mod.x, "dihedral2q", 5)
    with pytest.raises(BoundError):
        charbound.oracle_check(bad)
