import dataclasses
import json

import pytest

from fusion_obstruct.abelian import HomocyclicModule, ModuleAut, ModuleError
from fusion_obstruct.permutation_extension import (
    build_extension,
    final_statement,
    is_indecomposable,
    is_simple_section,
    load_group,
    pgext_report,
    situation_b,
)


@pytest.fixture(scope="module")
def ext():
    return build_extension(load_group())


def test_dimensions(ext):
    r = pgext_report()
    assert r["group_order"] == 24
    assert r["dims"] == {"Vbar": 8, "V2": 4, "V": 5, "V0": 1, "V1": 3, "V_prime": 4}
    assert r["passed"]


def test_layers_and_chain(ext):
    assert all(ext.layer_checks().values())
    assert ext.v0 <= ext.v1 <= ext.v2 and ext.v1 <= ext.v <= ext.v_bar
    assert all(ext.layer_checks(ext.v_prime).values())


def test_situation_b(ext):
    assert situation_b(ext)["holds"]
    assert situation_b(ext, ext.v_prime)["holds"]
    assert is_simple_section(ext, ext.v0, ext.v1)


def test_final_statement_every_element(ext):
    r = final_statement(ext)
    assert r["holds"]
    assert r["elements_checked"] == 24 - 2
    assert all(len(c["equal_rank"]) <= 1 for c in r["cosets"])


def doubled(ext):
    """``V_bar + V_bar`` with the diagonal action."""
    n = ext.module.r
    m = HomocyclicModule(ext.module.p, 1, 2 * n)
    acts = []
    for a in ext.action:
        mat = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            for j in range(n):
                mat[i][j] = mat[n + i][n + j] = a.matrix[i][j]
        acts.append(ModuleAut(m, tuple(map(tuple, mat))))
    return dataclasses.replace(ext, module=m, action=acts, v_bar=m.whole()), m


def test_direct_sum_is_flagged(ext):
    assert is_indecomposable(ext, ext.v)
    two, m = doubled(ext)
    assert not is_indecomposable(two, m.whole())
    n = ext.module.r
    top = m.span([tuple(r) + (0,) * n for r in ext.v.rows] + [(0,) * n + tuple(r) for r in ext.v0.rows])
    assert not is_indecomposable(two, top)


def _write(tmp_path, **changes):
    data = json.loads(json.dumps({
        "name": "SL2(3)", "modulus": 3, "p": 2, "k": 1,
        "generators": [[[1, 1], [0, 1]], [[0, 2], [1, 0]]],
        "center": [[[2, 0], [0, 2]]],
        "subgroup": [[[1, 1], [0, 1]]],
    }))
    data.update(changes)
    path = tmp_path / "group.json"
    path.write_text(json.dumps(data))
    return path


def test_custom_file_round_trip(tmp_path):
    assert pgext_report(load_group(_write(tmp_path)))["passed"]


@pytest.mark.parametrize("changes", [
    {"center": [[[0, 2], [1, 0]]]},          # not central
    {"subgroup": [[[2, 0], [0, 2]]]},        # H contains the center, a normal subgroup
    {"center": [[[3, 3], [3, 3]]]},          # not in the group
])
def test_rejects_bad_group_data(tmp_path, changes):
    with pytest.raises(ModuleError):
        build_extension(load_group(_write(tmp_path, **changes)))
