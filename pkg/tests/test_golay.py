import pytest

from fusion_obstruct import golay
from fusion_obstruct.abelian import ModuleAut
from fusion_obstruct.obstruction import check_verdict, rplus_set


def test_hexacode():
    h = golay.hexacode()
    assert len(h) == 64
    assert sorted({sum(1 for x in w if x) for w in h}) == [0, 4, 6]


def test_weight_distribution():
    r = golay.build_golay()
    assert r["dimension"] == 12
    assert r["weight_distribution"] == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_code_by_brute_force_minimum_weight():
    code = golay.GolayCode()
    # minimum weight over the basis spans and no word of weight 4
    assert all(golay.weight(b) % 4 == 0 for b in code.basis)
    assert not code.contains(0b1111)


def test_tables():
    r = golay.commutator_tables()
    assert len(r["commutator_table"]) == 49 and len(r["t_h1_table"]) == 4
    bad = [c for c in r["commutator_table"] + r["t_h1_table"] if not c["ok"]]
    assert not bad
    assert r["passed"]


@pytest.mark.parametrize("n", [22, 23])
def test_sylow_and_rank_four_subgroups(n):
    r = golay.sylow_structure(n)
    assert r["permutation_order"] == 128 and r["matrix_order"] == 128
    assert r["rank4_subgroups"] == 2 and r["rank4_are_H1_H2"] and r["no_rank5"]
    assert r["passed"]


def test_sylow_preserves_code_and_avoids_points():
    for n in (22, 23):
        assert all(golay.GolaySection(n).preserves_code().values())


def test_section_dimensions(golay22, golay_dual):
    assert golay22.module.r == 10
    assert golay.GolaySection(23).module.r == 11
    assert golay_dual.module.r == 10


def test_dual_is_inverse_transpose(golay22, golay_dual):
    for name, g in golay22.perms.items():
        a = ModuleAut(golay22.module, golay22.matrix(g))
        d = golay_dual.matrix(g)
        expect = tuple(zip(*a.inverse().matrix))
        assert d == expect


@pytest.mark.parametrize("n", [22, 23])
def test_rplus_empty(n):
    ctx = golay.GolaySection(n).context
    v = rplus_set(ctx)
    assert v.empty and check_verdict(ctx, v)


def test_rplus_nonempty_for_dual(golay_dual):
    ctx = golay_dual.context
    v = rplus_set(ctx)
    assert not v.empty
    assert len(v.feasible) == 27 and len(v.survivors) == 15
    assert check_verdict(ctx, v)
