import itertools

import pytest

from fusion_obstruct.alperin import AlperinModule, onan_check, run_all
from fusion_obstruct.obstruction import check_verdict, rplus_set

NS = [2, 3, 4, 5, 6]


def brute_fixed_count(alp, words):
    m = alp.module
    auts = [alp.word(w) for w in words]
    return sum(1 for v in itertools.product(range(m.modulus), repeat=3) if all(a.apply(v) == v for a in auts))


@pytest.mark.parametrize("n", [2, 3])
def test_centralizers_by_enumeration(n):
    alp = AlperinModule(n)
    table = alp.centralizer_table()
    for name, words in alp.SUBGROUPS.items():
        assert table[name]["centralizer_order"] == brute_fixed_count(alp, words)


@pytest.mark.parametrize("n", NS)
def test_closed_forms(n):
    alp = AlperinModule(n)
    assert all(alp.relations().values())
    for name, row in alp.centralizer_table().items():
        assert row["centralizer_ok"], name
        assert row["commutator_ok"] is not False, name


@pytest.mark.parametrize("n", NS)
def test_weak_closure(n):
    wc = AlperinModule(n).weak_closure()
    assert wc["holds"] and wc["min_index"] >= 8


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_only_cyclic_s_survives_the_step(n):
    r = AlperinModule(n).fusion_step()
    assert r["meet_order"] == 4
    assert r["candidates"]["<s>"] == {"holds": True, "A_star_forced": True}
    assert not r["candidates"]["<s2,t>"]["holds"] and not r["candidates"]["<s2,st>"]["holds"]
    assert r["passed"]


@pytest.mark.parametrize("n", NS)
def test_wreath_quotient(n):
    r = onan_check(n)
    assert r["fixed_sigma"] == 2 and r["fixed_sigma2"] == 4 and r["passed"]
    assert AlperinModule(n).onan_quotient()["matches_sigma"]


@pytest.mark.parametrize("n", [2, 3])
def test_rplus_nonempty_with_s2_and_cyclic_s(n):
    alp = AlperinModule(n)
    r = alp.obstruction()
    assert r["rplus"] == "nonempty" and r["r"] == "nonempty"
    assert r["s2_with_cyclic_s_survives"] and r["b0"]
    ctx = alp.context()
    assert check_verdict(ctx, rplus_set(ctx))


def test_run_all_fast():
    r = run_all(NS)
    assert r["passed"] and r["seconds"] < 5


def test_rejects_small_n():
    with pytest.raises(ValueError):
        AlperinModule(1)
