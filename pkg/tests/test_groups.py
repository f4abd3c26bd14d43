from itertools import combinations

import pytest

from fusion_obstruct import groups
from fusion_obstruct.groups import (
    CapExceeded,
    FiniteGroup,
    GroupError,
    abelian_invariants,
    abelian_subgroups,
    brute_force_elementary_abelian,
    elementary_abelian_subgroups,
    load_permutation_generators,
    perm_cycle_type,
    perm_from_cycles,
    perm_mul,
    perm_order,
    verify_m12,
)


def perm_group(n, *cycle_lists):
    gens = [perm_from_cycles(n, c, base=1) for c in cycle_lists]
    return FiniteGroup.closure(gens, perm_mul, tuple(range(n)))


S4 = ([[1, 2]], [[1, 2, 3, 4]])
D8 = ([[1, 2, 3, 4]], [[1, 3]])
A4 = ([[1, 2, 3]], [[2, 3, 4]])
C2_CUBED = ([[1, 2]], [[3, 4]], [[5, 6]])
# Q8 as a regular permutation group
Q8 = ([[1, 2, 3, 4], [5, 6, 7, 8]], [[1, 5, 3, 7], [2, 8, 4, 6]])


@pytest.mark.parametrize("gens,order", [(S4, 24), (D8, 8), (A4, 12), (C2_CUBED, 8), (Q8, 8)])
def test_closure_orders(gens, order):
    g = perm_group(8, *gens)
    assert g.order == order
    assert g.elements[0] == tuple(range(8))


def test_multiplication_table_matches_composition():
    g = perm_group(4, *S4)
    for i in range(g.order):
        for j in range(g.order):
            assert g.elements[g.table[i][j]] == perm_mul(g.elements[i], g.elements[j])
        assert g.table[i][g.inverses[i]] == 0


def test_perm_helpers():
    p = perm_from_cycles(6, [[1, 2, 3], [4, 5]], base=1)
    assert perm_cycle_type(p) == (3, 2, 1)
    assert perm_order(p) == 6


@pytest.mark.parametrize("gens,p,rank", [(S4, 2, 2), (D8, 2, 2), (A4, 2, 2), (A4, 3, 1), (C2_CUBED, 2, 3), (Q8, 2, 2)])
def test_elementary_abelian_matches_brute_force(gens, p, rank):
    g = perm_group(8, *gens)
    assert elementary_abelian_subgroups(g, p, rank) == brute_force_elementary_abelian(g, p, rank)


def _brute_abelian(g):
    found = set()
    for k in (1, 2, 3):
        for combo in combinations(range(1, g.order), k):
            if all(g.commute(a, b) for a, b in combinations(combo, 2)):
                found.add(g.subgroup_closure(combo))
    return sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))


@pytest.mark.parametrize("gens", [D8, Q8, C2_CUBED, A4])
def test_all_abelian_subgroups_match_brute_force(gens):
    g = perm_group(8, *gens)
    assert abelian_subgroups(g) == _brute_abelian(g)


def test_max_exponent_and_invariants():
    g = perm_group(4, *D8)
    subs = abelian_subgroups(g, max_exponent=2)
    assert all(max(g.orders[i] for i in s) <= 2 for s in subs)
    cyc = [s for s in abelian_subgroups(g) if len(s) == 4 and abelian_invariants(g, s, 2) == (4,)]
    assert len(cyc) == 1


def test_closure_cap_and_env(monkeypatch):
    with pytest.raises(CapExceeded):
        FiniteGroup.closure([perm_from_cycles(4, S4[0], 1), perm_from_cycles(4, S4[1], 1)], perm_mul,
                            tuple(range(4)), cap=10)
    monkeypatch.setenv(groups.CAP_ENV, "10")
    with pytest.raises(CapExceeded):
        perm_group(4, *S4)
    monkeypatch.setenv(groups.CAP_ENV, "not-a-number")
    with pytest.raises(GroupError):
        perm_group(4, *S4)
    monkeypatch.delenv(groups.CAP_ENV)
    assert perm_group(4, *S4).order == 24


def test_work_cap(monkeypatch):
    g = perm_group(6, *C2_CUBED)
    with pytest.raises(CapExceeded):
        abelian_subgroups(g, work_cap=3)
    monkeypatch.setenv(groups.CAP_ENV, "3")
    with pytest.raises(CapExceeded):
        abelian_subgroups(g)


def _m12_data():
    from importlib import resources
    import json

    return json.loads((resources.files("fusion_obstruct") / "data" / "m12_generators.json").read_text())


def test_m12_passes():
    rep = verify_m12(load_permutation_generators(_m12_data()))
    assert rep.passed
    assert rep.order == 95040
    assert sum(rep.involutions_by_fixed_points.values()) == 891
    assert rep.involutions_by_fixed_points == {0: 396, 4: 495}
    assert sum(rep.order3_by_fixed_points.values()) == 4400


def test_m12_wrong_generators_fail():
    data = _m12_data()
    # M11 alone: order 7920
    data["generators"] = data["generators"][:2]
    rep = verify_m12(load_permutation_generators(data))
    assert not rep.passed and rep.order == 7920
    # the full symmetric group is bigger than M12
    data["generators"] = [[[1, 2]], [[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]]]
    with pytest.raises(GroupError):
        verify_m12(load_permutation_generators(data))
    with pytest.raises(GroupError):
        verify_m12([tuple(range(11))])
