import itertools
import random

from fusion_obstruct import gf4
from fusion_obstruct.obstruction import check_verdict, rplus_set
from fusion_obstruct.threem22 import build_report, form, hform, orthogonality_duality, mu


def test_forms():
    for a, b in itertools.product(itertools.product(range(4), repeat=3), repeat=2):
        assert hform(a, b) == gf4.conj(hform(b, a))
    rng = random.Random(0)
    for _ in range(300):
        a = tuple(rng.randrange(4) for _ in range(6))
        b = tuple(rng.randrange(4) for _ in range(6))
        assert form(b, a) == gf4.conj(form(a, b))
        assert form(a, a) in (0, 1)
    e = gf4.identity(6)
    assert [form(e[0], x) for x in e] == [0, 0, 0, 1, 0, 0]


def test_b_and_u_duality():
    r = orthogonality_duality()
    assert r["one_spaces"] == 21 and r["passed"]


def test_subspaces(threem22):
    r = threem22.subspace_checks()
    assert r["count"] == 22
    assert all(v for k, v in r.items() if k != "count")


def test_delta_group(threem22):
    r = threem22.delta_checks()
    assert r["delta_order"] == 1080 and r["image_order"] == 360 and r["passed"]


def test_sylow_data(threem22):
    r = threem22.sylow_structure()
    assert r["sylow_order"] == 128
    assert r["rank4_are_P1_P2"] and r["no_rank5"]
    assert r["fixed_mu10"] and r["commutator_mu10"] and r["fixed_P1"] and r["fixed_P2"]


def test_unitarity(threem22):
    r = threem22.unitarity()
    assert r["sylow_unitary"] and r["P1_and_psi_Delta_unitary"] and r["H0_order"] == 48


def test_rplus_empty(threem22):
    ctx = threem22.context
    v = rplus_set(ctx)
    assert v.empty and not v.feasible
    assert check_verdict(ctx, v)


def test_mu10_pairs_need_large_b(threem22):
    ctx = threem22.context
    tau = ctx.group.index[gf4.f2_matrix(mu(1, 0))]
    for name, sub in (("P1", threem22.p1()), ("P2", threem22.p2())):
        c = ctx.joint_centralizer(tau, sub) + ctx.auts[tau].image
        # |A / (C + Im)| is the smallest |B| that would work; it exceeds |P_i| = 16
        assert ctx.module.order // c.order > len(sub)


def test_full_report():
    assert build_report()["passed"]
