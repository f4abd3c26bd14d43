"""End-to-end checks and seeded randomized property suites."""
from __future__ import annotations

import json
import random
import time
from collections.abc import Callable
from dataclasses import dataclass, field
from importlib import resources

from .abelian import (
    ConsistencyError,
    HomocyclicModule,
    ModuleAut,
    Subgroup,
    jordan_count,
    quotient_fixed_order,
)
from .obstruction import Candidate, brute_force_fixed_point, check_verdict, greatest_fixed_point, rplus_set


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    limit: float | None
    detail: dict = field(default_factory=dict)

    @property
    def within_time(self) -> bool:
        return self.limit is None or self.seconds < self.limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_time

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lim = f" (limit {self.limit:g} s)" if self.limit is not None else ""
        return f"{status} {self.name}: {self.seconds:.2f} s{lim}"


def timed(name: str, limit: float | None, fn: Callable[[], tuple[bool, dict]]) -> CheckResult:
    t0 = time.perf_counter()
    passed, detail = fn()
    return CheckResult(name, passed, time.perf_counter() - t0, limit, detail)


# -- random instances ------------------------------------------------------------------------


def random_module(rng: random.Random, primes=(2, 3, 5), max_e: int = 3, max_r: int = 4) -> HomocyclicModule:
    return HomocyclicModule(rng.choice(primes), rng.randint(1, max_e), rng.randint(1, max_r))


def random_aut(rng: random.Random, m: HomocyclicModule) -> ModuleAut:
    while True:
        mat = tuple(tuple(rng.randrange(m.modulus) for _ in range(m.r)) for _ in range(m.r))
        try:
            return ModuleAut(m, mat)
        except ValueError:
            continue


def random_element(rng: random.Random, sub: Subgroup) -> tuple[int, ...]:
    m = sub.module
    out = m.zero()
    for row in sub.rows:
        out = m.add(out, m.scale(rng.randrange(m.modulus), row))
    return out


def random_subgroup_of(rng: random.Random, sub: Subgroup) -> Subgroup:
    return sub.module.span(random_element(rng, sub) for _ in range(rng.randint(0, 3)))


def cyclic_submodule(aut: ModuleAut, v) -> Subgroup:
    m = aut.module
    gens = [m.element(v)]
    for _ in range(m.r * m.modulus):
        nxt = aut.apply(gens[-1])
        if nxt == gens[0]:
            break
        gens.append(nxt)
    return m.span(gens)


def random_unipotent(rng: random.Random, m: HomocyclicModule) -> tuple[ModuleAut, int]:
    """``P J P^-1`` for a random Jordan form ``J`` with blocks of size at most ``p``."""
    sizes = []
    left = m.r
    while left:
        s = rng.randint(1, min(m.p, left))
        sizes.append(s)
        left -= s
    j = [[int(i == k) for k in range(m.r)] for i in range(m.r)]
    off = 0
    for s in sizes:
        for i in range(s - 1):
            j[off + i][off + i + 1] = 1
        off += s
    jm = ModuleAut(m, tuple(map(tuple, j)))
    pm = random_aut(rng, m)
    return pm * jm * pm.inverse(), sum(1 for s in sizes if s >= 2)


def property_kernel_image(seed: int, cases: int = 1000) -> tuple[bool, dict]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        m = random_module(rng)
        a = random_aut(rng, m)
        bad += a.fixed.order * a.image.order != m.order
    return bad == 0, {"cases": cases, "failures": bad}


def property_b3(seed: int, cases: int = 1000) -> tuple[bool, dict]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        m = random_module(rng)
        a = random_aut(rng, m)
        sub = random_subgroup_of(rng, a.fixed)
        try:
            quotient_fixed_order(a, sub)
        except ConsistencyError:
            bad += 1
    return bad == 0, {"cases": cases, "failures": bad}


def property_quotient_fixed(seed: int, cases: int = 1000) -> tuple[bool, dict]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        m = random_module(rng)
        a = random_aut(rng, m)
        a0 = cyclic_submodule(a, random_element(rng, m.whole()))
        if not a.leaves_invariant(a0):
            bad += 1
            continue
        quot = a.preimage(a0).order // a0.order
        bad += quot > a.fixed.order
    return bad == 0, {"cases": cases, "failures": bad}


def property_jordan(seed: int, cases: int = 1000) -> tuple[bool, dict]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        m = random_module(rng, primes=(2, 3, 5), max_e=1, max_r=6)
        tau, blocks = random_unipotent(rng, m)
        try:
            bad += jordan_count(tau) != blocks
        except ConsistencyError:
            bad += 1
    return bad == 0, {"cases": cases, "failures": bad}


def random_pairs(rng: random.Random, max_pairs: int = 12) -> list[Candidate]:
    labels = list(range(1, rng.randint(3, 10)))
    n = rng.randint(1, max_pairs)
    out = []
    for _ in range(n):
        tau = rng.choice(labels)
        k = rng.randint(0, min(3, len(labels)))
        sup = tuple(sorted({0, *rng.sample(labels, k)}))
        out.append(Candidate(tau, sup, None))
    return out


def property_gfp(seed: int, cases: int = 100) -> tuple[bool, dict]:
    rng = random.Random(seed)
    bad = 0
    for _ in range(cases):
        pairs = random_pairs(rng)
        surv, _, _ = greatest_fixed_point(pairs)
        brute = brute_force_fixed_point(pairs)
        bad += sorted(map(id, surv)) != sorted(map(id, brute))
    return bad == 0, {"cases": cases, "failures": bad}


PROPERTY_SUITES = {
    "kernel-image identity": property_kernel_image,
    "quotient fixed-point formula": property_b3,
    "quotient centralizer inequality": property_quotient_fixed,
    "Jordan block identity": property_jordan,
    "fixed-point maximality": property_gfp,
}


# -- acceptance checks ---------------------------------------------------------------------------


def check_golay_build() -> tuple[bool, dict]:
    from .golay import build_golay

    r = build_golay()
    return r["matches_expected"] and r["named_words_in_hexacode"] and r["hexacode_size"] == 64, r


def check_golay_tables() -> tuple[bool, dict]:
    from .golay import commutator_tables

    r = commutator_tables()
    cells = len(r["commutator_table"]), len(r["t_h1_table"])
    return r["passed"] and cells == (49, 4), {"cells": cells, "bases": r["bases"]}


def check_hexad() -> tuple[bool, dict]:
    from .golay import sylow_structure

    r = sylow_structure(22)
    return r["passed"], r


def check_threem22_sylow() -> tuple[bool, dict]:
    from .threem22 import ThreeM22Module

    r = ThreeM22Module().sylow_structure()
    return r["sylow_order"] == 128 and all(v for k, v in r.items() if k != "sylow_order"), r


def _empty_with_certificate(ctx) -> tuple[bool, dict]:
    v = rplus_set(ctx)
    cert = v.certificate(ctx)
    return v.empty and check_verdict(ctx, v), cert


def check_obstruct_golay(n: int) -> tuple[bool, dict]:
    from .golay import GolaySection

    return _empty_with_certificate(GolaySection(n).context)


def check_obstruct_threem22() -> tuple[bool, dict]:
    from .threem22 import ThreeM22Module

    return _empty_with_certificate(ThreeM22Module().context)


def check_obstruct_dual() -> tuple[bool, dict]:
    from .golay import GolaySection

    ctx = GolaySection(22, dual=True).context
    v = rplus_set(ctx)
    return (not v.empty) and check_verdict(ctx, v), v.certificate(ctx)


def check_alperin() -> tuple[bool, dict]:
    from .alperin import run_all

    r = run_all((2, 3, 4, 5, 6))
    return r["passed"], {"seconds": r["seconds"]}


def check_threem22_report() -> tuple[bool, dict]:
    from .threem22 import build_report

    r = build_report()
    return r["passed"], {k: v for k, v in r.items() if k != "mog"}


def check_charbound() -> tuple[bool, dict]:
    from .charbound import d10_module, oracle_check, table_report

    t = table_report()
    o = oracle_check(d10_module())
    return t["passed"] and o["ceil"] == 2 and o["jordan"] == 2, {"rows": len(t["rows"]), "oracle": str(o)}


def check_m12() -> tuple[bool, dict]:
    from .groups import load_permutation_generators, verify_m12

    data = json.loads((resources.files("fusion_obstruct") / "data" / "m12_generators.json").read_text())
    r = verify_m12(load_permutation_generators(data))
    return r.passed, r.summary()


def check_properties(seed: int = 0) -> tuple[bool, dict]:
    out = {}
    ok = True
    for name, fn in PROPERTY_SUITES.items():
        passed, detail = fn(seed)
        out[name] = detail
        ok &= passed
    return ok, out


def check_pgext() -> tuple[bool, dict]:
    from .permutation_extension import pgext_report

    r = pgext_report()
    return r["passed"] and r["situation_b"]["holds"], {"dims": r["dims"]}


def acceptance_checks(seed: int = 0) -> list[tuple[str, float | None, Callable[[], tuple[bool, dict]]]]:
    return [
        ("1 Golay code dimension and weights", 1.0, check_golay_build),
        ("2 commutator tables", None, check_golay_tables),
        ("3a Golay Sylow subgroup and rank-4 subgroups", 10.0, check_hexad),
        ("3b 3M22 Sylow subgroup and rank-4 subgroups", 10.0, check_threem22_sylow),
        ("4a R+ empty for the 10-dimensional Golay section", 60.0, lambda: check_obstruct_golay(22)),
        ("4b R+ empty for the 11-dimensional Golay section", 60.0, lambda: check_obstruct_golay(23)),
        ("4c R+ empty for the 3M22 module", 60.0, check_obstruct_threem22),
        ("5 R+ nonempty for the dual section", 60.0, check_obstruct_dual),
        ("6 dihedral action and wreath checks, n = 2..6", 5.0, check_alperin),
        ("7 3M22 subspaces and groups", 30.0, check_threem22_report),
        ("8 character bounds", 1.0, check_charbound),
        ("9 M12 embeddings", 300.0, check_m12),
        ("10 property suites", None, lambda: check_properties(seed)),
        ("11 SL2(3) extension and final statement", 5.0, check_pgext),
    ]


def run_suite(seed: int = 0) -> list[CheckResult]:
    return [timed(name, limit, fn) for name, limit, fn in acceptance_checks(seed)]
