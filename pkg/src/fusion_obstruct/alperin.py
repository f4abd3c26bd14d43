"""A dihedral group of order 8 acting on ``(Z/2^n)^3``, and the rank-2 wreath quotient.

Basis vectors ``v1, v2, v3`` are written additively, so ``v^-1`` is ``-v``.
The action tables describe ``v -> v^g`` as a right action, hence the matrix of
a product ``gh`` is ``M_h M_g``.
"""
from __future__ import annotations

import time
from collections.abc import Sequence

from .abelian import (
    HomocyclicModule,
    ModuleAut,
    Subgroup,
    commutator_subgroup,
    fixed_subgroup,
    quotient_module,
)
from .obstruction import ObstructionContext, b0_criterion, rplus_set, r_set


def _cols(*images: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*images))


# v^t and v^s for v = v1, v2, v3, as exponent vectors.
ACTION_TABLE = {
    "t": [(0, 0, -1), (0, -1, 0), (-1, 0, 0)],
    "s": [(0, 1, 0), (0, 0, 1), (1, -1, 1)],
    "s2": [(0, 0, 1), (1, -1, 1), (1, 0, 0)],
    "st": [(0, -1, 0), (-1, 0, 0), (-1, 1, -1)],
}


class AlperinModule:
    def __init__(self, n: int):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        self.module = HomocyclicModule(2, n, 3)
        self.eps = 2 ** (n - 1)
        self.dlt = 2 ** (n - 2)

    def aut(self, name: str) -> ModuleAut:
        return ModuleAut(self.module, _cols(*ACTION_TABLE[name]))

    def word(self, w: str) -> ModuleAut:
        """Matrix of ``v -> v^w`` for a word in ``s`` and ``t``."""
        out = ModuleAut.identity(self.module)
        for ch in w:
            out = self.aut(ch) * out
        return out

    def v(self, *coeffs: int) -> tuple[int, ...]:
        return self.module.element(coeffs)

    def span(self, *vecs: Sequence[int]) -> Subgroup:
        return self.module.span(vecs)

    def relations(self) -> dict:
        s, t = self.aut("s"), self.aut("t")
        ident = ModuleAut.identity(self.module)
        return {
            "t_squared": (t * t).is_identity(),
            "s_order_4": (s * s * s * s).is_identity() and not (s * s).is_identity(),
            "dihedral": (t * s * t) == s.inverse(),
            "s2_column_matches": self.word("ss") == self.aut("s2"),
            "st_column_matches": self.word("st") == self.aut("st"),
            "faithful": ident != s * s,
        }

    def context(self) -> ObstructionContext:
        return ObstructionContext.from_generators(
            self.module, {"c_s": self.aut("s").matrix, "c_t": self.aut("t").matrix})

    # subgroups H of T, by words for generators
    SUBGROUPS = {
        "<t>": ["t"],
        "<s2>": ["ss"],
        "<st>": ["st"],
        "<s>": ["s"],
        "<s2,t>": ["ss", "t"],
        "<s2,st>": ["ss", "st"],
    }

    def expected_table(self) -> dict[str, tuple[Subgroup, Subgroup | None]]:
        e, d, v, span = self.eps, self.dlt, self.v, self.span
        return {
            "<t>": (span(v(1, 0, -1), v(0, e, 0)), span(v(1, 0, 1), v(0, 2, 0))),
            "<s2>": (span(v(1, 0, 1), v(0, e, e)), span(v(1, 0, -1), v(2, -2, 0))),
            "<st>": (span(v(1, -1, 0), v(0, e, e)), span(v(1, 1, 0), v(0, 2, -2))),
            "<s>": (span(v(1, 0, 1)), span(v(1, -1, 0), v(0, 1, -1))),
            "<s2,t>": (span(v(d, e, -d)), None),
            "<s2,st>": (span(v(e, 0, e), v(0, e, e)), None),
        }

    def centralizer_table(self) -> dict:
        """Recompute ``C_A(H)`` and ``[H, A]`` and compare with the closed forms."""
        rows = {}
        for name, (cent, comm) in self.expected_table().items():
            auts = [self.word(w) for w in self.SUBGROUPS[name]]
            c = fixed_subgroup(self.module, auts)
            k = commutator_subgroup(self.module, auts)
            rows[name] = {
                "centralizer_order": c.order,
                "centralizer_ok": c == cent,
                "commutator_order": k.order,
                "commutator_ok": None if comm is None else k == comm,
            }
        return rows

    def weak_closure(self, elements: Sequence[ModuleAut] | None = None) -> dict:
        """Every nonidentity element has a fixed subgroup of index at least 8."""
        ctx = None
        if elements is None:
            ctx = self.context()
            elements = ctx.auts[1:]
        idx = [self.module.order // a.fixed.order for a in elements]
        return {"holds": min(idx) >= 8, "min_index": min(idx)}

    def fusion_step(self) -> dict:
        """The step that forces ``B = <c_s>`` and ``A* = C_A(s)`` for ``tau = c_{s^2}``."""
        tau = self.word("ss")
        cent, image = tau.fixed, tau.image
        v, span = self.v, self.span
        joined = cent + image
        out = {
            "meet_order": (cent & image).order,
            "commutator_ok": image == span(v(1, 0, -1), v(2, -2, 0)),
            "product_ok": joined == span(v(1, 0, 1), v(2, 0, 0), v(0, 2, 0)),
            "candidates": {},
        }
        for name in ("<s2,t>", "<s2,st>", "<s>"):
            auts = [self.word(w) for w in self.SUBGROUPS[name]]
            cb = fixed_subgroup(self.module, auts)
            holds = joined <= cb + image
            forced = None
            if holds:
                # A* must satisfy A* + [tau,A] = C_A(tau) + [tau,A]; test the maximal proper subgroup
                forced = (cb.scaled(2) + image) != joined
            out["candidates"][name] = {"holds": holds, "A_star_forced": forced}
        cands = out["candidates"]
        out["passed"] = (
            out["meet_order"] == 4 and out["commutator_ok"] and out["product_ok"]
            and not cands["<s2,t>"]["holds"] and not cands["<s2,st>"]["holds"]
            and cands["<s>"]["holds"] and cands["<s>"]["A_star_forced"] is True
            and fixed_subgroup(self.module, [self.aut("s")]) == span(v(1, 0, 1))
        )
        return out

    def onan_quotient(self) -> dict:
        """``A / <v1 v3>`` with the induced action of ``c_s`` is the rank-2 wreath module."""
        z = self.span(self.v(1, 0, 1))
        q = quotient_module(z, self.module.whole(), basis=[self.v(1, 0, 0), self.v(0, 1, 0)])
        induced = q.induced(self.aut("s"))
        sigma = onan_sigma(self.n)
        return {"quotient_rank": q.module.r, "quotient_exponent": q.module.e,
                "matches_sigma": induced.matrix == sigma.matrix}

    def obstruction(self) -> dict:
        ctx = self.context()
        vp = rplus_set(ctx)
        vr = r_set(ctx)
        tau = ctx.group.index[self.word("ss").matrix]
        cs = ctx.find_subgroup([ctx.group.index[self.aut("s").matrix]])
        return {
            "rplus": vp.status,
            "r": vr.status,
            "rplus_survivors": len(vp.survivors),
            "s2_with_cyclic_s_survives": (tau, cs) in vp.survivor_pairs(),
            "survivor_words": sorted({(ctx.word(c.tau), len(c.subgroup)) for c in vp.survivors}),
            "b0": b0_criterion(ctx).holds,
        }


def onan_sigma(n: int) -> ModuleAut:
    """``v -> w``, ``w -> v^-1`` on ``(Z/2^n)^2``."""
    return ModuleAut(HomocyclicModule(2, n, 2), _cols((0, 1), (-1, 0)))


def onan_check(n: int) -> dict:
    """Fixed points of the powers of ``sigma`` and the abelian-subgroup bound they give."""
    sig = onan_sigma(n)
    mod = sig.module
    sig2 = sig * sig
    c1, c2 = sig.fixed, sig2.fixed
    omega = mod.whole().scaled(2 ** (n - 1))
    bound = max(4 * c1.order, 2 * c2.order, 4 * (sig2 * sig).fixed.order)
    return {
        "n": n,
        "fixed_sigma": c1.order,
        "fixed_sigma2": c2.order,
        "fixed_sigma2_is_omega1": c2 == omega,
        "coset_indices": [mod.order // a.fixed.order for a in (sig, sig2, sig2 * sig)],
        "abelian_outside_bound": bound,
        "passed": c1.order == 2 and c2.order == 4 and c2 == omega and bound <= 8,
    }


def run_all(ns: Sequence[int] = (2, 3, 4, 5, 6)) -> dict:
    t0 = time.perf_counter()
    out = {}
    ok = True
    for n in ns:
        alp = AlperinModule(n)
        rel = alp.relations()
        table = alp.centralizer_table()
        wc = alp.weak_closure()
        row = {"relations": rel, "table": table, "weak_closure": wc, "onan": onan_check(n),
               "onan_quotient": alp.onan_quotient()}
        ok &= all(rel.values()) and wc["holds"] and row["onan"]["passed"] and row["onan_quotient"]["matches_sigma"]
        ok &= all(r["centralizer_ok"] and r["commutator_ok"] is not False for r in table.values())
        if n >= 3:
            row["fusion_step"] = alp.fusion_step()
            ok &= row["fusion_step"]["passed"]
        out[n] = row
    out["passed"] = ok
    out["seconds"] = time.perf_counter() - t0
    return out
