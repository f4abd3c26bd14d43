"""The six-dimensional hermitian F_4-module of 3M22 and its 22 isotropic 3-spaces.

Vectors of ``A = F_4^6`` are written ``(u; v)`` with ``u, v`` in ``V = F_4^3``.
The form is ``<(u;v), (x;y)> = u^t conj(y) + v^t conj(x)``. For obstruction
work ``A`` is viewed as ``F_2^12`` through ``gf4.to_bits``.
"""
from __future__ import annotations

import itertools
import time
from collections.abc import Sequence
from functools import cached_property

from . import gf4
from .abelian import HomocyclicModule, ModuleAut, Subgroup
from .groups import FiniteGroup, perm_mul
from .obstruction import ObstructionContext

W, WB = gf4.W, gf4.WBAR
I3 = gf4.identity(3)
Z3 = gf4.zero(3)

U_VECTORS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, W, WB), (1, WB, W)]

M_BASE = {
    (1, 0): gf4.mat([[0, 0, 0], [0, 1, 0], [0, 0, 1]]),
    (2, 0): gf4.mat([[1, 0, 0], [0, 0, 0], [0, 0, 1]]),
    (0, 1): gf4.mat([[0, 1, 1], [1, 0, 1], [1, 1, 0]]),
    (0, 2): gf4.mat([[0, W, WB], [WB, 0, W], [W, WB, 0]]),
}

D_MATRICES = [
    gf4.mat([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
    gf4.mat([[1, 0, 0], [1, 0, 1], [1, 1, 0]]),
    gf4.mat([[0, 1, 1], [1, 0, 1], [0, 0, 1]]),
    gf4.mat([[1, 0, 0], [0, W, 0], [0, 0, WB]]),
]

# Expected permutations of the six points <u_1>, ..., <u_6> (1-based cycles).
D_PERMUTATIONS = [[(2, 3), (5, 6)], [(1, 4), (2, 3)], [(1, 2), (3, 4)], [(4, 5, 6)]]


def b_vector(i: int, j: int) -> tuple[int, ...]:
    """``b_ij`` has ``w^j`` in place ``i`` and ``1`` elsewhere."""
    return tuple(gf4.power_of_w(j) if k == i else 1 for k in (1, 2, 3))


B_VECTORS = {(i, j): b_vector(i, j) for i in (1, 2, 3) for j in (1, 2)}


def hform(v: Sequence[int], w: Sequence[int]) -> int:
    """``conj(v)^t w`` on ``V``."""
    return gf4.dot(gf4.vconj(v), w)


def form(a: Sequence[int], b: Sequence[int]) -> int:
    u, v, x, y = a[:3], a[3:], b[:3], b[3:]
    return gf4.dot(u, gf4.vconj(y)) ^ gf4.dot(v, gf4.vconj(x))


def m_matrix(i: int, j: int) -> gf4.Mat:
    out = Z3
    if i:
        out = gf4.madd(out, M_BASE[(i, 0)] if i < 3 else gf4.madd(M_BASE[(1, 0)], M_BASE[(2, 0)]))
    if j:
        out = gf4.madd(out, M_BASE[(0, j)] if j < 3 else gf4.madd(M_BASE[(0, 1)], M_BASE[(0, 2)]))
    return out


def n_matrix(i: int, j: int) -> gf4.Mat:
    return gf4.madd(I3, m_matrix(i, j))


def phi(m: gf4.Mat) -> gf4.Mat:
    """``(u; v) -> (u + M v; v)``."""
    return gf4.block(I3, m, Z3, I3)


def psi(d: gf4.Mat) -> gf4.Mat:
    """``(u; v) -> (D u; conj(D)^{-t} v)``."""
    return gf4.block(d, Z3, Z3, gf4.transpose(gf4.minv(gf4.mconj(d))))


def mu(i: int, j: int) -> gf4.Mat:
    return phi(m_matrix(i, j))


def delta(i: int) -> gf4.Mat:
    return psi(D_MATRICES[i])


def one_spaces(n: int = 3) -> list[tuple[int, ...]]:
    """Normalized representatives (first nonzero entry 1) of the 1-spaces of ``F_4^n``."""
    out = []
    for v in itertools.product(range(4), repeat=n):
        nz = [x for x in v if x]
        if nz and nz[0] == 1:
            out.append(v)
    return out


def normalize(v: Sequence[int]) -> tuple[int, ...]:
    lead = next(x for x in v if x)
    return gf4.vscale(gf4.inv(lead), v)


def orthogonality_duality() -> dict:
    """The 1-spaces meeting every ``b_ij`` non-orthogonally are exactly the ``<u_i>``, and conversely."""
    spaces = one_spaces()
    u_set = {normalize(u) for u in U_VECTORS}
    b_set = {normalize(b) for b in B_VECTORS.values()}
    non_orth_b = {s for s in spaces if all(hform(b, s) for b in B_VECTORS.values())}
    non_orth_u = {s for s in spaces if all(hform(u, s) for u in U_VECTORS)}
    outer = all(gf4.mmul(gf4.transpose((gf4.vconj(u),)), (u,)) == n for u, n in
                zip(U_VECTORS, [n_matrix(1, 0), n_matrix(2, 0), n_matrix(3, 0),
                                n_matrix(0, 1), n_matrix(0, 2), n_matrix(0, 3)]))
    return {
        "one_spaces": len(spaces),
        "U_is_unique": non_orth_b == u_set,
        "B_is_unique": non_orth_u == b_set,
        "n_matrices_are_outer_products": outer,
        "passed": len(spaces) == 21 and non_orth_b == u_set and non_orth_u == b_set and outer,
    }


class ThreeM22Module:
    """Subspaces, group elements and checks for the hermitian module."""

    def __init__(self):
        self.module = HomocyclicModule(2, 1, 12)

    # -- subspaces ------------------------------------------------------------------

    def x_space(self, i: int, j: int) -> list[tuple[int, ...]]:
        n = n_matrix(i, j)
        return [gf4.mvec(n, e) + e for e in I3]

    def y_space(self, i: int, j: int) -> list[tuple[int, ...]]:
        b = B_VECTORS[(i, j)]
        proj = gf4.mmul(gf4.transpose((b,)), (gf4.vconj(b),))
        return [e + gf4.mvec(proj, e) for e in I3]

    def a0(self) -> list[tuple[int, ...]]:
        return [e + (0, 0, 0) for e in I3]

    @cached_property
    def named_spaces(self) -> dict[str, list[tuple[int, ...]]]:
        out = {}
        for i in range(4):
            for j in range(4):
                out[f"X{i}{j}"] = self.x_space(i, j)
        for i in (1, 2, 3):
            for j in (1, 2):
                out[f"Y{i}{j}"] = self.y_space(i, j)
        return out

    def f2_span(self, vecs: Sequence[Sequence[int]]) -> Subgroup:
        """F_2-span of the F_4-span of ``vecs``."""
        gens = []
        for v in vecs:
            gens.append(gf4.to_bits(v))
            gens.append(gf4.to_bits(gf4.vscale(W, v)))
        return self.module.span(self.module.from_bits(g) for g in gens)

    def mog(self) -> list[list[str]]:
        grid = [["-", "-", "X00", "X01", "X02", "X03"]]
        for i in (1, 2, 3):
            grid.append([f"Y{i}2", f"Y{i}1"] + [f"X{i}{j}" for j in range(4)])
        return grid

    def subspace_checks(self) -> dict:
        spaces = {k: self.f2_span(v) for k, v in self.named_spaces.items()}
        distinct = len(set(spaces.values())) == 22
        dims = all(s.log_order == 6 for s in spaces.values())
        isotropic = all(form(a, b) == 0 for v in self.named_spaces.values() for a in v for b in v)
        a0 = self.f2_span(self.a0())
        y_meet = True
        for (i, j), b in B_VECTORS.items():
            perp = [u for u in itertools.product(range(4), repeat=3) if hform(b, u) == 0]
            expected = self.f2_span([u + (0, 0, 0) for u in perp])
            y_meet &= (spaces[f"Y{i}{j}"] & a0) == expected
        mu_ok = True
        for (i, j) in itertools.product(range(4), repeat=2):
            g = mu(i, j)
            for (k, l) in itertools.product(range(4), repeat=2):
                img = self.f2_span([gf4.mvec(g, v) for v in self.named_spaces[f"X{k}{l}"]])
                mu_ok &= img == spaces[f"X{k ^ i}{l ^ j}"]
            for (k, l) in B_VECTORS:
                img = self.f2_span([gf4.mvec(g, v) for v in self.named_spaces[f"Y{k}{l}"]])
                mu_ok &= img == spaces[f"Y{k}{l}"]
        delta_ok = True
        lookup = {s: k for k, s in spaces.items()}
        for d in range(4):
            g = delta(d)
            for k, v in self.named_spaces.items():
                img = self.f2_span([gf4.mvec(g, x) for x in v])
                delta_ok &= img in lookup
        return {
            "count": len(spaces),
            "distinct": distinct,
            "three_dimensional": dims,
            "totally_isotropic": isotropic,
            "Y_meets_A0_in_b_perp": y_meet,
            "mu_translates_X_fixes_Y": mu_ok,
            "delta_permutes_the_22": delta_ok,
        }

    # -- groups -----------------------------------------------------------------------

    @cached_property
    def delta_group(self) -> FiniteGroup:
        return FiniteGroup.closure(D_MATRICES, gf4.mmul, I3)

    def u_permutation(self, d: gf4.Mat) -> tuple[int, ...]:
        reps = [normalize(u) for u in U_VECTORS]
        return tuple(reps.index(normalize(gf4.mvec(d, u))) for u in U_VECTORS)

    def delta_checks(self) -> dict:
        from .groups import perm_from_cycles, perm_cycle_type

        perms_ok = all(self.u_permutation(d) == perm_from_cycles(6, cyc, base=1)
                       for d, cyc in zip(D_MATRICES, D_PERMUTATIONS))
        grp = self.delta_group
        image = FiniteGroup.closure([self.u_permutation(d) for d in D_MATRICES], perm_mul, tuple(range(6)))
        even = all(_is_even(p) for p in image.elements)
        kernel = [g for g in grp.elements if self.u_permutation(g) == tuple(range(6))]
        scalars = {gf4.mat([[c if r == s else 0 for s in range(3)] for r in range(3)]) for c in (1, W, WB)}
        return {
            "delta_order": grp.order,
            "image_order": image.order,
            "image_is_even": even,
            "kernel_is_scalars": set(kernel) == scalars,
            "generator_permutations": perms_ok,
            "passed": grp.order == 1080 and image.order == 360 and even and set(kernel) == scalars and perms_ok,
        }

    def unitary(self, g: gf4.Mat) -> bool:
        e = gf4.identity(6)
        return all(form(gf4.mvec(g, a), gf4.mvec(g, b)) == form(a, b) for a in e for b in e)

    @cached_property
    def sylow_generators(self) -> dict[str, gf4.Mat]:
        return {
            "mu10": mu(1, 0), "mu20": mu(2, 0), "mu01": mu(0, 1), "mu02": mu(0, 2),
            "delta0": delta(0), "delta1": delta(1), "delta2": delta(2),
        }

    @cached_property
    def sylow_f4(self) -> FiniteGroup:
        return FiniteGroup.closure(self.sylow_generators.values(), gf4.mmul, gf4.identity(6))

    @cached_property
    def context(self) -> ObstructionContext:
        gens = {n: gf4.f2_matrix(g) for n, g in self.sylow_generators.items()}
        ctx = ObstructionContext.from_generators(self.module, gens)
        if ctx.group.order != self.sylow_f4.order:
            raise ValueError("F_2 view is not faithful")
        return ctx

    def aut(self, g: gf4.Mat) -> ModuleAut:
        return ModuleAut(self.module, gf4.f2_matrix(g))

    def named_subgroup(self, mats: Sequence[gf4.Mat]) -> tuple[int, ...]:
        ctx = self.context
        return ctx.find_subgroup(ctx.group.index[gf4.f2_matrix(g)] for g in mats)

    def p1(self) -> tuple[int, ...]:
        return self.named_subgroup([mu(1, 0), mu(2, 0), mu(0, 1), mu(0, 2)])

    def p2(self) -> tuple[int, ...]:
        return self.named_subgroup([mu(1, 0), mu(0, 1), delta(0), delta(1)])

    def sylow_structure(self) -> dict:
        """Rank-4 elementary abelian subgroups of T and the fixed spaces of ``mu10``, ``P1``, ``P2``."""
        ctx = self.context
        e = gf4.identity(6)
        m10 = self.aut(mu(1, 0))
        p1, p2 = self.p1(), self.p2()
        rank4 = sorted(s for s in ctx.subgroups if len(s) == 16)
        return {
            "sylow_order": ctx.group.order,
            "rank4_are_P1_P2": rank4 == sorted([p1, p2]),
            "no_rank5": all(len(s) <= 16 for s in ctx.subgroups),
            "fixed_mu10": m10.fixed == self.f2_span(e[:4]),
            "commutator_mu10": m10.image == self.f2_span(e[1:3]),
            "fixed_P1": ctx.centralizer(p1) == self.f2_span(e[:3]),
            "fixed_P2": ctx.centralizer(p2) == self.f2_span([gf4.vadd(e[1], e[2])]),
        }

    def unitarity(self) -> dict:
        t_ok = all(self.unitary(g) for g in self.sylow_f4.elements)
        p1 = [mu(i, j) for i in range(4) for j in range(4)]
        d_ok = all(self.unitary(psi(d)) for d in self.delta_group.elements)
        h0 = FiniteGroup.closure(p1 + [gf4.mat([[W if r == s else 0 for s in range(6)] for r in range(6)])],
                                 gf4.mmul, gf4.identity(6))
        return {
            "sylow_unitary": t_ok,
            "P1_and_psi_Delta_unitary": all(self.unitary(g) for g in p1) and d_ok,
            "H0_order": h0.order,
        }


def _is_even(p: Sequence[int]) -> bool:
    from .groups import perm_cycle_type

    return sum(c - 1 for c in perm_cycle_type(p)) % 2 == 0


def build_report() -> dict:
    t0 = time.perf_counter()
    mod = ThreeM22Module()
    out = {
        "b_and_u": orthogonality_duality(),
        "subspaces": mod.subspace_checks(),
        "mog": mod.mog(),
        "delta": mod.delta_checks(),
        "unitarity": mod.unitarity(),
        "sylow_structure": mod.sylow_structure(),
    }
    sub = out["subspaces"]
    out["passed"] = (
        out["b_and_u"]["passed"]
        and sub["count"] == 22 and all(v for k, v in sub.items() if k != "count")
        and out["delta"]["passed"]
        and out["unitarity"]["sylow_unitary"] and out["unitarity"]["P1_and_psi_Delta_unitary"]
        and out["unitarity"]["H0_order"] == 48
        and out["sylow_structure"]["sylow_order"] == 128
        and all(v for k, v in out["sylow_structure"].items() if k != "sylow_order")
    )
    out["seconds"] = time.perf_counter() - t0
    return out
