"""Permutation-module extensions for a group with a central p-subgroup.

Start from the permutation module ``Vbar = (Z/p^k)[G/H]`` and cut out

* ``V2 = C_Vbar(Z)``,
* ``V`` with ``V/V2 = C_{Vbar/V2}(G)``,
* ``V0 = C_V(G)`` and ``V1 = [G, V2] + V0``.

Then ``G`` is trivial on ``V0`` and ``V/V1``, and ``Z`` is trivial on ``V1``
and ``V/V0``. When ``p`` divides ``|G/HZ|`` there is a smaller faithful piece
``V'`` with ``V/V1 = V2/V1 x V'/V1``.
"""
from __future__ import annotations

import itertools
import json
from collections.abc import Sequence
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .abelian import HomocyclicModule, ModuleAut, ModuleError, Subgroup, fixed_subgroup, log_p, quotient_module
from .groups import FiniteGroup, matrix_mul_mod


@dataclass
class GroupData:
    group: FiniteGroup
    center: list[int]
    subgroup: list[int]
    p: int
    k: int
    name: str = ""


def load_group(path: str | Path | None = None) -> GroupData:
    """Read a group description (matrices over Z/m with generators for Z and H)."""
    src = Path(path) if path is not None else resources.files("fusion_obstruct") / "data" / "sl2_3.json"
    data = json.loads(src.read_text())
    m = int(data["modulus"])
    mul = matrix_mul_mod(m)

    def mat(x):
        return tuple(tuple(int(v) % m for v in row) for row in x)

    gens = [mat(g) for g in data["generators"]]
    n = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    grp = FiniteGroup.closure(gens, mul, ident)
    try:
        center = sorted(grp.subgroup_closure(grp.index[mat(g)] for g in data["center"]))
        sub = sorted(grp.subgroup_closure(grp.index[mat(g)] for g in data["subgroup"]))
    except KeyError:
        raise ModuleError("center or subgroup generator is not in the group") from None
    return GroupData(grp, center, sub, int(data["p"]), int(data.get("k", 1)), data.get("name", ""))


@dataclass
class Extension:
    data: GroupData
    module: HomocyclicModule
    action: list[ModuleAut]
    v_bar: Subgroup
    v2: Subgroup
    v: Subgroup
    v0: Subgroup
    v1: Subgroup
    v_prime: Subgroup | None

    def commutator(self, elems: Sequence[int], sub: Subgroup) -> Subgroup:
        gens = [self.action[g].commutator(x) for g in elems for x in sub.rows]
        return self.module.span(gens)

    def trivial_on(self, elems: Sequence[int], lower: Subgroup, upper: Subgroup) -> bool:
        """Whether ``elems`` act trivially on ``upper / lower``."""
        return self.commutator(elems, upper) <= lower

    def faithful_on(self, sub: Subgroup) -> bool:
        return all(any(self.action[g].commutator(x) != self.module.zero() for x in sub.rows)
                   for g in range(1, self.data.group.order))

    def layer_checks(self, top: Subgroup | None = None) -> dict:
        top = top or self.v
        grp = list(range(self.data.group.order))
        z = self.data.center
        zero = self.module.trivial()
        return {
            "faithful": self.faithful_on(top),
            "G_trivial_on_V0": self.trivial_on(grp, zero, self.v0),
            "G_trivial_on_V_mod_V1": self.trivial_on(grp, self.v1, top),
            "Z_trivial_on_V1": self.trivial_on(z, zero, self.v1),
            "Z_trivial_on_V_mod_V0": self.trivial_on(z, self.v0, top),
            "Z_G_V_vanishes": self.commutator(z, self.commutator(grp, top)).order == 1,
            "G_Z_V_vanishes": self.commutator(grp, self.commutator(z, top)).order == 1,
            "chain": zero.order < self.v0.order and self.v0 <= self.v1 and self.v1 <= top,
        }


def permutation_action(data: GroupData) -> tuple[list[tuple[int, ...]], list[list[int]]]:
    """Cosets ``gH`` and, for every group element, its permutation of them."""
    grp = data.group
    t = grp.table
    cosets: list[frozenset[int]] = []
    where: dict[int, int] = {}
    for g in range(grp.order):
        if g not in where:
            c = frozenset(t[g][h] for h in data.subgroup)
            for x in c:
                where[x] = len(cosets)
            cosets.append(c)
    reps = [min(c) for c in cosets]
    perms = [[where[t[g][r]] for r in reps] for g in range(grp.order)]
    return [tuple(sorted(c)) for c in cosets], perms


def core_is_trivial(data: GroupData) -> bool:
    grp = data.group
    inv = grp.inverses
    t = grp.table
    core = set(data.subgroup)
    for g in range(grp.order):
        core &= {t[t[g][h]][inv[g]] for h in data.subgroup}
    return core == {0}


def p_residual_is_whole(data: GroupData) -> bool:
    """Whether the elements of order prime to ``p`` generate ``G``."""
    grp = data.group
    gens = [i for i in range(grp.order) if grp.orders[i] % data.p]
    return len(grp.subgroup_closure(gens)) == grp.order


def build_extension(data: GroupData) -> Extension:
    grp = data.group
    p, k = data.p, data.k
    if not set(data.center) <= {i for i in range(grp.order) if all(grp.commute(i, j) for j in range(grp.order))}:
        raise ModuleError("Z is not central")
    try:
        log_p(len(data.center), p)
    except ValueError:
        raise ModuleError("Z is not a p-group") from None
    if not core_is_trivial(data):
        raise ModuleError("H contains a nontrivial normal subgroup of G")
    if not p_residual_is_whole(data):
        raise ModuleError("G is not generated by its elements of order prime to p")
    _, perms = permutation_action(data)
    n = len(perms[0])
    module = HomocyclicModule(p, k, n)
    action = [ModuleAut(module, tuple(tuple(int(perm[j] == i) for j in range(n)) for i in range(n)))
              for perm in perms]
    whole = module.whole()
    v2 = fixed_subgroup(module, [action[z] for z in data.center])
    v = whole
    for g in range(grp.order):
        v = v & action[g].preimage(v2)
    v0 = fixed_subgroup(module, action) & v
    ext = Extension(data, module, action, whole, v2, v, v0, v0, None)
    ext.v1 = ext.commutator(range(grp.order), v2) + v0
    hz = len(grp.subgroup_closure(data.subgroup + data.center))
    if (grp.order // hz) % p == 0 and ext.v1 != v2:
        ext.v_prime = complement(module, v, v2, ext.v1)
    return ext


def complement(module: HomocyclicModule, whole: Subgroup, sub: Subgroup, base: Subgroup) -> Subgroup:
    """``W`` with ``base <= W``, ``W + sub = whole`` and ``W & sub = base``."""
    w = base
    for g in whole.rows:
        if not (w + sub).contains(g):
            w = w + module.span([g])
    if (w + sub) != whole or (w & sub) != base:
        raise ModuleError("no complement found by the greedy choice")
    return w


# -- the final check of situation (b) ------------------------------------------------------------


def section_commutator_rank(ext: Extension, g: int, lower: Subgroup, upper: Subgroup) -> int:
    """``log_p |[g, upper/lower]|``."""
    comm = ext.commutator([g], upper) + lower
    return log_p(comm.order // lower.order, ext.module.p)


def is_simple_section(ext: Extension, lower: Subgroup, upper: Subgroup) -> bool:
    """Every nonzero vector of ``upper/lower`` generates it (brute force, elementary modules only)."""
    m = ext.module
    if not m.is_elementary:
        raise ModuleError("simplicity check needs an elementary abelian module")
    from .obstruction import elements_of

    gens = range(ext.data.group.order)
    for x in elements_of(upper):
        if lower.contains(x):
            continue
        span = lower + m.span([x])
        while True:
            nxt = span + ext.commutator(gens, span)
            if nxt == span:
                break
            span = nxt
        if span != upper:
            return False
    return True


def is_indecomposable(ext: Extension, top: Subgroup, limit: int = 1 << 16) -> bool:
    """No nontrivial idempotent commutes with the group on ``top`` (elementary modules, brute force)."""
    m = ext.module
    if not m.is_elementary:
        raise ModuleError("indecomposability check needs an elementary abelian module")
    basis = list(top.rows)
    d = len(basis)
    p = m.p
    q = quotient_module(m.trivial(), top, basis)
    grp = ext.data.group
    mats = [q.induced(ext.action[grp.index[g]]).matrix for g in grp.generators]
    mul = matrix_mul_mod(p)
    # solve X g = g X as a linear system over F_p in the d*d entries of X
    rows = []
    for g in mats:
        for i in range(d):
            for j in range(d):
                coeff = [0] * (d * d)
                for l in range(d):
                    coeff[i * d + l] += g[l][j]
                    coeff[l * d + j] -= g[i][l]
                rows.append(coeff)
    sol = _nullspace(rows, d * d, p)
    if p ** len(sol) > limit:
        raise ModuleError("endomorphism ring too large for brute force")
    ident = tuple(tuple(int(i == j) for j in range(d)) for i in range(d))
    zero = tuple((0,) * d for _ in range(d))
    for coeffs in itertools.product(range(p), repeat=len(sol)):
        flat = [sum(c * v[t] for c, v in zip(coeffs, sol)) % p for t in range(d * d)]
        x = tuple(tuple(flat[i * d:(i + 1) * d]) for i in range(d))
        if x not in (zero, ident) and mul(x, x) == x:
            return False
    return True


def _nullspace(rows, n: int, p: int) -> list[list[int]]:
    if not rows:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    from .abelian import _suffix_kernel

    mod = HomocyclicModule(p, 1, n)
    cols = list(zip(*rows))
    aug = [tuple(c % p for c in col) + mod.basis_vector(j) for j, col in enumerate(cols)]
    ker = _suffix_kernel(mod, aug)
    return [list(r) for r in ker.rows]


def situation_b(ext: Extension, top: Subgroup | None = None) -> dict:
    """Layer conditions, simplicity of ``V1/V0`` and indecomposability of the top module."""
    top = top or ext.v
    layers = ext.layer_checks(top)
    out = dict(layers)
    out["V1_over_V0_simple"] = is_simple_section(ext, ext.v0, ext.v1)
    out["V1_indecomposable"] = is_indecomposable(ext, ext.v1)
    out["V_over_V0_indecomposable"] = _quotient_indecomposable(ext, ext.v0, top)
    out["V_indecomposable"] = is_indecomposable(ext, top)
    out["holds"] = all(out.values())
    return out


def _quotient_indecomposable(ext: Extension, lower: Subgroup, upper: Subgroup) -> bool:
    q = quotient_module(lower, upper)
    induced = [q.induced(a) for a in ext.action]
    sub = Extension(ext.data, q.module, induced, q.module.whole(), q.module.whole(), q.module.whole(),
                    q.module.trivial(), q.module.trivial(), None)
    return is_indecomposable(sub, q.module.whole())


def final_statement(ext: Extension, top: Subgroup | None = None) -> dict:
    """For ``g`` outside ``Z``: at most one ``h`` in ``gZ`` has ``rk[h, V1/V0] = rk[h, V]``."""
    top = top or ext.v
    grp = ext.data.group
    t = grp.table
    z = set(ext.data.center)
    per_g = []
    ok = True
    for g in range(grp.order):
        if g in z:
            continue
        coset = sorted({t[g][c] for c in z})
        equal = [h for h in coset
                 if section_commutator_rank(ext, h, ext.v0, ext.v1) == section_commutator_rank(ext, h, ext.module.trivial(), top)]
        ok &= len(equal) <= 1
        per_g.append({"g": g, "order": grp.orders[g], "coset": coset, "equal_rank": equal})
    involutions = []
    if ext.module.p == 2:
        for g in range(grp.order):
            if g not in z and grp.orders[g] == 2:
                coset = [h for h in {t[g][c] for c in z} if grp.orders[h] == 2]
                bigger = [h for h in coset
                          if section_commutator_rank(ext, h, ext.module.trivial(), top)
                          > section_commutator_rank(ext, h, ext.v0, ext.v1)]
                involutions.append({"g": g, "larger_on_V": bigger})
    return {"holds": ok, "elements_checked": len(per_g), "cosets": per_g, "involution_witnesses": involutions}


def pgext_report(data: GroupData | None = None) -> dict:
    data = data or load_group()
    ext = build_extension(data)
    rk = lambda s: s.log_order  # noqa: E731
    out = {
        "group": data.name,
        "group_order": data.group.order,
        "dims": {"Vbar": rk(ext.v_bar), "V2": rk(ext.v2), "V": rk(ext.v), "V0": rk(ext.v0), "V1": rk(ext.v1),
                 "V_prime": rk(ext.v_prime) if ext.v_prime is not None else None},
        "layers": ext.layer_checks(),
        "situation_b": situation_b(ext),
        "final_statement": final_statement(ext),
    }
    ok = all(out["layers"].values()) and out["final_statement"]["holds"]
    if ext.v_prime is not None:
        out["layers_V_prime"] = ext.layer_checks(ext.v_prime)
        out["situation_b_V_prime"] = situation_b(ext, ext.v_prime)
        out["final_statement_V_prime"] = final_statement(ext, ext.v_prime)
        ok &= all(out["layers_V_prime"].values()) and out["final_statement_V_prime"]["holds"]
    out["passed"] = ok
    return out
