"""The hexacode, the binary Golay code on F_4 x {1..6}, and its Todd-type sections.

Points ``(c, i)`` with ``c`` in F_4 and ``i`` in 1..6 are numbered ``4(i-1) + c``.
A vector of F_2^24 is an int with one bit per point, and a permutation ``g``
acts by ``g(e_x) = e_{g(x)}``.
"""
from __future__ import annotations

import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property

from . import _gf2, gf4
from .abelian import HomocyclicModule, ModuleAut, Subgroup, commutator_subgroup, fixed_subgroup
from .groups import FiniteGroup, perm_mul
from .obstruction import ObstructionContext

W, WB = gf4.W, gf4.WBAR

HEXACODE_GENERATORS = [
    (W, WB, W, WB, W, WB),
    (WB, W, WB, W, W, WB),
    (WB, W, W, WB, WB, W),
    (W, WB, WB, W, WB, W),
]
H1 = (1, 1, 1, 1, 0, 0)
H2 = (1, 1, 0, 0, 1, 1)
H3 = (W, WB, 1, 0, 1, 0)

WEIGHT_DISTRIBUTION = {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def point(c: int, i: int) -> int:
    return 4 * (i - 1) + c


def hexacode() -> set[tuple[int, ...]]:
    return gf4.span(HEXACODE_GENERATORS)


def graph(xi: Sequence[int]) -> int:
    """``Gr(xi)``: one point in each column, at height ``xi(i)``."""
    return sum(1 << point(c, i) for i, c in enumerate(xi, start=1))


def column(*cols: int) -> int:
    """Sum of full columns, e.g. ``column(1, 2)`` is ``C_12``."""
    out = 0
    for i in cols:
        out ^= 0xF << (4 * (i - 1))
    return out


def gamma(h: Sequence[int]) -> int:
    return graph(h) ^ graph((0,) * 6)


def weight(v: int) -> int:
    return bin(v).count("1")


def support(v: int) -> list[tuple[str, int]]:
    return [(gf4.NAMES[x % 4], x // 4 + 1) for x in range(24) if v >> x & 1]


def golay_generators() -> list[int]:
    """``C_i + Gr(0)`` for each column, plus ``gamma_h`` over an F_2-basis of the hexacode."""
    gens = [column(i) ^ graph((0,) * 6) for i in range(1, 7)]
    hex_basis = []
    packed = []
    for h in HEXACODE_GENERATORS + [gf4.vscale(W, h) for h in HEXACODE_GENERATORS]:
        b = gf4.to_bits(h)
        if not _gf2.in_span(b, _gf2.rref(packed)):
            packed.append(b)
            hex_basis.append(h)
    gens += [gamma(h) for h in hex_basis]
    return _gf2.rref(gens)


@dataclass
class GolayCode:
    basis: list[int] = field(default_factory=golay_generators)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, v: int) -> bool:
        return _gf2.in_span(v, self.basis)

    def weight_distribution(self) -> dict[int, int]:
        dist: dict[int, int] = {}
        word = 0
        n = len(self.basis)
        dist[0] = 1
        for k in range(1, 1 << n):
            word ^= self.basis[(k & -k).bit_length() - 1]
            w = weight(word)
            dist[w] = dist.get(w, 0) + 1
        return dict(sorted(dist.items()))


def build_golay() -> dict:
    t0 = time.perf_counter()
    hexa = hexacode()
    code = GolayCode()
    dist = code.weight_distribution()
    return {
        "hexacode_size": len(hexa),
        "named_words_in_hexacode": all(h in hexa for h in (H1, H2, H3)),
        "dimension": code.dimension,
        "weight_distribution": dist,
        "matches_expected": code.dimension == 12 and dist == WEIGHT_DISTRIBUTION,
        "seconds": time.perf_counter() - t0,
    }


# -- permutations of the 24 points ----------------------------------------------------


def translation(h: Sequence[int]) -> tuple[int, ...]:
    """``t_h : (c, i) -> (c + h(i), i)``."""
    out = [0] * 24
    for i in range(1, 7):
        for c in range(4):
            out[point(c, i)] = point(c ^ h[i - 1], i)
    return tuple(out)


def swap_columns(i: int, j: int) -> tuple[int, ...]:
    out = list(range(24))
    for c in range(4):
        out[point(c, i)], out[point(c, j)] = point(c, j), point(c, i)
    return tuple(out)


def frobenius() -> tuple[int, ...]:
    """``(c, i) -> (conj c, i)``."""
    return tuple(point(gf4.conj(x % 4), x // 4 + 1) for x in range(24))


def act(g: Sequence[int], v: int) -> int:
    out = 0
    x = 0
    while v:
        if v & 1:
            out |= 1 << g[x]
        v >>= 1
        x += 1
    return out


def sylow_generators() -> dict[str, tuple[int, ...]]:
    wh1 = gf4.vscale(W, H1)
    wh3 = gf4.vscale(W, H3)
    return {
        "t_h1": translation(H1),
        "t_wh1": translation(wh1),
        "t_h3": translation(H3),
        "t_wh3": translation(wh3),
        "tau12tau34": perm_mul(swap_columns(1, 2), swap_columns(3, 4)),
        "tau13tau24": perm_mul(swap_columns(1, 3), swap_columns(2, 4)),
        "tau12phi": perm_mul(swap_columns(1, 2), frobenius()),
    }


SUBGROUP_H1 = ("t_h1", "t_wh1", "tau12tau34", "tau13tau24")
SUBGROUP_H2 = ("t_h1", "t_wh1", "t_h3", "t_wh3")

# The 3-point and 2-point sets that are avoided by the sections of dimension 11 and 10.
AVOIDED = {23: (point(0, 6),), 22: (point(0, 6), point(1, 6))}


# -- Todd-type sections -----------------------------------------------------------------


class GolaySection:
    """The subcode of Golay words avoiding a fixed set of points, as a T-module.

    ``n = 23`` avoids one point (dimension 11), ``n = 22`` avoids two (dimension 10).
    With ``dual=True`` the module is the contragredient, with ``g`` acting by
    ``(g^-1)^t`` in the same coordinates.
    """

    def __init__(self, n: int = 22, dual: bool = False):
        if n not in AVOIDED:
            raise ValueError("n must be 22 or 23")
        self.n = n
        self.dual = dual
        self.code = GolayCode()
        mask = sum(1 << x for x in AVOIDED[n])
        combos = _gf2.kernel([g & mask for g in self.code.basis], 24)
        words = [_gf2.apply(self.code.basis, c) for c in combos]
        self.basis = _gf2.rref(words)
        self.module = HomocyclicModule(2, 1, len(self.basis))
        self.perms = sylow_generators()

    def coords(self, v: int) -> tuple[int, ...]:
        out = []
        for b in self.basis:
            if v & (b & -b):
                v ^= b
                out.append(1)
            else:
                out.append(0)
        if v:
            raise ValueError("vector is not in the section")
        return tuple(out)

    def word(self, coords: Sequence[int]) -> int:
        out = 0
        for c, b in zip(coords, self.basis):
            if c:
                out ^= b
        return out

    def matrix(self, g: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        cols = [self.coords(act(g, b)) for b in self.basis]
        m = tuple(zip(*cols))
        if self.dual:
            inv = ModuleAut(self.module, m).inverse().matrix
            m = tuple(zip(*inv))
        return m

    def preserves_code(self) -> dict[str, bool]:
        mask = sum(1 << x for x in AVOIDED[self.n])
        out = {}
        for name, g in self.perms.items():
            ok = all(self.code.contains(act(g, b)) for b in self.code.basis)
            ok = ok and all(act(g, 1 << x) & mask for x in AVOIDED[self.n])
            out[name] = ok
        return out

    @cached_property
    def permutation_group(self) -> FiniteGroup:
        return FiniteGroup.closure(self.perms.values(), perm_mul, tuple(range(24)))

    @cached_property
    def context(self) -> ObstructionContext:
        gens = {name: self.matrix(g) for name, g in self.perms.items()}
        ctx = ObstructionContext.from_generators(self.module, gens)
        if ctx.group.order != self.permutation_group.order:
            raise ValueError("Sylow subgroup does not act faithfully on the section")
        return ctx

    def aut(self, name: str) -> ModuleAut:
        return ModuleAut(self.module, self.matrix(self.perms[name]))

    def named_subgroup(self, names: Sequence[str]) -> tuple[int, ...]:
        ctx = self.context
        return ctx.find_subgroup(ctx.group.index[ModuleAut(self.module, self.matrix(self.perms[n])).matrix]
                                 for n in names)

    def span(self, words: Sequence[int]) -> Subgroup:
        return self.module.span(self.coords(w) for w in words)


# -- tables of commutators ------------------------------------------------------------------


def named_words() -> dict[str, int]:
    wh1, wh2, wh3 = (gf4.vscale(W, h) for h in (H1, H2, H3))
    return {
        "C1234": column(1, 2, 3, 4),
        "C12": column(1, 2),
        "C13": column(1, 3),
        "C14": column(1, 4),
        "C15": column(1, 5),
        "C23": column(2, 3),
        "C25": column(2, 5),
        "C35": column(3, 5),
        "g_h1": gamma(H1),
        "g_h2+C56": gamma(H2) ^ column(5, 6),
        "g_h3+wh2+C56": gamma(gf4.vadd(H3, wh2)) ^ column(5, 6),
        "g_h2": gamma(H2),
        "g_wh1": gamma(wh1),
        "g_h3": gamma(H3),
        "g_wh3": gamma(wh3),
        "Gr_wh2+C1": graph(wh2) ^ column(1),
        "g_h1+C12": gamma(H1) ^ column(1, 2),
        "0": 0,
    }


TABLE_COLUMNS = ["C1234", "C12", "C13", "C15", "g_h1", "g_h2+C56", "g_h3+wh2+C56"]
TABLE_ROWS = ["t_h1", "t_wh1", "t_h3", "t_wh3", "tau12tau34", "tau13tau24", "tau12phi"]
COMMUTATOR_TABLE = {
    "t_h1": ["0", "0", "0", "0", "0", "0", "0"],
    "t_wh1": ["0", "0", "0", "0", "C1234", "C12", "C23"],
    "t_h3": ["0", "0", "0", "0", "C12", "C12", "C25"],
    "t_wh3": ["0", "0", "0", "0", "C13", "C15", "C35"],
    "tau12tau34": ["0", "0", "C1234", "C12", "0", "0", "g_h1"],
    "tau13tau24": ["0", "C1234", "0", "C13", "0", "g_h1", "g_h1"],
    "tau12phi": ["0", "0", "C12", "C12", "0", "0", "g_h2+C56"],
}
T_H1_TABLE = {"g_wh1": "C1234", "g_h3": "C12", "g_wh3": "C13", "Gr_wh2+C1": "g_h1+C12"}


def commutator_tables() -> dict:
    """Recompute ``[g, x] = g(x) - x`` for both tables and compare cell by cell."""
    words = named_words()
    perms = sylow_generators()
    cells = []
    for row in TABLE_ROWS:
        for colname, expected in zip(TABLE_COLUMNS, COMMUTATOR_TABLE[row]):
            x = words[colname]
            got = act(perms[row], x) ^ x
            cells.append({"g": row, "x": colname, "expected": expected, "ok": got == words[expected]})
    second = []
    for colname, expected in T_H1_TABLE.items():
        x = words[colname]
        got = act(perms["t_h1"], x) ^ x
        second.append({"g": "t_h1", "x": colname, "expected": expected, "ok": got == words[expected]})
    code = GolayCode()
    in_code = all(code.contains(words[k]) for k in TABLE_COLUMNS + list(T_H1_TABLE))
    bases = {}
    for n in (22, 23):
        sec = GolaySection(n)
        cent = sec.aut("t_h1").fixed
        cols = TABLE_COLUMNS[:6] if n == 22 else TABLE_COLUMNS
        try:
            span = sec.span([words[c] for c in cols])
            quot = sec.span([words[c] for c in T_H1_TABLE]) + cent
            bases[n] = {
                "centralizer_basis": span == cent and span.log_order == len(cols),
                "quotient_basis": quot == sec.module.whole()
                and (sec.span([words[c] for c in T_H1_TABLE]) & cent).order == 1,
            }
        except ValueError:
            bases[n] = {"centralizer_basis": False, "quotient_basis": False}
    return {
        "commutator_table": cells,
        "t_h1_table": second,
        "all_in_code": in_code,
        "bases": bases,
        "passed": in_code and all(c["ok"] for c in cells + second)
        and all(all(v.values()) for v in bases.values()),
    }


def sylow_structure(n: int = 22) -> dict:
    """Sylow subgroup order, its rank-4 elementary abelian subgroups, and fixed spaces."""
    t0 = time.perf_counter()
    sec = GolaySection(n)
    ctx = sec.context
    words = named_words()
    h1 = sec.named_subgroup(SUBGROUP_H1)
    h2 = sec.named_subgroup(SUBGROUP_H2)
    rank4 = [s for s in ctx.subgroups if len(s) == 16]
    larger = [s for s in ctx.subgroups if len(s) > 16]
    th1 = sec.aut("t_h1")
    whole_t = fixed_subgroup(sec.module, ctx.auts)
    out = {
        "n": n,
        "module_rank": sec.module.r,
        "preserves_code": all(sec.preserves_code().values()),
        "permutation_order": sec.permutation_group.order,
        "matrix_order": ctx.group.order,
        "rank4_subgroups": len(rank4),
        "rank4_are_H1_H2": sorted(rank4) == sorted([h1, h2]),
        "no_rank5": not larger,
        "commutator_t_h1": th1.image == sec.span([words[k] for k in ("C12", "C13", "C14", "g_h1")]),
        "fixed_H1_equals_fixed_T": ctx.centralizer(h1) == whole_t == sec.span([words["C1234"]]),
        "fixed_H2": ctx.centralizer(h2) == sec.span([words[k] for k in ("C12", "C13", "C14", "C15")]),
        "seconds": 0.0,
    }
    out["passed"] = out["permutation_order"] == 128 and out["matrix_order"] == 128 and all(
        v for k, v in out.items() if isinstance(v, bool))
    out["seconds"] = time.perf_counter() - t0
    return out


def commutator_of(sec: GolaySection, names: Sequence[str]) -> Subgroup:
    return commutator_subgroup(sec.module, [sec.aut(n) for n in names])
