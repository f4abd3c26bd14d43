"""Finite groups by closure, and enumeration of abelian subgroups.

A group is given by generators plus a multiplication on hashable element keys
(permutation tuples or matrix tuples). Closure is breadth first from the
identity, so element indices are deterministic for fixed generators.
"""
from __future__ import annotations

import math
import os
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

DEFAULT_CAP = 1 << 20
DEFAULT_WORK_CAP = 10**6
CAP_ENV = "FUSION_OBSTRUCT_CAP"


class GroupError(ValueError):
    pass


class CapExceeded(GroupError):
    pass


def env_cap(default: int) -> int:
    """``default``, unless the cap environment variable holds a positive integer."""
    raw = os.environ.get(CAP_ENV)
    if not raw:
        return default
    try:
        val = int(raw)
    except ValueError:
        raise GroupError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if val <= 0:
        raise GroupError(f"{CAP_ENV} must be positive")
    return val


# -- permutations (0-based tuples, composed right to left) ------------------------


def perm_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """``a * b``: apply ``b`` first, then ``a``."""
    return tuple(a[x] for x in b)


def perm_inverse(a: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_cycle_type(a: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(a)
    lens = []
    for i in range(len(a)):
        if not seen[i]:
            n = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                n += 1
            lens.append(n)
    return tuple(sorted(lens, reverse=True))


def perm_order(a: Sequence[int]) -> int:
    return math.lcm(*perm_cycle_type(a))


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]], base: int = 0) -> tuple[int, ...]:
    out = list(range(n))
    for cyc in cycles:
        cyc = [c - base for c in cyc]
        for i, x in enumerate(cyc):
            if not 0 <= x < n:
                raise GroupError(f"point {x + base} out of range")
            out[x] = cyc[(i + 1) % len(cyc)]
    if sorted(out) != list(range(n)):
        raise GroupError("cycles do not define a permutation")
    return tuple(out)


def matrix_mul_mod(n: int) -> Callable:
    def mul(a, b):
        cols = list(zip(*b))
        return tuple(tuple(sum(x * y for x, y in zip(row, col)) % n for col in cols) for row in a)

    return mul


# -- closure -------------------------------------------------------------------------


@dataclass
class FiniteGroup:
    generators: list[Hashable]
    elements: list[Hashable]
    index: dict
    mul: Callable = field(repr=False)
    left: list[list[int]] = field(repr=False)
    parent: list[tuple[int, int]] = field(repr=False)

    @classmethod
    def closure(cls, generators: Iterable[Hashable], mul: Callable, identity: Hashable, cap: int | None = None) -> "FiniteGroup":
        cap = env_cap(DEFAULT_CAP) if cap is None else cap
        gens = sorted(set(generators), key=repr)
        elements = [identity]
        index = {identity: 0}
        parent = [(-1, -1)]
        left = [[] for _ in gens]
        i = 0
        while i < len(elements):
            x = elements[i]
            for gi, g in enumerate(gens):
                y = mul(g, x)
                j = index.get(y)
                if j is None:
                    j = len(elements)
                    if j >= cap:
                        raise CapExceeded(f"group closure exceeds cap {cap}")
                    index[y] = j
                    elements.append(y)
                    parent.append((i, gi))
                left[gi].append(j)
            i += 1
        return cls(gens, elements, index, mul, left, parent)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def __len__(self):
        return len(self.elements)

    @cached_property
    def table(self) -> list[list[int]]:
        """``table[i][j]`` is the index of ``elements[i] * elements[j]``."""
        n = len(self.elements)
        rows: list[list[int]] = [list(range(n))]
        for i in range(1, n):
            par, gi = self.parent[i]
            lg = self.left[gi]
            rows.append([lg[x] for x in rows[par]])
        return rows

    def product(self, i: int, j: int) -> int:
        return self.table[i][j]

    @cached_property
    def inverses(self) -> list[int]:
        return [row.index(0) for row in self.table]

    @cached_property
    def orders(self) -> list[int]:
        t = self.table
        out = []
        for i in range(len(self.elements)):
            k, x = 1, i
            while x != 0:
                x = t[i][x]
                k += 1
            out.append(k)
        return out

    def commute(self, i: int, j: int) -> bool:
        return self.table[i][j] == self.table[j][i]

    def subgroup_closure(self, gens: Iterable[int]) -> frozenset[int]:
        gens = list(gens)
        elems = {0}
        frontier = [0]
        t = self.table
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = t[g][x]
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        return frozenset(elems)

    def index_of(self, element: Hashable) -> int:
        try:
            return self.index[element]
        except KeyError:
            raise GroupError("element not in group") from None


def abelian_invariants(group: FiniteGroup, subset: Iterable[int], p: int) -> tuple[int, ...]:
    """Cyclic factor orders of an abelian p-subgroup, from its element orders."""
    orders = [group.orders[i] for i in subset]
    top = max(orders)
    omega = []
    k = 0
    while True:
        omega.append(sum(1 for o in orders if (p**k) % o == 0))
        if omega[-1] == len(orders):
            break
        k += 1
    # |Omega_k| = p^(sum_i min(f_i, k))
    logs = [round(math.log(x, p)) for x in omega]
    counts = [logs[j + 1] - logs[j] for j in range(len(logs) - 1)]
    out = []
    for j, c in enumerate(counts):
        nxt = counts[j + 1] if j + 1 < len(counts) else 0
        out.extend([p ** (j + 1)] * (c - nxt))
    if math.prod(out) != len(orders) or (out and max(out) != top):
        raise GroupError("subset is not an abelian p-group")
    return tuple(sorted(out, reverse=True))


def abelian_subgroups(
    group: FiniteGroup,
    accept: Callable[[frozenset[int]], bool] = lambda s: True,
    max_exponent: int | None = None,
    work_cap: int | None = None,
) -> list[tuple[int, ...]]:
    """All nontrivial abelian subgroups ``S`` with ``accept(S)`` true.

    ``accept`` must be inherited by subgroups (such as embeddability), since
    rejected subgroups are not extended. Results are sorted index tuples.
    """
    work_cap = env_cap(DEFAULT_WORK_CAP) if work_cap is None else work_cap
    t = group.table
    cands = [i for i in range(1, len(group)) if max_exponent is None or max_exponent % group.orders[i] == 0]
    seen: set[frozenset[int]] = set()
    level: list[tuple[frozenset[int], tuple[int, ...]]] = []
    for x in cands:
        s = group.subgroup_closure([x])
        if s not in seen:
            seen.add(s)
            if accept(s):
                level.append((s, (x,)))
    found = [s for s, _ in level]
    work = 0
    while level:
        nxt = []
        for s, gens in level:
            for y in cands:
                if y in s or any(t[y][g] != t[g][y] for g in gens):
                    continue
                work += 1
                if work > work_cap:
                    raise CapExceeded(f"subgroup enumeration exceeds work cap {work_cap}")
                new = _extend(t, s, y)
                if new in seen:
                    continue
                seen.add(new)
                if accept(new):
                    nxt.append((new, gens + (y,)))
                    found.append(new)
        level = nxt
    return sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))


def _extend(t: list[list[int]], s: frozenset[int], y: int) -> frozenset[int]:
    out = set(s)
    power = y
    while power not in s:
        out.update(t[x][power] for x in s)
        power = t[power][y]
    return frozenset(out)


def elementary_abelian_subgroups(
    group: FiniteGroup, p: int, max_rank: int | None = None, work_cap: int | None = None
) -> list[tuple[int, ...]]:
    """Nontrivial elementary abelian p-subgroups of rank at most ``max_rank``."""
    limit = p ** max_rank if max_rank is not None else None
    return abelian_subgroups(
        group,
        accept=lambda s: limit is None or len(s) <= limit,
        max_exponent=p,
        work_cap=work_cap,
    )


def brute_force_elementary_abelian(group: FiniteGroup, p: int, max_rank: int) -> list[tuple[int, ...]]:
    """Independent oracle: close every commuting tuple of order-p elements."""
    elems = [i for i in range(1, len(group)) if group.orders[i] == p]
    found: set[frozenset[int]] = set()
    for k in range(1, max_rank + 1):
        for combo in combinations(elems, k):
            if all(group.commute(a, b) for a, b in combinations(combo, 2)):
                s = group.subgroup_closure(combo)
                if len(s) <= p**max_rank:
                    found.add(s)
    return sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))


# -- M12 checks on 12 points -----------------------------------------------------------

M12_ORDER = 95040


@dataclass
class M12Report:
    order: int
    involutions_by_fixed_points: dict[int, int]
    order3_by_fixed_points: dict[int, int]
    dihedral10_ok: int
    dihedral10_failures: list[tuple[int, ...]]
    a4_ok: int
    a4_failures: list[tuple[int, ...]]

    @property
    def passed(self) -> bool:
        return self.order == M12_ORDER and not self.dihedral10_failures and not self.a4_failures

    def summary(self) -> dict:
        return {
            "order": self.order,
            "involutions": {f"{k} fixed points": v for k, v in sorted(self.involutions_by_fixed_points.items())},
            "order_3": {f"{k} fixed points": v for k, v in sorted(self.order3_by_fixed_points.items())},
            "involutions_inverting_an_order_5_element": self.dihedral10_ok,
            "order_3_elements_in_A4_with_fixed_point_free_involutions": self.a4_ok,
            "passed": self.passed,
        }


def load_permutation_generators(data: dict) -> list[tuple[int, ...]]:
    """Parse ``{"degree": n, "base": 1, "generators": [[cycle, ...], ...]}``."""
    n = int(data["degree"])
    base = int(data.get("base", 1))
    return [perm_from_cycles(n, cycles, base) for cycles in data["generators"]]


def verify_m12(generators: Sequence[Sequence[int]]) -> M12Report:
    """Check the dihedral and A4 embedding properties of a degree-12 group of order 95040.

    Every involution must invert some element of order 5, and every element of
    order 3 must normalize a Klein four-group of fixed-point-free involutions on
    which it acts nontrivially.
    """
    gens = [tuple(g) for g in generators]
    if not gens or any(len(g) != 12 for g in gens):
        raise GroupError("expected permutations of 12 points")
    ident = tuple(range(12))
    try:
        group = FiniteGroup.closure(gens, perm_mul, ident, cap=M12_ORDER)
    except CapExceeded:
        raise GroupError(f"generated group has order larger than {M12_ORDER}") from None
    elems = group.elements
    if len(elems) != M12_ORDER:
        return M12Report(len(elems), {}, {}, 0, [], 0, [])
    invol, fives, threes = [], [], []
    for g in elems:
        ct = perm_cycle_type(g)
        o = math.lcm(*ct)
        if o == 2:
            invol.append(g)
        elif o == 5:
            fives.append(g)
        elif o == 3:
            threes.append(g)

    def fixed(g):
        return sum(1 for i, x in enumerate(g) if i == x)

    inv5 = {a: perm_inverse(a) for a in fives}
    d10_fail = []
    for g in invol:
        if not any(tuple(g[a[g[x]]] for x in range(12)) == inv5[a] for a in fives):
            d10_fail.append(g)
    fpf = [g for g in invol if fixed(g) == 0]
    a4_fail = []
    for x in threes:
        xi = perm_inverse(x)
        ok = False
        for a in fpf:
            b = tuple(x[a[xi[i]]] for i in range(12))
            if b == a:
                continue
            ab = perm_mul(a, b)
            if ab != perm_mul(b, a):
                continue
            if ab == tuple(x[b[xi[i]]] for i in range(12)):
                ok = True
                break
        if not ok:
            a4_fail.append(x)
    count: dict[int, int] = {}
    for g in invol:
        count[fixed(g)] = count.get(fixed(g), 0) + 1
    count3: dict[int, int] = {}
    for g in threes:
        count3[fixed(g)] = count3.get(fixed(g), 0) + 1
    return M12Report(
        len(elems), count, count3,
        len(invol) - len(d10_fail), d10_fail,
        len(threes) - len(a4_fail), a4_fail,
    )
