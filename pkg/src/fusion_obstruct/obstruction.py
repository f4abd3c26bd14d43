"""Feasibility of (tau, B, A*) triples and the greatest fixed point over pairs.

For a p-group ``T`` of automorphisms of a homocyclic module ``A`` a triple
``(tau, B, A*)`` has ``tau`` a nonidentity element of ``T``, ``B <= T``, both
isomorphic to subgroups of ``A``, and ``A* <= C_A(<B, tau>)``. It is
*R+-feasible* when ``|B| >= |C_{A/A*}(tau)|`` and *R-feasible* when equality
holds. A set of triples is closed when every nonidentity ``tau1`` of every
``B`` leads some triple of the set. The engine computes the largest closed
subset of the feasible triples.

For R+ the best choice is ``A* = C_A(<B, tau>)``, because a larger ``A*`` can
only shrink the fixed points of ``tau`` on ``A/A*``. Closedness only looks at
``tau`` and ``B``, so the fixed point is computed on pairs.
"""
from __future__ import annotations

import enum
import itertools
from collections.abc import Callable, Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .abelian import (
    ConsistencyError,
    HomocyclicModule,
    ModuleAut,
    ModuleError,
    QuotientModule,
    Subgroup,
    embeds_in,
    jordan_count,
    log_p,
    p_power_order,
    quotient_fixed_order,
    quotient_module,
)
from .groups import FiniteGroup, abelian_invariants, abelian_subgroups, matrix_mul_mod

ENUMERATION_ORDER_CAP = 64


class Feasibility(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class ObstructionContext:
    """A module ``A`` together with a p-group ``T`` of its automorphisms.

    ``group`` must be a closure whose element keys are the automorphism
    matrices. ``names`` maps generator matrices to labels used in reports.
    """

    def __init__(self, module: HomocyclicModule, group: FiniteGroup, names: dict | None = None,
                 work_cap: int | None = None):
        self.module = module
        self.group = group
        self.work_cap = work_cap
        try:
            log_p(group.order, module.p)
        except ValueError:
            raise ModuleError(f"group of order {group.order} is not a {module.p}-group") from None
        self.auts = [ModuleAut(module, m) for m in group.elements]
        if not self.auts[0].is_identity():
            raise ModuleError("group closure must start at the identity")
        self.names = {group.index[m]: n for m, n in (names or {}).items() if m in group.index}
        self._centralizers: dict[tuple[int, ...], Subgroup] = {}

    @classmethod
    def from_generators(cls, module: HomocyclicModule, generators: dict[str, Sequence[Sequence[int]]],
                        cap: int | None = None, work_cap: int | None = None) -> "ObstructionContext":
        """Build from named generator matrices."""
        mats = {}
        for name, m in generators.items():
            mats[ModuleAut(module, m).matrix] = name
        ident = ModuleAut.identity(module).matrix
        group = FiniteGroup.closure(mats, matrix_mul_mod(module.modulus), ident, cap=cap)
        return cls(module, group, {m: n for m, n in mats.items()}, work_cap=work_cap)

    # -- labels ---------------------------------------------------------------------

    def word(self, i: int) -> str:
        if i == 0:
            return "1"
        if i in self.names:
            return self.names[i]
        par, gi = self.group.parent[i]
        g = self.group.index[self.group.generators[gi]]
        head = self.names.get(g, f"g{gi}")
        return head if par == 0 else f"{head}*{self.word(par)}"

    def matrix_json(self, i: int) -> list[list[int]]:
        return [list(r) for r in self.group.elements[i]]

    # -- candidates -----------------------------------------------------------------

    def invariants(self, sub: Iterable[int]) -> tuple[int, ...]:
        return abelian_invariants(self.group, sub, self.module.p)

    def embeddable(self, sub: Iterable[int]) -> bool:
        return embeds_in(self.invariants(sub), self.module)

    @cached_property
    def taus(self) -> list[int]:
        return [i for i in range(1, self.group.order) if embeds_in((self.group.orders[i],), self.module)]

    @cached_property
    def subgroups(self) -> list[tuple[int, ...]]:
        """Nontrivial subgroups of ``T`` isomorphic to subgroups of ``A``."""
        return abelian_subgroups(self.group, accept=self.embeddable, max_exponent=self.module.modulus,
                                 work_cap=self.work_cap)

    def generators_of(self, sub: Sequence[int]) -> list[int]:
        gens: list[int] = []
        span = frozenset([0])
        for x in sorted(sub, key=lambda i: (-self.group.orders[i], i)):
            if x not in span:
                gens.append(x)
                span = self.group.subgroup_closure(gens)
        return gens

    def centralizer(self, sub: Sequence[int]) -> Subgroup:
        """``C_A(B)``."""
        key = tuple(sorted(sub))
        c = self._centralizers.get(key)
        if c is None:
            c = self.module.whole()
            for g in self.generators_of(key):
                c = c & self.auts[g].fixed
            self._centralizers[key] = c
        return c

    def commutator(self, sub: Sequence[int]) -> Subgroup:
        """``[B, A]``."""
        gens = []
        for g in self.generators_of(sub):
            gens.extend(self.auts[g].image.rows)
        return self.module.span(gens)

    def joint_centralizer(self, tau: int, sub: Sequence[int]) -> Subgroup:
        """``C_A(<B, tau>)``."""
        return self.centralizer(sub) & self.auts[tau].fixed

    def find_subgroup(self, gens: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.group.subgroup_closure(gens)))


# -- single-pair feasibility -------------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    tau: int
    subgroup: tuple[int, ...]
    witness: Subgroup | None
    quotient_fixed: int | None = None
    status: str = "yes"

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(x for x in self.subgroup if x != 0)


def rplus_feasible(ctx: ObstructionContext, tau: int, sub: Sequence[int]) -> Candidate | None:
    """The R+-feasible triple for ``(tau, B)`` with the largest ``A*``, or ``None``."""
    a_star = ctx.joint_centralizer(tau, sub)
    q = ctx.module.order // (a_star + ctx.auts[tau].image).order
    if len(sub) >= q:
        return Candidate(tau, tuple(sorted(sub)), a_star, q)
    return None


def r_feasible(ctx: ObstructionContext, tau: int, sub: Sequence[int], method: str = "chain",
               order_cap: int = ENUMERATION_ORDER_CAP) -> Candidate:
    """Decide whether some ``A* <= C_A(<B, tau>)`` gives ``|C_{A/A*}(tau)| = |B|``.

    ``method="chain"`` walks a composition series of ``C = C_A(<B, tau>)``.
    Along it ``|A* + [tau, A]|`` grows by a factor 1 or p at each step, so every
    admissible value is reached and the answer is always yes or no.
    ``method="enumerate"`` searches all subgroups of ``C`` and reports UNKNOWN
    when ``|C|`` exceeds ``order_cap``.
    """
    m = ctx.module
    sub = tuple(sorted(sub))
    cent = ctx.joint_centralizer(tau, sub)
    image = ctx.auts[tau].image
    target = m.order // len(sub)
    if m.order % len(sub):
        return Candidate(tau, sub, None, None, Feasibility.NO.value)
    low, high = image.order, (cent + image).order
    if not low <= target <= high:
        return Candidate(tau, sub, None, None, Feasibility.NO.value)
    if method == "chain":
        s = m.trivial()
        if (s + image).order == target:
            return Candidate(tau, sub, s, len(sub), Feasibility.YES.value)
        for g in cent.rows:
            k = log_p(max(p_power_order(x, m.p, m.e) for x in g), m.p)
            for j in range(k - 1, -1, -1):
                s = s + m.span([m.scale(m.p**j, g)])
                if (s + image).order == target:
                    return Candidate(tau, sub, s, len(sub), Feasibility.YES.value)
        raise ConsistencyError("composition chain missed an admissible value")
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    if cent.order > order_cap:
        return Candidate(tau, sub, None, None, Feasibility.UNKNOWN.value)
    for s in all_subgroups(cent):
        if (s + image).order == target:
            return Candidate(tau, sub, s, len(sub), Feasibility.YES.value)
    return Candidate(tau, sub, None, None, Feasibility.NO.value)


def all_subgroups(sub: Subgroup) -> list[Subgroup]:
    """Every subgroup of a small subgroup, by adding one element at a time."""
    m = sub.module
    elems = elements_of(sub)
    seen = {m.trivial()}
    frontier = [m.trivial()]
    while frontier:
        nxt = []
        for s in frontier:
            for x in elems:
                if not s.contains(x):
                    t = s + m.span([x])
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        frontier = nxt
    return sorted(seen, key=lambda s: (s.order, s.rows))


def elements_of(sub: Subgroup) -> list[tuple[int, ...]]:
    m = sub.module
    out = {m.zero()}
    for row in sub.rows:
        mult = [m.scale(k, row) for k in range(m.modulus)]
        out = {m.add(x, y) for x in out for y in mult}
    return sorted(out)


# -- greatest fixed point ------------------------------------------------------------------


@dataclass(frozen=True)
class Elimination:
    candidate: Candidate
    missing_tau: int
    sweep: int


def greatest_fixed_point(pairs: Sequence, tau_of: Callable = lambda c: c.tau,
                         support_of: Callable = lambda c: c.support) -> tuple[list, list[Elimination], int]:
    """Largest subset closed under: each support element leads a kept pair.

    Returns the survivors, the elimination log and the number of sweeps.
    """
    alive = list(pairs)
    log: list[Elimination] = []
    sweep = 0
    while True:
        sweep += 1
        leaders = {tau_of(c) for c in alive}
        keep = []
        for c in alive:
            miss = next((t for t in sorted(support_of(c)) if t not in leaders), None)
            if miss is None:
                keep.append(c)
            else:
                log.append(Elimination(c, miss, sweep))
        if len(keep) == len(alive):
            return keep, log, sweep
        alive = keep


def brute_force_fixed_point(pairs: Sequence, tau_of: Callable = lambda c: c.tau,
                            support_of: Callable = lambda c: c.support) -> list:
    """Union of all closed subsets, by exhaustive search (small inputs only)."""
    n = len(pairs)
    best: set[int] = set()
    for mask in range(1 << n):
        chosen = [i for i in range(n) if mask >> i & 1]
        leaders = {tau_of(pairs[i]) for i in chosen}
        if all(all(t in leaders for t in support_of(pairs[i])) for i in chosen):
            best |= set(chosen)
    return [pairs[i] for i in sorted(best)]


@dataclass
class Verdict:
    variant: str
    pairs_considered: int
    feasible: list[Candidate]
    unknown: list[Candidate]
    survivors: list[Candidate]
    eliminations: list[Elimination]
    sweeps: int
    status: str

    @property
    def empty(self) -> bool:
        return self.status == "empty"

    def survivor_pairs(self) -> set[tuple[int, tuple[int, ...]]]:
        return {(c.tau, c.subgroup) for c in self.survivors}

    def to_json(self, ctx: ObstructionContext, limit: int | None = None) -> dict:
        def cand(c: Candidate) -> dict:
            return {
                "tau": ctx.matrix_json(c.tau),
                "tau_word": ctx.word(c.tau),
                "B": [ctx.matrix_json(x) for x in c.subgroup],
                "B_order": len(c.subgroup),
                "witness": [list(r) for r in c.witness.rows] if c.witness is not None else None,
                "status": c.status,
            }

        surv = self.survivors if limit is None else self.survivors[:limit]
        return {
            "variant": self.variant,
            "status": self.status,
            "pairs_considered": self.pairs_considered,
            "feasible_pairs": len(self.feasible),
            "unknown_pairs": len(self.unknown),
            "sweeps": self.sweeps,
            "eliminated": len(self.eliminations),
            "survivor_count": len(self.survivors),
            "survivors": [cand(c) for c in surv],
        }

    def certificate(self, ctx: ObstructionContext) -> dict:
        """Summary that lets a reader re-check an empty verdict."""
        by_sweep: dict[int, int] = {}
        for e in self.eliminations:
            by_sweep[e.sweep] = by_sweep.get(e.sweep, 0) + 1
        leaders = sorted({c.tau for c in self.feasible})
        return {
            "variant": self.variant,
            "status": self.status,
            "pairs_considered": self.pairs_considered,
            "infeasible_pairs": self.pairs_considered - len(self.feasible) - len(self.unknown),
            "feasible_pairs": len(self.feasible),
            "feasible_leaders": [ctx.word(t) for t in leaders],
            "eliminations_per_sweep": by_sweep,
            "sweeps": self.sweeps,
            "survivors": len(self.survivors),
        }


def _all_pairs(ctx: ObstructionContext) -> Iterable[tuple[int, tuple[int, ...]]]:
    for tau in ctx.taus:
        for sub in ctx.subgroups:
            yield tau, sub


def rplus_set(ctx: ObstructionContext) -> Verdict:
    feasible = []
    n = 0
    for tau, sub in _all_pairs(ctx):
        n += 1
        c = rplus_feasible(ctx, tau, sub)
        if c is not None:
            feasible.append(c)
    surv, log, sweeps = greatest_fixed_point(feasible)
    return Verdict("R+", n, feasible, [], surv, log, sweeps, "nonempty" if surv else "empty")


def r_set(ctx: ObstructionContext, method: str = "chain") -> Verdict:
    yes, unknown = [], []
    n = 0
    for tau, sub in _all_pairs(ctx):
        n += 1
        c = r_feasible(ctx, tau, sub, method=method)
        if c.status == Feasibility.YES.value:
            yes.append(c)
        elif c.status == Feasibility.UNKNOWN.value:
            unknown.append(c)
    surv, log, sweeps = greatest_fixed_point(yes)
    if surv:
        status = "nonempty"
    elif unknown and greatest_fixed_point(yes + unknown)[0]:
        status = "empty-modulo-unknowns"
    else:
        status = "empty"
    return Verdict("R", n, yes, unknown, surv, log, sweeps, status)


def check_verdict(ctx: ObstructionContext, verdict: Verdict) -> bool:
    """Recompute feasibility and replay the elimination log."""
    if verdict.variant == "R+":
        recomputed = {(c.tau, c.subgroup) for c in rplus_set_feasible_only(ctx)}
    else:
        recomputed = {(tau, sub) for tau, sub in _all_pairs(ctx)
                      if r_feasible(ctx, tau, sub).status == Feasibility.YES.value}
    if recomputed != {(c.tau, c.subgroup) for c in verdict.feasible}:
        return False
    alive = {(c.tau, c.subgroup) for c in verdict.feasible}
    for sweep in range(1, verdict.sweeps + 1):
        leaders = {t for t, _ in alive}
        batch = [e for e in verdict.eliminations if e.sweep == sweep]
        for e in batch:
            key = (e.candidate.tau, e.candidate.subgroup)
            if key not in alive or e.missing_tau in leaders or e.missing_tau not in e.candidate.subgroup:
                return False
        alive -= {(e.candidate.tau, e.candidate.subgroup) for e in batch}
    leaders = {t for t, _ in alive}
    closed = all(x in leaders for _, sub in alive for x in sub if x != 0)
    return closed and alive == verdict.survivor_pairs()


def rplus_set_feasible_only(ctx: ObstructionContext) -> list[Candidate]:
    return [c for tau, sub in _all_pairs(ctx) if (c := rplus_feasible(ctx, tau, sub)) is not None]


# -- weaker criteria ---------------------------------------------------------------------------


@dataclass
class CriterionResult:
    holds: bool
    witnesses: list[tuple[int, ...]]
    detail: dict = field(default_factory=dict)


def b0_criterion(ctx: ObstructionContext) -> CriterionResult:
    """Is there ``B0`` with ``|B0| >= |C_A(tau) & [tau, A]|`` for every ``tau`` in ``B0^#``?"""
    need = {t: (ctx.auts[t].fixed & ctx.auts[t].image).order for t in range(1, ctx.group.order)}
    wit = [s for s in ctx.subgroups if all(len(s) >= need[t] for t in s if t)]
    return CriterionResult(bool(wit), wit, {"max_required": max(need.values(), default=1)})


def jordan_criterion(ctx: ObstructionContext) -> CriterionResult:
    """Is there an elementary abelian ``B`` of rank ``m`` with at most ``m`` Jordan blocks
    of size two or more for every nonidentity element of ``B``?"""
    m = ctx.module
    if not m.is_elementary:
        raise ModuleError("Jordan criterion needs an elementary abelian module")
    counts = {t: jordan_count(ctx.auts[t]) for t in range(1, ctx.group.order)}
    wit = []
    for s in ctx.subgroups:
        rank = log_p(len(s), m.p)
        if all(counts[t] <= rank for t in s if t):
            wit.append(s)
    return CriterionResult(bool(wit), wit, {"jordan_counts": sorted(set(counts.values()))})


def implication_chain(ctx: ObstructionContext, verdict: Verdict | None = None) -> dict:
    """Nonempty R+ implies the B0 criterion, which implies the Jordan criterion."""
    verdict = verdict or rplus_set(ctx)
    b0 = b0_criterion(ctx)
    out = {"rplus_nonempty": not verdict.empty, "b0": b0.holds}
    if not verdict.empty and not b0.holds:
        raise ConsistencyError("nonempty R+ but no B0 subgroup")
    if ctx.module.is_elementary:
        jc = jordan_criterion(ctx)
        out["jordan"] = jc.holds
        if b0.holds and not jc.holds:
            raise ConsistencyError("B0 criterion holds but Jordan criterion fails")
    return out


# -- subquotients ------------------------------------------------------------------------------


@dataclass
class TransferResult:
    quotient: QuotientModule
    context: ObstructionContext
    element_map: list[int]
    triples: list[Candidate]
    verified: bool
    embeddable_in_quotient: list[bool]
    closed: bool


def subquotient_transfer(ctx: ObstructionContext, verdict: Verdict, lower: Subgroup, upper: Subgroup,
                         basis: Sequence[Sequence[int]] | None = None) -> TransferResult:
    """Push surviving triples to ``upper/lower`` via ``A* -> (A* + lower) & upper``.

    Each image is re-verified: ``A*`` is centralized by ``<B, tau>`` and
    ``|B| >= |C_{Q/A*}(tau)|`` holds in the quotient ``Q``.
    """
    q = quotient_module(lower, upper, basis)
    induced = [q.induced(a) for a in ctx.auts]
    keys = [a.matrix for a in induced]
    if len(set(keys)) != len(keys):
        raise ModuleError("group does not act faithfully on the quotient")
    qgroup = FiniteGroup.closure([keys[ctx.group.index[g]] for g in ctx.group.generators],
                                 matrix_mul_mod(q.module.modulus), keys[0])
    names = {keys[i]: n for i, n in ctx.names.items()}
    qctx = ObstructionContext(q.module, qgroup, names)
    emap = [qgroup.index[k] for k in keys]
    triples, ok, emb = [], True, []
    for c in verdict.survivors:
        tau = emap[c.tau]
        sub = tuple(sorted(emap[x] for x in c.subgroup))
        a_star = q.image(c.witness)
        if not a_star <= qctx.joint_centralizer(tau, sub):
            ok = False
        qfix = quotient_fixed_order(qctx.auts[tau], a_star)
        if len(sub) < qfix:
            ok = False
        triples.append(Candidate(tau, sub, a_star, qfix))
        emb.append(qctx.embeddable(sub) and embeds_in((qgroup.orders[tau],), q.module))
    leaders = {c.tau for c in triples}
    closed = all(x in leaders for c in triples for x in c.support)
    return TransferResult(q, qctx, emap, triples, ok and closed, emb, closed)
