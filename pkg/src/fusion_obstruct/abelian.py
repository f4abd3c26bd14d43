"""Homocyclic abelian p-groups ``(Z/p^e)^r`` with automorphisms and subgroups.

Elements are integer tuples of length ``r`` reduced mod ``p^e``. A subgroup is
stored as its Howell normal form, which is unique, so two subgroups are equal
exactly when their stored rows are equal. All orders are exact integers.

Automorphisms are ``r x r`` integer matrices acting on column vectors: column
``j`` is the image of the ``j``-th basis vector. Composition reads right to
left, so ``(a * b)(x) = a(b(x))``.

When ``p = 2`` and ``e = 1`` the lattice operations run on bit-packed rows.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from . import _gf2

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]


class ModuleError(ValueError):
    """Malformed module data or a violated precondition."""


class UnsupportedModuleError(ModuleError):
    """A construction would leave the homocyclic setting."""

    def __init__(self, message: str, invariants: Sequence[int] = ()):
        super().__init__(message)
        self.invariants = tuple(invariants)


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def valuation(x: int, p: int) -> int:
    if x == 0:
        raise ValueError("valuation of zero")
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def log_p(n: int, p: int) -> int:
    """Exponent ``k`` with ``n == p**k``; raises if ``n`` is not a power of ``p``."""
    k = 0
    while n > 1 and n % p == 0:
        n //= p
        k += 1
    if n != 1:
        raise ValueError(f"not a power of {p}")
    return k


def howell_form(rows: Iterable[Sequence[int]], p: int, e: int, ncols: int) -> Matrix:
    """Howell normal form of the row span over ``Z/p^e``.

    Pivots are powers of ``p``, entries above a pivot are reduced below it, and
    every element of the span whose first ``c`` coordinates vanish lies in the
    span of the rows with pivot column ``>= c``.
    """
    n = p**e
    work = []
    for row in rows:
        r = [x % n for x in row]
        if len(r) != ncols:
            raise ModuleError("row length mismatch")
        if any(r):
            work.append(r)
    out: list[tuple[int, int, list[int]]] = []
    for c in range(ncols):
        best, bestval = -1, e
        for i, row in enumerate(work):
            if row[c]:
                v = valuation(row[c], p)
                if v < bestval:
                    best, bestval = i, v
                    if v == 0:
                        break
        if best < 0:
            continue
        piv = work.pop(best)
        d = p**bestval
        inv = pow(piv[c] // d, -1, n)
        piv = [x * inv % n for x in piv]
        nxt = []
        for row in work:
            if row[c]:
                q = row[c] // d
                row = [(a - q * b) % n for a, b in zip(row, piv)]
            if any(row):
                nxt.append(row)
        if bestval:
            extra = [x * p ** (e - bestval) % n for x in piv]
            if any(extra):
                nxt.append(extra)
        work = nxt
        out.append((c, d, piv))
    for i, (c, d, row_i) in enumerate(out):
        for j in range(i):
            row_j = out[j][2]
            q = row_j[c] // d
            if q:
                out[j] = (out[j][0], out[j][1], [(a - q * b) % n for a, b in zip(row_j, row_i)])
    return tuple(tuple(r) for _, _, r in out)


def _pivot(row: Sequence[int]) -> int:
    for c, x in enumerate(row):
        if x:
            return c
    raise ValueError("zero row")


@dataclass(frozen=True)
class HomocyclicModule:
    p: int
    e: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ModuleError(f"p={self.p} is not prime")
        if self.e < 1 or self.r < 1:
            raise ModuleError("exponent and rank must be positive")

    @property
    def modulus(self) -> int:
        return self.p**self.e

    @property
    def order(self) -> int:
        return self.modulus**self.r

    @property
    def is_elementary(self) -> bool:
        return self.e == 1

    @property
    def bitpacked(self) -> bool:
        return self.p == 2 and self.e == 1

    def element(self, values: Sequence[int]) -> Vector:
        if len(values) != self.r:
            raise ModuleError(f"expected {self.r} coordinates, got {len(values)}")
        return tuple(int(x) % self.modulus for x in values)

    def zero(self) -> Vector:
        return (0,) * self.r

    def basis_vector(self, i: int) -> Vector:
        return tuple(1 if j == i else 0 for j in range(self.r))

    def add(self, a: Vector, b: Vector) -> Vector:
        return tuple((x + y) % self.modulus for x, y in zip(a, b))

    def scale(self, k: int, a: Vector) -> Vector:
        return tuple(k * x % self.modulus for x in a)

    def span(self, gens: Iterable[Sequence[int]]) -> "Subgroup":
        return Subgroup.generated(self, gens)

    def whole(self) -> "Subgroup":
        return Subgroup.generated(self, [self.basis_vector(i) for i in range(self.r)])

    def trivial(self) -> "Subgroup":
        return Subgroup(self, ())

    def to_bits(self, v: Sequence[int]) -> int:
        out = 0
        for j, x in enumerate(v):
            if x & 1:
                out |= 1 << j
        return out

    def from_bits(self, b: int) -> Vector:
        return tuple((b >> j) & 1 for j in range(self.r))


@dataclass(frozen=True, eq=False)
class Subgroup:
    module: HomocyclicModule
    rows: Matrix

    @classmethod
    def generated(cls, module: HomocyclicModule, gens: Iterable[Sequence[int]]) -> "Subgroup":
        gens = [module.element(g) for g in gens]
        if module.bitpacked:
            return cls._from_bits(module, _gf2.rref(module.to_bits(g) for g in gens))
        return cls(module, howell_form(gens, module.p, module.e, module.r))

    @classmethod
    def _from_bits(cls, module: HomocyclicModule, basis: list[int]) -> "Subgroup":
        return cls(module, tuple(module.from_bits(b) for b in basis))

    @cached_property
    def bits(self) -> list[int]:
        return [self.module.to_bits(r) for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.module == other.module and self.rows == other.rows

    def __hash__(self):
        return hash((self.module, self.rows))

    def __repr__(self):
        return f"Subgroup(order={self.order}, rows={list(self.rows)})"

    @cached_property
    def order(self) -> int:
        m = self.module
        total = 1
        for row in self.rows:
            total *= p_power_order(row[_pivot(row)], m.p, m.e)
        return total

    @property
    def log_order(self) -> int:
        return log_p(self.order, self.module.p)

    def contains(self, v: Sequence[int]) -> bool:
        m = self.module
        v = list(m.element(v))
        if m.bitpacked:
            return _gf2.in_span(m.to_bits(v), self.bits)
        n = m.modulus
        for row in self.rows:
            c = _pivot(row)
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            if q:
                v = [(a - q * b) % n for a, b in zip(v, row)]
        return not any(v)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subgroup") -> bool:
        return all(other.contains(r) for r in self.rows)

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.generated(self.module, self.rows + other.rows)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        m = self.module
        if m.bitpacked:
            return Subgroup._from_bits(m, _gf2.intersect(self.bits, other.bits, m.r))
        r = m.r
        rows = [row + row for row in self.rows] + [row + (0,) * r for row in other.rows]
        return _suffix_kernel(m, rows)

    def scaled(self, k: int) -> "Subgroup":
        return Subgroup.generated(self.module, [self.module.scale(k, r) for r in self.rows])

    @cached_property
    def invariants(self) -> tuple[int, ...]:
        """Cyclic factor orders, largest first."""
        p = self.module.p
        sizes = [self.order]
        k = 1
        while sizes[-1] > 1:
            sizes.append(self.scaled(p**k).order)
            k += 1
        # counts[j] = number of cyclic factors of order >= p^(j+1)
        counts = [log_p(sizes[j] // sizes[j + 1], p) for j in range(len(sizes) - 1)]
        out = []
        for j, c in enumerate(counts):
            nxt = counts[j + 1] if j + 1 < len(counts) else 0
            out.extend([p ** (j + 1)] * (c - nxt))
        return tuple(sorted(out, reverse=True))

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def generators(self) -> list[Vector]:
        return list(self.rows)


def p_power_order(x: int, p: int, e: int) -> int:
    """Additive order of ``x`` in ``Z/p^e``."""
    x %= p**e
    if x == 0:
        return 1
    return p ** (e - valuation(x, p))


def _suffix_kernel(m: HomocyclicModule, rows: list[Sequence[int]]) -> Subgroup:
    r = m.r
    width = len(rows[0]) - r if rows else 0
    h = howell_form(rows, m.p, m.e, width + r) if rows else ()
    return Subgroup.generated(m, [row[width:] for row in h if not any(row[:width])])


def embeds_in(invariants: Sequence[int], module: HomocyclicModule) -> bool:
    """Whether an abelian group with the given cyclic factor orders embeds in ``module``.

    For a homocyclic target this means every factor has order at most ``p^e``
    and there are at most ``r`` nontrivial factors.
    """
    p = module.p
    exps = []
    for q in invariants:
        if q == 1:
            continue
        try:
            exps.append(log_p(q, p))
        except ValueError:
            raise ModuleError(f"factor {q} is not a power of {p}") from None
    return all(f <= module.e for f in exps) and len(exps) <= module.r


# -- automorphisms -----------------------------------------------------------------


def _mat_mul(a: Matrix, b: Matrix, n: int) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % n for col in cols) for row in a)


def _identity(r: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def mat_inverse(a: Matrix, p: int, e: int) -> Matrix:
    n = p**e
    r = len(a)
    aug = [list(row) + [int(i == j) for j in range(r)] for i, row in enumerate(a)]
    for c in range(r):
        piv = next((i for i in range(c, r) if aug[i][c] % p), None)
        if piv is None:
            raise ModuleError("matrix is not invertible")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, n)
        aug[c] = [x * inv % n for x in aug[c]]
        for i in range(r):
            if i != c and aug[i][c]:
                q = aug[i][c]
                aug[i] = [(x - q * y) % n for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(row[r:]) for row in aug)


@dataclass(frozen=True)
class ModuleAut:
    module: HomocyclicModule
    matrix: Matrix = field(repr=False)

    def __post_init__(self):
        m = self.module
        mat = tuple(tuple(int(x) % m.modulus for x in row) for row in self.matrix)
        if len(mat) != m.r or any(len(row) != m.r for row in mat):
            raise ModuleError("automorphism matrix has wrong shape")
        object.__setattr__(self, "matrix", mat)
        mat_inverse(mat, m.p, 1)

    @classmethod
    def identity(cls, module: HomocyclicModule) -> "ModuleAut":
        return cls(module, _identity(module.r))

    @cached_property
    def columns_bits(self) -> list[int]:
        m = self.module
        return [m.to_bits(col) for col in zip(*self.matrix)]

    @cached_property
    def minus_one_bits(self) -> list[int]:
        return [c ^ (1 << j) for j, c in enumerate(self.columns_bits)]

    @cached_property
    def minus_one(self) -> Matrix:
        """Matrix of ``a -> [tau, a] = tau(a) - a``."""
        n = self.module.modulus
        return tuple(tuple((x - (i == j)) % n for j, x in enumerate(row)) for i, row in enumerate(self.matrix))

    def apply(self, v: Sequence[int]) -> Vector:
        n = self.module.modulus
        v = self.module.element(v)
        return tuple(sum(x * y for x, y in zip(row, v)) % n for row in self.matrix)

    def commutator(self, v: Sequence[int]) -> Vector:
        return self.module.add(self.apply(v), self.module.scale(-1, v))

    def __mul__(self, other: "ModuleAut") -> "ModuleAut":
        return ModuleAut(self.module, _mat_mul(self.matrix, other.matrix, self.module.modulus))

    def inverse(self) -> "ModuleAut":
        return ModuleAut(self.module, mat_inverse(self.matrix, self.module.p, self.module.e))

    def is_identity(self) -> bool:
        return self.matrix == _identity(self.module.r)

    def order(self, limit: int = 1 << 16) -> int:
        x = self
        for k in range(1, limit + 1):
            if x.is_identity():
                return k
            x = x * self
        raise ModuleError("order exceeds limit")

    @cached_property
    def fixed(self) -> Subgroup:
        """``C_A(tau)``, the kernel of ``tau - 1``."""
        m = self.module
        if m.bitpacked:
            return Subgroup._from_bits(m, _gf2.kernel(self.minus_one_bits, m.r))
        cols = list(zip(*self.minus_one))
        rows = [tuple(col) + m.basis_vector(j) for j, col in enumerate(cols)]
        return _suffix_kernel(m, rows)

    @cached_property
    def image(self) -> Subgroup:
        """``[tau, A]``, the image of ``tau - 1``."""
        return Subgroup.generated(self.module, list(zip(*self.minus_one)))

    def preimage(self, target: Subgroup) -> Subgroup:
        """``{a : [tau, a] in target}``."""
        m = self.module
        if m.bitpacked:
            return Subgroup._from_bits(m, _gf2.preimage(self.minus_one_bits, target.bits, m.r))
        cols = list(zip(*self.minus_one))
        rows = [tuple(col) + m.basis_vector(j) for j, col in enumerate(cols)]
        rows += [row + (0,) * m.r for row in target.rows]
        return _suffix_kernel(m, rows)

    def leaves_invariant(self, sub: Subgroup) -> bool:
        return all(sub.contains(self.apply(r)) for r in sub.rows)


def fixed_subgroup(module: HomocyclicModule, auts: Iterable[ModuleAut]) -> Subgroup:
    """``C_A(H)`` for the subgroup ``H`` generated by ``auts``."""
    out = module.whole()
    for a in auts:
        out = out & a.fixed
    return out


def commutator_subgroup(module: HomocyclicModule, auts: Iterable[ModuleAut]) -> Subgroup:
    """``[H, A]``; generators of ``H`` suffice since ``gh - 1 = (g - 1)h + (h - 1)``."""
    gens: list[Vector] = []
    for a in auts:
        gens.extend(a.image.rows)
    return Subgroup.generated(module, gens)


def quotient_fixed_order(tau: ModuleAut, sub: Subgroup) -> int:
    """``|C_{A/A*}(tau)|`` for ``A* <= C_A(tau)``, computed two ways."""
    if not sub <= tau.fixed:
        raise ModuleError("subgroup is not centralized by tau")
    m = tau.module
    direct = tau.preimage(sub).order // sub.order
    formula = m.order // (sub + tau.image).order
    if direct != formula:
        raise ConsistencyError(f"quotient fixed order mismatch: {direct} != {formula}")
    return direct


def f_rank(m: HomocyclicModule, mat: Matrix) -> int:
    if m.bitpacked:
        return _gf2.rank(m.to_bits(c) for c in zip(*mat))
    return Subgroup.generated(m, list(zip(*mat))).log_order


def jordan_count(tau: ModuleAut) -> int:
    """Number of Jordan blocks of size at least 2, as ``rank(C_A(tau) & [tau, A])``."""
    m = tau.module
    if not m.is_elementary:
        raise ModuleError("Jordan block count needs an elementary abelian module")
    j = (tau.fixed & tau.image).log_order
    n = tau.minus_one
    check = f_rank(m, n) - f_rank(m, _mat_mul(n, n, m.modulus))
    if j != check:
        raise ConsistencyError(f"Jordan count mismatch: {j} != {check}")
    return j


# -- quotients -----------------------------------------------------------------------


@dataclass
class QuotientModule:
    """``A2 / A1`` as a homocyclic module with a chosen basis of lifts."""

    ambient: HomocyclicModule
    lower: Subgroup
    upper: Subgroup
    module: HomocyclicModule
    basis: list[Vector]
    _coord_rows: Matrix = field(repr=False)

    def coords(self, v: Sequence[int]) -> Vector:
        """Coordinates of the class of ``v`` (which must lie in ``upper``)."""
        amb = self.ambient
        r = amb.r
        n = amb.modulus
        vec = list(amb.element(v)) + [0] * self.module.r
        for row in self._coord_rows:
            c = _pivot(row)
            if c >= r:
                break
            if vec[c] % row[c]:
                raise ModuleError("vector does not lie in the upper subgroup")
            q = vec[c] // row[c]
            if q:
                vec = [(a - q * b) % n for a, b in zip(vec, row)]
        if any(vec[:r]):
            raise ModuleError("vector does not lie in the upper subgroup")
        return self.module.element([-x for x in vec[r:]])

    def lift(self, coords: Sequence[int]) -> Vector:
        amb = self.ambient
        out = amb.zero()
        for c, b in zip(coords, self.basis):
            out = amb.add(out, amb.scale(c, b))
        return out

    def induced(self, aut: ModuleAut) -> ModuleAut:
        if not (aut.leaves_invariant(self.lower) and aut.leaves_invariant(self.upper)):
            raise ModuleError("automorphism does not preserve the section")
        cols = [self.coords(aut.apply(b)) for b in self.basis]
        return ModuleAut(self.module, tuple(zip(*cols)))

    def image(self, sub: Subgroup) -> Subgroup:
        """``(sub + lower) & upper`` as a subgroup of the quotient."""
        mid = (sub + self.lower) & self.upper
        return self.module.span(self.coords(r) for r in mid.rows)


def quotient_module(lower: Subgroup, upper: Subgroup, basis: Sequence[Sequence[int]] | None = None) -> QuotientModule:
    """Build ``upper / lower``; raise ``UnsupportedModuleError`` unless homocyclic.

    ``basis`` optionally proposes lifts for the quotient basis; they are checked.
    """
    amb = lower.module
    p = amb.p
    if not lower <= upper:
        raise ModuleError("lower subgroup is not contained in the upper one")
    sizes = []
    k = 0
    while True:
        s = (upper.scaled(p**k) + lower).order // lower.order
        sizes.append(s)
        if s == 1:
            break
        k += 1
    counts = [log_p(sizes[j] // sizes[j + 1], p) for j in range(len(sizes) - 1)]
    inv = []
    for j, c in enumerate(counts):
        nxt = counts[j + 1] if j + 1 < len(counts) else 0
        inv.extend([p ** (j + 1)] * (c - nxt))
    inv.sort(reverse=True)
    if not counts:
        raise UnsupportedModuleError("quotient is trivial", inv)
    if len(set(counts)) != 1:
        raise UnsupportedModuleError(f"quotient is not homocyclic: invariants {inv}", inv)
    f, s = len(counts), counts[0]
    frattini = upper.scaled(p) + lower
    if basis is None:
        chosen: list[Vector] = []
        span = frattini
        for g in upper.rows:
            if not span.contains(g):
                chosen.append(g)
                span = span + amb.span([g])
            if len(chosen) == s:
                break
    else:
        chosen = [amb.element(b) for b in basis]
        if not all(upper.contains(b) for b in chosen) or (frattini + amb.span(chosen)) != upper or len(chosen) != s:
            raise ModuleError("proposed basis does not give a basis of the quotient")
    qmod = HomocyclicModule(p, f, s)
    rows = [tuple(b) + tuple(int(i == j) for j in range(s)) for i, b in enumerate(chosen)]
    rows += [tuple(r) + (0,) * s for r in lower.rows]
    coord_rows = howell_form(rows, p, amb.e, amb.r + s)
    return QuotientModule(amb, lower, upper, qmod, chosen, coord_rows)
