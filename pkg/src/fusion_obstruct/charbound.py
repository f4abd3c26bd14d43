"""Lower bounds for Jordan block counts from Brauer character values.

If ``x`` of order ``p`` lies in a subgroup ``<x, a>`` of one of the shapes
below, the number of Jordan blocks of size at least 2 of ``x`` on a module
``V`` is at least:

=================  ==========================================  ================
kind               bound                                        conditions
=================  ==========================================  ================
``dihedral2q``     ``(q-1)/(2q) (chi(1) - chi(a))``             p = 2, 2 has order q-1 mod q
``nonabelian_pq``  ``1/(pq) sum_{i<q} (chi(1) - chi(a^i))``     p divides q-1
``A4``             ``(chi(1) - chi(a)) / 4``, ``|a| = 2``        p = 3
``twoA4``          ``(chi(1) - chi(a)) / 4``, ``|a| = 4``        p = 3
=================  ==========================================  ================

Values are exact ``Fraction`` objects. The tabulated character data ships as
JSON; see ``load_table``.
"""
from __future__ import annotations

import json
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import _gf2
from .abelian import HomocyclicModule, ModuleAut, is_prime, jordan_count
from .groups import FiniteGroup, matrix_mul_mod

KINDS = ("dihedral2q", "nonabelian_pq", "A4", "twoA4")


class BoundError(ValueError):
    pass


def multiplicative_order(a: int, q: int) -> int:
    k, x = 1, a % q
    while x != 1:
        x = x * a % q
        k += 1
    return k


@dataclass(frozen=True)
class BoundConfig:
    kind: str
    p: int
    q: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BoundError(f"unknown kind {self.kind!r}")
        if self.kind == "dihedral2q":
            if self.p != 2:
                raise BoundError("dihedral bound needs p = 2")
            if self.q is None or not is_prime(self.q) or self.q == 2:
                raise BoundError("dihedral bound needs an odd prime q")
            if multiplicative_order(2, self.q) != self.q - 1:
                raise BoundError(f"2 does not have order {self.q - 1} modulo {self.q}")
        elif self.kind == "nonabelian_pq":
            if self.q is None or not is_prime(self.q) or (self.q - 1) % self.p:
                raise BoundError("nonabelian pq bound needs a prime q with p | q-1")
        elif self.p != 3:
            raise BoundError(f"{self.kind} bound needs p = 3")


def bound(cfg: BoundConfig, chi_one: int | Fraction, chi_a: int | Fraction | Sequence) -> Fraction:
    """Exact lower bound. For ``nonabelian_pq`` pass the values ``chi(a^i)``, ``i = 1..q-1``."""
    one = Fraction(chi_one)
    if cfg.kind == "dihedral2q":
        return Fraction(cfg.q - 1, 2 * cfg.q) * (one - Fraction(chi_a))
    if cfg.kind == "nonabelian_pq":
        vals = list(chi_a) if isinstance(chi_a, (list, tuple)) else [chi_a] * (cfg.q - 1)
        if len(vals) != cfg.q - 1:
            raise BoundError(f"expected {cfg.q - 1} character values")
        return sum((one - Fraction(v) for v in vals), Fraction(0)) / (cfg.p * cfg.q)
    return (one - Fraction(chi_a)) / 4


def ceil_bound(value: Fraction) -> int:
    return math.ceil(value)


# -- tabulated data ----------------------------------------------------------------------


@dataclass
class CharacterEntry:
    group: str
    p: int
    module_label: str
    module_dim: int
    class_label: str
    value: Fraction
    source_note: str
    excluded: bool = False


@dataclass
class TableRow:
    table: str
    group: str
    p: int
    kind: str
    q: int | None
    a_class: str
    tau_classes: list[str]
    rank: int
    dim_condition: str
    threshold: Fraction
    conditional: bool
    footnote: str = ""
    entries: list[CharacterEntry] = field(default_factory=list)

    @property
    def config(self) -> BoundConfig:
        return BoundConfig(self.kind, self.p, self.q)


def _fraction(s) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError):
        raise BoundError(f"not a rational number: {s!r}") from None


ROW_FIELDS = ("table", "group", "p", "kind", "a_class", "tau_classes", "rank", "dim_condition", "threshold")


def default_table_path():
    return resources.files("fusion_obstruct") / "data" / "brauer_values.json"


def load_table(path: str | Path | None = None) -> list[TableRow]:
    """Parse a character data file; see ``docs/formats.md`` for the layout."""
    src = Path(path) if path is not None else default_table_path()
    data = json.loads(src.read_text())
    missing = [k for k in ("rows", "characters") if not isinstance(data, dict) or not data.get(k)]
    if missing:
        raise BoundError(f"character data needs non-empty {', '.join(missing)}")
    rows = []
    for r in data["rows"]:
        absent = [k for k in ROW_FIELDS if k not in r]
        if absent:
            raise BoundError(f"row {r.get('group', '?')} is missing {', '.join(absent)}")
        rows.append(TableRow(
            table=r["table"], group=r["group"], p=int(r["p"]), kind=r["kind"], q=r.get("q"),
            a_class=r["a_class"], tau_classes=list(r["tau_classes"]), rank=int(r["rank"]),
            dim_condition=r["dim_condition"], threshold=_fraction(r["threshold"]),
            conditional=bool(r.get("conditional", False)), footnote=r.get("footnote", ""),
        ))
    index = {(r.group, r.p): r for r in rows}
    for e in data["characters"]:
        key = (e["group"], int(e["p"]))
        if key not in index:
            raise BoundError(f"character entry for unknown row {key}")
        for field_name in ("group", "p", "module_dim", "class_label", "value", "source_note"):
            if field_name not in e:
                raise BoundError(f"character entry missing {field_name!r}")
        index[key].entries.append(CharacterEntry(
            group=e["group"], p=int(e["p"]), module_label=e.get("module_label", str(e["module_dim"])),
            module_dim=int(e["module_dim"]), class_label=e["class_label"], value=_fraction(e["value"]),
            source_note=e["source_note"], excluded=bool(e.get("excluded", False)),
        ))
    return rows


def consistency_problems(row: TableRow, entry: CharacterEntry) -> list[str]:
    """Integrality checks that any genuine Brauer character value must pass."""
    d, x = entry.module_dim, entry.value
    probs = []
    if entry.class_label != row.a_class:
        probs.append(f"class {entry.class_label} does not match row class {row.a_class}")
    if x.denominator != 1 or abs(x) > d:
        probs.append("value is not an integer of absolute value at most the dimension")
        return probs
    x = int(x)
    if row.kind in ("dihedral2q", "nonabelian_pq"):
        fixed = d + (row.q - 1) * x
        if fixed % row.q or fixed < 0:
            probs.append("fixed-space dimension of a is not a nonnegative integer")
    elif row.kind == "A4":
        if (d + x) % 2 or (d - x) % 4:
            probs.append("eigenspace dimensions of a are not integral")
    elif (d - x) % 2:
        probs.append("values at 1 and a have different parity")
    return probs


def table_report(rows: list[TableRow] | None = None) -> dict:
    """Recompute each row's bound from its data and compare with the stated threshold."""
    rows = rows if rows is not None else load_table()
    empty = [f"{r.group} at p={r.p}" for r in rows if not r.entries]
    if empty or not rows:
        raise BoundError("no character data for " + (", ".join(empty) or "any row"))
    out = []
    ok = True
    for row in rows:
        cfg = row.config
        ents = []
        for e in row.entries:
            b = bound(cfg, e.module_dim, e.value)
            probs = consistency_problems(row, e)
            ents.append({"module": e.module_label, "dim": e.module_dim, "value": str(e.value),
                         "bound": str(b), "excluded": e.excluded, "problems": probs})
            ok &= not probs
        active = [Fraction(x["bound"]) for x in ents if not x["excluded"]]
        low = min(active)
        row_ok = low >= row.threshold
        ok &= row_ok
        out.append({
            "table": row.table, "group": row.group, "p": row.p, "tau_classes": row.tau_classes,
            "a_class": row.a_class, "threshold": str(row.threshold), "min_bound": str(low),
            "ceil": ceil_bound(low), "attained": low == row.threshold, "ok": row_ok,
            "conditional": row.conditional, "footnote": row.footnote, "entries": ents,
        })
    return {"rows": out, "passed": ok}


# -- explicit small modules ------------------------------------------------------------------


@dataclass
class SmallModule:
    """Matrices over F_p for ``x`` (order p) and ``a`` generating a group of the given kind."""

    name: str
    p: int
    x: tuple
    a: tuple
    kind: str
    q: int | None = None


def _fp_rank(mat, p: int) -> int:
    from .abelian import Subgroup

    n = len(mat)
    return Subgroup.generated(HomocyclicModule(p, 1, n), list(zip(*mat))).log_order


def _minus(mat, c: int, p: int):
    return tuple(tuple((v - c * (i == j)) % p for j, v in enumerate(row)) for i, row in enumerate(mat))


def brauer_from_matrices(mod: SmallModule) -> tuple[int, Fraction | list[Fraction]]:
    """``(chi(1), chi(a))`` recovered from eigenspace dimensions.

    For ``a`` of prime order ``q`` with rational character the value follows
    from ``dim C_V(a) = (chi(1) + (q-1) chi(a)) / q``. For the quaternionic and
    Klein cases the eigenvalues are ``+-1`` (and ``+-i`` in conjugate pairs).
    """
    p, n = mod.p, len(mod.a)
    if mod.kind in ("dihedral2q", "nonabelian_pq"):
        fixed = n - _fp_rank(_minus(mod.a, 1, p), p)
        if mod.kind == "dihedral2q":
            return n, Fraction(mod.q * fixed - n, mod.q - 1)
        # only the sum over powers enters the bound; spread it evenly
        avg = Fraction(mod.q * fixed - n, mod.q - 1)
        return n, [avg] * (mod.q - 1)
    plus = n - _fp_rank(_minus(mod.a, 1, p), p)
    minus = n - _fp_rank(_minus(mod.a, -1, p), p)
    return n, Fraction(plus - minus)


def _group_order(mats, p: int) -> int:
    n = len(mats[0])
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return FiniteGroup.closure(mats, matrix_mul_mod(p), ident, cap=10**5).order


EXPECTED_GROUP_ORDER = {"A4": 12, "twoA4": 24}


def oracle_check(mod: SmallModule) -> dict:
    """Compare the bound computed from ``mod``'s matrices with the actual block count of ``x``."""
    cfg = BoundConfig(mod.kind, mod.p, mod.q)
    order = _group_order([mod.x, mod.a], mod.p)
    if mod.kind in EXPECTED_GROUP_ORDER:
        expected = EXPECTED_GROUP_ORDER[mod.kind]
    else:
        expected = 2 * mod.q if mod.kind == "dihedral2q" else mod.p * mod.q
    if order != expected:
        raise BoundError(f"<x, a> has order {order}, expected {expected}")
    one, val = brauer_from_matrices(mod)
    b = bound(cfg, one, val)
    actual = jordan_count(ModuleAut(HomocyclicModule(mod.p, 1, len(mod.x)), mod.x))
    return {"name": mod.name, "bound": b, "ceil": ceil_bound(b), "jordan": actual,
            "sound": ceil_bound(b) <= actual, "tight": ceil_bound(b) == actual}


def d10_module() -> SmallModule:
    """Faithful 4-dimensional F_2-module of the dihedral group of order 10.

    ``a`` is multiplication by a primitive fifth root in F_16 and ``x`` is the
    Frobenius square ``y -> y^4``, which inverts ``a``.
    """
    def mul16(u, v):
        r = 0
        for i in range(4):
            if v >> i & 1:
                r ^= u << i
        for i in range(7, 3, -1):
            if r >> i & 1:
                r ^= 0b10011 << (i - 4)
        return r

    zeta = 1
    for _ in range(3):
        zeta = mul16(zeta, 2)  # 2 generates F_16^*, so 2^3 has order 5

    def matrix(f):
        cols = [f(1 << j) for j in range(4)]
        return tuple(tuple(c >> i & 1 for c in cols) for i in range(4))

    a = matrix(lambda y: mul16(zeta, y))
    x = matrix(lambda y: mul16(mul16(y, y), mul16(y, y)))
    return SmallModule("D10 on F_2^4", 2, x, a, "dihedral2q", 5)


def s3_module() -> SmallModule:
    """Natural module of GL_2(2), a nonabelian group of order 6."""
    x = ((1, 1), (0, 1))
    a = ((0, 1), (1, 1))
    return SmallModule("S3 on F_2^2", 2, x, a, "nonabelian_pq", 3)


def a4_module() -> SmallModule:
    """A4 as the rotation group of a cube: signed permutations of determinant 1 on F_3^3."""
    x = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    a = ((1, 0, 0), (0, 2, 0), (0, 0, 2))
    return SmallModule("A4 on F_3^3", 3, x, a, "A4")


def sl23_module() -> SmallModule:
    """Natural module of SL_2(3)."""
    x = ((1, 1), (0, 1))
    a = ((0, 2), (1, 0))
    return SmallModule("SL2(3) on F_3^2", 3, x, a, "twoA4")


def direct_sum(mods: Sequence[SmallModule], name: str = "sum") -> SmallModule:
    first = mods[0]
    n = sum(len(m.x) for m in mods)

    def diag(key):
        out = [[0] * n for _ in range(n)]
        off = 0
        for m in mods:
            mat = getattr(m, key)
            k = len(mat)
            for i in range(k):
                for j in range(k):
                    out[off + i][off + j] = mat[i][j]
            off += k
        return tuple(tuple(r) for r in out)

    return SmallModule(name, first.p, diag("x"), diag("a"), first.kind, first.q)


def conjugate(mod: SmallModule, g, name: str | None = None) -> SmallModule:
    """Change of basis by an invertible matrix ``g``."""
    from .abelian import mat_inverse

    p = mod.p
    mul = matrix_mul_mod(p)
    gi = mat_inverse(tuple(tuple(r) for r in g), p, 1)
    return SmallModule(name or mod.name, p, mul(mul(g, mod.x), gi), mul(mul(g, mod.a), gi), mod.kind, mod.q)


def trivial_module(like: SmallModule, dim: int) -> SmallModule:
    ident = tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim))
    return SmallModule("trivial", like.p, ident, ident, like.kind, like.q)


def regular_module(like: SmallModule) -> SmallModule:
    """The regular representation of ``<x, a>``, built by closure."""
    p = like.p
    mul = matrix_mul_mod(p)
    n = len(like.x)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    grp = FiniteGroup.closure([like.x, like.a], mul, ident)
    size = grp.order

    def perm_matrix(g):
        idx = grp.index[g]
        row = grp.table[idx]
        return tuple(tuple(int(row[j] == i) for j in range(size)) for i in range(size))

    return SmallModule(f"regular({like.name})", p, perm_matrix(like.x), perm_matrix(like.a), like.kind, like.q)
