"""Arithmetic in F_4 = {0, 1, w, w^2} encoded as 0, 1, 2, 3 with w^2 = w + 1.

Addition is XOR. Conjugation is the Frobenius map x -> x^2.
"""
from __future__ import annotations

from collections.abc import Sequence

ZERO, ONE, W, WBAR = 0, 1, 2, 3
_LOG = {1: 0, 2: 1, 3: 2}
_EXP = [1, 2, 3]
NAMES = {0: "0", 1: "1", 2: "w", 3: "wbar"}


def mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _EXP[(_LOG[a] + _LOG[b]) % 3]


def inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in F_4")
    return _EXP[(-_LOG[a]) % 3]


def conj(a: int) -> int:
    return mul(a, a)


def trace(a: int) -> int:
    """Absolute trace to F_2."""
    return a ^ conj(a)


def power_of_w(j: int) -> int:
    return _EXP[j % 3]


Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


def vadd(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(x ^ y for x, y in zip(a, b))


def vscale(c: int, a: Sequence[int]) -> Vec:
    return tuple(mul(c, x) for x in a)


def vconj(a: Sequence[int]) -> Vec:
    return tuple(conj(x) for x in a)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    out = 0
    for x, y in zip(a, b):
        out ^= mul(x, y)
    return out


def mat(rows: Sequence[Sequence[int]]) -> Mat:
    return tuple(tuple(r) for r in rows)


def mmul(a: Mat, b: Mat) -> Mat:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def mvec(a: Mat, v: Sequence[int]) -> Vec:
    return tuple(dot(row, v) for row in a)


def madd(a: Mat, b: Mat) -> Mat:
    return tuple(vadd(x, y) for x, y in zip(a, b))


def mconj(a: Mat) -> Mat:
    return tuple(vconj(r) for r in a)


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a))


def identity(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zero(n: int) -> Mat:
    return tuple((0,) * n for _ in range(n))


def minv(a: Mat) -> Mat:
    n = len(a)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c]), None)
        if piv is None:
            raise ValueError("singular matrix over F_4")
        aug[c], aug[piv] = aug[piv], aug[c]
        s = inv(aug[c][c])
        aug[c] = [mul(s, x) for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x ^ mul(f, y) for x, y in zip(aug[i], aug[c])]
    return tuple(tuple(r[n:]) for r in aug)


def block(a: Mat, b: Mat, c: Mat, d: Mat) -> Mat:
    """The block matrix [[a, b], [c, d]]."""
    return tuple(ra + rb for ra, rb in zip(a, b)) + tuple(rc + rd for rc, rd in zip(c, d))


def span(vectors: Sequence[Sequence[int]]) -> set[Vec]:
    """All F_4-linear combinations."""
    if not vectors:
        return set()
    n = len(vectors[0])
    out = {(0,) * n}
    for v in vectors:
        out = {vadd(x, vscale(c, v)) for x in out for c in range(4)}
    return out


def to_bits(v: Sequence[int]) -> int:
    """F_2 view: coordinate k contributes bits 2k (the 1 part) and 2k+1 (the w part)."""
    out = 0
    for k, x in enumerate(v):
        out |= (x & 1) << (2 * k) | (x >> 1) << (2 * k + 1)
    return out


def from_bits(b: int, n: int) -> Vec:
    return tuple(((b >> (2 * k)) & 1) | (((b >> (2 * k + 1)) & 1) << 1) for k in range(n))


def f2_matrix(a: Mat) -> tuple[tuple[int, ...], ...]:
    """The 2n x 2n F_2 matrix of an F_4-linear map in the bit layout of ``to_bits``."""
    n = len(a)
    cols = []
    for k in range(n):
        for unit in (1, 2):
            e = tuple(unit if j == k else 0 for j in range(n))
            img = to_bits(mvec(a, e))
            cols.append(tuple((img >> i) & 1 for i in range(2 * n)))
    return tuple(zip(*cols))


def label(v: Sequence[int]) -> str:
    return "(" + ",".join(NAMES[x] for x in v) + ")"
