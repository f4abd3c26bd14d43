"""Bit-packed linear algebra over F_2.

A vector is a Python int whose bit ``j`` holds coordinate ``j``. Row-reduced
forms use the lowest set bit as the pivot, which matches the column order of
the general Howell routine, so both produce identical canonical rows.
"""
from __future__ import annotations

from collections.abc import Iterable


def rref(vectors: Iterable[int]) -> list[int]:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            low = v & -v
            piv = basis.get(low)
            if piv is None:
                break
            v ^= piv
        if not v:
            continue
        low = v & -v
        for k, b in basis.items():
            if v & k:
                v ^= b
        for k in basis:
            if basis[k] & low:
                basis[k] ^= v
        basis[low] = v
    return [basis[k] for k in sorted(basis)]


def rank(vectors: Iterable[int]) -> int:
    return len(rref(vectors))


def reduce(v: int, basis: list[int]) -> int:
    """Residue of ``v`` modulo the span of an rref basis."""
    for b in basis:
        if v & (b & -b):
            v ^= b
    return v


def in_span(v: int, basis: list[int]) -> bool:
    return reduce(v, basis) == 0


def apply(cols: list[int], x: int) -> int:
    out = 0
    j = 0
    while x:
        if x & 1:
            out ^= cols[j]
        x >>= 1
        j += 1
    return out


def kernel(cols: list[int], n: int) -> list[int]:
    """Basis (rref) of ``{x : sum x_j cols[j] = 0}`` for an ``n``-bit codomain."""
    width = max([c.bit_length() for c in cols] + [n])
    rows = rref(c | (1 << (width + j)) for j, c in enumerate(cols))
    mask = (1 << width) - 1
    return rref(r >> width for r in rows if not r & mask)


def intersect(a: list[int], b: list[int], n: int) -> list[int]:
    rows = [x | (x << n) for x in a] + list(b)
    mask = (1 << n) - 1
    return rref(r >> n for r in rref(rows) if not r & mask)


def preimage(cols: list[int], target: list[int], n: int) -> list[int]:
    """Basis of ``{x : M x in span(target)}`` where ``M`` has columns ``cols``."""
    rows = [c | (1 << (n + j)) for j, c in enumerate(cols)] + list(target)
    mask = (1 << n) - 1
    return rref(r >> n for r in rref(rows) if not r & mask)


def mat_mul_cols(a: list[int], b: list[int]) -> list[int]:
    """Columns of ``A B`` given columns of both factors."""
    return [apply(a, c) for c in b]
