"""Sparse incremental Gaussian elimination over a coefficient field.

Vectors are ``dict`` objects mapping orderable column keys to nonzero
coefficients.  The pivot of a stored row is its largest column, so
reducing by a row only introduces smaller columns and a single descending
sweep finishes the reduction.
"""

from __future__ import annotations

from fractions import Fraction
from heapq import heapify, heappop, heappush


class SparseEchelon:
    def __init__(self, p: int = 0):
        self.p = p
        self.rows: dict = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Remainder of ``vec`` modulo the stored rows (a new dict)."""
        p = self.p
        rows = self.rows
        v = dict(vec)
        heap = [_Desc(c) for c in v if c in rows]
        if not heap:
            return v
        heapify(heap)
        while heap:
            col = heappop(heap).key
            a = v.get(col)
            if a is None:
                continue
            row = rows[col]
            for k, b in row.items():
                w = v.get(k)
                if w is None:
                    w = -a * b
                    if p:
                        w %= p
                    v[k] = w
                    if k in rows:
                        heappush(heap, _Desc(k))
                else:
                    w -= a * b
                    if p:
                        w %= p
                    if w:
                        v[k] = w
                    else:
                        del v[k]
        return v

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True when it was independent of the stored rows."""
        r = self.reduce(vec)
        if not r:
            return False
        piv = max(r)
        lc = r[piv]
        if lc != 1:
            inv = pow(lc, -1, self.p) if self.p else Fraction(1) / lc
            if self.p:
                r = {k: c * inv % self.p for k, c in r.items()}
            else:
                r = {k: c * inv for k, c in r.items()}
        self.rows[piv] = r
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)


class _Desc:
    """Max-heap wrapper for arbitrary orderable keys."""

    __slots__ = ("key",)

    def __init__(self, key):
        self.key = key

    def __lt__(self, other):
        return self.key > other.key


def rank(vectors, p: int = 0) -> int:
    ech = SparseEchelon(p)
    for v in vectors:
        ech.add(v)
    return ech.rank
