"""Exact sparse elimination.

Vectors are ``{index: int}`` dicts over the rationals (kept integral by
fraction-free updates and gcd normalization) or Python ints as bit rows over
the two-element field.  Pivots are always the smallest index of a vector, so
the echelon basis also answers "largest leading index in a coset" queries.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable

SparseVec = dict[int, int]


def _normalize(v: SparseVec) -> SparseVec:
    g = 0
    for c in v.values():
        g = gcd(g, c)
        if g == 1:
            break
    lead = v[min(v)]
    if lead < 0:
        g = -g
    if g not in (0, 1):
        v = {k: c // g for k, c in v.items()}
    return v


class RationalEchelon:
    """Row-echelon basis of a subspace of Q^N with distinct minimum-index pivots."""

    def __init__(self) -> None:
        self.pivots: dict[int, SparseVec] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: SparseVec) -> SparseVec:
        v = {k: c for k, c in vec.items() if c}
        pivots = self.pivots
        while v:
            lead = min(v)
            p = pivots.get(lead)
            if p is None:
                break
            a, b = p[lead], v[lead]
            if a != 1:
                g = gcd(a, b)
                a, b = a // g, b // g
                if a != 1:
                    for k in v:
                        v[k] *= a
            for k, c in p.items():
                val = v.get(k, 0) - b * c
                if val:
                    v[k] = val
                else:
                    del v[k]
        return v

    def add(self, vec: SparseVec) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        v = _normalize(v)
        self.pivots[min(v)] = v
        return True


def rank_rational(vectors: Iterable[SparseVec]) -> int:
    ech = RationalEchelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


class BinaryEchelon:
    """Same as :class:`RationalEchelon` over the two-element field; rows are ints."""

    def __init__(self) -> None:
        self.pivots: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, row: int) -> int:
        while row:
            low = (row & -row).bit_length() - 1
            p = self.pivots.get(low)
            if p is None:
                break
            row ^= p
        return row

    def add(self, row: int) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        self.pivots[(row & -row).bit_length() - 1] = row
        return True


def rank_binary(rows: Iterable[int]) -> int:
    ech = BinaryEchelon()
    for r in rows:
        ech.add(r)
    return len(ech)
