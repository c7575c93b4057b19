"""Pure-Python GF(2) kernels; rows are Python ints with bit ``c`` = column ``c``."""

from __future__ import annotations


def rank_ints(rows: list[int]) -> int:
    """Rank over GF(2) by elimination on the lowest set bit."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            other = pivots.get(low)
            if other is None:
                pivots[low] = row
                break
            row ^= other
    return len(pivots)


def min_weight_ints(basis: list[int]) -> int:
    """Minimum weight over nonzero combinations of ``basis``; -1 if empty."""
    k = len(basis)
    if k == 0:
        return -1
    cur = 0
    best = -1
    for g in range(1, 1 << k):
        cur ^= basis[(g & -g).bit_length() - 1]
        weight = cur.bit_count()
        if best < 0 or weight < best:
            best = weight
    return best
