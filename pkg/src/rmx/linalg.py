"""Exact dense linear algebra over Q(zeta_N), for small matrices."""

from __future__ import annotations

from typing import Sequence

from .cyclotomic import CycNumber


def matrix_rank(rows: Sequence[Sequence[CycNumber]]) -> int:
    """Rank by Gaussian elimination with exact pivots."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    rank = 0
    ncols = len(m[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if not m[r][col].is_zero()), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = m[rank][col].inverse()
        prow = [x * inv for x in m[rank]]
        m[rank] = prow
        for r in range(len(m)):
            if r != rank and not m[r][col].is_zero():
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], prow)]
        rank += 1
    return rank
