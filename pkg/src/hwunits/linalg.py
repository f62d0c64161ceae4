"""Exact Gaussian elimination over Z/p."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Solution:
    consistent: bool
    rank: int
    rows: int
    cols: int
    x: np.ndarray | None  # free variables set to zero

    def as_dict(self) -> dict:
        return {"consistent": self.consistent, "rank": self.rank, "rows": self.rows, "cols": self.cols}


def solve_mod_p(a: np.ndarray, b: np.ndarray, p: int) -> Solution:
    """Solve ``a x = b`` over Z/p for prime p by row reduction of ``[a | b]``."""
    rows, cols = a.shape
    if p > 2**31:
        raise ValueError("modulus too large for int64 elimination")
    m = np.concatenate([a % p, (b % p).reshape(-1, 1)], axis=1).astype(np.int64)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if not len(nz):
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        others = np.flatnonzero(m[:, c])
        others = others[others != r]
        if len(others):
            m[others] = (m[others] - np.outer(m[others, c], m[r])) % p
        pivots.append(c)
        r += 1
    rank = r
    consistent = not np.any(m[rank:, cols])
    x = None
    if consistent:
        x = np.zeros(cols, dtype=np.int64)
        for i, c in enumerate(pivots):
            x[c] = m[i, cols]
    return Solution(consistent, rank, rows, cols, x)


def rank_mod_p(a: np.ndarray, p: int) -> int:
    return solve_mod_p(a, np.zeros(a.shape[0], dtype=np.int64), p).rank
