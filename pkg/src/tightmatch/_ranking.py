"""Colex ranking of vertex combinations, vectorised.

A sorted tuple ``s_0 < s_1 < ... < s_{k-1}`` of vertices gets rank
``sum(C(s_t, t+1))``, a bijection between k-subsets of ``[0, n)`` and
``[0, C(n, k))``.  Rank tables let the dense algorithms look up edge colours
and row indices in O(1) numpy gathers.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

import numpy as np


@lru_cache(maxsize=64)
def binom_table(n: int, kmax: int) -> np.ndarray:
    """Pascal table C[i, j] for 0 <= i <= n, 0 <= j <= kmax, int64."""
    table = np.zeros((n + 1, kmax + 1), dtype=np.int64)
    table[:, 0] = 1
    for i in range(1, n + 1):
        upper = min(i, kmax)
        table[i, 1 : upper + 1] = table[i - 1, 0:upper] + table[i - 1, 1 : upper + 1]
        if kmax > i:
            table[i, i + 1 :] = 0
    return table


def rank_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Colex ranks of sorted combination rows, shape (m, k) -> (m,)."""
    k = rows.shape[1]
    table = binom_table(n, k + 2)
    out = np.zeros(len(rows), dtype=np.int64)
    for t in range(k):
        out += table[rows[:, t].astype(np.int64, copy=False), t + 1]
    return out


def rank_tuple(vs: tuple[int, ...]) -> int:
    """Colex rank of one sorted tuple."""
    return sum(comb(v, t + 1) for t, v in enumerate(vs))


def all_combinations(n: int, k: int) -> np.ndarray:
    """All k-subsets of range(n) in lexicographic row order, uint8 (m, k)."""
    m = comb(n, k)
    if m == 0 or k == 0:
        return np.zeros((m, k), dtype=np.uint8)
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n), k)),
        dtype=np.uint8,
        count=m * k,
    )
    return flat.reshape(m, k)


def pair_ranks_with_base(base: tuple[int, ...], rest: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Ranks of ``base ∪ {x, y}`` for all pairs x < y drawn from ``rest``.

    ``base`` is a sorted (k-2)-tuple disjoint from ``rest``.  Returns
    (i_idx, j_idx, ranks) where the pair is (rest[i_idx], rest[j_idx]).
    """
    kb = len(base)
    table = binom_table(n, kb + 4)
    base_arr = np.asarray(base, dtype=np.int64)
    ins = np.searchsorted(base_arr, rest)  # insertion index, 0..kb
    r = len(rest)
    iu, ju = np.triu_indices(r, 1)
    cx, cy = ins[iu], ins[ju]
    # contribution of the base elements depends only on (cx, cy)
    shift_base = np.zeros((kb + 1, kb + 1), dtype=np.int64)
    for a in range(kb + 1):
        for b in range(a, kb + 1):
            s = 0
            for t in range(kb):
                s += int(table[base[t], t + 1 + (a <= t) + (b <= t)])
            shift_base[a, b] = s
    ranks = (
        shift_base[cx, cy]
        + table[rest[iu].astype(np.int64), cx + 1]
        + table[rest[ju].astype(np.int64), cy + 2]
    )
    return iu, ju, ranks


def column_subset_ranks(verts: np.ndarray, cols: tuple[int, ...], n: int) -> np.ndarray:
    """Ranks of the |cols|-subsets obtained by selecting ``cols`` of each row."""
    return rank_rows(verts[:, list(cols)], n)
