"""Planarity and the n-apex property.

Planarity itself is delegated to networkx's left-right test; the functions
here add the cheap Euler-bound shortcuts and the apex-set search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import networkx as nx

from .graph import Graph, delete_rows, iter_bits


def _rows_size(rows: Sequence[int]) -> int:
    return sum(r.bit_count() for r in rows) // 2


def rows_planar(rows: Sequence[int]) -> bool:
    n = len(rows)
    m = _rows_size(rows)
    if n <= 4 or m <= 8:
        return True
    if m > 3 * n - 6:
        return False
    # Peel degree <= 1 vertices; they never affect planarity.
    live = (1 << n) - 1
    deg = [r.bit_count() for r in rows]
    stack = [v for v in range(n) if deg[v] <= 1]
    while stack:
        v = stack.pop()
        if not live >> v & 1:
            continue
        live &= ~(1 << v)
        for u in iter_bits(rows[v] & live):
            deg[u] -= 1
            if deg[u] <= 1:
                stack.append(u)
    k = live.bit_count()
    if k <= 4:
        return True
    m = sum(deg[v] for v in iter_bits(live)) // 2
    if m <= 8:
        return True
    if m > 3 * k - 6:
        return False
    g = nx.Graph()
    for v in iter_bits(live):
        r = rows[v] & live
        g.add_edges_from((v, u) for u in iter_bits(r >> (v + 1) << (v + 1)))
    return nx.check_planarity(g)[0]


def is_planar(g: Graph) -> bool:
    return rows_planar(g.rows)


@dataclass(frozen=True)
class ApexResult:
    is_n_apex: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.is_n_apex


def _removed_edges(rows, subset) -> int:
    mask = 0
    for v in subset:
        mask |= 1 << v
    return sum(rows[v].bit_count() for v in subset) - sum((rows[v] & mask).bit_count() for v in subset) // 2


def apex_search(rows: Sequence[int], k: int) -> tuple[int, ...] | None:
    """Least-size, then lexicographically least, vertex set whose removal leaves a planar graph."""
    if k < 0:
        raise ValueError("k must be non-negative")
    n = len(rows)
    m = _rows_size(rows)
    for s in range(min(k, n) + 1):
        rest = n - s
        limit = 3 * rest - 6 if rest >= 3 else rest * (rest - 1) // 2
        for subset in combinations(range(n), s):
            if m - _removed_edges(rows, subset) > limit:
                continue
            sub = rows
            for v in reversed(subset):
                sub = delete_rows(sub, v)
            if rows_planar(sub):
                return subset
    return None


def is_n_apex(g: Graph, k: int) -> ApexResult:
    """Whether deleting at most ``k`` vertices of ``g`` can leave a planar graph."""
    w = apex_search(g.rows, k)
    return ApexResult(w is not None, w)


def apex_number(g: Graph, limit: int | None = None) -> int | None:
    """Smallest k for which ``g`` is k-apex (None if above ``limit``)."""
    top = g.n if limit is None else limit
    for k in range(top + 1):
        if apex_search(g.rows, k) is not None:
            return k
    return None
