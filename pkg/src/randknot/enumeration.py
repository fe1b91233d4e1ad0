"""Isomorphism-free generation of all graphs of a given order.

Graphs of order n are grown from those of order n-1 by adding one vertex
adjacent to a subset S of the old vertices (canonical augmentation):

* only one subset per orbit of Aut(parent) on subsets is tried;
* a child is kept only if the new vertex lies in the orbit of the child's
  canonically chosen vertex (max degree, then max neighbour-degree sum, then
  max triangle count, ties broken by the canonical labelling).

Under these two rules each isomorphism class appears exactly once.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import comb
from typing import Iterator

from .canon import canonical_labelling, canonical_key
from .graph import Graph, iter_bits

ENUMERATION_CAP = 9


class UnsupportedOrder(ValueError):
    """Requested order is beyond what exhaustive enumeration supports."""


def _check_cap(n: int, cap: int = ENUMERATION_CAP) -> None:
    if n < 0:
        raise ValueError("order must be non-negative")
    if n > cap:
        raise UnsupportedOrder(
            f"order {n} exceeds the enumeration cap {cap}; use the |Aut|-weighted "
            "labelled estimator (randknot.models.unlabelled_weight) instead"
        )


def _subset_orbit_reps(m: int, gens) -> list[int]:
    total = 1 << m
    if not gens:
        return list(range(total))
    tables = []
    for g in gens:
        img = [0] * total
        for s in range(1, total):
            low = s & -s
            img[s] = img[s ^ low] | (1 << g[low.bit_length() - 1])
        tables.append(img)
    seen = bytearray(total)
    reps = []
    for s in range(total):
        if seen[s]:
            continue
        reps.append(s)
        seen[s] = 1
        stack = [s]
        while stack:
            x = stack.pop()
            for img in tables:
                y = img[x]
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
    return reps


def _nbr_degree_sum(rows, degs, u):
    return sum(degs[w] for w in iter_bits(rows[u]))


def _triangles(rows, u):
    r = rows[u]
    return sum((rows[w] & r).bit_count() for w in iter_bits(r))


def _accept(rows: tuple[int, ...]) -> bool:
    """Canonical-deletion test for the last vertex of ``rows``."""
    n = len(rows)
    new = n - 1
    degs = [r.bit_count() for r in rows]
    md = max(degs)
    if degs[new] != md:
        return False
    cand = [u for u in range(n) if degs[u] == md]
    for inv in (lambda u: _nbr_degree_sum(rows, degs, u), lambda u: _triangles(rows, u)):
        if len(cand) == 1:
            return True
        vals = {u: inv(u) for u in cand}
        best = max(vals.values())
        if vals[new] != best:
            return False
        cand = [u for u in cand if vals[u] == best]
    if len(cand) == 1:
        return True
    chosen = set(cand)
    res = canonical_labelling(rows, [cand, [u for u in range(n) if u not in chosen]])
    orb = res.orbits()
    return orb[res.labelling[0]] == orb[new]


def _children(parent: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    m = len(parent)
    gens = canonical_labelling(parent).generators if m else ()
    bit = 1 << m
    for s in _subset_orbit_reps(m, gens):
        rows = tuple(r | bit if s >> i & 1 else r for i, r in enumerate(parent)) + (s,)
        if _accept(rows):
            yield rows


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for parent in _level(n - 1):
        out.extend(_children(parent))
    return tuple(out)


def enumerate_unlabelled(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Graph]:
    """One representative per isomorphism class of order ``n``, in a fixed order."""
    _check_cap(n, cap)
    for rows in _level(n):
        yield Graph(n, rows, check=False)


def unlabelled_rows(n: int, cap: int = ENUMERATION_CAP) -> tuple[tuple[int, ...], ...]:
    """Raw bitmap rows of every class representative (cached)."""
    _check_cap(n, cap)
    return _level(n)


def count_unlabelled(n: int, cap: int = ENUMERATION_CAP) -> int:
    """Gamma_n, the number of unlabelled graphs on n vertices."""
    _check_cap(n, cap)
    return len(_level(n))


@lru_cache(maxsize=None)
def _size_profile(n: int) -> tuple[int, ...]:
    counts = Counter(sum(r.bit_count() for r in rows) // 2 for rows in _level(n))
    return tuple(counts.get(k, 0) for k in range(comb(n, 2) + 1))


def count_unlabelled_by_size(n: int, k: int, cap: int = ENUMERATION_CAP) -> int:
    """Gamma_{n,k}: unlabelled graphs of order n with exactly k edges."""
    _check_cap(n, cap)
    if not 0 <= k <= comb(n, 2):
        raise ValueError(f"size {k} out of range 0..{comb(n, 2)}")
    return _size_profile(n)[k]


def size_profile(n: int, cap: int = ENUMERATION_CAP) -> list[int]:
    """[Gamma_{n,0}, ..., Gamma_{n,N}]."""
    _check_cap(n, cap)
    return list(_size_profile(n))


def count_by_canonicalisation(n: int) -> tuple[int, list[int]]:
    """Cross-check: canonicalise every labelled graph of order n (n <= 5 or so).

    Returns (Gamma_n, size profile).  Cost is 2**N canonical labellings.
    """
    big_n = comb(n, 2)
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    seen: dict[tuple[int, int], int] = {}
    for mask in range(1 << big_n):
        rows = [0] * n
        for b, (i, j) in enumerate(pairs):
            if mask >> b & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        seen.setdefault(canonical_key(rows), mask.bit_count())
    profile = [0] * (big_n + 1)
    for k in seen.values():
        profile[k] += 1
    return len(seen), profile
