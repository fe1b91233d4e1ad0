"""Canonical labelling and automorphism groups by individualisation-refinement.

The search follows the usual nauty scheme: refine an ordered partition to an
equitable one, individualise a vertex of the first non-singleton cell, and
recurse.  Every discrete leaf gives a labelling; the canonical form is the
leaf whose adjacency key is smallest.  Leaves with equal keys yield
automorphisms, which are used to prune sibling subtrees (orbit pruning) and to
abandon subtrees equivalent to the first path.  The automorphisms found
generate the full group, and the group order is the product of the orbit
sizes of the first-path vertices in the successive pointwise stabilisers.

The adjacency key of a labelling ``lab`` (position -> vertex) concatenates the
upper-triangle columns ``j = 1..n-1``; inside column ``j`` the bit for row
``i`` has weight ``2**i``, and earlier columns are more significant.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .graph import Graph, iter_bits

Perm = tuple[int, ...]


def refine(rows: Sequence[int], cells: list[list[int]], splitters: list[int] | None = None) -> list[list[int]]:
    """Equitable refinement of an ordered partition.

    ``splitters`` are the cell masks that must be used as splitters; when
    omitted every cell is.  Fragments of a split cell are ordered by
    increasing neighbour count, which keeps the result label-invariant.
    """
    n = len(rows)
    if splitters is None:
        splitters = [_mask(c) for c in cells]
    queue = deque(splitters)
    while queue and len(cells) < n:
        w = queue.popleft()
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            first = (rows[cell[0]] & w).bit_count()
            split = None
            for idx in range(1, len(cell)):
                if (rows[cell[idx]] & w).bit_count() != first:
                    split = idx
                    break
            if split is None:
                out.append(cell)
                continue
            groups: dict[int, list[int]] = {}
            for v in cell:
                groups.setdefault((rows[v] & w).bit_count(), []).append(v)
            for k in sorted(groups):
                frag = groups[k]
                out.append(frag)
                queue.append(_mask(frag))
        cells = out
    return cells


def _mask(vs) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def leaf_key(rows: Sequence[int], lab: Sequence[int]) -> int:
    n = len(lab)
    pos = [0] * n
    for i, v in enumerate(lab):
        pos[v] = i
    key = 0
    for j in range(1, n):
        col = 0
        for u in iter_bits(rows[lab[j]]):
            p = pos[u]
            if p < j:
                col |= 1 << p
        key = (key << j) | col
    return key


def _orbits_of(gens: list[Perm], n: int) -> list[int]:
    """Orbit representative (least element) of every point under ``gens``."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(n):
            a, b = find(x), find(g[x])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(x) for x in range(n)]


@dataclass(frozen=True)
class CanonResult:
    labelling: tuple[int, ...]  # position -> vertex of the canonical form
    key: int
    generators: tuple[Perm, ...]
    group_order: int

    def orbits(self) -> list[int]:
        return _orbits_of(list(self.generators), len(self.labelling))


class _Search:
    def __init__(self, rows: Sequence[int]):
        self.rows = rows
        self.n = len(rows)
        self.gens: list[Perm] = []
        self.first_lab: list[int] | None = None
        self.first_key = None
        self.best_lab: list[int] | None = None
        self.best_key = None
        self.first_path: list[tuple[list[int], int]] = []  # (target cell, chosen vertex)

    def _record(self, lab_a, lab_b):
        perm = [0] * self.n
        for a, b in zip(lab_a, lab_b):
            perm[a] = b
        perm = tuple(perm)
        if any(perm[i] != i for i in range(self.n)):
            self.gens.append(perm)

    def _stabiliser_gens(self, prefix: list[int]) -> list[Perm]:
        return [g for g in self.gens if all(g[x] == x for x in prefix)]

    def run(self, cells: list[list[int]]):
        cells = refine(self.rows, cells)
        self._node(cells, [], on_first=True)

    def _node(self, cells, prefix, on_first):
        """Returns the depth to backtrack to, or None to continue normally."""
        depth = len(prefix)
        if len(cells) == self.n:
            lab = [c[0] for c in cells]
            key = leaf_key(self.rows, lab)
            if self.first_lab is None:
                self.first_lab = self.best_lab = lab
                self.first_key = self.best_key = key
                return None
            if key == self.first_key:
                self._record(self.first_lab, lab)
                # Deepest level at which this path still agrees with the first path.
                d = 0
                while d < depth and prefix[d] == self.first_path[d][1]:
                    d += 1
                return d
            if key < self.best_key:
                self.best_lab, self.best_key = lab, key
            elif key == self.best_key:
                self._record(self.best_lab, lab)
            return None

        ci = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = cells[ci]
        explored: list[int] = []
        for v in target:
            if explored:
                gens = self._stabiliser_gens(prefix)
                if gens:
                    orb = _orbits_of(gens, self.n)
                    if any(orb[v] == orb[e] for e in explored):
                        continue
            explored.append(v)
            child = cells[:ci] + [[v], [x for x in target if x != v]] + cells[ci + 1:]
            child = refine(self.rows, child, [1 << v])
            first_child = on_first and len(explored) == 1
            if first_child:
                self.first_path.append((target, v))
            back = self._node(child, prefix + [v], first_child)
            if back is not None and back < depth:
                return back
        return None

    def group_order(self) -> int:
        order = 1
        prefix: list[int] = []
        for target, v in self.first_path:
            gens = self._stabiliser_gens(prefix)
            orb = _orbits_of(gens, self.n)
            order *= sum(1 for x in target if orb[x] == orb[v])
            prefix.append(v)
        return order


def canonical_labelling(rows: Sequence[int], partition: list[list[int]] | None = None) -> CanonResult:
    """Canonical labelling of a (vertex-coloured) graph given as bitmap rows.

    ``partition`` is an ordered colouring; the canonical form then respects
    colour order, and automorphisms preserve colours.
    """
    rows = tuple(rows)
    n = len(rows)
    if n == 0:
        return CanonResult((), 0, (), 1)
    cells = [list(c) for c in partition if c] if partition else [list(range(n))]
    s = _Search(rows)
    s.run(cells)
    return CanonResult(tuple(s.best_lab), s.best_key, tuple(s.gens), s.group_order())


def canonical_form(g: Graph) -> Graph:
    lab = canonical_labelling(g.rows).labelling
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return g.relabel(perm)


def canonical_code(g: Graph) -> bytes:
    """graph6 bytes of the canonical form: equal exactly for isomorphic graphs."""
    return canonical_form(g).to_graph6().encode("ascii")


def canonical_key(rows: Sequence[int]) -> tuple[int, int]:
    """Cheaper hashable iso-invariant key ``(n, adjacency key)`` for hot loops."""
    return len(rows), canonical_labelling(rows).key


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.size() != h.size() or sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_key(g.rows) == canonical_key(h.rows)


def automorphism_count(g: Graph) -> int:
    return canonical_labelling(g.rows).group_order


def automorphism_generators(g: Graph) -> tuple[Perm, ...]:
    return canonical_labelling(g.rows).generators


def orbit_size(g: Graph) -> int:
    """Number of distinct labelled graphs isomorphic to ``g``."""
    return factorial(g.n) // automorphism_count(g)
