"""Simple undirected graphs stored as adjacency bitmaps.

Each vertex ``v`` owns one Python ``int`` whose bit ``u`` is set when ``uv``
is an edge.  Rows are kept in a tuple, so a :class:`Graph` is immutable and
hashable; equality is labelled equality (same vertex numbering).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence


def _drop_bit(x: int, v: int) -> int:
    """Remove bit position ``v`` from ``x``, shifting higher bits down."""
    low = x & ((1 << v) - 1)
    return low | ((x >> (v + 1)) << v)


def _iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


class Graph:
    """An immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[int] | None = None, *, check: bool = True):
        if n < 0:
            raise ValueError("order must be non-negative")
        if rows is None:
            rows = (0,) * n
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        if check:
            full = (1 << n) - 1
            for v, r in enumerate(rows):
                if r < 0 or r & ~full:
                    raise ValueError(f"row {v} refers to vertices outside 0..{n - 1}")
                if r >> v & 1:
                    raise ValueError(f"self-loop at vertex {v}")
                for u in _iter_bits(r):
                    if not rows[u] >> v & 1:
                        raise ValueError(f"adjacency not symmetric at ({v}, {u})")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __reduce__(self):
        return (_rebuild, (self.n, self.rows))

    # -- constructors -------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for order {n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)], check=False)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, check=False)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def complete_multipartite(cls, *parts: int) -> "Graph":
        n = sum(parts)
        label = []
        for i, p in enumerate(parts):
            label += [i] * p
        edges = [(u, v) for u, v in combinations(range(n), 2) if label[u] != label[v]]
        return cls.from_edges(n, edges)

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.complete_multipartite(a, b)

    @classmethod
    def petersen(cls) -> "Graph":
        """Outer 5-cycle on 0..4, inner pentagram on 5..9, spokes i -- i+5."""
        outer = [(i, (i + 1) % 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        return cls.from_edges(10, outer + inner + spokes)

    @classmethod
    def from_graph6(cls, data: str | bytes) -> "Graph":
        from .graph6 import decode

        return decode(data)

    # -- basic queries ------------------------------------------------

    def order(self) -> int:
        return self.n

    def size(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def pair_count(self) -> int:
        """N = n(n-1)/2, the size of the complete graph of this order."""
        return self.n * (self.n - 1) // 2

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.rows[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, v: int) -> list[int]:
        self._check_vertex(v)
        return list(_iter_bits(self.rows[v]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, r in enumerate(self.rows):
            for v in _iter_bits(r >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def common_neighbors(self, u: int, v: int) -> int:
        return (self.rows[u] & self.rows[v]).bit_count()

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return self.component_mask(0) == (1 << self.n) - 1

    def component_mask(self, v: int) -> int:
        seen = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in _iter_bits(frontier):
                nxt |= self.rows[u]
            frontier = nxt & ~seen
            seen |= frontier
        return seen

    # -- derived graphs -----------------------------------------------

    def complement(self) -> "Graph":
        full = (1 << self.n) - 1
        return Graph(self.n, [full ^ r ^ (1 << v) for v, r in enumerate(self.rows)], check=False)

    def add_edge(self, u: int, v: int) -> "Graph":
        self._check_vertex(u)
        self._check_vertex(v)
        if u == v:
            raise ValueError("cannot add a self-loop")
        rows = list(self.rows)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph(self.n, rows, check=False)

    def delete_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
        rows = list(self.rows)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph(self.n, rows, check=False)

    def delete_vertex(self, v: int) -> "Graph":
        self._check_vertex(v)
        rows = [_drop_bit(r, v) for i, r in enumerate(self.rows) if i != v]
        return Graph(self.n - 1, rows, check=False)

    def delete_vertices(self, vs: Iterable[int]) -> "Graph":
        keep = set(range(self.n)) - set(self._validated(vs))
        return self.induced_subgraph(keep)

    def induced_subgraph(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled in increasing order."""
        keep = sorted(set(self._validated(vertices)))
        rows = []
        for v in keep:
            r = self.rows[v]
            rows.append(sum(1 << i for i, u in enumerate(keep) if r >> u & 1))
        return Graph(len(keep), rows, check=False)

    def contract_edge(self, u: int, v: int) -> "Graph":
        """Merge ``u`` and ``v`` into the smaller label; the result stays simple."""
        if not self.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge")
        return Graph(self.n - 1, contract_rows(self.rows, u, v), check=False)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the vertex set")
        rows = [0] * self.n
        for v, r in enumerate(self.rows):
            rows[perm[v]] = sum(1 << perm[u] for u in _iter_bits(r))
        return Graph(self.n, rows, check=False)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        rows = list(self.rows) + [r << shift for r in other.rows]
        return Graph(self.n + other.n, rows, check=False)

    # -- isomorphism ----------------------------------------------------

    def canonical_code(self) -> bytes:
        from .canon import canonical_code

        return canonical_code(self)

    def is_isomorphic(self, other: "Graph") -> bool:
        from .canon import is_isomorphic

        return is_isomorphic(self, other)

    def automorphism_count(self) -> int:
        from .canon import automorphism_count

        return automorphism_count(self)

    def to_graph6(self) -> str:
        from .graph6 import encode

        return encode(self)

    # -- dunder ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Graph(n={self.n}, size={self.size()}, g6={self.to_graph6()!r})"

    # -- helpers --------------------------------------------------------

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for order {self.n}")

    def _validated(self, vs: Iterable[int]) -> list[int]:
        vs = list(vs)
        for v in vs:
            self._check_vertex(v)
        return vs


def _rebuild(n, rows):
    return Graph(n, rows, check=False)


def contract_rows(rows: Sequence[int], u: int, v: int) -> tuple[int, ...]:
    """Row-level edge contraction used by the minor search (no validation)."""
    if u > v:
        u, v = v, u
    bu, bv = 1 << u, 1 << v
    merged = (rows[u] | rows[v]) & ~(bu | bv)
    out = []
    for i, r in enumerate(rows):
        if i == v:
            continue
        if i == u:
            r = merged
        elif r & bv:
            r = (r | bu) & ~bv
        out.append(_drop_bit(r, v))
    return tuple(out)


def delete_rows(rows: Sequence[int], v: int) -> tuple[int, ...]:
    return tuple(_drop_bit(r, v) for i, r in enumerate(rows) if i != v)


def order(g: Graph) -> int:
    return g.n


def size(g: Graph) -> int:
    return g.size()


def complement(g: Graph) -> Graph:
    return g.complement()


iter_bits = _iter_bits
