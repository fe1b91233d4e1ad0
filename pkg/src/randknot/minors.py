"""Minor containment with checkable certificates.

The exact search works on bitmap rows and keeps, for every current vertex,
the set of original vertices merged into it (its branch set so far).  A node
of the search is a minor of the input together with a set of *pinned*
vertices, i.e. vertices already committed to be singleton branch sets.  At
each node an unpinned vertex ``v`` is resolved by branching on

* contracting ``v`` into an unpinned neighbour,
* pinning ``v`` (only when its degree allows it to be a singleton),
* deleting ``v``.

These cover every way ``v`` can sit in a model, so the search is exact.
Before branching, vertices that provably do not matter are removed:
degree <= 1 vertices, suppressed degree-2 vertices (when the target has
minimum degree >= 3) and simplicial vertices of too small degree.  Failed
nodes are memoised by their coloured canonical key, and nodes whose apex
number is below the target's are cut (apex-ness is minor-closed).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .canon import canonical_labelling, canonical_key
from .graph import Graph, contract_rows, delete_rows, iter_bits
from .planarity import apex_search, rows_planar

MEMO_MAX_ORDER = 16


@dataclass(frozen=True)
class MinorCertificate:
    """Disjoint connected branch sets of G, one per vertex of H (in H's order)."""

    branch_sets: tuple[tuple[int, ...], ...]

    def to_json(self) -> list[list[int]]:
        return [list(b) for b in self.branch_sets]


def check_certificate(g: Graph, h: Graph, cert: MinorCertificate) -> bool:
    """Independent check of a minor model: connectivity, disjointness, edge coverage."""
    sets = cert.branch_sets
    if len(sets) != h.n:
        return False
    used: set[int] = set()
    masks = []
    for b in sets:
        if not b or any(not 0 <= v < g.n for v in b) or used.intersection(b):
            return False
        used.update(b)
        members = set(b)
        start = b[0]
        seen = {start}
        todo = [start]
        while todo:
            x = todo.pop()
            for y in g.neighbors(x):
                if y in members and y not in seen:
                    seen.add(y)
                    todo.append(y)
        if seen != members:
            return False
        masks.append(sum(1 << v for v in b))
    for a, c in h.edges():
        if not any(g.rows[v] & masks[c] for v in sets[a]):
            return False
    return True


# -- small helpers on rows --------------------------------------------------


def _find_clique(rows: Sequence[int], r: int, cand: int | None = None) -> list[int] | None:
    if r == 0:
        return []
    if cand is None:
        cand = 0
        for v, row in enumerate(rows):
            if row.bit_count() >= r - 1:
                cand |= 1 << v
    if cand.bit_count() < r:
        return None
    for v in iter_bits(cand):
        sub = rows[v] & cand & ~((1 << (v + 1)) - 1)
        if sub.bit_count() >= r - 1:
            rest = _find_clique(rows, r - 1, sub)
            if rest is not None:
                return [v] + rest
    return None


def _spanning_embedding(hrows: Sequence[int], grows: Sequence[int], verts: list[int]) -> list[int] | None:
    """Injective map of H's vertices onto ``verts`` carrying H-edges to G-edges."""
    h = len(hrows)
    order = sorted(range(h), key=lambda x: -hrows[x].bit_count())
    assign = [-1] * h
    used = 0
    gdeg = {v: grows[v].bit_count() for v in verts}

    def go(i):
        nonlocal used
        if i == h:
            return True
        x = order[i]
        need = hrows[x].bit_count()
        for v in verts:
            if used >> v & 1 or gdeg[v] < need:
                continue
            ok = True
            for y in iter_bits(hrows[x]):
                w = assign[y]
                if w >= 0 and not grows[v] >> w & 1:
                    ok = False
                    break
            if ok:
                assign[x] = v
                used |= 1 << v
                if go(i + 1):
                    return True
                used &= ~(1 << v)
                assign[x] = -1
        return False

    return assign if go(0) else None


@lru_cache(maxsize=64)
def _apex_number_rows(rows: tuple[int, ...], limit: int) -> int:
    for k in range(limit + 1):
        if apex_search(rows, k) is not None:
            return k
    return limit + 1


class _Search:
    def __init__(self, hrows: tuple[int, ...], apex_cut: int, budget: int | None = None):
        self.hrows = hrows
        self.h = len(hrows)
        self.eh = sum(r.bit_count() for r in hrows) // 2
        self.delta = min((r.bit_count() for r in hrows), default=0)
        self.complete = self.eh == self.h * (self.h - 1) // 2
        self.apex_cut = apex_cut  # cut nodes that are (apex_cut)-apex, pinned or not; -1 disables
        self.failed: set = set()
        self.nodes = 0
        self.budget = budget

    # returns list of (branch masks) in H order, or None
    def run(self, rows, bsets):
        return self._node(tuple(rows), list(bsets), 0)

    def _reduce(self, rows, bsets, pins):
        delta = self.delta
        while True:
            n = len(rows)
            changed = False
            for v in range(n):
                r = rows[v]
                d = r.bit_count()
                if pins >> v & 1:
                    if d < delta:
                        return None
                    continue
                if d >= delta:
                    continue
                free = r & ~pins
                if d <= 1 or not free:
                    action = ("del", v)
                elif d == 2 and delta >= 3:
                    action = ("con", v, (free & -free).bit_length() - 1)
                elif all((rows[u] | (1 << u)) & r == r for u in iter_bits(r)):
                    action = ("del", v)
                else:
                    continue
                if action[0] == "del":
                    rows = delete_rows(rows, v)
                    del bsets[v]
                    pins = _drop(pins, v)
                else:
                    rows, bsets, pins = _contract(rows, bsets, pins, v, action[2])
                changed = True
                break
            if not changed:
                return rows, bsets, pins

    def _node(self, rows, bsets, pins):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded
        red = self._reduce(rows, list(bsets), pins)
        if red is None:
            return None
        rows, bsets, pins = red
        n = len(rows)
        m = sum(r.bit_count() for r in rows) // 2
        npins = pins.bit_count()
        if n < self.h or m < self.eh or npins > self.h:
            return None
        if self.complete:
            for v in iter_bits(pins):
                if (rows[v] | (1 << v)) & pins != pins:
                    return None
            clique = _find_clique(rows, self.h)
            if clique is not None:
                return [bsets[v] for v in clique]
        if npins == self.h:
            verts = list(iter_bits(pins))
            emb = _spanning_embedding(self.hrows, rows, verts)
            return None if emb is None else [bsets[v] for v in emb]

        key = None
        if n <= MEMO_MAX_ORDER:
            unpinned = [v for v in range(n) if not pins >> v & 1]
            part = [list(iter_bits(pins)), unpinned] if pins else None
            key = (n, pins.bit_count(), canonical_labelling(rows, part).key)
            if key in self.failed:
                return None
        if self.apex_cut >= 0 and _apex_number_rows(rows, self.apex_cut) <= self.apex_cut:
            if key is not None:
                self.failed.add(key)
            return None

        degs = [r.bit_count() for r in rows]
        free = [v for v in range(n) if not pins >> v & 1]
        v = min(free, key=lambda x: (degs[x], x))
        nbrs = [u for u in iter_bits(rows[v] & ~pins)]
        nbrs.sort(key=lambda u: ((rows[u] & rows[v]).bit_count(), -degs[u], u))
        for u in nbrs:
            r2, b2, p2 = _contract(rows, list(bsets), pins, v, u)
            res = self._node(r2, b2, p2)
            if res is not None:
                return res
        if degs[v] >= self.delta:
            res = self._node(rows, bsets, pins | (1 << v))
            if res is not None:
                return res
        res = self._node(delete_rows(rows, v), bsets[:v] + bsets[v + 1:], _drop(pins, v))
        if res is not None:
            return res
        if key is not None:
            self.failed.add(key)
        return None


class BudgetExceeded(Exception):
    """The exact search visited more nodes than its budget allowed."""


def _drop(mask: int, v: int) -> int:
    low = mask & ((1 << v) - 1)
    return low | ((mask >> (v + 1)) << v)


def _contract(rows, bsets, pins, v, u):
    """Contract edge uv; the merged vertex takes the smaller label."""
    a, b = (u, v) if u < v else (v, u)
    rows = contract_rows(rows, a, b)
    bsets[a] = bsets[a] | bsets[b]
    del bsets[b]
    keep_pin = (pins >> a & 1) | (pins >> b & 1)
    pins = _drop(pins, b)
    if keep_pin:
        pins |= 1 << a
    return rows, bsets, pins


def _greedy_clique(rows, bsets, r):
    """Contract low-degree vertices into their least-overlapping neighbour."""
    rows = tuple(rows)
    bsets = list(bsets)
    while len(rows) >= r:
        clique = _find_clique(rows, r)
        if clique is not None:
            return [bsets[v] for v in clique]
        degs = [x.bit_count() for x in rows]
        v = min(range(len(rows)), key=lambda x: (degs[x], x))
        if degs[v] <= 1 or degs[v] < r - 1 and all(
            (rows[u] | (1 << u)) & rows[v] == rows[v] for u in iter_bits(rows[v])
        ):
            rows = delete_rows(rows, v)
            del bsets[v]
            continue
        nbrs = list(iter_bits(rows[v]))
        u = min(nbrs, key=lambda w: ((rows[w] & rows[v]).bit_count(), -degs[w], w))
        rows, bsets, _ = _contract(rows, bsets, 0, v, u)
    return None


def sparse_reduce(rows: Sequence[int]) -> tuple[tuple[int, ...], list[int]]:
    """Delete degree <= 1 vertices and suppress degree-2 vertices, repeatedly.

    Returns the reduced rows and the branch-set masks (over the input's
    vertices) of the surviving vertices.  Valid for targets of minimum degree
    >= 3.  Queue-driven, so it is cheap on large sparse graphs.
    """
    n = len(rows)
    adj = [set(iter_bits(r)) for r in rows]
    members = [1 << v for v in range(n)]
    alive = [True] * n
    stack = [v for v in range(n) if len(adj[v]) <= 2]
    while stack:
        v = stack.pop()
        if not alive[v] or len(adj[v]) > 2:
            continue
        nb = list(adj[v])
        if len(nb) <= 1:
            alive[v] = False
            for u in nb:
                adj[u].discard(v)
                stack.append(u)
            adj[v].clear()
            continue
        a, b = nb
        # Suppress v by contracting it into a.
        alive[v] = False
        adj[a].discard(v)
        adj[b].discard(v)
        adj[v].clear()
        members[a] |= members[v]
        adj[a].add(b)
        adj[b].add(a)
        stack.extend((a, b))
    live = [v for v in range(n) if alive[v]]
    index = {v: i for i, v in enumerate(live)}
    out = []
    for v in live:
        out.append(sum(1 << index[u] for u in adj[v]))
    return tuple(out), [members[v] for v in live]


def _masks_to_cert(masks) -> MinorCertificate:
    return MinorCertificate(tuple(tuple(iter_bits(m)) for m in masks))


def _target_apex_cut(h: Graph) -> int:
    # apex number of H minus one, capped at 1 (2-apex tests are too costly per node)
    if h.n > 12:
        return -1
    k = _apex_number_rows(h.rows, 2)
    return min(k - 1, 1)


def has_minor(g: Graph, h: Graph, budget: int | None = None) -> MinorCertificate | None:
    """Certificate that ``h`` is a minor of ``g``, or None if it is not.

    ``budget`` caps the number of search nodes; exceeding it raises
    :class:`BudgetExceeded` instead of answering.
    """
    if h.n == 0:
        return MinorCertificate(())
    if g.n < h.n or g.size() < h.size():
        return None
    if h.size() == h.n * (h.n - 1) // 2:
        return has_clique_minor(g, h.n, budget=budget)
    hrows = tuple(h.rows)
    search = _Search(hrows, _target_apex_cut(h), budget)
    rows, bsets = g.rows, [1 << v for v in range(g.n)]
    if search.delta >= 3:
        rows, bsets = _sparse_with_members(rows)
    masks = search.run(rows, bsets)
    return None if masks is None else _masks_to_cert(masks)


def _sparse_with_members(rows):
    reduced, members = sparse_reduce(rows)
    return reduced, members


def has_clique_minor(g: Graph, r: int, budget: int | None = None) -> MinorCertificate | None:
    """Certificate for a K_r minor of ``g``, or None if there is none."""
    if r < 1:
        raise ValueError("r must be at least 1")
    if g.n < r or g.size() < r * (r - 1) // 2:
        return None
    rows, bsets = g.rows, [1 << v for v in range(g.n)]
    if r >= 4:
        rows, bsets = sparse_reduce(rows)
    elif r == 3:
        # a K_3 minor is exactly a cycle
        cyc = _cycle_minor(g)
        return cyc
    if r <= 2:
        if r == 1:
            return MinorCertificate(((0,),))
        u, v = g.edges()[0]
        return MinorCertificate(((u,), (v,)))
    if len(rows) < r:
        return None
    if r >= 5 and len(rows) > 4:
        cut = 0 if r == 5 else 1
        if _apex_number_rows(tuple(rows), cut) <= cut:
            return None
    masks = _greedy_clique(rows, bsets, r)
    if masks is None:
        hrows = Graph.complete(r).rows
        search = _Search(hrows, -1 if r < 5 else min(r - 5, 1), budget)
        masks = search.run(rows, bsets)
    return None if masks is None else _masks_to_cert(masks)


def _cycle_minor(g: Graph) -> MinorCertificate | None:
    """K_3 minor: close a cycle with the first non-forest edge, split it into three arcs."""
    forest: dict[int, list[int]] = {v: [] for v in range(g.n)}
    root = list(range(g.n))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for u, v in g.edges():
        a, b = find(u), find(v)
        if a != b:
            root[a] = b
            forest[u].append(v)
            forest[v].append(u)
            continue
        prev = {u: None}
        todo = [u]
        while v not in prev:
            x = todo.pop()
            for y in forest[x]:
                if y not in prev:
                    prev[y] = x
                    todo.append(y)
        path = [v]
        while path[-1] != u:
            path.append(prev[path[-1]])
        return MinorCertificate(((path[0],), (path[1],), tuple(sorted(path[2:]))))
    return None


def mader_certifies(g: Graph) -> bool:
    """Mader's edge bound: order >= 7 and size >= 5*order - 14 force a K_7 minor."""
    return g.n >= 7 and g.size() >= 5 * g.n - 14


# -- Delta-Y family ---------------------------------------------------------


def delta_y_moves(g: Graph) -> list[Graph]:
    """All graphs one Delta-Y or Y-Delta move away from ``g`` (kept simple)."""
    out = []
    rows = g.rows
    n = g.n
    for a in range(n):
        for b in iter_bits(rows[a] >> (a + 1) << (a + 1)):
            for c in iter_bits(rows[a] & rows[b] & ~((1 << (b + 1)) - 1)):
                new = list(rows) + [0]
                for x, y in ((a, b), (b, c), (a, c)):
                    new[x] &= ~(1 << y)
                    new[y] &= ~(1 << x)
                for x in (a, b, c):
                    new[x] |= 1 << n
                    new[n] |= 1 << x
                out.append(Graph(n + 1, new, check=False))
    for v in range(n):
        if rows[v].bit_count() != 3:
            continue
        a, b, c = iter_bits(rows[v])
        new = list(rows)
        for x, y in ((a, b), (b, c), (a, c)):
            new[x] |= 1 << y
            new[y] |= 1 << x
        out.append(Graph(n, new, check=False).delete_vertex(v))
    return out


def delta_y_closure(g: Graph) -> list[Graph]:
    """Closure of ``{g}`` under Delta-Y and Y-Delta moves, one graph per class."""
    seen = {canonical_key(g.rows): g}
    todo = [g]
    while todo:
        x = todo.pop()
        for y in delta_y_moves(x):
            k = canonical_key(y.rows)
            if k not in seen:
                seen[k] = y
                todo.append(y)
    return sorted(seen.values(), key=lambda x: (x.n, x.to_graph6()))


@lru_cache(maxsize=1)
def petersen_family() -> tuple[Graph, ...]:
    """The seven graphs Delta-Y equivalent to K_6, validated before use."""
    fam = tuple(delta_y_closure(Graph.complete(6)))
    if len(fam) != 7 or any(m.size() != 15 for m in fam):
        raise RuntimeError(f"Petersen family construction failed: {[(m.n, m.size()) for m in fam]}")
    return fam


def petersen_family_minor(g: Graph, budget: int | None = None) -> tuple[int, MinorCertificate] | None:
    """(index into petersen_family(), certificate) for the first member found as a minor."""
    fam = petersen_family()
    if g.size() < 15 or g.n < 6:
        return None
    if _apex_number_rows(tuple(g.rows), 1) <= 1:
        return None
    order = sorted(range(len(fam)), key=lambda i: (fam[i].n, i))
    for i in order:
        cert = has_minor(g, fam[i], budget=budget)
        if cert is not None:
            return i, cert
    return None
