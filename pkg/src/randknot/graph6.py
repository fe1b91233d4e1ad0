"""graph6 encoding (McKay's ASCII format for simple undirected graphs).

Only the plain graph6 variant is handled; sparse6/digraph6 are not.  An
optional ``>>graph6<<`` header is accepted on input and never written.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import Graph

HEADER = ">>graph6<<"


def _encode_order(n: int) -> list[int]:
    if n < 63:
        return [n]
    if n < 258048:
        return [63] + [(n >> s) & 63 for s in (12, 6, 0)]
    if n < 1 << 36:
        return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]
    raise ValueError("order too large for graph6")


def encode(g: Graph) -> str:
    out = _encode_order(g.n)
    rows = g.rows
    acc = nbits = 0
    for j in range(1, g.n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | (rj >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc)
                acc = nbits = 0
    if nbits:
        out.append(acc << (6 - nbits))
    return "".join(chr(c + 63) for c in out)


def decode(data: str | bytes) -> Graph:
    if isinstance(data, bytes):
        data = data.decode("ascii")
    data = data.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER):]
    vals = [ord(c) - 63 for c in data]
    if not vals or any(not 0 <= x < 64 for x in vals):
        raise ValueError(f"not a graph6 string: {data!r}")
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) > 1 and vals[1] < 63:
        if len(vals) < 4:
            raise ValueError("truncated graph6 order field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    else:
        if len(vals) < 8:
            raise ValueError("truncated graph6 order field")
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        body = vals[8:]
    nbits = n * (n - 1) // 2
    if len(body) != -(-nbits // 6):
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {-(-nbits // 6)} for order {n}")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph(n, rows, check=False)


def read(fh: TextIO) -> Iterator[Graph]:
    for line in fh:
        line = line.strip()
        if line:
            yield decode(line)


def write(fh: TextIO, graphs: Iterable[Graph]) -> int:
    count = 0
    for g in graphs:
        fh.write(encode(g) + "\n")
        count += 1
    return count
