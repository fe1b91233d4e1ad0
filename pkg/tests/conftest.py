import random

import pytest
from hypothesis import strategies as st

from randknot.graph import Graph


@st.composite
def graphs(draw, min_n=0, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, b in zip(pairs, bits) if b])


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph.from_edges(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(12345)
