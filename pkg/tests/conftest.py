import random

import pytest
from hypothesis import strategies as st

from islandkit.graphs import Graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph(n, edges)


def random_bounded_degree_graph(rng: random.Random, n: int, max_degree: int) -> Graph:
    """Sparse 'planar-ish' graph: a spanning path plus a few random chords,
    respecting a degree cap."""
    degree = [0] * n
    edges = set()
    for v in range(1, n):
        edges.add((v - 1, v))
        degree[v - 1] += 1
        degree[v] += 1
    attempts = 2 * n
    for _ in range(attempts):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v:
            continue
        u, v = min(u, v), max(u, v)
        if (u, v) in edges or degree[u] >= max_degree or degree[v] >= max_degree:
            continue
        edges.add((u, v))
        degree[u] += 1
        degree[v] += 1
    return Graph(n, sorted(edges))


@st.composite
def graphs(draw, max_n: int = 8, min_n: int = 1):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
