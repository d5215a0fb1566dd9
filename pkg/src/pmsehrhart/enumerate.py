"""Exhaustive and random graph generation for the verification suites.

Isomorphism classes are deduplicated with nauty certificates (``pynauty``);
without it, the networkx atlas covers n <= 7.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .graph import Graph, is_connected

try:
    import pynauty
except ImportError:  # pragma: no cover
    pynauty = None


def _certificate(g: Graph) -> bytes:
    adj = {v: list(g.adj[v]) for v in range(g.n) if g.adj[v]}
    return pynauty.certificate(pynauty.Graph(g.n, adjacency_dict=adj))


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of graphs on n vertices."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n <= 1:
        return (Graph.empty(n),)
    if pynauty is None:
        return _atlas(n)
    seen: dict[bytes, Graph] = {}
    new = n - 1
    for base in all_graphs(n - 1):
        edges = list(base.edges)
        for nb in range(1 << (n - 1)):
            g = Graph.from_edges(n, edges + [(j, new) for j in range(n - 1) if nb >> j & 1])
            seen.setdefault(_certificate(g), g)
    return tuple(sorted(seen.values(), key=lambda g: (g.m, g.masks)))


def connected_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in all_graphs(n) if is_connected(g))


def _atlas(n: int) -> tuple[Graph, ...]:
    import networkx as nx

    if n > 7:
        raise RuntimeError("install pynauty for exhaustive generation beyond 7 vertices")
    out = [
        Graph.from_edges(n, G.edges())
        for G in nx.graph_atlas_g()
        if G.number_of_nodes() == n
    ]
    return tuple(sorted(out, key=lambda g: (g.m, g.masks)))


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def random_graphs(count: int, n_min: int, n_max: int, seed: int = 0):
    """Seeded G(n, p) samples with n and p drawn per graph."""
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(n_min, n_max)
        yield random_graph(n, rng.uniform(0.15, 0.85), rng)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    while True:
        g = random_graph(n, p, rng)
        if is_connected(g):
            return g
