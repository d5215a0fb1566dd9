"""Named graph families, addressable from the command line as ``name:arg[:arg]``."""

from __future__ import annotations

from ..errors import GraphArgumentError
from ..graph import Graph, build_dg, complement, parse_graph6


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphArgumentError("cycles need n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def caterpillar_graph(n: int, k: int) -> Graph:
    """Spine 0..n-1; the leaves of spine vertex i are n + i*k .. n + i*k + k - 1."""
    edges = [(i, i + 1) for i in range(n - 1)]
    edges += [(i, n + i * k + j) for i in range(n) for j in range(k)]
    return Graph.from_edges(n * (k + 1), edges)


def kary_tree_graph(k: int, r: int) -> Graph:
    """Complete k-ary tree of rank r in BFS order (root 0, children of v are kv+1..kv+k)."""
    if k < 1 or r < 0:
        raise GraphArgumentError("need k >= 1 and r >= 0")
    size = sum(k**i for i in range(r + 1))
    return Graph.from_edges(size, [(v, k * v + c) for v in range(size) for c in range(1, k + 1) if k * v + c < size])


def cycle_complement(n: int) -> Graph:
    return complement(cycle_graph(n))


_FAMILIES = {
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 1),
    "complete": (complete_graph, 1),
    "empty": (Graph.empty, 1),
    "caterpillar": (caterpillar_graph, 2),
    "kary": (kary_tree_graph, 2),
    "cycle-complement": (cycle_complement, 1),
}


def family_graph(spec: str) -> Graph:
    """Build a graph from ``path:n``, ``cycle:n``, ``caterpillar:n:k``, ``kary:k:r``,
    ``cycle-complement:n``, ``complete:n``, ``empty:n`` or ``dg:<graph6>``."""
    name, _, rest = spec.partition(":")
    if name == "dg":
        return build_dg(parse_graph6(rest))
    if name not in _FAMILIES:
        raise GraphArgumentError(f"unknown family {name!r}; choose from {', '.join(sorted(_FAMILIES))}, dg")
    fn, arity = _FAMILIES[name]
    parts = rest.split(":") if rest else []
    if len(parts) != arity or not all(p.isdigit() for p in parts):
        raise GraphArgumentError(f"family {name} takes {arity} nonnegative integer argument(s)")
    return fn(*map(int, parts))
