"""Simple graphs on vertices 0..n-1 and the structural algorithms the recurrences need.

Graphs are immutable and hashable, so they double as memoization keys.
Every traversal visits neighbors in increasing order, which keeps ear
decompositions, block orders and dispatcher traces reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import GraphArgumentError, GraphParseError, SizeLimitError, StructureError

Edge = tuple[int, int]

PERFECTNESS_LIMIT = 12


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphArgumentError("adjacency length does not match n")
        for i, nb in enumerate(self.adj):
            if i in nb:
                raise GraphArgumentError(f"self-loop at vertex {i}")
            for j in nb:
                if not 0 <= j < self.n or i not in self.adj[j]:
                    raise GraphArgumentError(f"adjacency is not symmetric at {i}-{j}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise GraphArgumentError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphArgumentError(f"edge {u}-{v} outside 0..{n - 1}")
            if u == v:
                raise GraphArgumentError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, tuple(frozenset(s) for s in adj))

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, tuple(frozenset() for _ in range(n)))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple((i, j) for i in range(self.n) for j in sorted(self.adj[i]) if i < j)

    @cached_property
    def m(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << j for j in nb) for nb in self.adj)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.masks == other.masks

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.n, self.masks))

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


# ---------------------------------------------------------------------------
# I/O


def _graph6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _graph6_size(g.n) + body


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise GraphParseError("graph6: empty input")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise GraphParseError(f"graph6: byte {pos} ({ch!r}) outside printable range 63..126")
    vals = [ord(c) - 63 for c in s]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        raise GraphParseError("graph6: truncated size header at byte 0")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = vals[pos:]
    if len(body) != need:
        raise GraphParseError(
            f"graph6: expected {need} data bytes after header ending at byte {pos}, got {len(body)}"
        )
    bits = []
    for v in body:
        bits.extend((v >> (5 - b)) & 1 for b in range(6))
    if any(bits[nbits:]):
        raise GraphParseError(f"graph6: nonzero padding bits in byte {pos + need - 1}")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines (0-based), with an optional leading ``n <count>`` line.

    Blank lines and ``#`` comments are ignored.
    """
    n = None
    edges: list[Edge] = []
    seen: dict[Edge, int] = {}
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "n":
            if not first:
                raise GraphParseError(f"line {lineno}: header 'n <count>' must be the first line")
            if len(tok) != 2 or not tok[1].isdigit():
                raise GraphParseError(f"line {lineno}: malformed header {line!r}")
            n = int(tok[1])
            first = False
            continue
        first = False
        if len(tok) != 2:
            raise GraphParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: non-integer vertex label in {line!r}") from None
        if u < 0 or v < 0 or (n is not None and (u >= n or v >= n)):
            raise GraphParseError(f"line {lineno}: vertex out of range in {line!r}")
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
        e = _edge(u, v)
        if e in seen:
            raise GraphParseError(f"line {lineno}: duplicate edge {u}-{v} (first on line {seen[e]})")
        seen[e] = lineno
        edges.append(e)
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Graph.from_edges(n, edges)


def to_edge_list(g: Graph) -> str:
    return "\n".join([f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges])


def parse_graph(text: str, format: str = "graph6") -> Graph:
    if format == "graph6":
        return parse_graph6(text)
    if format in ("edge-list", "edgelist"):
        return parse_edge_list(text)
    raise GraphParseError(f"unknown graph format {format!r}")


# ---------------------------------------------------------------------------
# constructions


def complement(g: Graph) -> Graph:
    every = frozenset(range(g.n))
    return Graph(g.n, tuple(every - nb - {i} for i, nb in enumerate(g.adj)))


def delete(g: Graph, edges: Iterable[tuple[int, int]] = (), vertices: Iterable[int] = ()):
    """Remove ``edges`` and then ``vertices``.

    Returns ``(graph, old_to_new)``; surviving vertices keep their relative order.
    """
    drop_e = set()
    for u, v in edges:
        if not g.has_edge(u, v):
            raise GraphArgumentError(f"edge {u}-{v} not in graph")
        drop_e.add(_edge(u, v))
    drop_v = set(vertices)
    for v in drop_v:
        if not 0 <= v < g.n:
            raise GraphArgumentError(f"vertex {v} not in graph")
    keep = [v for v in range(g.n) if v not in drop_v]
    old_to_new = {v: i for i, v in enumerate(keep)}
    new_edges = [
        (old_to_new[u], old_to_new[v])
        for u, v in g.edges
        if (u, v) not in drop_e and u in old_to_new and v in old_to_new
    ]
    return Graph.from_edges(len(keep), new_edges), old_to_new


def induced_subgraph(g: Graph, vertices: Iterable[int]):
    keep = set(vertices)
    return delete(g, (), [v for v in range(g.n) if v not in keep])


def build_dg(g: Graph) -> Graph:
    """Bipartite graph on [n] and [n-bar]: ``i ~ n+j`` iff ``i == j`` or ``ij`` is an edge."""
    n = g.n
    edges = [(i, n + i) for i in range(n)]
    for u, v in g.edges:
        edges += [(u, n + v), (v, n + u)]
    return Graph.from_edges(2 * n, edges)


# ---------------------------------------------------------------------------
# connectivity


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, stack = [], [s]
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


class BlockDecomposition(NamedTuple):
    cut_vertices: frozenset[int]
    blocks: tuple[frozenset[Edge], ...]


def blocks_and_cut_vertices(g: Graph) -> BlockDecomposition:
    """Hopcroft-Tarjan biconnected components (iterative DFS)."""
    disc = [-1] * g.n
    low = [0] * g.n
    cuts: set[int] = set()
    blocks: list[frozenset[Edge]] = []
    time = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = time
        time += 1
        root_children = 0
        estack: list[Edge] = []
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = time
                    time += 1
                    estack.append(_edge(u, w))
                    stack.append((w, u, iter(g.neighbors(w))))
                    if u == root:
                        root_children += 1
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    estack.append(_edge(u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                target = _edge(parent, u)
                block = set()
                while True:
                    e = estack.pop()
                    block.add(e)
                    if e == target:
                        break
                blocks.append(frozenset(block))
        if root_children > 1:
            cuts.add(root)
    return BlockDecomposition(frozenset(cuts), tuple(blocks))


class EarDecomposition(NamedTuple):
    initial_cycle: tuple[int, ...]
    ears: tuple[tuple[int, ...], ...]


def open_ear_decomposition(g: Graph) -> EarDecomposition:
    """Chain decomposition from a DFS rooted at vertex 0.

    The first chain is a cycle through 0; every later chain is an open ear
    (a path whose endpoints already appeared and whose internal vertices are new).
    """
    if g.n < 3 or not is_connected(g):
        raise StructureError("open ear decomposition needs a 2-connected graph on >= 3 vertices")
    order: list[int] = []
    parent = [-1] * g.n
    dfi = [-1] * g.n
    stack = [(0, iter(g.neighbors(0)))]
    dfi[0] = 0
    order.append(0)
    while stack:
        u, it = stack[-1]
        for w in it:
            if dfi[w] == -1:
                dfi[w] = len(order)
                order.append(w)
                parent[w] = u
                stack.append((w, iter(g.neighbors(w))))
                break
        else:
            stack.pop()
    visited = [False] * g.n
    used: set[Edge] = set()
    chains: list[tuple[int, ...]] = []
    for x in order:
        visited[x] = True
        backs = [y for y in g.adj[x] if dfi[y] > dfi[x] and parent[y] != x]
        for y in sorted(backs, key=dfi.__getitem__):
            chain = [x, y]
            used.add(_edge(x, y))
            cur = y
            while not visited[cur]:
                visited[cur] = True
                nxt = parent[cur]
                used.add(_edge(cur, nxt))
                chain.append(nxt)
                cur = nxt
            chains.append(tuple(chain))
    if len(used) != g.m or not chains:
        raise StructureError("graph has a bridge, so it is not 2-connected")
    for c in chains[1:]:
        if c[0] == c[-1]:
            raise StructureError(f"vertex {c[0]} is a cut vertex, so the graph is not 2-connected")
    return EarDecomposition(chains[0][:-1], tuple(chains[1:]))


# ---------------------------------------------------------------------------
# cycles and parity


def _check_edge(g: Graph, e) -> Edge:
    u, v = e
    if not g.has_edge(u, v):
        raise GraphArgumentError(f"edge {u}-{v} not in graph")
    return _edge(u, v)


def edge_in_even_cycle(g: Graph, e) -> bool:
    """True iff some even cycle uses ``e``, i.e. g minus e has an odd-length u-v path."""
    u, v = _check_edge(g, e)
    masks = list(g.masks)
    masks[u] &= ~(1 << v)
    masks[v] &= ~(1 << u)
    dead: set[tuple[int, int, int]] = set()

    def search(cur: int, visited: int, parity: int) -> bool:
        key = (cur, visited, parity)
        if key in dead:
            return False
        cand = masks[cur] & ~visited
        while cand:
            b = cand & -cand
            cand ^= b
            w = b.bit_length() - 1
            if w == v:
                if parity == 0:  # this step makes the path odd
                    return True
                continue
            if search(w, visited | b, parity ^ 1):
                return True
        dead.add(key)
        return False

    return search(u, 1 << u, 0)


def has_even_cycle(g: Graph) -> bool:
    return any(edge_in_even_cycle(g, e) for e in g.edges)


def find_odd_cycle(g: Graph) -> tuple[int, ...] | None:
    """Some odd cycle of ``g`` as a vertex sequence, or None when ``g`` is bipartite."""
    color = [-1] * g.n
    parent = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        for u in queue:
            for w in g.neighbors(u):
                if color[w] == -1:
                    color[w] = color[u] ^ 1
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    pu, pw = [u], [w]
                    while pu[-1] != s:
                        pu.append(parent[pu[-1]])
                    while pw[-1] != s:
                        pw.append(parent[pw[-1]])
                    while len(pu) > 1 and len(pw) > 1 and pu[-2] == pw[-2]:
                        pu.pop()
                        pw.pop()
                    return tuple(pu + pw[-2::-1])
    return None


def is_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """A 2-coloring ``(X, Y)`` or None; use :func:`find_odd_cycle` for a witness.

    Each component's lowest vertex goes to X, so an edgeless graph gives ``(V, {})``.
    """
    if find_odd_cycle(g) is not None:
        return None
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        for u in queue:
            for w in g.adj[u]:
                if color[w] == -1:
                    color[w] = color[u] ^ 1
                    queue.append(w)
    left = frozenset(v for v in range(g.n) if color[v] == 0)
    return left, frozenset(range(g.n)) - left


def find_odd_hole(g: Graph) -> tuple[int, ...] | None:
    """An induced (chordless) odd cycle of length >= 5, or None."""
    masks = g.masks
    for s in range(g.n):
        higher = ~((1 << (s + 1)) - 1)
        for v1 in g.neighbors(s):
            if v1 < s:
                continue
            # path s, v1, ...; forbidden marks vertices adjacent to interior path vertices
            found = _extend_hole(masks, s, [s, v1], (1 << s) | (1 << v1), higher)
            if found:
                return found
    return None


def _extend_hole(masks, s, path, used, higher):
    last = path[-1]
    interior = 0
    for p in path[1:-1]:
        interior |= masks[p]
    cand = masks[last] & higher & ~used & ~interior
    while cand:
        b = cand & -cand
        cand ^= b
        x = b.bit_length() - 1
        if masks[x] >> s & 1:
            # x closes the cycle; the path cannot continue past x
            length = len(path) + 1
            if length >= 5 and length % 2 == 1:
                return tuple(path + [x])
            continue
        found = _extend_hole(masks, s, path + [x], used | b, higher)
        if found:
            return found
    return None


def is_perfect(g: Graph, limit: int = PERFECTNESS_LIMIT) -> bool:
    """No odd hole and no odd antihole (exhaustive search, ``n <= limit``)."""
    if g.n > limit:
        raise SizeLimitError(f"perfectness test is exhaustive; n={g.n} exceeds limit {limit}")
    return find_odd_hole(g) is None and find_odd_hole(complement(g)) is None


def is_minimally_imperfect(g: Graph, limit: int = PERFECTNESS_LIMIT) -> bool:
    """Imperfect, while every single-vertex deletion is perfect (odd holes and antiholes)."""
    if g.n > limit:
        raise SizeLimitError(f"perfectness test is exhaustive; n={g.n} exceeds limit {limit}")
    if is_perfect(g, limit):
        return False
    return all(is_perfect(delete(g, (), [v])[0], limit) for v in range(g.n))


# ---------------------------------------------------------------------------
# cliques and stable sets


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with the lowest max-degree pivot; sorted list of sorted tuples."""
    masks = g.masks
    out: list[tuple[int, ...]] = []

    def bits(x: int) -> list[int]:
        res = []
        while x:
            b = x & -x
            res.append(b.bit_length() - 1)
            x ^= b
        return res

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(tuple(bits(r)))
            return
        pivot = max(bits(p | x), key=lambda u: ((masks[u] & p).bit_count(), -u))
        for v in bits(p & ~masks[pivot]):
            b = 1 << v
            expand(r | b, p & masks[v], x & masks[v])
            p &= ~b
            x |= b

    if g.n:
        expand(0, (1 << g.n) - 1, 0)
    return sorted(out)


def stable_sets_masks(g: Graph) -> list[int]:
    """All stable sets as bitmasks (including 0), in increasing mask order."""
    masks = g.masks
    result = [0]
    for v in range(g.n):
        b = 1 << v
        # extend only sets drawn from lower vertices, each exactly once
        result += [s | b for s in result if not s & masks[v]]
    return sorted(result)


def is_clique(g: Graph, vertices) -> bool:
    return all(g.has_edge(u, v) for u, v in combinations(vertices, 2))
