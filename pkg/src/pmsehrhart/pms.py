"""Perfectly matchable set (PMS) polynomials: brute-force oracle, recurrences, dispatcher.

``p(G; z) = sum_k p_{2k} z^k`` where ``p_{2k}`` counts 2k-subsets whose induced
subgraph has a perfect matching (the empty set included).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable

import numpy as np

from . import _accel
from .errors import GraphArgumentError, RuleInapplicable, SizeLimitError, StructureError
from .families import caterpillar_poly, cycle_poly, kary_tree_poly, path_poly
from .graph import (
    Graph,
    blocks_and_cut_vertices,
    connected_components,
    delete,
    edge_in_even_cycle,
    induced_subgraph,
    open_ear_decomposition,
)
from .poly import ONE, Polynomial

ORACLE_LIMIT = 18
MATCHING_LIMIT = 24


def _vertex_mask(g: Graph, s) -> int:
    if isinstance(s, int) and not isinstance(s, bool):
        mask = s
        if mask < 0 or mask >> g.n:
            raise GraphArgumentError(f"vertex mask {mask:#x} outside graph on {g.n} vertices")
        return mask
    mask = 0
    for v in s:
        if not 0 <= v < g.n:
            raise GraphArgumentError(f"vertex {v} not in graph")
        mask |= 1 << v
    return mask


def has_perfect_matching(g: Graph, s, limit: int = MATCHING_LIMIT) -> bool:
    """Whether G[s] has a perfect matching; ``s`` is an iterable of vertices or a bitmask."""
    mask = _vertex_mask(g, s)
    size = mask.bit_count()
    if size > limit:
        raise SizeLimitError(f"|S|={size} exceeds matching limit {limit}")
    if size % 2:
        return False
    masks = g.masks
    memo: dict[int, bool] = {0: True}

    def solve(m: int) -> bool:
        if m in memo:
            return memo[m]
        low = m & -m
        i = low.bit_length() - 1
        rest = m ^ low
        cand = masks[i] & rest
        ok = False
        while cand:
            b = cand & -cand
            cand ^= b
            if solve(rest ^ b):
                ok = True
                break
        memo[m] = ok
        return ok

    return solve(mask)


@lru_cache(maxsize=32)
def pms_table(g: Graph, limit: int = MATCHING_LIMIT) -> np.ndarray:
    """``table[mask]`` is 1 iff ``mask`` is a perfectly matchable set of ``g``."""
    if g.n > limit:
        raise SizeLimitError(f"n={g.n} exceeds matching-table limit {limit}")
    table = _accel.perfect_matching_table(g.n, g.masks)
    table.setflags(write=False)
    return table


def pms_poly_oracle(g: Graph, limit: int = ORACLE_LIMIT) -> Polynomial:
    """Exact p(G; z) from a sweep over all 2^n vertex subsets."""
    if g.n > limit:
        raise SizeLimitError(f"oracle sweep limited to n <= {limit}, got n={g.n}")
    return Polynomial(_accel.pms_counts_from_table(g.n, pms_table(g)))


def matching_poly(g: Graph) -> Polynomial:
    """m(G; z), counting k-matchings, by deleting the edges at the lowest vertex."""
    masks = g.masks
    memo: dict[int, Polynomial] = {}

    def m(alive: int) -> Polynomial:
        if alive in memo:
            return memo[alive]
        if not alive:
            return ONE
        low = alive & -alive
        v = low.bit_length() - 1
        rest = alive ^ low
        result = m(rest)
        cand = masks[v] & rest
        while cand:
            b = cand & -cand
            cand ^= b
            result = result + m(rest ^ b).shift(1)
        memo[alive] = result
        return result

    return m((1 << g.n) - 1)


# ---------------------------------------------------------------------------
# combination rules


def cut_vertex_combine(pG: Polynomial, puG: Polynomial, pH: Polynomial, pwH: Polynomial) -> Polynomial:
    """p of G and H glued at u ~ w."""
    return pG * pH - puG * pwH


def ear_combine(
    pG: Polynomial,
    pP: Polynomial,
    pvG: Polynomial,
    pvP: Polynomial,
    pwG: Polynomial,
    pwP: Polynomial,
    pvwG: Polynomial,
    pvwP: Polynomial,
    correction: Polynomial,
) -> Polynomial:
    """p(G') for G' = G with an open ear P attached at v and w."""
    return pG * pP - pvG * pvP - pwG * pwP + pvwG * pvwP - correction


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    out = np.zeros_like(a)
    while a.any():
        out += a & 1
        a = a >> 1
    return out


def _half_size_poly(masks: np.ndarray) -> Polynomial:
    if masks.size == 0:
        return Polynomial()
    return Polynomial(np.bincount(_popcount(masks) // 2).tolist())


def swap_families(g: Graph, v: int, w: int) -> tuple[Polynomial, Polynomial]:
    """PMS of ``g`` that stay perfectly matchable under an endpoint swap.

    Returns ``(both, one)``: ``both`` counts PMS S with v, w in S and S - {v, w}
    a PMS; ``one`` counts PMS S with v in S, w not in S and S - v + w a PMS.
    """
    table = pms_table(g)
    pm = np.flatnonzero(table).astype(np.int64)
    bv, bw = np.int64(1) << v, np.int64(1) << w
    has_v, has_w = (pm & bv) != 0, (pm & bw) != 0
    sel = pm[has_v & has_w]
    both = sel[table[sel ^ bv ^ bw] != 0]
    sel = pm[has_v & ~has_w]
    one = sel[table[sel ^ bv ^ bw] != 0]
    return _half_size_poly(both), _half_size_poly(one)


def ear_correction(G: Graph, v: int, w: int, P: Graph, pv: int, pw: int) -> Polynomial:
    """Sum of z^{|S u T|/2} over the doubly-counted pairs (S in G, T in P).

    First family: v, w in S, neither in T, with S - {v,w} and T + {v,w} both PMS.
    Second family: v in S, w in T (and not vice versa), with S - v + w and
    T - w + v both PMS. Each family factors over the G-side and P-side sets.
    """
    both_G, one_G = swap_families(G, v, w)
    tP = pms_table(P)
    pm = np.flatnonzero(tP).astype(np.int64)
    bv, bw = np.int64(1) << pv, np.int64(1) << pw
    none_vw = pm[((pm & bv) == 0) & ((pm & bw) == 0)]
    a_P = none_vw[tP[none_vw | bv | bw] != 0]
    w_only = pm[((pm & bw) != 0) & ((pm & bv) == 0)]
    b_P = w_only[tP[w_only ^ bv ^ bw] != 0]
    return both_G * _half_size_poly(a_P) + one_G * _half_size_poly(b_P)


def ear_correction_pairs(G: Graph, v: int, w: int, P: Graph, pv: int, pw: int) -> Polynomial:
    """Literal pair-by-pair version of :func:`ear_correction` (slow; for checking)."""
    tG, tP = pms_table(G), pms_table(P)
    bv, bw, cv, cw = 1 << v, 1 << w, 1 << pv, 1 << pw
    pmG = [int(s) for s in np.flatnonzero(tG)]
    pmP = [int(t) for t in np.flatnonzero(tP)]
    coeffs: dict[int, int] = {}
    for S in pmG:
        for T in pmP:
            first = (
                S & bv and S & bw and not T & cv and not T & cw
                and tG[S ^ bv ^ bw] and tP[T | cv | cw]
            )
            second = (
                S & bv and not S & bw and not T & cv and T & cw
                and tG[S ^ bv | bw] and tP[T ^ cw | cv]
            )
            if first or second:
                k = (S.bit_count() + T.bit_count()) // 2
                coeffs[k] = coeffs.get(k, 0) + 1
    return Polynomial(coeffs.get(k, 0) for k in range(max(coeffs, default=-1) + 1))


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True, eq=False)
class Step:
    """One node of a computation trace; children are the sub-computations used."""

    rule: str
    graph: Graph
    result: Polynomial
    children: tuple[Step, ...] = ()
    info: dict = field(default_factory=dict)


ComputationTrace = Step


def replay(step: Step, _memo: dict | None = None) -> Polynomial:
    """Recompute a trace bottom-up from its rules alone (leaves are re-derived too)."""
    memo = {} if _memo is None else _memo
    key = id(step)
    if key in memo:
        return memo[key]
    kids = [replay(c, memo) for c in step.children]
    rule, info = step.rule, step.info
    if rule == "empty":
        out = ONE
    elif rule == "components":
        out = ONE
        for k in kids:
            out = out * k
    elif rule == "family":
        out = _family_value(info["family"], info["params"])
    elif rule == "cut-vertex":
        pG, pGu, pH, pHw = kids
        out = cut_vertex_combine(pG, pG - pGu, pH, pH - pHw)
    elif rule == "edge-recurrence":
        out = kids[0] + kids[1].shift(1)
    elif rule == "vertex-recurrence":
        out = kids[0]
        for k in kids[1:]:
            out = out + k.shift(1)
    elif rule == "open-ear":
        G = step.children[0].graph
        out = _ear_from_parts(G, info["v"], info["w"], info["ear_edges"], *kids)
    elif rule == "oracle":
        out = pms_poly_oracle(step.graph, limit=step.graph.n)
    else:
        raise ValueError(f"unknown trace rule {rule!r}")
    memo[key] = out
    return out


def trace_summary(step: Step) -> dict[str, int]:
    """How often each rule fired (shared sub-steps counted once)."""
    counts: dict[str, int] = {}
    seen: set[int] = set()
    stack = [step]
    while stack:
        s = stack.pop()
        if id(s) in seen:
            continue
        seen.add(id(s))
        counts[s.rule] = counts.get(s.rule, 0) + 1
        stack.extend(s.children)
    return counts


def render_trace(step: Step, max_depth: int = 3) -> str:
    lines: list[str] = []

    def walk(s: Step, depth: int) -> None:
        extra = ""
        if s.rule == "family":
            extra = f" {s.info['family']}{tuple(s.info['params'])}"
        elif s.info:
            extra = " " + ", ".join(f"{k}={v}" for k, v in s.info.items() if k != "ear_edges")
        lines.append(f"{'  ' * depth}{s.rule}{extra} [n={s.graph.n}, m={s.graph.m}] -> {s.result}")
        if depth + 1 < max_depth:
            for c in s.children:
                walk(c, depth + 1)
        elif s.children:
            lines.append(f"{'  ' * (depth + 1)}... {len(s.children)} sub-steps")

    walk(step, 0)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# family recognition


def _family_value(name: str, params) -> Polynomial:
    if name == "path":
        return path_poly(*params)
    if name == "cycle":
        return cycle_poly(*params)
    if name == "caterpillar":
        return caterpillar_poly(*params)
    if name == "kary":
        return kary_tree_poly(*params)
    raise ValueError(f"unknown family {name!r}")


def recognize_family(g: Graph) -> tuple[str, tuple[int, ...]] | None:
    """Identify a connected ``g`` as P_n, C_n, cat(n, k) or a complete k-ary tree.

    Recognition builds an explicit structure witness (spine order, BFS levels)
    and returns None on any doubt.
    """
    n, m = g.n, g.m
    if n == 0:
        return None
    degs = [g.degree(v) for v in range(n)]
    if m == n - 1 and max(degs, default=0) <= 2:
        return ("path", (n,))
    if n >= 3 and m == n and all(d == 2 for d in degs):
        return ("cycle", (n,))
    if m != n - 1:
        return None
    # trees from here on (connected is a precondition)
    return _recognize_caterpillar(g, degs) or _recognize_kary(g, degs)


def _recognize_caterpillar(g: Graph, degs) -> tuple[str, tuple[int, int]] | None:
    spine = [v for v in range(g.n) if degs[v] >= 2]
    if not spine:
        return None
    spine_set = set(spine)
    inner = {v: [w for w in g.adj[v] if w in spine_set] for v in spine}
    if any(len(nb) > 2 for nb in inner.values()):
        return None
    ends = [v for v in spine if len(inner[v]) <= 1]
    if len(spine) > 1 and len(ends) != 2:
        return None
    # walk the spine from one end to witness a path
    order, prev, cur = [ends[0]], None, ends[0]
    while True:
        nxt = [w for w in inner[cur] if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    if len(order) != len(spine):
        return None
    leaves = [sum(1 for w in g.adj[v] if degs[w] == 1) for v in order]
    k = leaves[0]
    if k < 1 or any(c != k for c in leaves):
        return None
    if g.n != len(order) * (k + 1):
        return None
    return ("caterpillar", (len(order), k))


def _recognize_kary(g: Graph, degs) -> tuple[str, tuple[int, int]] | None:
    internal = [v for v in range(g.n) if degs[v] > 1]
    if not internal:
        return None
    low = min(degs[v] for v in internal)
    roots = [v for v in internal if degs[v] == low]
    if len(roots) != 1:
        return None
    root, k = roots[0], low
    if k < 2:
        return None
    depth = {root: 0}
    frontier = [root]
    while frontier:
        nxt = []
        for u in frontier:
            kids = [w for w in g.adj[u] if w not in depth]
            if kids and len(kids) != k:
                return None
            for w in kids:
                depth[w] = depth[u] + 1
                nxt.append(w)
        frontier = nxt
    leaf_depths = {depth[v] for v in range(g.n) if degs[v] == 1}
    if len(leaf_depths) != 1:
        return None
    r = leaf_depths.pop()
    if g.n != sum(k**i for i in range(r + 1)):
        return None
    return ("kary", (k, r))


# ---------------------------------------------------------------------------
# graph-level recurrences (take a PMS evaluator so they can recurse through the dispatcher)

PmsFn = Callable[[Graph], Polynomial]


def _default_pms(g: Graph) -> Polynomial:
    return pms_poly(g)[0]


def edge_recurrence(g: Graph, e, pms: PmsFn | None = None) -> Polynomial:
    """p(G \\ e) + z p(G - {v, w}) for an edge on no even cycle."""
    pms = pms or _default_pms
    v, w = e
    if edge_in_even_cycle(g, e):
        raise RuleInapplicable(f"edge {v}-{w} lies on an even cycle")
    return pms(delete(g, [e])[0]) + pms(delete(g, (), [v, w])[0]).shift(1)


def vertex_recurrence(g: Graph, v: int, pms: PmsFn | None = None) -> Polynomial:
    pms = pms or _default_pms
    if not 0 <= v < g.n:
        raise GraphArgumentError(f"vertex {v} not in graph")
    for w in g.neighbors(v):
        if edge_in_even_cycle(g, (v, w)):
            raise RuleInapplicable(f"edge {v}-{w} at vertex {v} lies on an even cycle")
    result = pms(delete(g, (), [v])[0])
    for w in g.neighbors(v):
        result = result + pms(delete(g, (), [v, w])[0]).shift(1)
    return result


def marked_pms_poly(g: Graph, s: Iterable[int], pms: PmsFn | None = None) -> Polynomial:
    """Generating function of PMS containing every vertex of ``s`` (inclusion-exclusion)."""
    pms = pms or _default_pms
    s = sorted(set(s))
    for v in s:
        if not 0 <= v < g.n:
            raise GraphArgumentError(f"vertex {v} not in graph")
    total = Polynomial()
    for r in range(len(s) + 1):
        for sub in combinations(s, r):
            term = pms(delete(g, (), sub)[0])
            total = total - term if r % 2 else total + term
    return total


def _ear_pieces(g: Graph, ear):
    """Split G' along an open ear: returns (G, v, w, P, internal vertices)."""
    ear = list(ear)
    if len(ear) < 2 or len(set(ear)) != len(ear):
        raise RuleInapplicable("an open ear needs distinct vertices and distinct endpoints")
    for a, b in zip(ear, ear[1:]):
        if not g.has_edge(a, b):
            raise RuleInapplicable(f"ear uses non-edge {a}-{b}")
    v, w = ear[0], ear[-1]
    internal = ear[1:-1]
    for x in internal:
        if g.degree(x) != 2:
            raise RuleInapplicable(f"internal ear vertex {x} has degree {g.degree(x)} != 2")
    if internal:
        G, relabel = delete(g, (), internal)
    else:
        G, relabel = delete(g, [(v, w)])
    P = Graph.from_edges(len(ear), [(i, i + 1) for i in range(len(ear) - 1)])
    return G, relabel[v], relabel[w], P, internal


def _ear_from_parts(G: Graph, v: int, w: int, ear_edges: int, pG, pGv, pGw, pGvw) -> Polynomial:
    # P is a path on ear_edges + 1 vertices with ends v (index 0) and w (last)
    L = ear_edges
    pP = path_poly(L + 1)
    pP1 = path_poly(L)
    pP2 = path_poly(L - 1)
    pvP = pP - pP1
    pvwP = pP - 2 * pP1 + pP2
    P = Graph.from_edges(L + 1, [(i, i + 1) for i in range(L)])
    corr = ear_correction(G, v, w, P, 0, L)
    return ear_combine(pG, pP, pG - pGv, pvP, pG - pGw, pvP, pG - pGv - pGw + pGvw, pvwP, corr)


def open_ear_combine(g: Graph, ear, pms: PmsFn | None = None) -> Polynomial:
    """p(g) from an open ear of ``g`` given as a vertex path (v, ..., w).

    A bare edge vw counts as an ear without internal vertices; then G = g minus vw.
    """
    pms = pms or _default_pms
    G, v, w, _, _ = _ear_pieces(g, ear)
    parts = [pms(G), pms(delete(G, (), [v])[0]), pms(delete(G, (), [w])[0]), pms(delete(G, (), [v, w])[0])]
    return _ear_from_parts(G, v, w, len(ear) - 1, *parts)


# ---------------------------------------------------------------------------
# dispatcher


class PmsEngine:
    """Applies, in order: components, family closed forms, cut-vertex split,
    edge/vertex recurrence, open-ear peel, oracle.

    Results are memoized per (labelled) graph, so traces share sub-steps.
    """

    def __init__(self, oracle_limit: int = ORACLE_LIMIT, matching_limit: int = MATCHING_LIMIT):
        if oracle_limit <= 0 or matching_limit <= 0:
            raise ValueError("limits must be positive")
        self.oracle_limit = oracle_limit
        self.matching_limit = matching_limit
        self._cache: dict[Graph, Step] = {}

    def clear(self) -> None:
        self._cache.clear()

    def __call__(self, g: Graph) -> Polynomial:
        return self.step(g).result

    def step(self, g: Graph) -> Step:
        s = self._cache.get(g)
        if s is None:
            s = self._dispatch(g)
            self._cache[g] = s
        return s

    def _dispatch(self, g: Graph) -> Step:
        if g.m == 0:
            return Step("empty", g, ONE)
        comps = connected_components(g)
        if len(comps) > 1:
            kids = tuple(self.step(induced_subgraph(g, c)[0]) for c in comps)
            out = ONE
            for k in kids:
                out = out * k.result
            return Step("components", g, out, kids)
        fam = recognize_family(g)
        if fam is not None:
            name, params = fam
            return Step("family", g, _family_value(name, params), (), {"family": name, "params": params})
        bd = blocks_and_cut_vertices(g)
        if bd.cut_vertices:
            return self._cut_vertex(g, min(bd.cut_vertices))
        s = self._recurrence(g)
        if s is not None:
            return s
        try:
            dec = open_ear_decomposition(g)
        except StructureError:
            dec = None
        if dec is not None and dec.ears and g.n <= self.matching_limit:
            return self._ear(g, dec.ears[-1])
        if g.n > self.oracle_limit:
            raise SizeLimitError(f"no recurrence applies and n={g.n} exceeds oracle limit {self.oracle_limit}")
        return Step("oracle", g, pms_poly_oracle(g, self.oracle_limit))

    def _cut_vertex(self, g: Graph, c: int) -> Step:
        rest, relabel = delete(g, (), [c])
        first = connected_components(rest)[0]
        inv = {new: old for old, new in relabel.items()}
        side = {inv[x] for x in first}
        G, gmap = induced_subgraph(g, side | {c})
        H, hmap = induced_subgraph(g, set(range(g.n)) - side)
        kids = (
            self.step(G),
            self.step(delete(G, (), [gmap[c]])[0]),
            self.step(H),
            self.step(delete(H, (), [hmap[c]])[0]),
        )
        pG, pGu, pH, pHw = (k.result for k in kids)
        out = cut_vertex_combine(pG, pG - pGu, pH, pH - pHw)
        return Step("cut-vertex", g, out, kids, {"vertex": c})

    def _recurrence(self, g: Graph) -> Step | None:
        # lowest edge on no even cycle; prefer the vertex form when one endpoint qualifies
        e = next((e for e in g.edges if not edge_in_even_cycle(g, e)), None)
        if e is None:
            return None
        for v in e:
            if all(w in e or not edge_in_even_cycle(g, (v, w)) for w in g.neighbors(v)):
                kids = [self.step(delete(g, (), [v])[0])]
                kids += [self.step(delete(g, (), [v, w])[0]) for w in g.neighbors(v)]
                out = kids[0].result
                for k in kids[1:]:
                    out = out + k.result.shift(1)
                return Step("vertex-recurrence", g, out, tuple(kids), {"vertex": v})
        kids = (self.step(delete(g, [e])[0]), self.step(delete(g, (), e)[0]))
        out = kids[0].result + kids[1].result.shift(1)
        return Step("edge-recurrence", g, out, kids, {"edge": e})

    def _ear(self, g: Graph, ear) -> Step:
        G, v, w, _, _ = _ear_pieces(g, ear)
        kids = (
            self.step(G),
            self.step(delete(G, (), [v])[0]),
            self.step(delete(G, (), [w])[0]),
            self.step(delete(G, (), [v, w])[0]),
        )
        out = _ear_from_parts(G, v, w, len(ear) - 1, *(k.result for k in kids))
        info = {"ear": tuple(ear), "v": v, "w": w, "ear_edges": len(ear) - 1}
        return Step("open-ear", g, out, kids, info)


_DEFAULT_ENGINE = PmsEngine()


def pms_poly(g: Graph, engine: PmsEngine | None = None) -> tuple[Polynomial, Step]:
    """p(G; z) through the recurrence cascade, with the trace that produced it."""
    step = (engine or _DEFAULT_ENGINE).step(g)
    return step.result, step
