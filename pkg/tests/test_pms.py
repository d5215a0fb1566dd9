import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import brute_pms
from pmsehrhart.cli.families import caterpillar_graph, complete_graph, cycle_graph, kary_tree_graph, path_graph
from pmsehrhart.enumerate import connected_graphs, random_graph
from pmsehrhart.errors import RuleInapplicable, SizeLimitError
from pmsehrhart.families import caterpillar_poly
from pmsehrhart.graph import Graph, delete, has_even_cycle
from pmsehrhart.pms import (
    PmsEngine,
    cut_vertex_combine,
    ear_combine,
    ear_correction,
    ear_correction_pairs,
    edge_recurrence,
    has_perfect_matching,
    marked_pms_poly,
    matching_poly,
    open_ear_combine,
    pms_poly,
    pms_poly_oracle,
    recognize_family,
    render_trace,
    replay,
    trace_summary,
    vertex_recurrence,
)
from pmsehrhart.poly import Polynomial, parse_poly

PETERSEN = Graph.from_edges(
    10, [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)] + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
)
K33 = Graph.from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])
PRISM = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
WHEEL5 = Graph.from_edges(6, [(i, (i + 1) % 5) for i in range(5)] + [(i, 5) for i in range(5)])
# G' of the worked open-ear example: G on 0..5 plus the ear 1-6-7-8-5
EAR_G = Graph.from_edges(6, [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5)])
EAR_GPRIME = Graph.from_edges(9, list(EAR_G.edges) + [(1, 6), (6, 7), (7, 8), (8, 5)])

# values from a networkx maximum-matching sweep over all vertex subsets
FROZEN = {
    "K4": (complete_graph(4), "1 + 6z + z^2"),
    "petersen": (PETERSEN, "1 + 15z + 75z^2 + 135z^3 + 45z^4 + z^5"),
    "K33": (K33, "1 + 9z + 9z^2 + z^3"),
    "prism": (PRISM, "1 + 9z + 15z^2 + z^3"),
    "wheel5": (WHEEL5, "1 + 10z + 15z^2 + z^3"),
    "ear": (EAR_GPRIME, "1 + 11z + 36z^2 + 37z^3 + 5z^4"),
}


@pytest.mark.parametrize("name", sorted(FROZEN))
def test_frozen_values(name):
    g, text = FROZEN[name]
    expected = parse_poly(text)
    assert pms_poly_oracle(g) == expected
    p, step = pms_poly(g, PmsEngine())
    assert p == expected
    assert replay(step) == expected


def test_trivial_graphs():
    assert pms_poly(Graph.empty(0))[0] == Polynomial([1])
    assert pms_poly(Graph.empty(1))[0] == Polynomial([1])
    assert pms_poly(Graph.empty(5))[0] == Polynomial([1])
    assert pms_poly(path_graph(2))[0] == parse_poly("1 + z")
    assert pms_poly(cycle_graph(4))[0] == parse_poly("1 + 4z + z^2")


def test_has_perfect_matching():
    c6 = cycle_graph(6)
    assert has_perfect_matching(c6, range(6))
    assert not has_perfect_matching(c6, [0, 1, 2])
    assert not has_perfect_matching(c6, [0, 2])
    assert has_perfect_matching(c6, 0b000011)
    assert has_perfect_matching(c6, [])
    star = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert not has_perfect_matching(star, range(4))


def test_oracle_size_limit():
    with pytest.raises(SizeLimitError):
        pms_poly_oracle(Graph.empty(19))


def test_pairing_oracle_agrees_with_table_oracle():
    r = random.Random(7)
    for _ in range(40):
        g = random_graph(r.randint(1, 8), r.uniform(0.2, 0.8), r)
        assert pms_poly_oracle(g).coeffs == tuple(brute_pms(g))


# recurrences -----------------------------------------------------------------


def test_edge_recurrence_on_a_bridge():
    g = caterpillar_graph(3, 1)
    assert edge_recurrence(g, (0, 1), pms_poly_oracle) == pms_poly_oracle(g)


def test_edge_recurrence_refuses_even_cycle_edges():
    with pytest.raises(RuleInapplicable):
        edge_recurrence(cycle_graph(6), (0, 1), pms_poly_oracle)
    # on an odd cycle the rule applies
    assert edge_recurrence(cycle_graph(5), (0, 1), pms_poly_oracle) == parse_poly("1 + 5z + 5z^2")


def test_vertex_recurrence():
    g = kary_tree_graph(3, 2)
    assert vertex_recurrence(g, 0, pms_poly_oracle) == pms_poly_oracle(g)
    with pytest.raises(RuleInapplicable):
        vertex_recurrence(cycle_graph(4), 0, pms_poly_oracle)


def test_recurrence_can_fail_on_even_cycles():
    # the false identity p(G) = p(G\e) + z p(G-{v,w}) on C_4 overcounts
    g = cycle_graph(4)
    wrong = pms_poly_oracle(delete(g, [(0, 1)])[0]) + pms_poly_oracle(delete(g, (), [0, 1])[0]).shift(1)
    assert wrong != pms_poly_oracle(g)


def test_cut_vertex_combine_triangle_and_pendant():
    # triangle glued to an edge at vertex 0
    tri = cycle_graph(3)
    edge = path_graph(2)
    p_tri, p_edge = pms_poly_oracle(tri), pms_poly_oracle(edge)
    pu_tri = marked_pms_poly(tri, [0], pms_poly_oracle)
    pu_edge = marked_pms_poly(edge, [0], pms_poly_oracle)
    glued = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (0, 3)])
    assert cut_vertex_combine(p_tri, pu_tri, p_edge, pu_edge) == pms_poly_oracle(glued)


def test_marked_polynomials():
    c4 = cycle_graph(4)
    assert marked_pms_poly(c4, [0], pms_poly_oracle) == parse_poly("2z + z^2")
    assert marked_pms_poly(c4, [0, 2], pms_poly_oracle) == parse_poly("z^2")
    assert marked_pms_poly(c4, [], pms_poly_oracle) == pms_poly_oracle(c4)


# the worked open-ear example -------------------------------------------------


def test_example_input_polynomials():
    v, w = 1, 5
    P = path_graph(5)
    assert pms_poly_oracle(EAR_G) == parse_poly("1 + 7z + 9z^2 + z^3")
    assert pms_poly_oracle(P) == parse_poly("1 + 4z + 3z^2")
    assert marked_pms_poly(EAR_G, [v], pms_poly_oracle) == parse_poly("2z + 6z^2 + z^3")
    assert marked_pms_poly(EAR_G, [w], pms_poly_oracle) == parse_poly("2z + 6z^2 + z^3")
    assert marked_pms_poly(P, [0], pms_poly_oracle) == parse_poly("z + 2z^2")
    assert marked_pms_poly(EAR_G, [v, w], pms_poly_oracle) == parse_poly("3z^2 + z^3")
    assert marked_pms_poly(P, [0, 4], pms_poly_oracle) == parse_poly("z^2")
    assert ear_correction(EAR_G, v, w, P, 0, 4) == parse_poly("z^3 + 3z^4")


def test_example_from_listed_inputs():
    p = ear_combine(
        parse_poly("1 + 7z + 9z^2 + z^3"),
        parse_poly("1 + 4z + 3z^2"),
        parse_poly("2z + 6z^2 + z^3"),
        parse_poly("z + 2z^2"),
        parse_poly("2z + 6z^2 + z^3"),
        parse_poly("z + 2z^2"),
        parse_poly("3z^2 + z^3"),
        parse_poly("z^2"),
        parse_poly("z^3 + 3z^4"),
    )
    assert p == parse_poly("1 + 11z + 36z^2 + 37z^3 + 5z^4")


def test_example_from_the_graph():
    assert open_ear_combine(EAR_GPRIME, [1, 6, 7, 8, 5], pms_poly_oracle) == parse_poly("1 + 11z + 36z^2 + 37z^3 + 5z^4")


def test_open_ear_rejects_non_ears():
    with pytest.raises(RuleInapplicable):
        open_ear_combine(EAR_GPRIME, [0, 2, 4], pms_poly_oracle)  # 2 has degree 3
    with pytest.raises(RuleInapplicable):
        open_ear_combine(EAR_GPRIME, [1, 7, 5], pms_poly_oracle)


def test_single_edge_ear():
    # K_4 minus nothing: peel edge 0-1 as an ear with no internal vertices
    k4 = complete_graph(4)
    assert open_ear_combine(k4, [0, 1], pms_poly_oracle) == pms_poly_oracle(k4)


def test_factorized_correction_equals_pair_loop():
    r = random.Random(11)
    checked = 0
    while checked < 40:
        G = random_graph(r.randint(2, 7), 0.5, r)
        v, w = r.sample(range(G.n), 2)
        L = r.randint(1, 4)
        P = path_graph(L + 1)
        assert ear_correction(G, v, w, P, 0, L) == ear_correction_pairs(G, v, w, P, 0, L)
        checked += 1


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 7), st.integers(1, 4), st.integers(0, 10**6))
def test_open_ear_combine_random(n, ear_len, seed):
    r = random.Random(seed)
    G = random_graph(n, 0.5, r)
    v, w = r.sample(range(n), 2)
    inner = list(range(n, n + ear_len - 1))
    path = [v, *inner, w]
    edges = set(G.edges) | {tuple(sorted(e)) for e in zip(path, path[1:])}
    if ear_len == 1 and G.has_edge(v, w):
        return
    gp = Graph.from_edges(n + ear_len - 1, edges)
    assert open_ear_combine(gp, path, pms_poly_oracle) == pms_poly_oracle(gp)


# dispatcher -----------------------------------------------------------------


def test_family_recognition():
    assert recognize_family(path_graph(6)) == ("path", (6,))
    assert recognize_family(cycle_graph(6)) == ("cycle", (6,))
    assert recognize_family(caterpillar_graph(4, 2)) == ("caterpillar", (4, 2))
    assert recognize_family(kary_tree_graph(3, 2)) == ("kary", (3, 2))
    assert recognize_family(PETERSEN) is None
    spider = Graph.from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
    assert recognize_family(spider) is None


def test_trace_shapes():
    p, step = pms_poly(EAR_GPRIME, PmsEngine())
    summary = trace_summary(step)
    assert sum(summary.values()) >= 1
    assert replay(step) == p
    text = render_trace(step, 2)
    assert text.splitlines()[0].endswith(str(p))


def test_dispatcher_uses_every_rule_somewhere():
    engine = PmsEngine()
    rules = set()
    r = random.Random(5)
    for _ in range(120):
        g = random_graph(r.randint(4, 10), r.uniform(0.2, 0.7), r)
        rules |= set(trace_summary(engine.step(g)))
    assert {"components", "family", "cut-vertex", "edge-recurrence", "vertex-recurrence", "open-ear"} <= rules


def test_large_sparse_graph_beyond_the_oracle():
    g = caterpillar_graph(12, 2)  # 36 vertices, recognized as a family
    p, _ = pms_poly(g, PmsEngine())
    assert p == caterpillar_poly(12, 2)
    # a perfect matching pairs each spine vertex with one of its two leaves
    assert p.degree == 12 and p[12] == 2**12


def test_engine_limit():
    with pytest.raises(SizeLimitError):
        PmsEngine(oracle_limit=4, matching_limit=4).step(complete_graph(6))


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 9), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_dispatcher_matches_oracle(n, p, seed):
    g = random_graph(n, p, random.Random(seed))
    got, step = pms_poly(g, PmsEngine())
    assert got == pms_poly_oracle(g)
    assert replay(step) == got


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 9), st.floats(0.1, 0.9), st.integers(0, 10**6))
def test_structural_invariants(n, p, seed):
    g = random_graph(n, p, random.Random(seed))
    poly = pms_poly_oracle(g)
    assert poly[0] == 1
    assert poly[1] == g.m
    assert (poly == matching_poly(g)) == (not has_even_cycle(g))


def test_pms_equals_matching_poly_iff_no_even_cycle_exhaustive_n6():
    for n in range(1, 7):
        for g in connected_graphs(n):
            assert (pms_poly_oracle(g) == matching_poly(g)) == (not has_even_cycle(g))
