"""End-to-end acceptance checks, one test per criterion.

Each test logs a PASS/FAIL line with its wall time; the lines are repeated in
the "acceptance criteria" section of the pytest summary.
"""

import random
import time

from pmsehrhart.cli.families import caterpillar_graph, cycle_complement, cycle_graph, kary_tree_graph, path_graph
from pmsehrhart.cli.suites import P9_CORRECTED, PRINTED_CYCLES, PRINTED_PATHS, PRINTED_COMPLEMENTS, PRINTED_CATERPILLARS
from pmsehrhart.ehrhart import (
    conjecture_check,
    ehrhart_data,
    ehrhart_poly_from_hstar,
    evaluate_ehrhart,
    verify_even_cycle_volume,
)
from pmsehrhart.enumerate import all_graphs, connected_graphs, random_graphs
from pmsehrhart.families import caterpillar_poly, cycle_poly, kary_tree_poly
from pmsehrhart.graph import complement, has_even_cycle, is_bipartite, is_perfect, stable_sets_masks, to_graph6
from pmsehrhart.pms import PmsEngine, ear_combine, matching_poly, open_ear_combine, pms_poly_oracle
from pmsehrhart.poly import Polynomial, parse_poly

from test_pms import EAR_GPRIME


def test_criterion_01_paths_and_cycles(record_criterion):
    t0 = time.perf_counter()
    engine = PmsEngine()
    bad = []
    for n, printed in PRINTED_PATHS.items():
        expected = parse_poly(P9_CORRECTED if n == 9 else printed)
        if engine(path_graph(n)) != expected:
            bad.append(f"P_{n}")
    for n, printed in PRINTED_CYCLES.items():
        if engine(cycle_graph(n)) != parse_poly(printed):
            bad.append(f"C_{n}")
    # the printed P_9 row is the C_8 entry; the brute-force value differs
    p9 = pms_poly_oracle(path_graph(9))
    erratum = p9 == parse_poly(P9_CORRECTED) != parse_poly(PRINTED_PATHS[9])
    dt = time.perf_counter() - t0
    note = f"erratum: P_9 printed {parse_poly(PRINTED_PATHS[9])}, brute force {p9}"
    assert record_criterion(1, "PMS of paths P_1..P_9 and cycles C_3..C_9", not bad and erratum, dt, 1.0, note if not bad else f"mismatch {bad}")


def test_criterion_02_cycle_complements(record_criterion):
    t0 = time.perf_counter()
    bad, t9 = [], None
    for n, printed in PRINTED_COMPLEMENTS.items():
        s = time.perf_counter()
        data = ehrhart_data(cycle_complement(n), allow_minimal_imperfect=True)
        if n == 9:
            t9 = time.perf_counter() - s
        if data.hstar != parse_poly(printed):
            bad.append(n)
    dt = time.perf_counter() - t0
    ok = not bad and t9 < 120
    assert record_criterion(2, "h* of cycle complements by lattice counting, n = 3..9", ok, dt, 120.0, f"n=9 took {t9:.2f} s")


def test_criterion_03_caterpillars(record_criterion):
    t0 = time.perf_counter()
    rows_ok = all(caterpillar_poly(n, 1) == parse_poly(p) for n, p in PRINTED_CATERPILLARS.items())
    pell = [caterpillar_poly(n, 1)(1) for n in range(8)]
    graphs_ok = all(pms_poly_oracle(caterpillar_graph(n, 1)) == caterpillar_poly(n, 1) for n in range(1, 8))
    dt = time.perf_counter() - t0
    ok = rows_ok and graphs_ok and pell == [1, 2, 5, 12, 29, 70, 169, 408]
    assert record_criterion(3, "caterpillars cat(n, 1) and Pell values", ok, dt, 1.0, f"Pell {pell}")


def test_criterion_04_open_ear_example(record_criterion):
    t0 = time.perf_counter()
    target = parse_poly("1 + 11z + 36z^2 + 37z^3 + 5z^4")
    listed = [
        "1 + 7z + 9z^2 + z^3",
        "1 + 4z + 3z^2",
        "2z + 6z^2 + z^3",
        "z + 2z^2",
        "2z + 6z^2 + z^3",
        "z + 2z^2",
        "3z^2 + z^3",
        "z^2",
        "z^3 + 3z^4",
    ]
    from_inputs = ear_combine(*map(parse_poly, listed))
    from_graph = open_ear_combine(EAR_GPRIME, [1, 6, 7, 8, 5], pms_poly_oracle)
    dt = time.perf_counter() - t0
    ok = from_inputs == target == from_graph == pms_poly_oracle(EAR_GPRIME)
    assert record_criterion(4, "open-ear example", ok, dt, None, f"got {from_inputs}")


def test_criterion_05_lemma(record_criterion):
    t0 = time.perf_counter()
    total, bad = 0, []
    for n in range(1, 7):
        for g in connected_graphs(n):
            if is_bipartite(complement(g)) is None:
                continue
            total += 1
            if ehrhart_data(g).hstar != pms_poly_oracle(complement(g)):
                bad.append(to_graph6(g))
    dt = time.perf_counter() - t0
    assert record_criterion(5, "bipartite-complement lemma, n <= 6", not bad and total > 0, dt, 300.0, f"{total - len(bad)}/{total} graphs")


def test_criterion_06_conjecture(record_criterion):
    t0 = time.perf_counter()
    ok = True
    for n in (5, 7, 9):
        rep = conjecture_check(n)
        ok &= rep.ok and rep.details["hstar"] == parse_poly(PRINTED_COMPLEMENTS[n])
    rep11 = conjecture_check(11)
    ok &= rep11.ok and rep11.details["hstar"] == cycle_poly(11) + Polynomial.monomial(6)
    dt = time.perf_counter() - t0
    assert record_criterion(6, "odd-cycle conjecture, n = 5, 7, 9, 11", ok, dt, 600.0, f"n=11 h* = {rep11.details['hstar']}")


def test_criterion_07_volume(record_criterion):
    t0 = time.perf_counter()
    reps = [verify_even_cycle_volume(k) for k in range(2, 11)]
    dt = time.perf_counter() - t0
    ok = all(r.ok for r in reps)
    assert record_criterion(7, "golden-ratio volume, k = 2..10", ok, dt, None, f"NVol {[int(r.details['nvol']) for r in reps]}")


def test_criterion_08_oracle_equivalence(record_criterion):
    t0 = time.perf_counter()
    engine = PmsEngine()
    rand = list(random_graphs(500, 4, 10, seed=2024))
    bad_rand = [to_graph6(g) for g in rand if engine(g) != pms_poly_oracle(g)]
    count, bad_conn = 0, []
    for n in range(1, 9):
        for g in connected_graphs(n):
            count += 1
            if engine(g) != pms_poly_oracle(g):
                bad_conn.append(to_graph6(g))
    dt = time.perf_counter() - t0
    ok = not bad_rand and not bad_conn and count == 1 + 1 + 2 + 6 + 21 + 112 + 853 + 11117
    detail = f"random {500 - len(bad_rand)}/500, connected {count - len(bad_conn)}/{count}"
    assert record_criterion(8, "dispatcher vs oracle", ok, dt, 600.0, detail)


def test_criterion_09_structural_invariants(record_criterion):
    t0 = time.perf_counter()
    problems = []
    perfect = 0
    for n in range(1, 9):
        for g in all_graphs(n):
            p = pms_poly_oracle(g)
            if p[1] != g.m:
                problems.append(("z-coefficient", to_graph6(g)))
            if (p == matching_poly(g)) != (not has_even_cycle(g)):
                problems.append(("p = m", to_graph6(g)))
            if is_perfect(g):
                perfect += 1
                data = ehrhart_data(g)
                if data.hstar[1] != len(stable_sets_masks(g)) - n - 1:
                    problems.append(("h*_1", to_graph6(g)))
                coeffs = ehrhart_poly_from_hstar(data.hstar, n)
                if any(evaluate_ehrhart(coeffs, t) != c for t, c in enumerate(data.counts)):
                    problems.append(("reconstruction", to_graph6(g)))
    dt = time.perf_counter() - t0
    assert record_criterion(9, "structural invariants, n <= 8", not problems, dt, None, f"{perfect} perfect graphs; issues {problems[:3]}")


def test_criterion_10_kary(record_criterion):
    t0 = time.perf_counter()
    ok = all(kary_tree_poly(2, r) == pms_poly_oracle(kary_tree_graph(2, r)) for r in (1, 2, 3))
    dt = time.perf_counter() - t0
    assert record_criterion(10, "binary-tree product formula, r = 1, 2, 3", ok, dt, None, f"r=3: {kary_tree_poly(2, 3)}")


def test_random_seed_is_fixed():
    # the oracle criterion is reproducible
    a = [to_graph6(g) for g in random_graphs(5, 4, 10, seed=2024)]
    b = [to_graph6(g) for g in random_graphs(5, 4, 10, seed=2024)]
    assert a == b and random.Random(2024).random() == random.Random(2024).random()
