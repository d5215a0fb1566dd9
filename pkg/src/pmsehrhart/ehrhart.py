"""Ehrhart data of stable set polytopes, by exact lattice-point counting.

For a perfect graph the stable set polytope is cut out by ``x >= 0`` and one
row ``sum_{i in C} x_i <= 1`` per maximal clique C. Odd holes and odd
antiholes (the minimally imperfect graphs) additionally need the rank row
``sum_i x_i <= alpha(G)``; that route is opt-in via ``allow_minimal_imperfect``.

No floating point anywhere: counts and h*-coefficients are Python ints and
Ehrhart polynomial coefficients are Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from . import _accel
from .errors import ConsistencyError, PreconditionError, SizeLimitError
from .families import cycle_poly
from .graph import (
    Graph,
    build_dg,
    complement,
    is_bipartite,
    is_connected,
    is_minimally_imperfect,
    is_perfect,
    maximal_cliques,
    stable_sets_masks,
    to_graph6,
)
from .pms import PmsEngine, pms_poly, pms_poly_oracle, trace_summary
from .poly import ONE, Polynomial

STABLE_SET_LIMIT = 20
COUNTING_LIMIT = 14


def stable_sets(g: Graph, limit: int = STABLE_SET_LIMIT) -> list[tuple[int, ...]]:
    """All stable sets (the empty set included), ordered by bitmask."""
    if g.n > limit:
        raise SizeLimitError(f"stable set enumeration limited to n <= {limit}")
    return [tuple(v for v in range(g.n) if s >> v & 1) for s in stable_sets_masks(g)]


@dataclass(frozen=True)
class HRepresentation:
    """``x >= 0`` plus rows ``<coef, x> <= rhs`` (coefficients in {0, 1})."""

    n: int
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]
    kinds: tuple[str, ...] = ()

    def contains(self, x) -> bool:
        if any(xi < 0 for xi in x):
            return False
        return all(sum(c * xi for c, xi in zip(row, x)) <= b for row, b in zip(self.rows, self.rhs))

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        coef = np.array(self.rows, dtype=np.int64).reshape(len(self.rows), self.n)
        return coef, np.array(self.rhs, dtype=np.int64)


def stable_set_hrep(g: Graph, allow_minimal_imperfect: bool = False) -> HRepresentation:
    """Clique description of the stable set polytope (exact for perfect graphs).

    With ``allow_minimal_imperfect`` an odd hole or antihole is accepted and
    the rank row ``sum x_i <= alpha(G)`` is appended.
    """
    rows, rhs, kinds = [], [], []
    for c in maximal_cliques(g):
        rows.append(tuple(1 if v in c else 0 for v in range(g.n)))
        rhs.append(1)
        kinds.append("clique")
    if not is_perfect(g, limit=max(COUNTING_LIMIT, STABLE_SET_LIMIT)):
        if not (allow_minimal_imperfect and is_minimally_imperfect(g, limit=COUNTING_LIMIT)):
            raise PreconditionError(
                "graph is not perfect: the maximal-clique inequalities describe a strictly "
                "larger polytope than its stable set polytope (Lovasz)"
            )
        alpha = max(bin(s).count("1") for s in stable_sets_masks(g))
        rows.append((1,) * g.n)
        rhs.append(alpha)
        kinds.append("rank")
    h = HRepresentation(g.n, tuple(rows), tuple(rhs), tuple(kinds))
    # full-dimensional: the origin and every unit vector are stable-set points
    for x in [(0,) * g.n] + [tuple(int(i == j) for j in range(g.n)) for i in range(g.n)]:
        if not h.contains(x):
            raise ConsistencyError(f"point {x} violates the H-representation")
    return h


def count_dilate(h: HRepresentation, t: int, backend: str | None = None) -> int:
    """Lattice points of the t-th dilate: 0 <= x_i <= t and every row scaled by t."""
    coef, rhs = h.arrays()
    return _accel.count_lattice_points(coef, rhs, t, backend=backend)


def hstar_from_counts(counts, n: int) -> Polynomial:
    """h*-polynomial of an n-dimensional lattice polytope from L_P(0..n)."""
    counts = [int(c) for c in counts]
    if len(counts) != n + 1:
        raise ValueError(f"need {n + 1} counts for dimension {n}, got {len(counts)}")
    if counts[0] != 1:
        raise ValueError("L_P(0) must be 1")
    h = [
        sum((-1) ** (j - i) * comb(n + 1, j - i) * counts[i] for i in range(j + 1))
        for j in range(n + 1)
    ]
    if any(c < 0 for c in h):
        raise ConsistencyError(f"negative h*-coefficient in {h}; wrong dimension or H-representation")
    for t in range(n + 1):
        if sum(h[j] * comb(t + n - j, n) for j in range(n + 1)) != counts[t]:
            raise ConsistencyError(f"h*-vector does not reproduce L_P({t})")
    return Polynomial(h)


def ehrhart_poly_from_hstar(hstar: Polynomial, n: int) -> list[Fraction]:
    """Coefficients (ascending in t) of L_P(t) = sum_j h*_j binom(t + n - j, n)."""
    total = [Fraction(0)] * (n + 1)
    for j, hj in enumerate(hstar.coeffs):
        if not hj:
            continue
        # binom(t + n - j, n) = prod_{i=1..n} (t + n - j - i + 1) / n!
        poly = [Fraction(1)]
        for i in range(1, n + 1):
            a = n - j - i + 1
            nxt = [Fraction(0)] * (len(poly) + 1)
            for d, c in enumerate(poly):
                nxt[d] += a * c
                nxt[d + 1] += c
            poly = nxt
        for d, c in enumerate(poly):
            total[d] += hj * c / factorial(n)
    return total


def evaluate_ehrhart(coeffs: list[Fraction], t: int) -> Fraction:
    return sum(c * t**d for d, c in enumerate(coeffs))


@dataclass(frozen=True)
class EhrhartData:
    n: int
    counts: tuple[int, ...]
    hstar: Polynomial
    ehrhart_poly: tuple[Fraction, ...]
    hrep: HRepresentation = field(repr=False)

    @property
    def nvol(self) -> int:
        return self.hstar(1)


def ehrhart_data(
    g: Graph,
    allow_minimal_imperfect: bool = False,
    limit: int = COUNTING_LIMIT,
    backend: str | None = None,
) -> EhrhartData:
    if g.n > limit:
        raise SizeLimitError(f"lattice counting limited to n <= {limit}, got n={g.n}")
    h = stable_set_hrep(g, allow_minimal_imperfect)
    counts = [count_dilate(h, t, backend) for t in range(g.n + 1)]
    if counts[1] != len(stable_sets_masks(g)):
        raise ConsistencyError("L_P(1) differs from the number of stable sets")
    hstar = hstar_from_counts(counts, g.n)
    return EhrhartData(g.n, tuple(counts), hstar, tuple(ehrhart_poly_from_hstar(hstar, g.n)), h)


def hstar_stable_set_polytope(g: Graph, allow_minimal_imperfect: bool = False, **kw) -> Polynomial:
    return ehrhart_data(g, allow_minimal_imperfect, **kw).hstar


# ---------------------------------------------------------------------------
# closed forms and integer sequences


def lucas(n: int) -> int:
    a, b = 2, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def even_cycle_hstar_closed_form(k: int) -> Polynomial:
    """p(C_{2k}) from the recurrence a_k = (1+2z) a_{k-1} - z^2 a_{k-2} + z^{k-1}.

    Seeds a_0 = 1 and a_1 = 1 + z are the k = 0, 1 values of the radical formula;
    the cycles they would name are not simple graphs, so k >= 2 is required.
    """
    if k < 2:
        raise ValueError("even cycles need k >= 2 (C_0 and C_2 are not simple graphs)")
    prev, cur = ONE, Polynomial([1, 1])
    for j in range(2, k + 1):
        prev, cur = cur, Polynomial([1, 2]) * cur - prev.shift(2) + Polynomial.monomial(j - 1)
    return cur


def even_cycle_radical(k: int) -> Polynomial:
    """Exact expansion of ((1+2z+s)^k + (1+2z-s)^k) / 2^k - z^k with s^2 = 1+4z."""
    a, disc = Polynomial([1, 2]), Polynomial([1, 4])
    total = Polynomial()
    for j in range(0, k + 1, 2):
        total = total + comb(k, j) * a ** (k - j) * disc ** (j // 2)
    return (2 * total).exact_div_int(2**k) - Polynomial.monomial(k)


# ---------------------------------------------------------------------------
# reports


@dataclass
class Report:
    name: str
    ok: bool
    graph: str = ""
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"check": self.name, "ok": self.ok, "graph": self.graph}
        for k, v in self.details.items():
            out[k] = v.to_json() if isinstance(v, Polynomial) else v
        return out

    def __str__(self) -> str:
        parts = [f"{k}: {v}" for k, v in self.details.items()]
        head = f"{self.name}{' ' + self.graph if self.graph else ''}: {'PASS' if self.ok else 'FAIL'}"
        return head + ("; " + "; ".join(parts) if parts else "")


def verify_lemma_bipartite_complement(
    g: Graph, engine: PmsEngine | None = None, use_oracle: bool = False, backend: str | None = None
) -> Report:
    """Compare h*(P_G) (lattice counting) with p(complement G) (PMS machinery)."""
    gc = complement(g)
    if is_bipartite(gc) is None:
        raise PreconditionError("the complement of g is not bipartite")
    data = ehrhart_data(g, backend=backend)
    if use_oracle:
        pms, summary = pms_poly_oracle(gc), {"oracle": 1}
    else:
        pms, step = pms_poly(gc, engine)
        summary = trace_summary(step)
    return Report(
        "lemma",
        data.hstar == pms,
        to_graph6(g),
        {"hstar": data.hstar, "pms": pms, "equal": data.hstar == pms, "nvol": str(data.nvol), "trace": summary},
    )


def verify_even_cycle_volume(k: int) -> Report:
    """Normalized volume of P for the complement of C_{2k} equals floor(phi^{2k}) = Lucas(2k) - 1."""
    h = even_cycle_hstar_closed_form(k)
    nvol, target = h(1), lucas(2 * k) - 1
    return Report(
        "volume",
        nvol == target,
        f"C_{2 * k}",
        {"hstar": h, "nvol": str(nvol), "floor_phi_2k": str(target)},
    )


def _cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def conjecture_check(n: int, limit: int = COUNTING_LIMIT, backend: str | None = None) -> Report:
    """For odd n >= 5: h* of P over the complement of C_n equals p(C_n) + z^{(n+1)/2}."""
    if n < 5 or n % 2 == 0:
        raise ValueError("conjecture check is for odd n >= 5")
    if n > limit:
        raise SizeLimitError(f"n={n} exceeds counting limit {limit}")
    g = complement(_cycle_graph(n))
    data = ehrhart_data(g, allow_minimal_imperfect=True, limit=limit, backend=backend)
    predicted = cycle_poly(n) + Polynomial.monomial((n + 1) // 2)
    return Report(
        "conjecture",
        data.hstar == predicted,
        f"complement(C_{n})",
        {"hstar": data.hstar, "predicted": predicted, "nvol": str(data.nvol)},
    )


def pq_bound_report(g: Graph, engine: PmsEngine | None = None) -> Report:
    """Coefficientwise bounds for the PQ-type adjacency polytope of g.

    Its h*-vector is bounded above by h*(P over the complement of D(g)) = p(D(g)),
    and the binomial bounds C(n-1, i) <= h*_i <= C(n-1, i)^2 are reported alongside.
    """
    if not is_connected(g) or g.n == 0:
        raise PreconditionError("pq bounds need a connected graph")
    dg = build_dg(g)
    upper, _ = pms_poly(dg, engine)
    n = g.n
    lower = [comb(n - 1, i) for i in range(n)]
    binom_upper = [comb(n - 1, i) ** 2 for i in range(n)]
    ok = all(upper[i] >= lower[i] for i in range(n))
    return Report(
        "pq-bounds",
        ok,
        to_graph6(g),
        {
            "dg_upper_bound": upper,
            "binomial_lower": lower,
            "binomial_upper": binom_upper,
        },
    )


def hstar_linear_coeff_check(g: Graph, backend: str | None = None) -> Report:
    """h*_1 = (#lattice points of P_G) - n - 1 = #stable sets - n - 1."""
    if not is_perfect(g):
        raise PreconditionError("linear-coefficient check needs a perfect graph")
    h = hstar_stable_set_polytope(g, backend=backend)
    expected = len(stable_sets_masks(g)) - g.n - 1
    if h[1] != expected:
        raise ConsistencyError(f"h*_1 = {h[1]} but #stable sets - n - 1 = {expected}")
    return Report("linear-coefficient", True, to_graph6(g), {"h1": h[1], "expected": expected})
