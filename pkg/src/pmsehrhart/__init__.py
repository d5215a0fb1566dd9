"""Perfectly matchable subgraph polynomials and Ehrhart h*-vectors of stable set polytopes."""

from ._accel import BACKEND, HAVE_NUMBA
from .ehrhart import (
    EhrhartData,
    HRepresentation,
    Report,
    conjecture_check,
    count_dilate,
    ehrhart_data,
    hstar_from_counts,
    hstar_stable_set_polytope,
    pq_bound_report,
    stable_set_hrep,
    verify_even_cycle_volume,
    verify_lemma_bipartite_complement,
)
from .errors import (
    ConsistencyError,
    GraphArgumentError,
    GraphParseError,
    PmsError,
    PreconditionError,
    RuleInapplicable,
    SizeLimitError,
    StructureError,
)
from .families import caterpillar_poly, cycle_poly, hoggatt_long_u, kary_tree_poly, path_poly
from .graph import (
    Graph,
    blocks_and_cut_vertices,
    build_dg,
    complement,
    edge_in_even_cycle,
    is_bipartite,
    is_perfect,
    maximal_cliques,
    open_ear_decomposition,
    parse_graph,
    parse_graph6,
    to_graph6,
)
from .pms import (
    PmsEngine,
    Step,
    cut_vertex_combine,
    edge_recurrence,
    marked_pms_poly,
    matching_poly,
    open_ear_combine,
    pms_poly,
    pms_poly_oracle,
    replay,
    vertex_recurrence,
)
from .poly import Polynomial, format_poly, parse_poly

__version__ = "0.1.0"
