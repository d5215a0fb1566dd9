"""Command-line interface: ``pmsehrhart {pms,hstar,verify}``.

Exit codes: 0 success, 1 verification failure, 2 precondition or parse failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .. import _accel
from ..ehrhart import COUNTING_LIMIT, conjecture_check, ehrhart_data
from ..errors import GraphArgumentError, PmsError, PreconditionError, SizeLimitError
from ..families import cycle_poly
from ..graph import Graph, complement, is_bipartite, is_minimally_imperfect, parse_graph, to_graph6
from ..pms import MATCHING_LIMIT, ORACLE_LIMIT, PmsEngine, pms_poly, render_trace, trace_summary
from ..poly import Polynomial
from . import suites
from .families import family_graph

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    graph: Graph | None
    json: bool
    trace: int
    oracle_limit: int
    count_limit: int
    backend: str | None


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags already; keep messages on stderr
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--edge-list", metavar="TEXT", help='inline edge list; "\\n" separates lines')
    src.add_argument("--graph6", metavar="STR")
    src.add_argument("--file", metavar="PATH", help="read a graph from PATH ('-' for stdin)")
    src.add_argument("--family", metavar="SPEC", help="path:n cycle:n caterpillar:n:k kary:k:r cycle-complement:n ...")
    p.add_argument("--format", choices=("graph6", "edge-list"), default=None, help="format of --file (guessed if omitted)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--oracle-limit", type=_positive, default=ORACLE_LIMIT)
    p.add_argument("--count-limit", type=_positive, default=COUNTING_LIMIT)
    p.add_argument("--backend", choices=("numba", "numpy"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmsehrhart", description="PMS polynomials and Ehrhart h*-vectors of stable set polytopes")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pms", help="perfectly matchable subgraph polynomial")
    _add_input(p)
    _add_common(p)
    p.add_argument("--trace", nargs="?", type=int, const=3, default=0, metavar="DEPTH", help="print the rule trace")

    h = sub.add_parser("hstar", help="h*-vector of the stable set polytope")
    _add_input(h)
    _add_common(h)
    h.add_argument(
        "--allow-minimal-imperfect",
        action="store_true",
        help="accept odd holes and antiholes (adds the rank row sum(x) <= alpha)",
    )

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=suites.SUITES, required=True)
    v.add_argument("--max-n", type=_positive, default=None)
    v.add_argument("--min-n", type=_positive, default=4)
    v.add_argument("--trials", type=_positive, default=500)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--exhaustive-n", type=int, default=0, help="oracle suite: also sweep all connected graphs up to n")
    v.add_argument("--json", action="store_true")
    v.add_argument("--backend", choices=("numba", "numpy"), default=None)
    return parser


def _read_graph(args) -> Graph:
    if args.family is not None:
        return family_graph(args.family)
    if args.graph6 is not None:
        return parse_graph(args.graph6, "graph6")
    if args.edge_list is not None:
        return parse_graph(args.edge_list.replace("\\n", "\n"), "edge-list")
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    fmt = args.format
    if fmt is None:
        first = text.strip().splitlines()[0] if text.strip() else ""
        fmt = "graph6" if len(first.split()) == 1 and not first.isdigit() and not first.startswith("#") else "edge-list"
    return parse_graph(text, fmt)


def _emit(out: dict, lines: list[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(out, indent=2))
    else:
        print("\n".join(lines))


def cmd_pms(cfg: RunConfig) -> int:
    g = cfg.graph
    if g.n > cfg.oracle_limit + 64:
        raise SizeLimitError(f"n={g.n} is far beyond the oracle limit {cfg.oracle_limit}")
    engine = PmsEngine(oracle_limit=cfg.oracle_limit, matching_limit=max(MATCHING_LIMIT, cfg.oracle_limit))
    p, step = pms_poly(g, engine)
    lines = [str(p), f"p(G; 1) = {p(1)}"]
    if cfg.trace:
        lines.append(render_trace(step, cfg.trace))
    out = {"graph": to_graph6(g), "pms": p.to_json(), "value_at_1": str(p(1)), "trace": trace_summary(step)}
    _emit(out, lines, cfg.json)
    return EXIT_OK


def cmd_hstar(cfg: RunConfig, allow_minimal_imperfect: bool = False) -> int:
    g = cfg.graph
    data = ehrhart_data(g, allow_minimal_imperfect=allow_minimal_imperfect, limit=cfg.count_limit, backend=cfg.backend)
    lines = [f"{data.hstar}, NVol {data.nvol}"]
    out = {"graph": to_graph6(g), "hstar": data.hstar.to_json(), "nvol": str(data.nvol)}
    status = EXIT_OK
    gc = complement(g)
    if is_bipartite(gc) is not None:
        pms, step = pms_poly(gc, PmsEngine(oracle_limit=cfg.oracle_limit))
        equal = pms == data.hstar
        lines.append(f"lemma: {'match' if equal else 'MISMATCH'} (p(complement) = {pms})")
        out.update(pms=pms.to_json(), equal=equal, trace=trace_summary(step))
        if not equal:
            status = EXIT_FAIL
    n = g.n
    if n >= 5 and n % 2 and _is_odd_cycle(gc):
        predicted = cycle_poly(n) + Polynomial.monomial((n + 1) // 2)
        ok = predicted == data.hstar
        lines.append(f"conjecture: {'match' if ok else 'MISMATCH'} (p(C_{n}) + z^{(n + 1) // 2} = {predicted})")
        out["conjecture"] = {"predicted": predicted.to_json(), "equal": ok}
        if not ok:
            status = EXIT_FAIL
    _emit(out, lines, cfg.json)
    if status == EXIT_FAIL:
        print(f"certificate: {to_graph6(g)}", file=sys.stderr)
    return status


def _is_odd_cycle(g: Graph) -> bool:
    from ..graph import is_connected

    return g.n >= 3 and g.n % 2 == 1 and all(g.degree(v) == 2 for v in range(g.n)) and is_connected(g)


def cmd_verify(args) -> int:
    backend = args.backend
    name = args.suite
    if name == "tables":
        res = suites.suite_tables(backend=backend)
    elif name == "lemma":
        res = suites.suite_lemma(args.max_n or 6, backend=backend)
    elif name == "conjecture":
        max_n = args.max_n or 11
        if max_n > COUNTING_LIMIT:
            raise SizeLimitError(f"--max-n {max_n} exceeds the counting limit {COUNTING_LIMIT}")
        res = suites.suite_conjecture(max_n, backend=backend)
    elif name == "volume":
        res = suites.suite_volume(args.max_n or 10)
    else:
        res = suites.suite_oracle(args.trials, args.min_n, args.max_n or 10, args.seed, args.exhaustive_n)
    if args.json:
        print(json.dumps(res.to_json(), indent=2))
    else:
        for line in res.lines + res.notes:
            print(line)
        print(f"{name}: {'PASS' if res.ok else 'FAIL'} ({res.seconds:.2f} s)")
    for cert in res.failures:
        print("counterexample: " + json.dumps(cert), file=sys.stderr)
    return EXIT_OK if res.ok else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "backend", None):
            _accel._resolve(args.backend)
        if args.command == "verify":
            return cmd_verify(args)
        cfg = RunConfig(
            args.command,
            _read_graph(args),
            args.json,
            getattr(args, "trace", 0),
            args.oracle_limit,
            args.count_limit,
            args.backend,
        )
        if args.command == "pms":
            return cmd_pms(cfg)
        allow = args.allow_minimal_imperfect or (
            args.family is not None and args.family.startswith("cycle-complement:")
        )
        if not allow and is_minimally_imperfect(cfg.graph, limit=max(cfg.count_limit, 12)):
            print("note: pass --allow-minimal-imperfect to use the rank-row description", file=sys.stderr)
        return cmd_hstar(cfg, allow)
    except _UsageError as exc:
        print(f"pmsehrhart: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PmsError, OSError, RuntimeError) as exc:
        print(f"pmsehrhart: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


__all__ = ["main", "build_parser", "RunConfig", "cmd_pms", "cmd_hstar", "cmd_verify", "family_graph"]
