"""Command-line front end.

Reports are line-oriented ``key=value`` records; lines starting with ``#``
carry commentary such as wall-clock time and are not part of the stable
record, so reports are bit-identical across ``--threads`` settings.  Exit
codes: 0 for a positive verdict or successful output, 1 for a negative
verdict, 2 for input or usage errors, 3 for an exceeded size budget.

Graph witnesses are printed as comma-separated ``u-v`` pairs, 1-indexed to
match DIMACS files; formula witnesses as comma-separated ``x<var>=<0|1>``
fixings.  The RESILIENCE_BUDGET environment variable, when set to an
integer, overrides both the clause budget and the vertex budget of the
reduction commands.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from typing import TextIO

from .coloring import chromatic_number, is_k_colorable
from .graphs import CLASSIC_NAMES, Graph, ParseError, classic, parse_graph, serialize_graph
from .reductions import (
    BudgetExceededError,
    blow_up,
    hardness_chain,
    provenance_json,
    shrink_down,
    six_cnf_to_graph,
    verify_gadget_contracts,
)
from .resilience import SATURATED, is_r_resiliently_k_colorable, max_graph_resilience
from .sat import CnfFormula, is_r_resilient, parse_cnf, serialize_cnf

# Rows recomputed by the classics table: graph, k, published max resilience,
# and whether that value is exact or only a lower bound.
_CLASSICS_TABLE = (
    ("petersen", 3, 2, False),
    ("durer", 3, 1, True),
    ("durer", 4, 4, True),
    ("grotzsch", 4, 4, True),
    ("chvatal", 4, 3, True),
)


class UsageError(Exception):
    """Bad arguments or ill-formed input discovered inside a command."""


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(path: str | None) -> Graph:
    return parse_graph(_read_text(path))


def _load_cnf(path: str | None) -> CnfFormula:
    return parse_cnf(_read_text(path))


def _emit(out: TextIO, key: str, value) -> None:
    if isinstance(value, bool):
        value = "true" if value else "false"
    print(f"{key}={value}", file=out)


def _emit_time(out: TextIO, started: float) -> None:
    print(f"# wall_time_s={time.perf_counter() - started:.3f}", file=out)


def _edge_witness(pairs: tuple[tuple[int, int], ...]) -> str:
    return ",".join(f"{u + 1}-{v + 1}" for u, v in pairs)


def _budget() -> int | None:
    raw = os.environ.get("RESILIENCE_BUDGET")
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"RESILIENCE_BUDGET must be an integer, got {raw!r}")
    if value < 0:
        raise UsageError("RESILIENCE_BUDGET must be >= 0")
    return value


def _cmd_color(args) -> int:
    started = time.perf_counter()
    g = _load_graph(args.file)
    out = sys.stdout
    _emit(out, "command", "color")
    _emit(out, "k", args.k)
    _emit(out, "n", g.n)
    _emit(out, "edges", len(g.edges))
    colors = is_k_colorable(g, args.k)
    _emit(out, "colorable", colors is not None)
    if colors is not None:
        _emit(out, "coloring", ",".join(map(str, colors)))
    _emit_time(out, started)
    return 0 if colors is not None else 1


def _cmd_resilience(args) -> int:
    started = time.perf_counter()
    out = sys.stdout
    if args.mode == "graph":
        if args.k is None:
            raise UsageError("graph mode requires --k")
        g = _load_graph(args.file)
        _emit(out, "command", "resilience")
        _emit(out, "mode", "graph")
        _emit(out, "r", args.r)
        _emit(out, "k", args.k)
        _emit(out, "n", g.n)
        _emit(out, "edges", len(g.edges))
        verdict = is_r_resiliently_k_colorable(g, args.r, args.k, threads=args.threads)
        if verdict.r < args.r:
            # fewer non-edges than r: the check saturates at the full set
            _emit(out, "effective_r", verdict.r)
            if g.n <= args.k:
                _emit(out, "saturated", True)
        resilient = verdict.resilient
        _emit(out, "resilient", resilient)
        if verdict.witness is not None:
            _emit(out, "witness", _edge_witness(verdict.witness))
        _emit(out, "subsets_checked", verdict.subsets_checked)
    else:
        phi = _load_cnf(args.file)
        _emit(out, "command", "resilience")
        _emit(out, "mode", "sat")
        _emit(out, "r", args.r)
        _emit(out, "num_vars", phi.num_vars)
        _emit(out, "clauses", len(phi.clauses))
        sat_verdict = is_r_resilient(phi, args.r)
        if sat_verdict.r < args.r:
            _emit(out, "effective_r", sat_verdict.r)
        resilient = sat_verdict.resilient
        _emit(out, "resilient", resilient)
        if sat_verdict.witness is not None:
            fixes = ",".join(
                f"x{var}={1 if value else 0}" for var, value in sat_verdict.witness.fixes
            )
            _emit(out, "witness", fixes)
        _emit(out, "restrictions_checked", sat_verdict.restrictions_checked)
    _emit_time(out, started)
    return 0 if resilient else 1


def _cmd_reduce(args) -> int:
    started = time.perf_counter()
    report = sys.stderr
    budget = _budget()
    phi = _load_cnf(args.file)
    _emit(report, "command", "reduce")
    _emit(report, "kind", args.kind)
    _emit(report, "input_num_vars", phi.num_vars)
    _emit(report, "input_clauses", len(phi.clauses))
    if args.kind == "blowup":
        if args.s is None:
            raise UsageError("blowup requires --s")
        psi = blow_up(phi, args.s, clause_budget=budget)
        artifact = serialize_cnf(psi)
    elif args.kind == "shrink":
        try:
            psi = shrink_down(phi)
        except ValueError as exc:
            raise UsageError(str(exc))
        artifact = serialize_cnf(psi)
    elif args.kind == "chain":
        if args.r is None:
            raise UsageError("chain requires --r")
        try:
            psi = hardness_chain(args.r, phi, clause_budget=budget)
        except ValueError as exc:
            raise UsageError(str(exc))
        artifact = serialize_cnf(psi)
    else:  # to-coloring
        if args.output is None:
            raise UsageError("to-coloring requires -o for the graph and sidecar files")
        try:
            gg = six_cnf_to_graph(phi, vertex_budget=budget)
        except ValueError as exc:
            raise UsageError(str(exc))
        artifact = serialize_graph(gg.graph)
        sidecar_path = args.output + ".gadgets.json"
        with open(sidecar_path, "w", encoding="utf-8") as fh:
            fh.write(provenance_json(gg))
        _emit(report, "output_vertices", gg.graph.n)
        _emit(report, "output_edges", len(gg.graph.edges))
        _emit(report, "sidecar", sidecar_path)
    if args.kind != "to-coloring":
        _emit(report, "output_num_vars", psi.num_vars)
        _emit(report, "output_clauses", len(psi.clauses))
        _emit(report, "output_width", psi.width)
    if args.output is None:
        sys.stdout.write(artifact)
        _emit(report, "output", "-")
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(artifact)
        _emit(report, "output", args.output)
    _emit_time(report, started)
    return 0


def _cmd_classics(args) -> int:
    started = time.perf_counter()
    out = sys.stdout
    if args.name is not None:
        name = args.name.replace("-", "_")
        if name not in CLASSIC_NAMES:
            raise UsageError(f"unknown classic graph {args.name!r}; choices: "
                             + ", ".join(sorted(n.replace('_', '-') for n in CLASSIC_NAMES)))
        try:
            g = classic(name, args.param)
        except ValueError as exc:
            raise UsageError(str(exc))
        sys.stdout.write(serialize_graph(g))
        return 0
    _emit(out, "command", "classics")
    all_match = True
    for name, k, published, exact in _CLASSICS_TABLE:
        g = classic(name)
        value = max_graph_resilience(g, k, threads=args.threads)
        chi = chromatic_number(g)
        match = value == published if exact else (value != SATURATED and value >= published)
        all_match = all_match and match
        stated = f"published={published}" if exact else f"published>={published}"
        _emit(
            out,
            "row",
            f"{name} k={k} chromatic={chi} resilience={value} {stated} "
            f"match={'true' if match else 'false'}",
        )
    _emit(out, "all_match", all_match)
    _emit_time(out, started)
    return 0 if all_match else 1


def _cmd_verify_gadgets(args) -> int:
    started = time.perf_counter()
    out = sys.stdout
    report = verify_gadget_contracts()
    passed, failed = report.counts()
    _emit(out, "command", "verify-gadgets")
    _emit(out, "checks_passed", passed)
    _emit(out, "checks_failed", failed)
    for check in report.failures():
        _emit(out, "failure", f"{check.gadget} {check.contract} {check.pattern} {check.detail}")
    _emit(out, "ok", report.ok)
    _emit_time(out, started)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rescol",
        description="Resilient graph coloring and SAT: exact checks, reductions, gadget verification.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        help="process parallelism for resilience scans (verdicts are thread-count independent)",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_color = sub.add_parser("color", help="decide k-colorability of a DIMACS edge file")
    p_color.add_argument("file", nargs="?", default=None, help="DIMACS edge file (default stdin)")
    p_color.add_argument("--k", type=int, required=True, help="number of colors")
    p_color.set_defaults(func=_cmd_color)

    p_res = sub.add_parser("resilience", help="exhaustive resilience check")
    p_res.add_argument("file", nargs="?", default=None, help="input file (default stdin)")
    p_res.add_argument("--mode", choices=("graph", "sat"), required=True)
    p_res.add_argument("--r", type=int, required=True, help="resilience level to test")
    p_res.add_argument("--k", type=int, default=None, help="colors (graph mode only)")
    p_res.set_defaults(func=_cmd_resilience)

    p_red = sub.add_parser("reduce", help="apply a formula or formula-to-graph reduction")
    p_red.add_argument("file", nargs="?", default=None, help="DIMACS CNF file (default stdin)")
    p_red.add_argument("--kind", choices=("blowup", "shrink", "chain", "to-coloring"), required=True)
    p_red.add_argument("--s", type=int, default=None, help="number of copies (blowup)")
    p_red.add_argument("--r", type=int, default=None, help="target resilience (chain)")
    p_red.add_argument("-o", "--output", default=None, help="output path (default stdout)")
    p_red.set_defaults(func=_cmd_reduce)

    p_cls = sub.add_parser(
        "classics", help="recompute the classic-graph resilience table, or emit one classic graph"
    )
    p_cls.add_argument("name", nargs="?", default=None, help="emit this graph as DIMACS instead")
    p_cls.add_argument("--param", type=int, default=None, help="size parameter for complete-graph families")
    p_cls.set_defaults(func=_cmd_classics)

    p_ver = sub.add_parser("verify-gadgets", help="exhaustively certify the gadget library")
    p_ver.set_defaults(func=_cmd_verify_gadgets)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParseError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
