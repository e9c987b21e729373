"""Command-line front door: parse an edge list, enumerate, compare, report.

Two subcommands: ``run`` executes one enumeration (or the brute-force
oracle) on an edge-list file and reports as text or canonical JSON;
``corpus`` drives the seeded differential runner. Exit codes for ``run``:
0 success (and agreement, when compared), 1 usage or input error, 2
oracle-comparison mismatch, 3 step limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from .corpus import CorpusSpec, run_corpus
from .enumeration import (
    AscendingOrder,
    EnumerationOptions,
    EnumerationReport,
    PriorityOrder,
    RandomOrder,
    RunStatus,
    ScriptedOrder,
    SelectionOrder,
    YehPolicy,
    enumerate_mcvs,
    run_yeh_original,
)
from .graph import (
    Graph,
    GraphError,
    build_graph,
    cut_edges,
    format_cut,
    format_node_set,
    prune_irrelevant,
)
from .oracle import OracleResult, TooLarge, brute_force_mcvs, diff

__all__ = ["ParseError", "RunConfig", "UsageError", "main", "parse_edge_list", "run"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_STEP_LIMIT = 3


class ParseError(ValueError):
    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UsageError(ValueError):
    pass


def parse_edge_list(text: str) -> list[tuple[str, str]]:
    """Parse edge-list text: one edge per line, two whitespace-separated
    labels; blank lines and lines starting with ``#`` are ignored."""
    pairs: list[tuple[str, str]] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError(
                f"expected two labels, got {len(tokens)}", line_number
            )
        pairs.append((tokens[0], tokens[1]))
    return pairs


@dataclass
class RunConfig:
    input_path: str
    source: str | None = None
    sink: str | None = None
    algorithm: str = "corrected"  # corrected | yeh-original | oracle
    yeh_policy: str | None = None
    order: str = "ascending"
    b_policy: str = "scoped"
    prune: bool = True
    compare_oracle: bool = False
    output_format: str = "text"  # text | json
    emit_cuts: bool = False
    all_sinks: bool = False
    step_limit: int | None = None
    trace: bool = False


def _validate(config: RunConfig) -> None:
    if config.algorithm not in ("corrected", "yeh-original", "oracle"):
        raise UsageError(f"unknown algorithm {config.algorithm!r}")
    if config.algorithm == "yeh-original":
        if config.yeh_policy is None:
            raise UsageError("--yeh-policy is required with --algorithm yeh-original")
    elif config.yeh_policy is not None:
        raise UsageError("--yeh-policy only applies to --algorithm yeh-original")
    if config.step_limit is not None and config.algorithm != "yeh-original":
        raise UsageError("--step-limit only applies to --algorithm yeh-original")
    if config.b_policy not in ("scoped", "persistent"):
        raise UsageError(f"unknown b-policy {config.b_policy!r}")
    if config.output_format not in ("text", "json"):
        raise UsageError(f"unknown output format {config.output_format!r}")


def _parse_order(spec: str, g: Graph) -> SelectionOrder:
    """Turn an order spec string into a selection order over graph indices.

    Forms: ``ascending``, ``script:l1,l2,...``, ``random:SEED``,
    ``priority:l1,l2,...`` (labels, not indices).
    """
    if spec == "ascending":
        return AscendingOrder()
    kind, _, arg = spec.partition(":")
    if kind == "script" and arg:
        return ScriptedOrder(tuple(g.index_of(x) for x in arg.split(",")))
    if kind == "priority" and arg:
        return PriorityOrder(tuple(g.index_of(x) for x in arg.split(",")))
    if kind == "random" and arg:
        try:
            return RandomOrder(int(arg))
        except ValueError:
            raise UsageError(f"random order needs an integer seed, got {arg!r}") from None
    raise UsageError(
        f"bad order spec {spec!r}; expected ascending, script:..., "
        f"random:SEED, or priority:..."
    )


@dataclass
class _SinkRun:
    """Everything one source/sink pipeline produced."""

    graph: Graph
    pruned_labels: tuple[str, ...]
    report: EnumerationReport | None
    oracle: OracleResult | None
    comparison: object | None  # DiffReport
    exit_code: int


def _labels_sorted(g: Graph, nodes) -> list[str]:
    return sorted(g.node_names[v] for v in nodes)


def _edge_labels_sorted(g: Graph, edges) -> list[list[str]]:
    return sorted(sorted([g.node_names[u], g.node_names[v]]) for u, v in edges)


def _execute(
    pairs: list[tuple[str, str]], source: str, sink: str, config: RunConfig,
    err: TextIO,
) -> _SinkRun:
    g = build_graph(pairs, source, sink)
    if g.parallel_edges_merged:
        print(
            f"warning: merged {g.parallel_edges_merged} parallel edge(s)",
            file=err,
        )

    pruned_labels: tuple[str, ...] = ()
    if config.prune:
        prune = prune_irrelevant(g)
        if prune.removed_nodes:
            pruned_labels = g.label_set(prune.removed_nodes)
            print(
                "warning: pruned nodes on no source-sink path: "
                + ", ".join(pruned_labels),
                file=err,
            )
            g = prune.pruned_graph

    report: EnumerationReport | None = None
    oracle: OracleResult | None = None
    comparison = None
    code = EXIT_OK

    if config.algorithm == "oracle":
        oracle = brute_force_mcvs(g)
    else:
        opts = EnumerationOptions(
            selection_order=_parse_order(config.order, g),
            b_policy=config.b_policy,  # type: ignore[arg-type]
            record_trace=config.trace,
        )
        if config.algorithm == "corrected":
            report = enumerate_mcvs(g, opts)
        else:
            policy = YehPolicy(config.yeh_policy, config.step_limit)  # type: ignore[arg-type]
            report = run_yeh_original(g, policy, opts)
        if report.status is RunStatus.STEP_LIMIT_EXCEEDED:
            code = EXIT_STEP_LIMIT
        elif report.status is RunStatus.SCRIPT_EXHAUSTED:
            code = EXIT_USAGE

    if config.compare_oracle and report is not None:
        oracle = brute_force_mcvs(g)
        comparison = diff(report, oracle, g)
        if not comparison.agree:
            code = max(code, EXIT_MISMATCH)

    return _SinkRun(g, pruned_labels, report, oracle, comparison, code)


def _mcv_rows(run: _SinkRun) -> list[tuple[frozenset, frozenset]]:
    """(node set, cut) rows in report order, or canonical order for the oracle."""
    if run.report is not None:
        return list(zip(run.report.mcvs, run.report.cuts))
    assert run.oracle is not None
    rows = [(u, c) for u, c in zip(*_sorted_oracle(run.graph, run.oracle))]
    return rows


def _sorted_oracle(g: Graph, oracle: OracleResult):
    mcvs = sorted(oracle.mcvs, key=lambda u: _labels_sorted(g, u))
    return mcvs, [cut_edges(g, u) for u in mcvs]


def _render_text(run: _SinkRun, config: RunConfig, out: TextIO) -> None:
    g = run.graph
    print(
        f"graph: {g.node_count} nodes, {g.edge_count} edges, "
        f"source {g.node_names[g.source]}, sink {g.node_names[g.sink]}",
        file=out,
    )
    if run.pruned_labels:
        print("pruned: " + ", ".join(run.pruned_labels), file=out)
    if config.algorithm == "yeh-original":
        print(
            "note: yeh-original is a known-incomplete algorithm preserved for "
            "diagnosis; it can miss, repeat, or mis-record cut sets",
            file=out,
        )
        print(
            f"algorithm: yeh-original ({config.yeh_policy}, order={config.order})",
            file=out,
        )
    elif config.algorithm == "corrected":
        print(
            f"algorithm: corrected (order={config.order}, "
            f"b-policy={config.b_policy})",
            file=out,
        )
    else:
        print("algorithm: oracle (exhaustive)", file=out)

    if run.report is not None:
        print(f"status: {run.report.status.value}", file=out)

    rows = _mcv_rows(run)
    print(f"mcvs ({len(rows)}):", file=out)
    for u, cut in rows:
        line = f"  {format_node_set(g, u)}"
        if config.emit_cuts:
            line += f"  cut {format_cut(g, cut)}"
        print(line, file=out)

    if run.report is not None:
        st = run.report.stats
        print(
            f"stats: step1-visits={st.step1_visits} "
            f"connectivity-checks={st.connectivity_checks} "
            f"backtracks={st.backtracks} steps={st.steps}",
            file=out,
        )
        if config.trace:
            print("trace:", file=out)
            for ev in run.report.trace:
                parts = [ev.step.value, f"prefix={format_node_set(g, ev.prefix)}"]
                if ev.node is not None:
                    parts.append(f"node={g.node_names[ev.node]}")
                if ev.candidates:
                    parts.append(f"candidates={format_node_set(g, ev.candidates)}")
                print("  " + " ".join(parts), file=out)

    if run.comparison is not None:
        if run.comparison.agree:
            print("oracle comparison: agree", file=out)
        else:
            print("oracle comparison: MISMATCH", file=out)
            for name, group in (
                ("missing", run.comparison.missing),
                ("spurious", run.comparison.spurious),
            ):
                for u in sorted(group, key=lambda u: _labels_sorted(g, u)):
                    print(f"  {name}: {format_node_set(g, u)}", file=out)


def _json_payload(run: _SinkRun, config: RunConfig) -> dict:
    g = run.graph
    payload: dict = {
        "graph": {
            "nodes": list(g.node_names),
            "edges": _edge_labels_sorted(g, g.edges),
            "source": g.node_names[g.source],
            "sink": g.node_names[g.sink],
            "pruned_nodes": sorted(run.pruned_labels),
        },
        "algorithm": {
            "name": config.algorithm,
            "options": _options_json(config),
        },
    }
    rows = _mcv_rows(run)
    payload["mcvs"] = [_labels_sorted(g, u) for u, _ in rows]
    payload["cuts"] = [_edge_labels_sorted(g, cut) for _, cut in rows]
    if run.report is not None:
        st = run.report.stats
        payload["stats"] = {
            "step1_visits": st.step1_visits,
            "connectivity_checks": st.connectivity_checks,
            "backtracks": st.backtracks,
            "records": st.records,
            "steps": st.steps,
        }
        payload["status"] = run.report.status.value
        if config.trace:
            payload["trace"] = [
                {
                    "step": ev.step.value,
                    "prefix": [g.node_names[v] for v in ev.prefix],
                    "node": None if ev.node is None else g.node_names[ev.node],
                    "candidates": [g.node_names[v] for v in ev.candidates],
                }
                for ev in run.report.trace
            ]
    else:
        payload["stats"] = {"subsets_scanned": 1 << (g.node_count - 2)}
        payload["status"] = "completed"
    if run.comparison is not None:
        payload["diff"] = {
            "agree": run.comparison.agree,
            "missing": sorted(
                _labels_sorted(g, u) for u in run.comparison.missing
            ),
            "spurious": sorted(
                _labels_sorted(g, u) for u in run.comparison.spurious
            ),
            "invalid": sorted(
                _labels_sorted(g, u) for u in run.comparison.invalid
            ),
        }
    return payload


def _options_json(config: RunConfig) -> dict:
    options: dict = {"order": config.order, "prune": config.prune}
    if config.algorithm == "corrected":
        options["b_policy"] = config.b_policy
    if config.algorithm == "yeh-original":
        options["yeh_policy"] = config.yeh_policy
        options["step_limit"] = config.step_limit
    return options


def canonical_json(payload: dict) -> str:
    """Stable serialization: sorted keys, two-space indent, trailing newline.

    Re-serializing ``json.loads`` of the output reproduces it byte for byte.
    """
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def run(config: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Execute one configured pipeline; returns the process exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        _validate(config)
        text = Path(config.input_path).read_text()
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: cannot read {config.input_path}: {exc}", file=err)
        return EXIT_USAGE

    try:
        pairs = parse_edge_list(text)
        labels = {x for pair in pairs for x in pair}

        source = config.source
        if source is None:
            if "s" not in labels:
                raise UsageError("no node labeled 's'; pass --source")
            source = "s"

        if config.all_sinks:
            ordered_labels = list(dict.fromkeys(x for pair in pairs for x in pair))
            sinks = [x for x in ordered_labels if x != source]
        else:
            sink = config.sink
            if sink is None:
                if "t" not in labels:
                    raise UsageError("no node labeled 't'; pass --sink")
                sink = "t"
            sinks = [sink]

        runs = [_execute(pairs, source, x, config, err) for x in sinks]
    except (UsageError, ParseError, GraphError, TooLarge) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE

    if config.output_format == "json":
        if config.all_sinks:
            payload = {"runs": [_json_payload(r, config) for r in runs]}
        else:
            payload = _json_payload(runs[0], config)
        out.write(canonical_json(payload))
    else:
        for i, r in enumerate(runs):
            if config.all_sinks:
                if i:
                    print(file=out)
                print(f"== sink {r.graph.node_names[r.graph.sink]} ==", file=out)
            _render_text(r, config, out)

    return max(r.exit_code for r in runs)


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors map to code 1."""

    def error(self, message: str):  # noqa: D102
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mincuts", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="enumerate minimal cuts of one edge-list file")
    p_run.add_argument("input_path", metavar="FILE", help="edge-list file")
    p_run.add_argument("--source", help="source label (default: 's' when present)")
    p_run.add_argument("--sink", help="sink label (default: 't' when present)")
    p_run.add_argument(
        "--algorithm",
        choices=["corrected", "yeh-original", "oracle"],
        default="corrected",
    )
    p_run.add_argument(
        "--yeh-policy",
        choices=["goto-step1", "goto-step3", "goto-step4"],
        help="transfer taken by yeh-original when the remainder disconnects",
    )
    p_run.add_argument(
        "--order",
        default="ascending",
        help="ascending | script:l1,l2,... | random:SEED | priority:l1,l2,...",
    )
    p_run.add_argument("--b-policy", choices=["scoped", "persistent"], default="scoped")
    p_run.add_argument(
        "--prune",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="drop nodes on no source-sink path before enumerating",
    )
    p_run.add_argument("--compare-oracle", action="store_true")
    p_run.add_argument("--format", choices=["text", "json"], default="text")
    p_run.add_argument("--emit-cuts", action="store_true")
    p_run.add_argument(
        "--all-sinks",
        action="store_true",
        help="enumerate once per non-source node taken as sink",
    )
    p_run.add_argument("--step-limit", type=int)
    p_run.add_argument("--trace", action="store_true")

    p_corpus = sub.add_parser(
        "corpus", help="differential-test random graphs against the oracle"
    )
    p_corpus.add_argument("--count", type=int, default=1000)
    p_corpus.add_argument("--min-nodes", type=int, default=4)
    p_corpus.add_argument("--max-nodes", type=int, default=10)
    p_corpus.add_argument("--edge-prob", type=float, default=0.35)
    p_corpus.add_argument("--seed", type=int, default=42)
    p_corpus.add_argument(
        "--prune", action=argparse.BooleanOptionalAction, default=True
    )
    p_corpus.add_argument("--random-orders", type=int, default=3)
    p_corpus.add_argument(
        "--b-policies",
        default="scoped,persistent",
        help="comma-separated subset of: scoped,persistent",
    )
    p_corpus.add_argument(
        "--out-dir", help="directory for minimized counterexample artifacts"
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command == "run":
            config = RunConfig(
                input_path=ns.input_path,
                source=ns.source,
                sink=ns.sink,
                algorithm=ns.algorithm,
                yeh_policy=ns.yeh_policy,
                order=ns.order,
                b_policy=ns.b_policy,
                prune=ns.prune,
                compare_oracle=ns.compare_oracle,
                output_format=ns.format,
                emit_cuts=ns.emit_cuts,
                all_sinks=ns.all_sinks,
                step_limit=ns.step_limit,
                trace=ns.trace,
            )
            return run(config)
        spec = CorpusSpec(
            graph_count=ns.count,
            min_nodes=ns.min_nodes,
            max_nodes=ns.max_nodes,
            edge_probability=ns.edge_prob,
            seed=ns.seed,
            prune=ns.prune,
        )
        result = run_corpus(
            spec,
            b_policies=tuple(x for x in ns.b_policies.split(",") if x),
            random_orders=ns.random_orders,
            out_dir=ns.out_dir,
            out=sys.stdout,
        )
        print(
            f"# {result.graphs} graphs, {result.mismatches} mismatch(es)",
            file=sys.stdout,
        )
        return EXIT_OK if result.all_agree else EXIT_MISMATCH
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
