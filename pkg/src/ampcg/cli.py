"""Command-line interface over the whole pipeline.

Exit codes: 0 success, 1 usage error, 2 validation or domain failure,
3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .causal import MODES, adjusting_set, enumerate_adjusting_sets
from .equivalence import enumerate_class, equivalent, essential_from_class, strong_oracle
from .errors import GraphError, ModelError, ParseError, TooLargeError
from .essential import essential_graph
from .gaussian import bound_effect, random_model, sample
from .graphs import ChainGraph, chain_components
from .io_text import (
    parse_graph,
    read_dataset,
    serialize_graph,
    to_dot,
    to_json,
    write_dataset,
)
from .strong import accelerator_labels, label_strong
from .transform import (
    class_by_merge_split,
    maximally_oriented,
    maximally_oriented_members,
    minimally_oriented,
)

USAGE_EXIT = 1
FAILURE_EXIT = 2
TOO_LARGE_EXIT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 instead of argparse's default 2
        raise _UsageError(message)


def _load_graph(path: str) -> ChainGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def _print_graph(g: ChainGraph, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(to_json(g))
    elif fmt == "dot":
        sys.stdout.write(to_dot(g))
    else:
        sys.stdout.write(serialize_graph(g))


def _split_nodes(raw: str | None) -> frozenset[str]:
    if not raw:
        return frozenset()
    return frozenset(part for part in raw.split(",") if part)


def _cmd_validate(ns) -> int:
    g = _load_graph(ns.graph)
    _print_graph(g, ns.format)
    return 0


def _cmd_components(ns) -> int:
    g = _load_graph(ns.graph)
    comps = chain_components(g).components
    if ns.format == "json":
        doc = {"components": [sorted(c) for c in comps]}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for i, comp in enumerate(comps):
            sys.stdout.write(f"{i}: {' '.join(sorted(comp))}\n")
    return 0


def _cmd_sep(ns) -> int:
    from .separation import separated

    g = _load_graph(ns.graph)
    xs, ys, zs = _split_nodes(ns.x), _split_nodes(ns.y), _split_nodes(ns.z)
    result = separated(g, xs, ys, zs)
    if ns.format == "json":
        doc = {
            "x": sorted(xs),
            "y": sorted(ys),
            "z": sorted(zs),
            "separated": result,
        }
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(("separated" if result else "connected") + "\n")
    return 0


def _cmd_equiv(ns) -> int:
    g, h = _load_graph(ns.graph1), _load_graph(ns.graph2)
    result = equivalent(g, h)
    sys.stdout.write(("equivalent" if result else "not equivalent") + "\n")
    return 0


def _cmd_class(ns) -> int:
    g = _load_graph(ns.graph)
    if ns.via == "merge-split":
        cls = class_by_merge_split(g, max_edges=ns.max_edges)
    else:
        cls = enumerate_class(g, max_edges=ns.max_edges)
    members = sorted(cls.members, key=repr)
    if ns.format == "json":
        from .io_text import graph_to_json

        doc = {"size": len(members), "members": [graph_to_json(m) for m in members]}
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(f"{len(members)} members\n")
        for m in members:
            sys.stdout.write(serialize_graph(m).replace("\n", "; ").rstrip("; ") + "\n")
    return 0


def _cmd_eg(ns) -> int:
    g = _load_graph(ns.graph)
    result = essential_graph(g)
    if ns.format == "json":
        sys.stdout.write(to_json(result.marks))
    else:
        _print_graph(result.graph, ns.format)
    return 0


def _cmd_strong(ns) -> int:
    g = _load_graph(ns.graph)
    result = essential_graph(g)
    if ns.rules_only:
        labels = sorted(accelerator_labels(result.marks))
        if ns.format == "json":
            doc = {"strong_directed": [list(e) for e in labels]}
            sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        else:
            for u, v in labels:
                sys.stdout.write(f"{u} -> {v} strong\n")
            if not labels:
                sys.stdout.write("no strong edges detected by rules\n")
        return 0
    labeling = label_strong(result.marks, result.separators)
    if ns.format == "json":
        sys.stdout.write(to_json(labeling))
    elif ns.format == "dot":
        sys.stdout.write(to_dot(labeling))
    else:
        for u, v in sorted(labeling.strong_directed):
            sys.stdout.write(f"{u} -> {v} strong\n")
        for a, b in sorted(labeling.strong_undirected):
            sys.stdout.write(f"{a} -- {b} strong\n")
        total = len(labeling.strong_directed) + len(labeling.strong_undirected)
        if not total:
            sys.stdout.write("no strong edges\n")
    return 0


def _cmd_minmax(ns) -> int:
    g = _load_graph(ns.graph)
    if ns.mode == "min":
        members = sorted(minimally_oriented(g, max_edges=ns.max_edges), key=repr)
        if ns.format == "json":
            from .io_text import graph_to_json

            doc = {"minimally_oriented": [graph_to_json(m) for m in members]}
            sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        else:
            sys.stdout.write(f"{len(members)} minimally oriented members\n")
            for m in members:
                sys.stdout.write(
                    serialize_graph(m).replace("\n", "; ").rstrip("; ") + "\n"
                )
    else:
        witness = maximally_oriented(g)
        _print_graph(witness, ns.format)
    return 0


def _cmd_adjust(ns) -> int:
    g = _load_graph(ns.graph)
    result = essential_graph(g)
    labeling = label_strong(result.marks, result.separators)
    sets = sorted(
        enumerate_adjusting_sets(
            labeling, ns.x, ns.mode, max_edges=ns.max_edges
        ),
        key=lambda a: a.sort_key(),
    )
    if ns.format == "json":
        doc = {
            "x": ns.x,
            "mode": ns.mode,
            "sets": [sorted(a.nodes) for a in sets],
        }
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for a in sets:
            names = " ".join(sorted(a.nodes)) if a.nodes else "(empty)"
            sys.stdout.write(f"{{{names}}}\n" if a.nodes else "(empty)\n")
    return 0


def _cmd_sample(ns) -> int:
    g = _load_graph(ns.graph)
    model = random_model(g, seed=ns.seed)
    ds = sample(model, n=ns.n, seed=ns.seed)
    write_dataset(ds, ns.out)
    sys.stdout.write(f"wrote {ns.n} rows over {len(ds.columns)} columns to {ns.out}\n")
    return 0


def _cmd_bound(ns) -> int:
    g = _load_graph(ns.graph)
    ds = read_dataset(ns.data)
    result = essential_graph(g)
    labeling = label_strong(result.marks, result.separators)
    report = bound_effect(
        ds, labeling, ns.x, ns.y, ns.mode, max_edges=ns.max_edges
    )
    if ns.format == "json":
        doc = {
            "x": ns.x,
            "y": ns.y,
            "mode": report.mode,
            "lower": report.lower,
            "upper": report.upper,
            "entries": [
                {"set": sorted(aset.nodes), "effect": value}
                for aset, value in report.entries
            ],
        }
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        for aset, value in report.entries:
            names = " ".join(sorted(aset.nodes)) if aset.nodes else "(empty)"
            sys.stdout.write(f"Z = {names:<24} effect = {value:+.6f}\n")
        sys.stdout.write(f"bounds: [{report.lower:.6f}, {report.upper:.6f}]\n")
    return 0


def _cmd_oracle(ns) -> int:
    g = _load_graph(ns.graph)
    checks: list[tuple[str, bool]] = []
    cls = enumerate_class(g, max_edges=ns.max_edges)
    result = essential_graph(g)
    eg_oracle = essential_from_class(cls)
    checks.append(("essential graph matches class oracle", result.graph == eg_oracle))
    labeling = label_strong(result.marks, result.separators, check_invariants=True)
    summary = strong_oracle(cls)
    checks.append(
        (
            "strong labels match class oracle",
            labeling.strong_directed == summary.directed
            and labeling.strong_undirected == summary.undirected,
        )
    )
    checks.append(
        (
            "rule shortcut is sound",
            accelerator_labels(result.marks) <= labeling.strong_directed,
        )
    )
    closure = class_by_merge_split(g, max_edges=ns.max_edges)
    checks.append(("merge/split closure equals brute force", closure.members == cls.members))
    mins = minimally_oriented(g, max_edges=ns.max_edges)
    maximal_dirsets = {
        m
        for m in cls.members
        if not any(m.directed > other.directed for other in cls.members)
    }
    checks.append(("minimally oriented members are the arrow-minimal ones", mins == maximal_dirsets))
    maxes = maximally_oriented_members(g, max_edges=ns.max_edges)
    undirected_sets = {m.undirected for m in maxes}
    undirected_sets.add(maximally_oriented(g).undirected)
    undirected_sets.add(maximally_oriented(g, reverse_order=True).undirected)
    checks.append(("maximally oriented members share undirected edges", len(undirected_sets) == 1))
    adj_ok = all(
        {a.nodes for a in enumerate_adjusting_sets(labeling, x, "maxoriented")}
        == {adjusting_set(m, x) for m in maxes}
        for x in result.graph.sorted_nodes
    )
    checks.append(("adjusting sets match maximally oriented members", adj_ok))
    all_ok = all(ok for _, ok in checks)
    width = max(len(name) for name, _ in checks)
    for name, ok in checks:
        sys.stdout.write(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}\n")
    return 0 if all_ok else FAILURE_EXIT


def _build_parser() -> _Parser:
    parser = _Parser(prog="ampcg", description=__doc__)
    parser.add_argument("--version", action="version", version=f"ampcg {__version__}")
    parser.add_argument(
        "--format", choices=("text", "json", "dot"), default="text",
        help="output format (default: text)",
    )
    parser.add_argument("--seed", type=int, default=0, help="random seed")
    parser.add_argument(
        "--max-edges", type=int, default=16, help="cap for class enumerations"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a graph document")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("components", help="chain components in topological order")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_components)

    p = sub.add_parser("sep", help="test a separation query")
    p.add_argument("graph")
    p.add_argument("--x", required=True, help="comma-separated nodes")
    p.add_argument("--y", required=True, help="comma-separated nodes")
    p.add_argument("--z", default="", help="comma-separated nodes")
    p.set_defaults(func=_cmd_sep)

    p = sub.add_parser("equiv", help="test Markov equivalence of two graphs")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("class", help="enumerate the equivalence class")
    p.add_argument("graph")
    p.add_argument("--via", choices=("brute", "merge-split"), default="brute")
    p.set_defaults(func=_cmd_class)

    p = sub.add_parser("eg", help="construct the essential graph")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_eg)

    p = sub.add_parser("strong", help="label strong edges in the essential graph")
    p.add_argument("graph")
    p.add_argument(
        "--rules-only", action="store_true",
        help="report only the labels found by the shortcut rules",
    )
    p.set_defaults(func=_cmd_strong)

    p = sub.add_parser("minmax", help="minimally or maximally oriented members")
    p.add_argument("graph")
    p.add_argument("--mode", choices=("min", "max"), required=True)
    p.set_defaults(func=_cmd_minmax)

    p = sub.add_parser("adjust", help="enumerate adjusting sets for a node")
    p.add_argument("graph")
    p.add_argument("--x", required=True)
    p.add_argument("--mode", choices=MODES, default="maxoriented")
    p.set_defaults(func=_cmd_adjust)

    p = sub.add_parser("sample", help="sample a random model on the graph")
    p.add_argument("graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("bound", help="bound a causal effect from data")
    p.add_argument("graph")
    p.add_argument("--data", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--mode", choices=MODES, default="maxoriented")
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("oracle", help="run the brute-force cross-checks on a graph")
    p.add_argument("graph")
    p.set_defaults(func=_cmd_oracle)

    return parser


def cli(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return USAGE_EXIT
    try:
        return ns.func(ns)
    except TooLargeError as exc:
        sys.stderr.write(f"size cap: {exc}\n")
        return TOO_LARGE_EXIT
    except (GraphError, ParseError, ModelError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return FAILURE_EXIT


def main() -> None:
    sys.exit(cli())
