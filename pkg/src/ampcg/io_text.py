"""Plain-text graph documents, DOT and JSON export, CSV datasets.

Graph documents are one statement per line: `node NAME`, `edge A -> B`,
`edge A -- B`, with `#` comments and blank lines ignored.  Nodes may be
declared implicitly through edges.  Serialization is canonical, so
parse(serialize(g)) == g.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

import numpy as np

from .errors import DuplicateEdgeError, ParseError
from .essential import MarkedGraph
from .gaussian import Dataset
from .graphs import ChainGraph, NodeId, pair, validate_chain_graph
from .strong import StrongLabeling

_NAME_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_")


def _valid_name(token: str) -> bool:
    return bool(token) and set(token) <= _NAME_CHARS


def parse_graph(text: str) -> ChainGraph:
    """Parse a graph document into a validated chain graph."""
    nodes: set[NodeId] = set()
    directed: list[tuple[NodeId, NodeId]] = []
    undirected: list[tuple[NodeId, NodeId]] = []
    seen_pairs: set[tuple[NodeId, NodeId]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "node":
            if len(tokens) != 2 or not _valid_name(tokens[1]):
                raise ParseError(lineno, f"expected 'node NAME', got {line!r}")
            nodes.add(tokens[1])
        elif tokens[0] == "edge":
            if len(tokens) != 4 or tokens[2] not in ("->", "--"):
                raise ParseError(lineno, f"expected 'edge A -> B' or 'edge A -- B', got {line!r}")
            a, op, b = tokens[1], tokens[2], tokens[3]
            if not (_valid_name(a) and _valid_name(b)):
                raise ParseError(lineno, f"invalid node name in {line!r}")
            if a == b:
                raise ParseError(lineno, f"self-loop at {a!r}")
            key = pair(a, b)
            if key in seen_pairs:
                raise DuplicateEdgeError(
                    f"line {lineno}: more than one edge between {key[0]!r} and {key[1]!r}"
                )
            seen_pairs.add(key)
            nodes.update((a, b))
            if op == "->":
                directed.append((a, b))
            else:
                undirected.append((a, b))
        else:
            raise ParseError(lineno, f"unknown statement {tokens[0]!r}")
    return validate_chain_graph(nodes, directed, undirected)


def serialize_graph(g: ChainGraph) -> str:
    """Canonical text form: sorted node lines, then sorted edge lines."""
    lines = [f"node {n}" for n in g.sorted_nodes]
    edges = [(pair(u, v), "->", (u, v)) for u, v in g.directed]
    edges += [((a, b), "--", (a, b)) for a, b in g.undirected]
    for _, op, (u, v) in sorted(edges):
        lines.append(f"edge {u} {op} {v}")
    return "\n".join(lines) + "\n"


def graph_to_json(
    obj: ChainGraph | MarkedGraph | StrongLabeling,
) -> dict[str, Any]:
    """JSON-ready dict; marked graphs carry end marks, labelings strong labels."""
    if isinstance(obj, StrongLabeling):
        doc = graph_to_json(obj.graph)
        doc["strong_directed"] = [list(e) for e in sorted(obj.strong_directed)]
        doc["strong_undirected"] = [list(e) for e in sorted(obj.strong_undirected)]
        return doc
    if isinstance(obj, MarkedGraph):
        return {
            "nodes": list(obj.sorted_nodes),
            "edges": [
                {
                    "u": a,
                    "v": b,
                    "blocked_u": obj.is_blocked(a, b),
                    "blocked_v": obj.is_blocked(b, a),
                    "strong": pair(a, b) in obj.strong,
                }
                for a, b in sorted(obj.skeleton)
            ],
        }
    edges = [{"u": u, "v": v, "kind": "directed"} for u, v in sorted(obj.directed)]
    edges += [{"u": a, "v": b, "kind": "undirected"} for a, b in sorted(obj.undirected)]
    return {"nodes": list(obj.sorted_nodes), "edges": edges}


def to_json(obj: ChainGraph | MarkedGraph | StrongLabeling) -> str:
    return json.dumps(graph_to_json(obj), indent=2, sort_keys=True) + "\n"


_STRONG_STYLE = 'style=bold, color="#b22222"'


def to_dot(obj: ChainGraph | StrongLabeling, name: str = "g") -> str:
    """DOT document; undirected edges suppress their direction, strong edges
    are bold and colored."""
    if isinstance(obj, StrongLabeling):
        g = obj.graph
        strong_dir = obj.strong_directed
        strong_und = obj.strong_undirected
    else:
        g = obj
        strong_dir = frozenset()
        strong_und = frozenset()
    lines = [f"digraph {name} {{"]
    for n in g.sorted_nodes:
        lines.append(f"  {n};")
    for u, v in sorted(g.directed):
        attrs = [_STRONG_STYLE] if (u, v) in strong_dir else []
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {u} -> {v}{suffix};")
    for a, b in sorted(g.undirected):
        attrs = ["dir=none"]
        if (a, b) in strong_und:
            attrs.append(_STRONG_STYLE)
        lines.append(f"  {a} -> {b} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dataset(ds: Dataset, path: str) -> None:
    """CSV with a header of node names and one observation per row."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(ds.columns)
        for row in ds.rows:
            writer.writerow([format(v, ".17g") for v in row])


def dataset_to_csv(ds: Dataset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(ds.columns)
    for row in ds.rows:
        writer.writerow([format(v, ".17g") for v in row])
    return buf.getvalue()


def read_dataset(path: str) -> Dataset:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(1, "empty dataset") from None
        rows = [[float(v) for v in row] for row in reader if row]
    return Dataset(columns=tuple(header), rows=np.asarray(rows, dtype=float))
