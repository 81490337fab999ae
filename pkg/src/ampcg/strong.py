"""Enumeration-free labeling of strong edges in an essential graph.

Works on the pre-finalization marks: doubly blocked edges are strong
undirected; an edge blocked at one end is a strong arrow exactly when forcing
it undirected (blocking the other end, then re-running the propagation rules)
destroys a pretriplex that the essential graph carries.  Totally plain edges
are non-strong undirected.  The S1-S6 rules are a sound but incomplete
shortcut for strong arrows.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .equivalence import _triplex_keys
from .errors import InvalidStateError, InvariantViolationError
from .essential import (
    MarkedGraph,
    SeparatorTable,
    apply_rules_R,
    chordless_cycles,
    essential_graph,
)
from .graphs import ChainGraph, NodeId, pair


@dataclass(frozen=True)
class StrongLabeling:
    """An essential graph with its edges classified by strength."""

    graph: ChainGraph
    strong_directed: frozenset[tuple[NodeId, NodeId]]
    strong_undirected: frozenset[tuple[NodeId, NodeId]]


def _pretriplex_instances(m: MarkedGraph) -> list[tuple[NodeId, NodeId, NodeId]]:
    """Ordered induced paths a ~ b ~ c that finalize to a triplex at b.

    The a-side edge is blocked at a only (a future arrow a -> b) and the
    c-side edge is blocked at its c end; both orders of each pattern are kept
    because the flanking roles are not symmetric.
    """
    out = []
    for b in m.sorted_nodes:
        for a in sorted(m.adjacency[b]):
            if not m.singly_blocked(a, b):
                continue
            for c in sorted(m.adjacency[b] - {a}):
                if m.is_adjacent(a, c):
                    continue
                if (c, b) in m.blocked:
                    out.append((a, b, c))
    return out


def _check_line6_fixpoint(m: MarkedGraph, t: SeparatorTable) -> None:
    settled = apply_rules_R(m, t, rules=("R2", "R3", "R4"))
    if settled.blocked != m.blocked:
        raise InvalidStateError("marks are not a fixpoint of the propagation rules")


def _verify_candidate_state(
    m: MarkedGraph, h: MarkedGraph, eg_triplexes: frozenset
) -> None:
    """Invariants every re-blocked copy must satisfy before finalization.

    Checked: no induced triangle with one blocked edge and two totally plain
    edges; chordless cycles carry single blocks in both rotational senses or
    none; finalization yields a valid chain graph; finalization adds no
    triplex the essential graph lacks.
    """
    for x, y in sorted(h.blocked):
        for c in sorted(h.adjacency[x] & h.adjacency[y]):
            if h.plain_edge(y, c) and h.plain_edge(x, c):
                raise InvariantViolationError(
                    f"blocked edge {x}~{y} on an otherwise plain triangle with {c}"
                )
    for cycle in chordless_cycles(h, min_len=3):
        edges = list(zip(cycle, cycle[1:] + cycle[:1]))
        forward = sum(1 for u, v in edges if h.singly_blocked(u, v))
        backward = sum(1 for u, v in edges if h.singly_blocked(v, u))
        if (forward > 0) != (backward > 0):
            raise InvariantViolationError(
                f"chordless cycle {cycle} blocked in only one rotational sense"
            )
    oriented = h.finalize()  # raises on a semidirected cycle
    extra = _triplex_keys(oriented) - eg_triplexes
    if extra:
        raise InvariantViolationError(f"finalization created triplexes {sorted(extra)}")


def label_strong(
    m: MarkedGraph,
    t: SeparatorTable,
    use_accelerator: bool = False,
    check_invariants: bool = False,
) -> StrongLabeling:
    """Classify every edge of the essential graph as strong or not.

    `m` must be the pre-finalization marks of an essential graph.  With
    `use_accelerator`, S1-S6 conclusions skip their per-edge re-blocking
    checks; the output is unchanged.  With `check_invariants`, every
    re-blocked copy is asserted against the orientation invariants.
    """
    _check_line6_fixpoint(m, t)
    eg = m.finalize()
    eg_triplexes = _triplex_keys(eg) if check_invariants else frozenset()
    strong_pairs: set[tuple[NodeId, NodeId]] = set(
        pair(a, b) for a, b in m.skeleton if m.doubly_blocked(a, b)
    )
    pretriplexes = _pretriplex_instances(m)
    resolved: set[tuple[NodeId, NodeId]] = set()
    if use_accelerator:
        for x, y in accelerator_labels(m):
            resolved.add((x, y))
            strong_pairs.add(pair(x, y))
    for x, y in m.edges_blocked_at_one_end():
        if (x, y) in resolved:
            continue
        h = apply_rules_R(m.with_blocks([(y, x)]), t, rules=("R2", "R3"))
        if check_invariants:
            _verify_candidate_state(m, h, eg_triplexes)
        destroyed = any(
            h.doubly_blocked(a, b) and h.doubly_blocked(b, c)
            for a, b, c in pretriplexes
        )
        if destroyed:
            resolved.add((x, y))
            strong_pairs.add(pair(x, y))
            if use_accelerator:
                for u, v in accelerator_labels(m, known_strong=resolved):
                    resolved.add((u, v))
                    strong_pairs.add(pair(u, v))
    strong_directed = frozenset(
        (u, v) for u, v in eg.directed if pair(u, v) in strong_pairs
    )
    strong_undirected = frozenset(e for e in eg.undirected if e in strong_pairs)
    return StrongLabeling(
        graph=eg, strong_directed=strong_directed, strong_undirected=strong_undirected
    )


def strong_labeling(g: ChainGraph, use_accelerator: bool = False) -> StrongLabeling:
    """Convenience pipeline: essential graph of g, then edge labeling."""
    result = essential_graph(g)
    return label_strong(result.marks, result.separators, use_accelerator=use_accelerator)


# ---------------------------------------------------------------------------
# accelerator rules


def _s1(m: MarkedGraph) -> set[tuple[NodeId, NodeId]]:
    out = set()
    for c in m.sorted_nodes:
        nbrs = sorted(m.adjacency[c])
        for d in nbrs:
            if not m.singly_blocked(c, d):
                continue
            for a, b in combinations([n for n in nbrs if n != d], 2):
                if m.is_adjacent(a, b) or m.is_adjacent(a, d) or m.is_adjacent(b, d):
                    continue
                if m.singly_blocked(a, c) and m.singly_blocked(b, c):
                    out.add((c, d))
                    break
    return out


def _s2(m: MarkedGraph) -> set[tuple[NodeId, NodeId]]:
    out = set()
    for a, b in m.edges_blocked_at_one_end():
        for c in sorted(m.adjacency[b] - {a}):
            if m.is_adjacent(a, c):
                continue
            if m.doubly_blocked(b, c):
                out.add((a, b))
                break
    return out


def _s3(m: MarkedGraph) -> set[tuple[NodeId, NodeId]]:
    """Chordless cycle a ~ p1 ~ ... ~ pk ~ b (k >= 2) plus the edge a ~ b,
    with every path edge blocked at its end nearer a, the last path edge and
    the closing edge singly blocked at pk and a respectively."""
    out = set()
    adj = m.adjacency

    def search(a: NodeId, b: NodeId) -> bool:
        def dfs(path: list[NodeId]) -> bool:
            last = path[-1]
            if len(path) >= 3 and b in adj[last] and m.singly_blocked(last, b):
                if all(b not in adj[p] for p in path[1:-1]):
                    return True
            if b in adj[last] and len(path) >= 2:
                return False
            for w in sorted(adj[last]):
                if w == b or w in path:
                    continue
                if (last, w) not in m.blocked:
                    continue
                if any(w in adj[p] for p in path[:-1]):
                    continue
                if dfs(path + [w]):
                    return True
            return False

        return dfs([a])

    for a, b in m.edges_blocked_at_one_end():
        if search(a, b):
            out.add((a, b))
    return out


def _s4(m: MarkedGraph, strong: set[tuple[NodeId, NodeId]]) -> set[tuple[NodeId, NodeId]]:
    out = set()
    for a, b in strong:
        if not (pair(a, b) in m.skeleton and m.singly_blocked(a, b)):
            continue
        for c in sorted(m.adjacency[b] - {a}):
            if m.is_adjacent(a, c):
                continue
            if m.singly_blocked(b, c):
                out.add((b, c))
    return out


def _s5(m: MarkedGraph, strong: set[tuple[NodeId, NodeId]]) -> set[tuple[NodeId, NodeId]]:
    out = set()
    for c, b in strong:
        if not (pair(c, b) in m.skeleton and m.singly_blocked(c, b)):
            continue
        for a in sorted(m.adjacency[b] & m.adjacency[c]):
            if m.singly_blocked(a, b) and (a, c) in m.blocked:
                out.add((a, b))
    return out


def _s6(m: MarkedGraph, strong: set[tuple[NodeId, NodeId]]) -> set[tuple[NodeId, NodeId]]:
    out = set()
    for a, c in strong:
        if not (pair(a, c) in m.skeleton and m.singly_blocked(a, c)):
            continue
        for b in sorted(m.adjacency[a] & m.adjacency[c]):
            if m.singly_blocked(a, b) and (c, b) in m.blocked:
                out.add((a, b))
    return out


def accelerator_labels(
    m: MarkedGraph,
    known_strong: Iterable[tuple[NodeId, NodeId]] = (),
) -> frozenset[tuple[NodeId, NodeId]]:
    """Strong arrows detected by the shortcut rules alone.

    S1-S3 read only the end marks.  S4-S6 propagate labels already
    established by the caller (`known_strong`), chaining through their own
    conclusions until stable.  Sound but deliberately incomplete: some strong
    arrows are only found by the full re-blocking check.
    """
    known = set(known_strong)
    found = _s1(m) | _s2(m) | _s3(m)
    seeds = set(known)
    while True:
        new = (_s4(m, seeds) | _s5(m, seeds) | _s6(m, seeds)) - seeds
        if not new:
            break
        seeds |= new
        found |= new
    return frozenset(found - known)
