"""Essential-graph construction via separator sets and end-block rules.

The working state is a skeleton whose edge ends carry *blocks*.  A block at
the end of an edge means the edge can never receive an arrowhead there, so an
edge blocked at exactly one end finalizes to an arrow out of that end and an
edge blocked at both ends (or at neither) finalizes undirected.  The rules
R1-R4 only ever add blocks, which makes their fixpoint order-independent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from functools import cached_property
from itertools import chain, combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import SeparationWitnessFailedError
from .graphs import ChainGraph, NodeId, family, pair, validate_chain_graph
from .separation import separated

RULE_NAMES = ("R1", "R2", "R3", "R4")


@dataclass(frozen=True)
class MarkedGraph:
    """A skeleton with per-edge-end block marks and strong labels.

    `blocked` holds (end, other) pairs: the edge {end, other} carries a block
    at `end`.  `strong` holds canonical pairs labeled strong by the edge
    labeling pass; it is empty during essential-graph construction.
    """

    nodes: frozenset[NodeId]
    skeleton: frozenset[tuple[NodeId, NodeId]]
    blocked: frozenset[tuple[NodeId, NodeId]]
    strong: frozenset[tuple[NodeId, NodeId]] = frozenset()

    @cached_property
    def sorted_nodes(self) -> tuple[NodeId, ...]:
        return tuple(sorted(self.nodes))

    @cached_property
    def adjacency(self) -> dict[NodeId, frozenset[NodeId]]:
        adj: dict[NodeId, set[NodeId]] = {n: set() for n in self.nodes}
        for a, b in self.skeleton:
            adj[a].add(b)
            adj[b].add(a)
        return {n: frozenset(s) for n, s in adj.items()}

    def is_adjacent(self, u: NodeId, v: NodeId) -> bool:
        return pair(u, v) in self.skeleton

    def is_blocked(self, end: NodeId, other: NodeId) -> bool:
        return (end, other) in self.blocked

    def singly_blocked(self, end: NodeId, other: NodeId) -> bool:
        """Blocked at `end` and plain at `other` (finalizes to end -> other)."""
        return (end, other) in self.blocked and (other, end) not in self.blocked

    def doubly_blocked(self, u: NodeId, v: NodeId) -> bool:
        return (u, v) in self.blocked and (v, u) in self.blocked

    def plain_edge(self, u: NodeId, v: NodeId) -> bool:
        return (u, v) not in self.blocked and (v, u) not in self.blocked

    def edges_blocked_at_one_end(self) -> list[tuple[NodeId, NodeId]]:
        """All (x, y) with the edge blocked at x only, in deterministic order."""
        out = []
        for a, b in sorted(self.skeleton):
            if self.singly_blocked(a, b):
                out.append((a, b))
            elif self.singly_blocked(b, a):
                out.append((b, a))
        return out

    def finalize(self) -> ChainGraph:
        """Orient singly blocked edges out of their blocked end; rest undirected."""
        directed = []
        undirected = []
        for a, b in sorted(self.skeleton):
            if self.singly_blocked(a, b):
                directed.append((a, b))
            elif self.singly_blocked(b, a):
                directed.append((b, a))
            else:
                undirected.append((a, b))
        return validate_chain_graph(self.nodes, directed, undirected)

    def with_blocks(self, additions: Iterable[tuple[NodeId, NodeId]]) -> "MarkedGraph":
        return replace(self, blocked=self.blocked | frozenset(additions))


def unmarked_skeleton(g: ChainGraph) -> MarkedGraph:
    """The skeleton of g with no blocks."""
    return MarkedGraph(nodes=g.nodes, skeleton=g.skeleton, blocked=frozenset())


@dataclass(frozen=True, eq=False)
class SeparatorTable:
    """Witnessing separator per non-adjacent node pair, symmetric by key."""

    entries: Mapping[tuple[NodeId, NodeId], frozenset[NodeId]]

    def get(self, a: NodeId, b: NodeId) -> frozenset[NodeId]:
        return self.entries[pair(a, b)]

    def __contains__(self, key: tuple[NodeId, NodeId]) -> bool:
        return pair(*key) in self.entries

    def items(self) -> Iterator[tuple[tuple[NodeId, NodeId], frozenset[NodeId]]]:
        return iter(sorted(self.entries.items()))


def _local_separator(g: ChainGraph, a: NodeId) -> frozenset[NodeId]:
    ne = family(g, {a}, "ne")
    return ne | family(g, ne | {a}, "pa")


def _separator_candidates(
    g: ChainGraph, a: NodeId, b: NodeId
) -> Iterator[frozenset[NodeId]]:
    """Deterministic candidate separators for the non-adjacent pair (a, b).

    The neighborhood recipe (use the a-side set when b is not a descendant of
    a, otherwise the b-side set) comes first; it can fail when the excluded
    endpoint sits among the other side's parents, so the mirrored set and then
    all subsets by (size, lex) order serve as fallbacks.  Every candidate is
    verified before use.
    """
    a_side = _local_separator(g, a) - {a, b}
    b_side = _local_separator(g, b) - {a, b}
    if b not in family(g, {a}, "de"):
        first, second = a_side, b_side
    else:
        first, second = b_side, a_side
    yield first
    if second != first:
        yield second
    rest = sorted(g.nodes - {a, b})
    for size in range(len(rest) + 1):
        for combo in combinations(rest, size):
            cand = frozenset(combo)
            if cand not in (first, second):
                yield cand


def separator_table(g: ChainGraph) -> SeparatorTable:
    """A verified separator for every non-adjacent pair.

    Raises SeparationWitnessFailedError only if some pair admits no separator
    at all, which cannot happen for a valid chain graph.
    """
    entries: dict[tuple[NodeId, NodeId], frozenset[NodeId]] = {}
    for a, b in combinations(g.sorted_nodes, 2):
        if g.is_adjacent(a, b):
            continue
        for cand in _separator_candidates(g, a, b):
            if separated(g, {a}, {b}, cand):
                entries[(a, b)] = cand
                break
        else:
            raise SeparationWitnessFailedError(f"no separator for {a!r}, {b!r}")
    return SeparatorTable(entries=entries)


# ---------------------------------------------------------------------------
# rules R1-R4; each finder yields (rule, additions) for firable instances
# whose additions are not already present


def _r1_instances(m: MarkedGraph, t: SeparatorTable):
    for b in m.sorted_nodes:
        for a, c in combinations(sorted(m.adjacency[b]), 2):
            if m.is_adjacent(a, c) or b in t.get(a, c):
                continue
            additions = frozenset({(a, b), (c, b)}) - m.blocked
            if additions:
                yield ("R1", additions)


def _r2_instances(m: MarkedGraph, t: SeparatorTable):
    for a, b in sorted(m.blocked):
        for c in sorted(m.adjacency[b] - {a}):
            if m.is_adjacent(a, c) or b not in t.get(a, c):
                continue
            if (b, c) not in m.blocked:
                yield ("R2", frozenset({(b, c)}))


def _r3_closes(m: MarkedGraph, a: NodeId, b: NodeId) -> bool:
    """Is there a chordless cycle a ~ v1 ~ ... ~ vk ~ b (k >= 1) whose path
    edges are all blocked at the end nearer a, the closing edge being a ~ b?

    Interior nodes may touch a and b only through the path and closing edges.
    """
    adj = m.adjacency

    def dfs(path: list[NodeId]) -> bool:
        last = path[-1]
        if len(path) >= 2 and b in adj[last] and (last, b) in m.blocked:
            if all(b not in adj[p] for p in path[1:-1]):
                return True
        if b in adj[last] and len(path) >= 2:
            return False  # extending past `last` would leave the chord last~b
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


def _r3_instances(m: MarkedGraph, t: SeparatorTable):
    del t
    for u, v in sorted(m.skeleton):
        for a, b in ((u, v), (v, u)):
            if (a, b) in m.blocked:
                continue
            if _r3_closes(m, a, b):
                yield ("R3", frozenset({(a, b)}))


def _r4_instances(m: MarkedGraph, t: SeparatorTable):
    for b in m.sorted_nodes:
        for a in sorted(m.adjacency[b]):
            if (a, b) in m.blocked:
                continue
            shared = sorted((m.adjacency[a] & m.adjacency[b]) - {a, b})
            for c, d in combinations(shared, 2):
                if m.is_adjacent(c, d):
                    continue
                if (c, b) in m.blocked and (d, b) in m.blocked and a in t.get(c, d):
                    yield ("R4", frozenset({(a, b)}))
                    break


_FINDERS: dict[str, Callable] = {
    "R1": _r1_instances,
    "R2": _r2_instances,
    "R3": _r3_instances,
    "R4": _r4_instances,
}


def apply_rules_R(
    m: MarkedGraph,
    t: SeparatorTable,
    rules: Sequence[str] = RULE_NAMES,
    rng: random.Random | None = None,
) -> MarkedGraph:
    """Least fixpoint of the selected rules.

    The rules only add blocks and never invalidate each other's antecedents,
    so the fixpoint does not depend on application order.  With `rng` given,
    one firable instance is applied at a time in random order (used to test
    exactly that confluence); otherwise whole sweeps are applied at once.
    """
    unknown = set(rules) - set(_FINDERS)
    if unknown:
        raise ValueError(f"unknown rules {sorted(unknown)}")
    blocked = set(m.blocked)
    current = m
    while True:
        instances = list(
            chain.from_iterable(_FINDERS[r](current, t) for r in rules)
        )
        if not instances:
            return current
        if rng is None:
            for _, additions in instances:
                blocked |= additions
        else:
            _, additions = rng.choice(sorted(instances, key=lambda i: (i[0], sorted(i[1]))))
            blocked |= additions
        current = replace(current, blocked=frozenset(blocked))


def chordless_cycles(
    m: MarkedGraph,
    min_len: int = 4,
    edge_ok: Callable[[NodeId, NodeId], bool] | None = None,
) -> list[list[NodeId]]:
    """All chordless cycles of at least `min_len` nodes, each listed once.

    `edge_ok` restricts which edges the cycle may use; chords are judged
    against the full skeleton either way.  Cycles are canonicalized to start
    at their least node with the smaller second node first.
    """
    adj = m.adjacency
    ok = edge_ok or (lambda u, v: True)
    cycles: list[list[NodeId]] = []

    def dfs(path: list[NodeId], s: NodeId) -> None:
        last = path[-1]
        for w in sorted(adj[last]):
            if w <= s or w in path or not ok(last, w):
                continue
            if any(w in adj[p] for p in path[1:-1]):
                continue
            if s in adj[w]:
                if ok(w, s) and len(path) + 1 >= min_len and path[1] < w:
                    cycles.append(path + [w])
                continue  # any extension past w would leave the chord w~s
            dfs(path + [w], s)

    for s in m.sorted_nodes:
        for v1 in sorted(adj[s]):
            if v1 > s and ok(s, v1):
                dfs([s, v1], s)
    return cycles


def double_block_chordless_cycles(m: MarkedGraph) -> MarkedGraph:
    """Block both ends of every edge on a long chordless all-plain cycle.

    Snapshot semantics: the qualifying cycles (length at least four, chordless,
    every edge plain at both ends) are found on the input first and all their
    edges are then double-blocked at once.
    """
    cycles = chordless_cycles(m, min_len=4, edge_ok=m.plain_edge)
    additions = set()
    for cycle in cycles:
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            additions.add((u, v))
            additions.add((v, u))
    return m.with_blocks(additions)


@dataclass(frozen=True, eq=False)
class EssentialGraphResult:
    """The essential graph plus the pre-finalization state that produced it."""

    graph: ChainGraph
    marks: MarkedGraph
    separators: SeparatorTable


def essential_graph(g: ChainGraph) -> EssentialGraphResult:
    """Construct the essential graph of the equivalence class of g.

    Pipeline: verified separator table; unmarked skeleton; R1-R4 fixpoint;
    double-blocking of long chordless plain cycles; R2-R4 fixpoint (R1 can no
    longer fire there); finalization of the marks into a chain graph.  The
    marks are returned as well so strong-edge labeling can resume from them.
    """
    t = separator_table(g)
    m = unmarked_skeleton(g)
    m = apply_rules_R(m, t, rules=RULE_NAMES)
    m = double_block_chordless_cycles(m)
    m = apply_rules_R(m, t, rules=("R2", "R3", "R4"))
    return EssentialGraphResult(graph=m.finalize(), marks=m, separators=t)
