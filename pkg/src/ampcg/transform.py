"""Feasible merges and splits between chain components, and the class closure.

Merging two components turns every directed edge between them undirected;
splitting re-orients the undirected edges across a bipartition of one
component.  Both operations preserve Markov equivalence when feasible, and
iterating them reaches the whole equivalence class, which this module
exploits both to enumerate classes and to find the minimally and maximally
oriented members.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator

from .equivalence import EquivalenceClass, enumerate_class, equivalent
from .errors import (
    InfeasibleMergeError,
    InfeasibleSplitError,
    NotComponentsError,
    SemidirectedCycleError,
    TooLargeError,
)
from .graphs import (
    ChainGraph,
    NodeId,
    chain_components,
    family,
    is_complete,
    pair,
    validate_chain_graph,
)


def _components_of(g: ChainGraph) -> tuple[frozenset[NodeId], ...]:
    return chain_components(g).components


def _semidirected_descendants(g: ChainGraph, xs: Iterable[NodeId]) -> frozenset[NodeId]:
    """Nodes reachable by a route of -> and -- steps containing an arrow.

    This is the reachability that matters for merge feasibility: after a
    merge, any such route from the upper component to another parent of the
    lower one would close a semidirected cycle.  Directed-only descendants
    are too weak here (an arrow may be followed by undirected hops).
    """
    frontier: list[tuple[NodeId, bool]] = [(x, False) for x in frozenset(xs)]
    seen: set[tuple[NodeId, bool]] = set(frontier)
    while frontier:
        node, arrow = frontier.pop()
        for w in g.child_map[node]:
            state = (w, True)
            if state not in seen:
                seen.add(state)
                frontier.append(state)
        for w in g.neighbor_map[node]:
            state = (w, arrow)
            if state not in seen:
                seen.add(state)
                frontier.append(state)
    return frozenset(n for n, arrow in seen if arrow)


def _require_component(g: ChainGraph, comp: frozenset[NodeId]) -> None:
    if comp not in set(_components_of(g)):
        raise NotComponentsError(f"{sorted(comp)} is not a chain component")


def feasible_merge_check(
    g: ChainGraph, upper: Iterable[NodeId], lower: Iterable[NodeId]
) -> bool:
    """Can the components `upper` and `lower` be merged without changing the class?

    Requires at least one directed edge from upper into lower, and then the
    four feasibility conditions: the upper parents of the lower component must
    each cover all of it, form a complete set, pass all their own parents on
    to every lower node, and upper may not reach any parent of lower through
    a semidirected route.
    """
    upper, lower = frozenset(upper), frozenset(lower)
    _require_component(g, upper)
    _require_component(g, lower)
    if upper == lower:
        raise NotComponentsError("upper and lower must be distinct components")
    pa_lower = family(g, lower, "pa")
    boundary = pa_lower & upper
    if not boundary:
        return False  # nothing to merge
    if not all(lower <= family(g, {x}, "ch") for x in boundary):
        return False
    if not is_complete(g, boundary):
        return False
    pa_boundary = family(g, boundary, "pa")
    if not all(pa_boundary <= family(g, {y}, "pa") for y in lower):
        return False
    if _semidirected_descendants(g, upper) & pa_lower:
        return False
    return True


def merge(
    g: ChainGraph, upper: Iterable[NodeId], lower: Iterable[NodeId]
) -> ChainGraph:
    """Replace every directed edge from upper into lower with an undirected one."""
    upper, lower = frozenset(upper), frozenset(lower)
    if not feasible_merge_check(g, upper, lower):
        raise InfeasibleMergeError(
            f"merging {sorted(upper)} into {sorted(lower)} is not feasible"
        )
    moved = {(u, v) for u, v in g.directed if u in upper and v in lower}
    return validate_chain_graph(
        g.nodes,
        g.directed - moved,
        set(g.undirected) | {pair(u, v) for u, v in moved},
    )


def _split_result(
    g: ChainGraph, comp: frozenset[NodeId], upper: frozenset[NodeId]
) -> ChainGraph | None:
    """Orient the crossing edges of a bipartition; None when infeasible.

    Feasibility is semantic: the result must be a valid chain graph that is
    equivalent to the input.
    """
    crossing = {
        ((u, v) if u in upper else (v, u))
        for u, v in g.undirected
        if u in comp and v in comp and (u in upper) != (v in upper)
    }
    if not crossing:
        return None
    try:
        candidate = validate_chain_graph(
            g.nodes,
            set(g.directed) | crossing,
            g.undirected - {pair(a, b) for a, b in crossing},
        )
    except SemidirectedCycleError:
        return None
    if not equivalent(g, candidate):
        return None
    return candidate


def split(
    g: ChainGraph,
    comp: Iterable[NodeId],
    upper: Iterable[NodeId],
    lower: Iterable[NodeId],
) -> ChainGraph:
    """Orient every upper--lower edge of the component as upper -> lower."""
    comp, upper, lower = frozenset(comp), frozenset(upper), frozenset(lower)
    _require_component(g, comp)
    if upper | lower != comp or upper & lower or not upper or not lower:
        raise NotComponentsError("upper and lower must partition the component")
    result = _split_result(g, comp, upper)
    if result is None:
        raise InfeasibleSplitError(
            f"splitting {sorted(comp)} into {sorted(upper)} -> {sorted(lower)}"
            " is not feasible"
        )
    return result


def _merge_candidates(g: ChainGraph) -> Iterator[tuple[frozenset, frozenset]]:
    comps = _components_of(g)
    linked = {
        (cu, cl)
        for u, v in g.directed
        for cu in comps
        if u in cu
        for cl in comps
        if v in cl
    }
    for cu, cl in sorted(linked, key=lambda p: (sorted(p[0]), sorted(p[1]))):
        yield cu, cl


def _split_candidates(
    g: ChainGraph,
) -> Iterator[tuple[frozenset, frozenset]]:
    for comp in _components_of(g):
        if len(comp) < 2:
            continue
        members = sorted(comp)
        for size in range(1, len(members)):
            for chosen in combinations(members, size):
                yield comp, frozenset(chosen)


def feasible_merges(g: ChainGraph) -> list[tuple[frozenset, frozenset]]:
    """All (upper, lower) component pairs whose merge is feasible."""
    return [
        (cu, cl) for cu, cl in _merge_candidates(g) if feasible_merge_check(g, cu, cl)
    ]


def class_by_merge_split(g: ChainGraph, max_edges: int = 16) -> EquivalenceClass:
    """Equivalence class as the closure of g under feasible merges and splits."""
    if len(g.skeleton) > max_edges:
        raise TooLargeError(
            f"{len(g.skeleton)} edges exceeds the closure cap of {max_edges}"
        )
    seen = {g}
    frontier = [g]
    while frontier:
        cur = frontier.pop()
        neighbors = []
        for cu, cl in _merge_candidates(cur):
            if feasible_merge_check(cur, cu, cl):
                neighbors.append(merge(cur, cu, cl))
        for comp, upper in _split_candidates(cur):
            result = _split_result(cur, comp, upper)
            if result is not None:
                neighbors.append(result)
        for nxt in neighbors:
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return EquivalenceClass(members=frozenset(seen))


def minimally_oriented(g: ChainGraph, max_edges: int = 16) -> frozenset[ChainGraph]:
    """All equivalent chain graphs admitting no feasible merge."""
    members = class_by_merge_split(g, max_edges=max_edges)
    return frozenset(m for m in members if not feasible_merges(m))


def has_feasible_split(g: ChainGraph) -> bool:
    return any(
        _split_result(g, comp, upper) is not None
        for comp, upper in _split_candidates(g)
    )


def maximally_oriented(g: ChainGraph, reverse_order: bool = False) -> ChainGraph:
    """One equivalent chain graph admitting no feasible split.

    Greedy: repeatedly apply the first feasible split in a deterministic
    candidate order.  All maximally oriented members share one undirected
    edge set, so the witness choice only affects arrow directions; passing
    `reverse_order` picks a second witness for exactly that cross-check.
    """
    current = g
    while True:
        candidates = list(_split_candidates(current))
        if reverse_order:
            candidates.reverse()
        for comp, upper in candidates:
            result = _split_result(current, comp, upper)
            if result is not None:
                current = result
                break
        else:
            return current


def maximally_oriented_members(
    g: ChainGraph, max_edges: int = 16
) -> frozenset[ChainGraph]:
    """All equivalent chain graphs admitting no feasible split (brute force)."""
    members = enumerate_class(g, max_edges=max_edges)
    return frozenset(m for m in members if not has_feasible_split(m))
