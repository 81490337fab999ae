"""Adjusting sets and the three strategies for enumerating them.

Adjusting for the neighbors of a treatment node plus the parents of the node
and its neighbors blocks every non-causal route, which makes interventional
effects computable from observational quantities.  When only the essential
graph is known, the candidate adjusting sets can be enumerated from the whole
class, from the maximally oriented members alone (via locally valid
orientation sets, no enumeration needed), or bounded by a crude superset of
adjacency closures.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Literal

from .equivalence import enumerate_class
from .errors import (
    MixedStrongNeighborsError,
    NotNonStrongNeighborError,
    TooLargeError,
    UnknownNodeError,
)
from .graphs import ChainGraph, NodeId, family, pair
from .strong import StrongLabeling

Mode = Literal["class", "maxoriented", "superset"]
MODES = ("class", "maxoriented", "superset")


@dataclass(frozen=True)
class AdjustingSet:
    """A candidate conditioning set for the effect of `target`."""

    target: NodeId
    nodes: frozenset[NodeId]
    provenance: Literal["true-graph", "class", "maxoriented", "superset"]
    source: frozenset[NodeId] | None = None  # orientation set behind a maxoriented entry

    def sort_key(self) -> tuple:
        return (len(self.nodes), tuple(sorted(self.nodes)))


@dataclass(frozen=True)
class StNstPartition:
    """Undirected neighbors of a node split by strong label.

    For any essential graph one side is always empty; a violation means the
    labeling machinery itself is broken.
    """

    st: frozenset[NodeId]
    nst: frozenset[NodeId]


def adjusting_set(g: ChainGraph, x: NodeId) -> frozenset[NodeId]:
    """Neighbors of x plus parents of x and its neighbors, minus x itself."""
    if x not in g.nodes:
        raise UnknownNodeError(f"unknown node {x!r}")
    ne = family(g, {x}, "ne")
    return (ne | family(g, ne | {x}, "pa")) - {x}


def st_nst(labeling: StrongLabeling, x: NodeId) -> StNstPartition:
    """Partition the undirected neighbors of x into strong and non-strong."""
    eg = labeling.graph
    if x not in eg.nodes:
        raise UnknownNodeError(f"unknown node {x!r}")
    neighbors = eg.neighbor_map[x]
    st = frozenset(a for a in neighbors if pair(a, x) in labeling.strong_undirected)
    nst = neighbors - st
    if st and nst:
        raise MixedStrongNeighborsError(
            f"{x!r} has strong neighbors {sorted(st)} and non-strong {sorted(nst)}"
        )
    return StNstPartition(st=st, nst=nst)


def locally_valid(labeling: StrongLabeling, x: NodeId, s: Iterable[NodeId]) -> bool:
    """Does orienting s -> x (and x -> the other non-strong neighbors) avoid
    creating any triplex at x the essential graph lacks?"""
    eg = labeling.graph
    partition = st_nst(labeling, x)
    s = frozenset(s)
    if not s <= partition.nst:
        raise NotNonStrongNeighborError(
            f"{sorted(s - partition.nst)} are not non-strong neighbors of {x!r}"
        )
    into = eg.parent_map[x] | s
    und = partition.st
    allowed = {fl for _, fl in _triplexes_at(eg, x)}
    for a, b in combinations(sorted(into | und), 2):
        if eg.is_adjacent(a, b):
            continue
        if a in into or b in into:
            if pair(a, b) not in allowed:
                return False
    return True


def _triplexes_at(g: ChainGraph, x: NodeId) -> set[tuple[NodeId, tuple[NodeId, NodeId]]]:
    out = set()
    into_or_und = sorted(g.parent_map[x] | g.neighbor_map[x])
    for a, b in combinations(into_or_und, 2):
        if g.is_adjacent(a, b):
            continue
        if a in g.parent_map[x] or b in g.parent_map[x]:
            out.add((x, pair(a, b)))
    return out


def enumerate_adjusting_sets(
    labeling: StrongLabeling,
    x: NodeId,
    mode: Mode,
    max_edges: int = 16,
    superset_cap: int = 20,
) -> frozenset[AdjustingSet]:
    """Candidate adjusting sets for x under the chosen strategy.

    class: the adjusting set of every class member (brute-force enumeration).
    maxoriented: strong neighbors plus their and x's parents plus each locally
    valid orientation set; exactly the adjusting sets of the maximally
    oriented members.
    superset: every subset of the two-step adjacency closure of x; a looser
    but enumeration-free envelope.
    """
    eg = labeling.graph
    if x not in eg.nodes:
        raise UnknownNodeError(f"unknown node {x!r}")
    if mode == "class":
        sets: dict[frozenset[NodeId], AdjustingSet] = {}
        for member in sorted(enumerate_class(eg, max_edges=max_edges), key=repr):
            z = adjusting_set(member, x)
            sets.setdefault(z, AdjustingSet(target=x, nodes=z, provenance="class"))
        return frozenset(sets.values())
    if mode == "maxoriented":
        partition = st_nst(labeling, x)
        base = partition.st | family(eg, partition.st | {x}, "pa")
        sets = {}
        nst = sorted(partition.nst)
        for size in range(len(nst) + 1):
            for combo in combinations(nst, size):
                s = frozenset(combo)
                if not locally_valid(labeling, x, s):
                    continue
                z = (base | s) - {x}
                sets.setdefault(
                    z,
                    AdjustingSet(target=x, nodes=z, provenance="maxoriented", source=s),
                )
        return frozenset(sets.values())
    if mode == "superset":
        ad = family(eg, {x}, "ad")
        base = sorted((ad | family(eg, ad, "ad")) - {x})
        if len(base) > superset_cap:
            raise TooLargeError(
                f"superset base of {len(base)} nodes exceeds the cap of {superset_cap}"
            )
        out = set()
        for size in range(len(base) + 1):
            for combo in combinations(base, size):
                out.add(
                    AdjustingSet(
                        target=x, nodes=frozenset(combo), provenance="superset"
                    )
                )
        return frozenset(out)
    raise ValueError(f"unknown mode {mode!r}")
