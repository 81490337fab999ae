"""Shared corpus builders, oracles and hypothesis strategies for the tests."""

from __future__ import annotations

import random
from collections import defaultdict
from itertools import combinations

from hypothesis import strategies as st

from ampcg import (
    ChainGraph,
    EquivalenceClass,
    node_names,
    random_chain_graph,
    separated,
    validate_chain_graph,
)
from ampcg.equivalence import _triplex_keys
from ampcg.graphs import _undirected_components


def cg(nodes, directed=(), undirected=()) -> ChainGraph:
    """Shorthand constructor for small literal graphs."""
    return validate_chain_graph(nodes, directed, undirected)


def derive_classes(graphs) -> dict[ChainGraph, EquivalenceClass]:
    """Class lookup for an exhaustive corpus, grouped by skeleton + triplexes.

    Independent of enumerate_class: relies only on the definitional grouping
    of all valid orientations of each skeleton.
    """
    by_skeleton = defaultdict(list)
    for g in graphs:
        by_skeleton[(g.nodes, g.skeleton)].append(g)
    lookup: dict[ChainGraph, EquivalenceClass] = {}
    for members in by_skeleton.values():
        by_triplexes = defaultdict(set)
        for m in members:
            by_triplexes[_triplex_keys(m)].add(m)
        for mset in by_triplexes.values():
            cls = EquivalenceClass(members=frozenset(mset))
            for m in mset:
                lookup[m] = cls
    return lookup


def all_singleton_queries(g: ChainGraph):
    """Every (x, y, z) with singleton x, y and z ranging over the rest."""
    nodes = g.sorted_nodes
    for x, y in combinations(nodes, 2):
        rest = [n for n in nodes if n not in (x, y)]
        for size in range(len(rest) + 1):
            for zs in combinations(rest, size):
                yield x, y, frozenset(zs)


def same_separations(g: ChainGraph, h: ChainGraph) -> bool:
    """Do two equal-skeleton graphs agree on every singleton separation query?"""
    return all(
        separated(g, {x}, {y}, z) == separated(h, {x}, {y}, z)
        for x, y, z in all_singleton_queries(g)
    )


def random_corpus(seed: int, count: int, sizes, **kwargs) -> list[ChainGraph]:
    rnd = random.Random(seed)
    sizes = list(sizes)
    return [
        random_chain_graph(rnd, node_names(sizes[i % len(sizes)]), **kwargs)
        for i in range(count)
    ]


@st.composite
def chain_graphs(draw, max_nodes: int = 5) -> ChainGraph:
    """Valid chain graphs, built so no semidirected cycle can arise."""
    n = draw(st.integers(min_value=1, max_value=max_nodes))
    nodes = list(node_names(n))
    pairs = list(combinations(nodes, 2))
    undirected = frozenset(
        p for p in pairs if draw(st.booleans(), label=f"und {p}")
    )
    comps = _undirected_components(nodes, undirected)
    order = draw(st.permutations(range(len(comps))))
    rank = {node: order[i] for i, comp in enumerate(comps) for node in comp}
    directed = []
    for a, b in pairs:
        if rank[a] == rank[b]:
            continue
        if draw(st.booleans(), label=f"dir {a}{b}"):
            directed.append((a, b) if rank[a] < rank[b] else (b, a))
    return validate_chain_graph(nodes, directed, undirected)
