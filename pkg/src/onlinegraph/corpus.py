"""Seeded random instance generators shared by the verify suites and tests.

All randomness flows from an explicit ``random.Random`` so identical seeds
reproduce identical corpora.
"""
from __future__ import annotations

import random
from typing import Optional

from .core import BoundFn, DisjointInjections, FiniteGraph, GraphStream, InjectionStream, Tree


def random_injection(
    rng: random.Random, steps: int, value_bound: int
) -> InjectionStream:
    values = rng.sample(range(value_bound), steps)
    return InjectionStream(tuple(values))


def random_disjoint_injections(
    rng: random.Random, steps: int, value_bound: int
) -> DisjointInjections:
    values = rng.sample(range(value_bound), 2 * steps)
    return DisjointInjections(
        InjectionStream(tuple(values[:steps])),
        InjectionStream(tuple(values[steps:])),
    )


def random_k_partite_graph(
    rng: random.Random, k: int, n: int, edge_prob: float = 0.4
) -> FiniteGraph:
    """Random graph with a planted proper k-partition, hence k-colorable."""
    part = [rng.randrange(k) for _ in range(n)]
    edges = [
        (u, w)
        for u in range(n)
        for w in range(u + 1, n)
        if part[u] != part[w] and rng.random() < edge_prob
    ]
    return FiniteGraph.build(range(n), edges)


def neighbor_bound(graph: FiniteGraph) -> BoundFn:
    """Tightest bound consistent with a graph: each vertex's largest
    neighbor (or itself when isolated)."""
    return BoundFn(
        {v: max([v] + sorted(graph.neighbors(v))) for v in graph.vertices}
    )


def random_bounded_stream(
    rng: random.Random,
    k: int,
    n: int,
    edge_prob: float = 0.4,
    shuffle: bool = False,
) -> GraphStream:
    """Bounded stream of a planted k-colorable graph on vertices 0..n-1."""
    graph = random_k_partite_graph(rng, k, n, edge_prob)
    if shuffle:
        # A loose uniform bound keeps shuffled reveal orders valid.
        bound = BoundFn({v: n - 1 for v in graph.vertices})
        order = list(range(n))
        rng.shuffle(order)
        return GraphStream.from_graph(graph, bound, order=order)
    return GraphStream.from_graph(graph, neighbor_bound(graph))


def random_eulerian_graph(
    rng: random.Random, max_edges: int = 12, circuit: bool = False
) -> FiniteGraph:
    """Connected graph with two (or zero) odd-degree vertices.

    Built as a random closed trail plus an optional open tail, so the Euler
    condition holds by construction.
    """
    n = rng.randrange(4, 8)
    walk = [rng.randrange(n)]
    edges: set[tuple[int, int]] = set()
    attempts = 0
    target = rng.randrange(3, max_edges)
    while len(edges) < target and attempts < 200:
        attempts += 1
        nxt = rng.randrange(n)
        if nxt == walk[-1]:
            continue
        e = (min(walk[-1], nxt), max(walk[-1], nxt))
        if e in edges:
            continue
        edges.add(e)
        walk.append(nxt)
    if circuit and walk[-1] != walk[0]:
        e = (min(walk[-1], walk[0]), max(walk[-1], walk[0]))
        if e not in edges:
            edges.add(e)
            walk.append(walk[0])
    used = sorted({v for e in edges for v in e})
    return FiniteGraph.build(used, edges)


def random_tree(
    rng: random.Random,
    depth: int,
    branching: int = 3,
    grow_prob: float = 0.65,
    force_deep: Optional[bool] = None,
) -> Tree:
    """Random prefix-closed tree truncated at ``depth``.

    ``force_deep`` pins whether some branch reaches the truncation depth.
    """
    members: set[tuple[int, ...]] = {()}
    frontier = [()]
    for level in range(depth):
        nxt = []
        for node in frontier:
            for child in range(branching):
                if rng.random() < grow_prob:
                    seq = node + (child,)
                    members.add(seq)
                    nxt.append(seq)
        frontier = nxt
    tree = Tree(frozenset(members), depth)
    deep = any(len(s) == depth for s in members)
    if force_deep is True and not deep:
        branch: tuple[int, ...] = ()
        extra = set(members)
        for _ in range(depth):
            branch = branch + (rng.randrange(branching),)
            extra.add(branch)
        tree = Tree(frozenset(extra), depth)
    elif force_deep is False and deep:
        pruned = {s for s in members if len(s) < depth}
        tree = Tree(frozenset(pruned), depth)
    return tree
