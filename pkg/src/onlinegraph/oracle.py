"""Exhaustive reference algorithms on finite graphs and trees.

Everything here is deterministic brute force: backtracking explores vertices
in id order and colors in ascending order, so repeated runs (and golden
values in tests) are stable.  These functions are the ground truth the
gadget decoders and online algorithms are checked against.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from .core import FiniteGraph, GraphError, Tree, TreeError, components


@dataclass(frozen=True)
class Coloring:
    """Assignment of color indices to vertex ids, drawn from a palette."""

    assignment: Mapping[int, int]
    palette_size: int

    def __post_init__(self) -> None:
        for v, c in self.assignment.items():
            if not 0 <= c < self.palette_size:
                raise GraphError(
                    f"color {c} of vertex {v} outside palette of size {self.palette_size}"
                )

    def __call__(self, v: int) -> int:
        return self.assignment[v]

    def is_total_on(self, g: FiniteGraph) -> bool:
        return all(v in self.assignment for v in g.vertices)

    def is_proper(self, g: FiniteGraph) -> bool:
        return self.is_total_on(g) and all(
            self.assignment[u] != self.assignment[w] for u, w in g.edges
        )

    def monochromatic_edge(self, g: FiniteGraph) -> Optional[tuple[int, int]]:
        for u, w in g.sorted_edges():
            if self.assignment.get(u) == self.assignment.get(w) is not None:
                return (u, w)
        return None


@dataclass(frozen=True)
class PathTrace:
    """Vertex sequence produced by a path-finding algorithm.

    kind is one of "vertex-path", "euler", "hamilton"; validity against a
    reference graph is checked by the predicates below, never assumed.
    """

    vertices: tuple[int, ...]
    kind: str = "vertex-path"

    def is_walk(self, g: FiniteGraph) -> bool:
        if any(v not in g.vertices for v in self.vertices):
            return False
        return all(
            g.has_edge(self.vertices[i], self.vertices[i + 1])
            for i in range(len(self.vertices) - 1)
        )

    def edge_multiset(self) -> list[tuple[int, int]]:
        out = []
        for i in range(len(self.vertices) - 1):
            u, w = self.vertices[i], self.vertices[i + 1]
            out.append((u, w) if u < w else (w, u))
        return sorted(out)

    def is_euler(self, g: FiniteGraph) -> bool:
        return self.is_walk(g) and self.edge_multiset() == g.sorted_edges()

    def is_hamilton(self, g: FiniteGraph) -> bool:
        return (
            self.is_walk(g)
            and len(self.vertices) == len(g.vertices)
            and len(set(self.vertices)) == len(g.vertices)
        )


# ---------------------------------------------------------------------------
# Coloring oracles


def _coloring_search(g: FiniteGraph, k: int, cap: Optional[int]) -> list[dict[int, int]]:
    """All proper k-colorings in lexicographic order, truncated at cap."""
    order = g.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    nbrs_before: list[list[int]] = [[] for _ in order]
    for u, w in g.edges:
        lo, hi = (u, w) if index[u] < index[w] else (w, u)
        nbrs_before[index[hi]].append(index[lo])

    found: list[dict[int, int]] = []
    colors = [0] * len(order)

    def extend(i: int) -> bool:
        if cap is not None and len(found) >= cap:
            return True
        if i == len(order):
            found.append({order[j]: colors[j] for j in range(len(order))})
            return cap is not None and len(found) >= cap
        forbidden = {colors[j] for j in nbrs_before[i]}
        for c in range(k):
            if c in forbidden:
                continue
            colors[i] = c
            if extend(i + 1):
                return True
        return False

    extend(0)
    return found


def is_k_colorable(g: FiniteGraph, k: int) -> Optional[Coloring]:
    """Least proper k-coloring if one exists, else None."""
    if k < 1:
        raise GraphError("palette size must be at least 1")
    hit = _coloring_search(g, k, cap=1)
    return Coloring(hit[0], k) if hit else None


def enumerate_colorings(g: FiniteGraph, k: int, cap: Optional[int] = None) -> list[Coloring]:
    """All proper k-colorings in lexicographic order, truncated at cap."""
    if k < 1:
        raise GraphError("palette size must be at least 1")
    return [Coloring(a, k) for a in _coloring_search(g, k, cap)]


# ---------------------------------------------------------------------------
# Euler paths


def _euler_feasible(g: FiniteGraph) -> Optional[tuple[int, int]]:
    """(start, odd_count) when an Euler path exists, else None.

    Classical condition: after ignoring isolated vertices the graph is
    connected and has zero or two odd-degree vertices.
    """
    if not g.edges:
        if not g.vertices:
            return None
        return (min(g.vertices), 0)
    adj = g.adjacency()
    active = [v for v in g.sorted_vertices() if adj[v]]
    comp = components(FiniteGraph(frozenset(active), g.edges))
    if len(comp) != 1:
        return None
    odd = [v for v in active if len(adj[v]) % 2 == 1]
    if len(odd) not in (0, 2):
        return None
    start = min(odd) if odd else min(active)
    return (start, len(odd))


def euler_path(g: FiniteGraph) -> Optional[PathTrace]:
    """Deterministic Euler path (Hierholzer), or None when impossible.

    Edgeless nonempty graphs get the single-vertex trace at the least id.
    """
    feas = _euler_feasible(g)
    if feas is None:
        return None
    start, _ = feas
    if not g.edges:
        return PathTrace((start,), "euler")
    edge_seen: set[tuple[int, int]] = set()
    stack = [start]
    trace: list[int] = []
    # Neighbors kept descending so pop() explores ascending ids first.
    cursor = {v: sorted(ns, reverse=True) for v, ns in g.adjacency().items()}
    while stack:
        v = stack[-1]
        advanced = False
        while cursor[v]:
            w = cursor[v][-1]
            key = (v, w) if v < w else (w, v)
            if key in edge_seen:
                cursor[v].pop()
                continue
            edge_seen.add(key)
            stack.append(w)
            advanced = True
            break
        if not advanced:
            trace.append(stack.pop())
    trace.reverse()
    result = PathTrace(tuple(trace), "euler")
    assert result.is_euler(g)
    return result


def euler_paths_from(g: FiniteGraph, start: int, cap: Optional[int] = None) -> list[PathTrace]:
    """All Euler paths starting at ``start``, lexicographic order, capped."""
    if start not in g.vertices:
        raise GraphError(f"start vertex {start} not in graph")
    if not g.edges:
        return [PathTrace((start,), "euler")]
    adj = g.adjacency()
    total = len(g.edges)
    out: list[PathTrace] = []
    path = [start]
    used: set[tuple[int, int]] = set()

    def extend(v: int) -> bool:
        if cap is not None and len(out) >= cap:
            return True
        if len(used) == total:
            out.append(PathTrace(tuple(path), "euler"))
            return cap is not None and len(out) >= cap
        for w in sorted(adj[v]):
            key = (v, w) if v < w else (w, v)
            if key in used:
                continue
            used.add(key)
            path.append(w)
            if extend(w):
                return True
            path.pop()
            used.remove(key)
        return False

    extend(start)
    return out


# ---------------------------------------------------------------------------
# Hamilton paths


def hamilton_paths(g: FiniteGraph, cap: Optional[int] = None) -> list[PathTrace]:
    """All Hamilton paths up to reversal, deterministic order, capped.

    Canonical orientation: the first endpoint does not exceed the last, so
    each reversal class is reported exactly once.
    """
    n = len(g.vertices)
    if n == 0:
        return []
    if n == 1:
        return [PathTrace((next(iter(g.vertices)),), "hamilton")]
    adj = g.adjacency()
    out: list[PathTrace] = []
    path: list[int] = []
    visited: set[int] = set()

    def extend(v: int) -> bool:
        if cap is not None and len(out) >= cap:
            return True
        if len(path) == n:
            if path[0] <= path[-1]:
                out.append(PathTrace(tuple(path), "hamilton"))
                return cap is not None and len(out) >= cap
            return False
        for w in sorted(adj[v]):
            if w in visited:
                continue
            visited.add(w)
            path.append(w)
            if extend(w):
                return True
            path.pop()
            visited.remove(w)
        return False

    for s in g.sorted_vertices():
        visited = {s}
        path = [s]
        if extend(s):
            break
    return out


# ---------------------------------------------------------------------------
# Trees


def tree_has_deep_path(tree: Tree, d: int) -> bool:
    """Whether some member reaches length exactly ``d``."""
    if d > tree.truncation_depth:
        raise TreeError(f"depth {d} exceeds truncation depth {tree.truncation_depth}")
    return any(len(s) == d for s in tree.members)


def count_deep_paths(tree: Tree, d: int, cap: Optional[int] = None) -> int:
    """Number of distinct length-``d`` members, truncated at cap."""
    if d > tree.truncation_depth:
        raise TreeError(f"depth {d} exceeds truncation depth {tree.truncation_depth}")
    count = 0
    for s in tree.members:
        if len(s) == d:
            count += 1
            if cap is not None and count >= cap:
                return cap
    return count
