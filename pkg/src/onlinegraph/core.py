"""Foundational types: finite graphs, bounded event streams, trees, injections.

All values are immutable after construction and may be shared freely.
Vertex ids are natural numbers throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence


class GraphError(ValueError):
    """Malformed graph data (bad endpoints, self-loops, missing edges)."""


class StreamError(ValueError):
    """Malformed event stream (dangling edge, bound violation, late edge)."""


class TreeError(ValueError):
    """Malformed sequence tree or out-of-range depth query."""


Edge = tuple[int, int]


def _norm_edge(u: int, w: int) -> Edge:
    if u == w:
        raise GraphError(f"self-loop at vertex {u}")
    return (u, w) if u < w else (w, u)


@dataclass(frozen=True)
class FiniteGraph:
    """Simple undirected graph on natural-number vertex ids."""

    vertices: frozenset[int]
    edges: frozenset[Edge]

    @staticmethod
    def build(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> "FiniteGraph":
        vs = frozenset(int(v) for v in vertices)
        if any(v < 0 for v in vs):
            raise GraphError("vertex ids must be naturals")
        es = frozenset(_norm_edge(int(u), int(w)) for u, w in edges)
        for u, w in es:
            if u not in vs or w not in vs:
                raise GraphError(f"edge ({u},{w}) has endpoint outside the vertex set")
        return FiniteGraph(vs, es)

    @staticmethod
    def empty() -> "FiniteGraph":
        return FiniteGraph(frozenset(), frozenset())

    def sorted_vertices(self) -> list[int]:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, w in self.edges:
            adj[u].add(w)
            adj[w].add(u)
        return adj

    def neighbors(self, v: int) -> set[int]:
        if v not in self.vertices:
            raise GraphError(f"vertex {v} not in graph")
        return {w for e in self.edges for w in e if v in e and w != v}

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, w: int) -> bool:
        return _norm_edge(u, w) in self.edges


def delete_subgraph(g: FiniteGraph, h: FiniteGraph) -> FiniteGraph:
    """Remove ``h``'s edges from ``g``; the vertex set is unchanged."""
    missing = h.edges - g.edges
    if missing:
        raise GraphError(f"edges {sorted(missing)} absent from the host graph")
    return FiniteGraph(g.vertices, g.edges - h.edges)


def components(g: FiniteGraph) -> list[frozenset[int]]:
    """Connected components as disjoint vertex sets, ordered by least member."""
    adj = g.adjacency()
    seen: set[int] = set()
    out: list[frozenset[int]] = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        out.append(frozenset(comp))
    return out


# ---------------------------------------------------------------------------
# Bounded streams


@dataclass(frozen=True)
class BoundFn:
    """Neighbor bound: any neighbor of ``v`` has id at most ``h(v)``."""

    mapping: Mapping[int, int]

    def __post_init__(self) -> None:
        for v, b in self.mapping.items():
            if v < 0 or b < 0:
                raise StreamError(f"bound entry {v}->{b} must use naturals")

    def __call__(self, v: int) -> int:
        try:
            return self.mapping[v]
        except KeyError:
            raise StreamError(f"bound is not defined on vertex {v}") from None

    def covers(self, v: int) -> bool:
        return v in self.mapping


VertexEvent = tuple[str, int]
EdgeEvent = tuple[str, Edge]
Event = VertexEvent | EdgeEvent


def vertex_event(v: int) -> Event:
    return ("vertex", v)


def edge_event(u: int, w: int) -> Event:
    return ("edge", _norm_edge(u, w))


def _settled(revealed: set[int], bound: BoundFn) -> set[int]:
    # v is settled once every candidate neighbor id <= h(v) has been revealed.
    out = set()
    for v in revealed:
        if all(w in revealed for w in range(bound(v) + 1)):
            out.add(v)
    return out


@dataclass(frozen=True)
class GraphStream:
    """Monotone event sequence revealing a graph prefix by prefix.

    Events are ``("vertex", v)`` or ``("edge", (u, w))``.  An edge may only
    reference already-revealed vertices.  When a bound is present the stream
    is validated as it would be consumed: every edge must satisfy the
    symmetrized bound (h(u) >= w and h(w) >= u), and an edge may not arrive
    once both endpoints were settled before the current vertex batch -- that
    rule is what freezes a settled vertex's neighborhood for the online
    algorithms.
    """

    events: tuple[Event, ...]
    bound: Optional[BoundFn] = None

    def __post_init__(self) -> None:
        revealed: set[int] = set()
        edges: set[Edge] = set()
        settled_prev_batch: set[int] = set()
        for ev in self.events:
            kind, payload = ev
            if kind == "vertex":
                v = payload
                if not isinstance(v, int) or v < 0:
                    raise StreamError(f"bad vertex event payload {payload!r}")
                if self.bound is not None:
                    settled_prev_batch = _settled(revealed, self.bound)
                revealed.add(v)
            elif kind == "edge":
                u, w = payload
                if u not in revealed or w not in revealed:
                    raise StreamError(f"edge ({u},{w}) references an unrevealed vertex")
                if (u, w) in edges:
                    raise StreamError(f"duplicate edge event ({u},{w})")
                if self.bound is not None:
                    if self.bound(u) < w or self.bound(w) < u:
                        raise StreamError(
                            f"edge ({u},{w}) violates the bound "
                            f"(h({u})={self.bound(u)}, h({w})={self.bound(w)})"
                        )
                    if u in settled_prev_batch and w in settled_prev_batch:
                        raise StreamError(
                            f"edge ({u},{w}) arrived after both endpoints settled"
                        )
                edges.add((u, w))
            else:
                raise StreamError(f"unknown event kind {kind!r}")

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    @staticmethod
    def from_graph(
        graph: FiniteGraph, bound: Optional[BoundFn] = None, order: Optional[Sequence[int]] = None
    ) -> "GraphStream":
        """Canonical stream: vertices in the given (default ascending) order,
        each edge right after its later-revealed endpoint."""
        vs = list(order) if order is not None else graph.sorted_vertices()
        if set(vs) != set(graph.vertices):
            raise StreamError("order must enumerate the vertex set exactly")
        pos = {v: i for i, v in enumerate(vs)}
        events: list[Event] = []
        for i, v in enumerate(vs):
            events.append(vertex_event(v))
            batch = [e for e in graph.sorted_edges() if max(pos[e[0]], pos[e[1]]) == i]
            events.extend(("edge", e) for e in batch)
        return GraphStream(tuple(events), bound)

    def prefix(self, t: int) -> "GraphStream":
        if not 0 <= t <= len(self.events):
            raise StreamError(f"prefix length {t} out of range 0..{len(self.events)}")
        return GraphStream(self.events[:t], self.bound)


def revealed(stream: GraphStream, t: int) -> FiniteGraph:
    """Graph induced by the first ``t`` events."""
    if not 0 <= t <= len(stream.events):
        raise StreamError(f"t={t} out of range 0..{len(stream.events)}")
    vs: set[int] = set()
    es: set[Edge] = set()
    for kind, payload in stream.events[:t]:
        if kind == "vertex":
            vs.add(payload)
        else:
            es.add(payload)
    return FiniteGraph(frozenset(vs), frozenset(es))


def settled_vertices(stream: GraphStream, t: int) -> frozenset[int]:
    """Vertices whose candidate neighborhood is fully revealed after t events."""
    if stream.bound is None:
        raise StreamError("settled_vertices requires a bounded stream")
    g = revealed(stream, t)
    return frozenset(_settled(set(g.vertices), stream.bound))


def frozen_vertices(stream: GraphStream, t: int) -> frozenset[int]:
    """Vertices whose adjacency can no longer change: the vertex and every
    candidate neighbor id <= h(v) are settled."""
    if stream.bound is None:
        raise StreamError("frozen_vertices requires a bounded stream")
    settled = settled_vertices(stream, t)
    bound = stream.bound
    return frozenset(
        v for v in settled if all(w in settled for w in range(bound(v) + 1))
    )


# ---------------------------------------------------------------------------
# Injections


@dataclass(frozen=True)
class InjectionStream:
    """Enumerated injective map: ``values[i]`` is the image of argument i."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.values):
            raise GraphError("injection values must be naturals")
        if len(set(self.values)) != len(self.values):
            raise GraphError("injection values must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.values)

    def revealed_range(self) -> frozenset[int]:
        return frozenset(self.values)

    def pairs(self) -> list[tuple[int, int]]:
        return list(enumerate(self.values))


@dataclass(frozen=True)
class DisjointInjections:
    """A pair of injections with disjoint revealed ranges."""

    f: InjectionStream
    g: InjectionStream

    def __post_init__(self) -> None:
        overlap = self.f.revealed_range() & self.g.revealed_range()
        if overlap:
            raise GraphError(f"injection ranges overlap on {sorted(overlap)}")


# ---------------------------------------------------------------------------
# Trees over finite sequences


@dataclass(frozen=True)
class Tree:
    """Prefix-closed set of finite natural-number sequences.

    Claims about depth-d behaviour are reliable only for d up to
    ``truncation_depth``; deeper queries are refused.
    """

    members: frozenset[tuple[int, ...]]
    truncation_depth: int

    def __post_init__(self) -> None:
        if self.truncation_depth < 0:
            raise TreeError("truncation depth must be a natural")
        for seq in self.members:
            if any(x < 0 for x in seq):
                raise TreeError(f"sequence {seq} contains a negative entry")
            if seq and seq[:-1] not in self.members:
                raise TreeError(f"tree is not prefix-closed at {seq}")
        if self.members and () not in self.members:
            raise TreeError("nonempty tree must contain the empty sequence")

    @staticmethod
    def build(seqs: Iterable[Sequence[int]], truncation_depth: Optional[int] = None) -> "Tree":
        """Close the given sequences under prefixes."""
        closed: set[tuple[int, ...]] = set()
        for s in seqs:
            t = tuple(int(x) for x in s)
            for i in range(len(t) + 1):
                closed.add(t[:i])
        if truncation_depth is None:
            truncation_depth = max((len(s) for s in closed), default=0)
        return Tree(frozenset(closed), truncation_depth)


def tree_nodes_at_depth(tree: Tree, d: int) -> list[tuple[int, ...]]:
    """Members of length exactly ``d`` in lexicographic order."""
    if d > tree.truncation_depth:
        raise TreeError(
            f"depth {d} exceeds truncation depth {tree.truncation_depth}"
        )
    return sorted(s for s in tree.members if len(s) == d)


# ---------------------------------------------------------------------------
# Windowed natural sets


@dataclass(frozen=True)
class NatSet:
    """Finite set of naturals asserted only below an explicit window bound."""

    members: frozenset[int]
    window: int

    def __post_init__(self) -> None:
        bad = [m for m in self.members if not 0 <= m < self.window]
        if bad:
            raise GraphError(f"members {sorted(bad)} fall outside window {self.window}")

    def __contains__(self, n: int) -> bool:
        return n in self.members
