"""Euler-path machinery: prefix feasibility checks, the online edge-trace
builder for bounded streams, the deterministic least-code extension
procedure, and the two gadget families whose Euler behaviour encodes an
injection's range.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    FiniteGraph,
    GraphError,
    GraphStream,
    InjectionStream,
    NatSet,
    StreamError,
    components,
    frozen_vertices,
    revealed,
)
from .oracle import PathTrace, _euler_feasible, euler_path


class EulerError(ValueError):
    """Precondition or promise failure in an Euler operation."""


# ---------------------------------------------------------------------------
# Pre-Euler feasibility on prefixes


@dataclass(frozen=True)
class PreEulerVerdict:
    """Either consistent-so-far or violated with the offending clause.

    A violation is only reported on evidence that survives every extension
    of the prefix: at least three odd-degree vertices whose adjacency is
    frozen, or an edge-bearing fully-frozen component cut off from other
    edges.  Vertices that may still gain edges never count.
    """

    violated: bool
    clause: Optional[int] = None
    witness: str = ""

    @staticmethod
    def consistent() -> "PreEulerVerdict":
        return PreEulerVerdict(False)


def pre_eulerian_check(stream: GraphStream, t: Optional[int] = None) -> PreEulerVerdict:
    """Scan a prefix for monotone evidence against Euler-path feasibility.

    Without a bound nothing is ever frozen, so no finite evidence exists and
    the verdict is always consistent-so-far.  The infinite-degree escape
    clause is likewise uncertifiable from a prefix and never reported.
    """
    if t is None:
        t = len(stream.events)
    g = revealed(stream, t)
    if stream.bound is None:
        return PreEulerVerdict.consistent()
    frozen = frozen_vertices(stream, t)
    adj = g.adjacency()

    odd_frozen = sorted(v for v in frozen if len(adj[v]) % 2 == 1)
    if len(odd_frozen) >= 3:
        return PreEulerVerdict(
            True, clause=2, witness=f"frozen odd-degree vertices {odd_frozen[:6]}"
        )

    comps = components(g)
    edgeful = [c for c in comps if any(adj[v] for v in c)]
    closed_edgeful = [c for c in edgeful if c <= frozen]
    for c in closed_edgeful:
        outside = [e for e in g.sorted_edges() if e[0] not in c]
        if outside:
            return PreEulerVerdict(
                True,
                clause=4,
                witness=(
                    f"frozen component {sorted(c)[:6]} is separated from "
                    f"edge {outside[0]}"
                ),
            )
    return PreEulerVerdict.consistent()


# ---------------------------------------------------------------------------
# Online Euler trace for bounded streams


def _safe_moves(
    g: FiniteGraph,
    unused: set[tuple[int, int]],
    endpoint: int,
    frozen: frozenset[int],
    final: bool,
) -> list[int]:
    """Targets x such that traversing (endpoint, x) strands no unused edge.

    Non-final moves stay inside the frozen region, where adjacency is
    final.  Unfrozen vertices act as gateways to the unseen part of the
    stream and are treated as mutually connected when judging whether a
    component of unused edges remains reachable.
    """
    adj: dict[int, set[int]] = {}
    for u, w in unused:
        adj.setdefault(u, set()).add(w)
        adj.setdefault(w, set()).add(u)
    out = []
    for x in sorted(adj.get(endpoint, ())):
        if not final and (endpoint not in frozen or x not in frozen):
            continue
        rest = unused - {(min(endpoint, x), max(endpoint, x))}
        if not rest:
            out.append(x)
            continue
        rest_adj: dict[int, set[int]] = {}
        for u, w in rest:
            rest_adj.setdefault(u, set()).add(w)
            rest_adj.setdefault(w, set()).add(u)
        # Component of x in the remaining edges, with unfrozen vertices
        # glued together on non-final runs.
        open_glue = not final
        seen = {x}
        stack = [x]
        in_open = open_glue and x not in frozen
        while stack:
            v = stack.pop()
            nxt = set(rest_adj.get(v, ()))
            if open_glue and v not in frozen:
                in_open = True
                nxt |= {u for u in rest_adj if u not in frozen}
            for u in nxt:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        if open_glue and in_open:
            seen |= {u for u in rest_adj if u not in frozen}
        stranded = False
        for u, w in rest:
            if u in seen or w in seen:
                continue
            if open_glue and (u not in frozen or w not in frozen):
                continue
            stranded = True
            break
        if not stranded:
            out.append(x)
    return out


def bean_euler(stream: GraphStream, final: bool = True) -> PathTrace:
    """Online Euler trace for a bounded stream promised to stay Eulerian.

    Edges are emitted irrevocably as soon as they can never strand other
    revealed edges; the decision at each prefix depends only on that
    prefix, so a longer run extends a shorter one.  On a fully revealed
    stream (``final=True``) the result is a complete Euler path whenever
    the finite graph admits one.
    """
    if stream.bound is None:
        raise EulerError("bean_euler requires a bounded stream")

    trace: list[int] = []
    used: set[tuple[int, int]] = set()

    def emit_round(t: int, closing: bool) -> None:
        nonlocal trace
        check = pre_eulerian_check(stream, t)
        if check.violated:
            raise EulerError(
                f"stream cannot stay Eulerian (clause {check.clause}): {check.witness}"
            )
        g = revealed(stream, t)
        frozen = frozen_vertices(stream, t)
        adj = g.adjacency()
        if not trace:
            odd_frozen = sorted(v for v in frozen if len(adj[v]) % 2 == 1)
            if odd_frozen:
                trace = [odd_frozen[0]]
            elif closing:
                feas = _euler_feasible(g)
                if feas is None:
                    raise EulerError("revealed graph has no Euler path")
                trace = [feas[0]]
            else:
                return
        while True:
            unused = set(g.edges) - used
            if not unused:
                break
            moves = _safe_moves(g, unused, trace[-1], frozen, closing)
            if not moves:
                break
            x = moves[0]
            edge = (min(trace[-1], x), max(trace[-1], x))
            used.add(edge)
            trace.append(x)

    n_events = len(stream.events)
    for t in range(n_events + 1):
        is_end = t == n_events
        boundary = is_end or stream.events[t][0] == "vertex"
        if boundary:
            emit_round(t, closing=is_end and final)
    result = PathTrace(tuple(trace), "euler" if final else "vertex-path")
    if final:
        g = revealed(stream, n_events)
        if not result.is_euler(g):
            raise EulerError("failed to complete an Euler path on the full stream")
    return result


# ---------------------------------------------------------------------------
# Least-code extension procedure


def leastcode_euler(g: FiniteGraph, start: int) -> PathTrace:
    """Euler path grown edge-enumeration-first with least-code extensions.

    Each round extends the current path by the shortest, lexicographically
    least walk that covers the next enumerated edge while keeping the
    uncovered remainder connected and parking the endpoint on one of its
    odd vertices (or any non-isolated vertex when none remain).
    """
    feas = _euler_feasible(g)
    if feas is None:
        raise EulerError("graph has no Euler path")
    if start not in g.vertices:
        raise EulerError(f"start vertex {start} not in graph")
    adj = g.adjacency()
    odd = sorted(v for v in g.vertices if len(adj[v]) % 2 == 1)
    if odd and start not in odd:
        raise EulerError(f"start must be an odd-degree vertex, one of {odd}")
    if not odd and not adj[start] and g.edges:
        raise EulerError(f"start {start} is isolated")

    def acceptable(path: list[int], used: set[tuple[int, int]]) -> bool:
        remaining = g.edges - frozenset(used)
        if remaining:
            rest = FiniteGraph(g.vertices, frozenset(remaining))
            radj = rest.adjacency()
            active = frozenset(v for v in g.vertices if radj[v])
            comps = components(FiniteGraph(active, frozenset(remaining)))
            if len(comps) > 1:
                return False
            rodd = [v for v in active if len(radj[v]) % 2 == 1]
            if rodd:
                if len(radj[path[-1]]) % 2 != 1:
                    return False
            elif not radj[path[-1]]:
                return False
        return True

    path = [start]
    used: set[tuple[int, int]] = set()
    for target in g.sorted_edges():
        if target in used:
            continue
        # Breadth-first over extension walks: shortest first, then lex.
        frontier: list[tuple[list[int], set[tuple[int, int]]]] = [(path, used)]
        found = None
        while found is None:
            nxt: list[tuple[list[int], set[tuple[int, int]]]] = []
            for p, u in frontier:
                for w in sorted(adj[p[-1]]):
                    e = (min(p[-1], w), max(p[-1], w))
                    if e in u:
                        continue
                    p2, u2 = p + [w], u | {e}
                    if target in u2 and acceptable(p2, u2):
                        found = (p2, u2)
                        break
                    nxt.append((p2, u2))
                if found:
                    break
            if found:
                break
            if not nxt:
                raise EulerError(f"no admissible extension covering edge {target}")
            frontier = nxt
        path, used = found
    result = PathTrace(tuple(path), "euler")
    if not result.is_euler(g):
        raise EulerError("least-code extension failed to produce an Euler path")
    return result


# ---------------------------------------------------------------------------
# Range-encoding gadget: detour triangles on a spine


@dataclass(frozen=True)
class EulerGadget:
    """Spine a_0..a_{N-1} with a detour triangle at a_n for each revealed
    f(i)=n; every Euler path must take the detour at the first visit, which
    is what the decoder reads off."""

    steps: int
    window: int
    f_pairs: tuple[tuple[int, int], ...]
    graph: FiniteGraph

    def a(self, n: int) -> int:
        if not 0 <= n < self.window:
            raise GadgetErrorForEuler(f"spine vertex a_{n} outside window {self.window}")
        return n

    def b(self, i: int) -> int:
        return self.window + 2 * i

    def c(self, i: int) -> int:
        return self.window + 2 * i + 1

    def labels(self) -> dict[int, str]:
        out = {n: f"a{n}" for n in range(self.window)}
        for i, _ in self.f_pairs:
            out[self.b(i)] = f"b{i}"
            out[self.c(i)] = f"c{i}"
        return out

    def metadata(self) -> dict:
        return {
            "kind": "euler-range",
            "steps": self.steps,
            "window": self.window,
            "f_pairs": [list(p) for p in self.f_pairs],
            "id_scheme": "a_n -> n; b_i -> window+2i; c_i -> window+2i+1",
        }


class GadgetErrorForEuler(EulerError):
    pass


def build_euler_gadget(f: InjectionStream, steps: int, window: int) -> EulerGadget:
    """Spine of ``window`` vertices plus one triangle per revealed value."""
    f_pairs = tuple(f.pairs()[:steps])
    for i, n in f_pairs:
        if n >= window - 1:
            raise EulerError(
                f"revealed value f({i})={n} must stay below window-1={window - 1}"
            )
    gadget = EulerGadget(steps, window, f_pairs, FiniteGraph.empty())
    vertices = set(range(window))
    edges: set[tuple[int, int]] = set()
    for n in range(window - 1):
        edges.add((n, n + 1))
    for i, n in f_pairs:
        vertices.add(gadget.b(i))
        vertices.add(gadget.c(i))
        edges.add((gadget.b(i), gadget.c(i)))
        edges.add(tuple(sorted((gadget.a(n), gadget.b(i)))))
        edges.add(tuple(sorted((gadget.c(i), gadget.a(n)))))
    graph = FiniteGraph(frozenset(vertices), frozenset(edges))
    return EulerGadget(steps, window, f_pairs, graph)


def decode_euler(gadget: EulerGadget, trace: PathTrace) -> NatSet:
    """Values read off an Euler path that starts at the spine head.

    n is in the result exactly when the first visit to a_n does not step
    straight to a_{n+1}; on the gadget that happens exactly at the revealed
    values of the encoded injection.
    """
    if not trace.vertices or trace.vertices[0] != 0:
        raise EulerError("trace must start at the spine head a_0")
    if not trace.is_euler(gadget.graph):
        raise EulerError("trace is not an Euler path of the gadget graph")
    first_pos: dict[int, int] = {}
    for idx, v in enumerate(trace.vertices):
        first_pos.setdefault(v, idx)
    members = set()
    for n in range(gadget.window - 1):
        pos = first_pos.get(n)
        if pos is None:
            continue
        nxt = trace.vertices[pos + 1] if pos + 1 < len(trace.vertices) else None
        if nxt != n + 1:
            members.add(n)
    return NatSet(frozenset(members), gadget.window - 1)


# ---------------------------------------------------------------------------
# Sequence gadget: one graph per index, Euler-feasible iff the index is missed


def build_euler_seq_gadget(f: InjectionStream, i: int, n: int) -> FiniteGraph:
    """Path v_0..v_n with the edge (v_m, v_m+1) dropped where f(m) = i."""
    pairs = dict(f.pairs())
    edges = [
        (m, m + 1)
        for m in range(n)
        if pairs.get(m) != i
    ]
    return FiniteGraph.build(range(n + 1), edges)


def decide_euler_seq(gadgets: list[FiniteGraph]) -> NatSet:
    """Indices whose gadget admits an Euler path, isolated vertices included.

    The window truncation of the intended infinite object drops a spine
    edge at every hit of the encoded injection, so a hit must read as
    infeasible even when the cut isolates a single endpoint; connectivity
    is therefore judged over the whole vertex set, not just the edge-bearing
    part.
    """
    members = set()
    for idx, g in enumerate(gadgets):
        comps = components(g)
        if len(comps) > 1:
            continue
        adj = g.adjacency()
        odd = sum(1 for v in g.vertices if len(adj[v]) % 2 == 1)
        if odd in (0, 2):
            members.add(idx)
    return NatSet(frozenset(members), len(gadgets))
