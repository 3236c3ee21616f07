"""Online coloring of bounded graph streams with irrevocable commitments.

Commitments happen at vertex-event boundaries: an arriving vertex event
closes the previous batch, and the stream validity rules in ``core``
guarantee that a vertex settled before a closed batch has all edges to its
co-settled peers revealed.  The first-fit baseline commits settled
vertices; the palette-bounded algorithm waits until a vertex's whole bound
ball is settled (its adjacency is then final) and commits along a planned
list-coloring of everything not yet committed.  docs/notes/online-coloring.md
carries the correctness argument.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .core import FiniteGraph, GraphStream, StreamError, revealed
from .oracle import Coloring, is_k_colorable


class PromiseViolation(ValueError):
    """The stream broke the promise its algorithm relies on."""


class PlanningError(ValueError):
    """No admissible coloring plan exists for the current frontier."""


@dataclass(frozen=True)
class Commit:
    vertex: int
    color: int
    stage: int


@dataclass(frozen=True)
class CommitLog:
    """Ordered irrevocable (vertex, color, stage) commitments."""

    entries: tuple[Commit, ...]

    def __post_init__(self) -> None:
        seen = set()
        for e in self.entries:
            if e.vertex in seen:
                raise StreamError(f"vertex {e.vertex} committed twice")
            seen.add(e.vertex)

    def as_coloring(self, palette: int) -> Coloring:
        return Coloring({e.vertex: e.color for e in self.entries}, palette)

    def colors(self) -> dict[int, int]:
        return {e.vertex: e.color for e in self.entries}

    def max_color(self) -> int:
        return max((e.color for e in self.entries), default=-1)


def _boundaries(stream: GraphStream):
    """Yield (event_prefix_len, stage, closing) at each vertex arrival and
    at the end of the event list.  ``stage`` counts fully processed vertex
    events at that point."""
    stage = 0
    for pos, (kind, _) in enumerate(stream.events):
        if kind == "vertex":
            yield pos, stage, False
            stage += 1
    yield len(stream.events), stage, True


def _settled_with_stages(stream: GraphStream, upto: int) -> dict[int, int]:
    """Settlement stage per vertex for the prefix of ``upto`` events."""
    if stream.bound is None:
        raise StreamError("settlement requires a bounded stream")
    bound = stream.bound
    stages: dict[int, int] = {}
    seen: set[int] = set()
    stage = 0
    for kind, payload in stream.events[:upto]:
        if kind != "vertex":
            continue
        seen.add(payload)
        stage += 1
        for v in seen:
            if v not in stages and all(w in seen for w in range(bound(v) + 1)):
                stages[v] = stage
    return stages


def greedy_color(stream: GraphStream, final: bool = True) -> CommitLog:
    """First-fit in settlement order (ties by id); no palette bound.

    Each vertex commits the least color unused by its already-committed
    neighbors.  With ``final`` the end of the event list counts as closure
    and every revealed vertex is committed.
    """
    if stream.bound is None:
        raise StreamError("greedy_color requires a bounded stream")
    committed: dict[int, int] = {}
    entries: list[Commit] = []

    for pos, stage, closing in _boundaries(stream):
        if closing and not final:
            break
        g = revealed(stream, pos)
        stages = _settled_with_stages(stream, pos)
        if closing:
            total = stage
            for v in g.vertices:
                stages.setdefault(v, total)
        ready = sorted(
            (s, v) for v, s in stages.items() if v not in committed
        )
        if not ready:
            continue
        adj = g.adjacency()
        for _, v in ready:
            taken = {committed[u] for u in adj[v] if u in committed}
            c = 0
            while c in taken:
                c += 1
            committed[v] = c
            entries.append(Commit(v, c, stage))
    return CommitLog(tuple(entries))


def _plan_frontier(
    graph: FiniteGraph,
    lists: dict[int, list[int]],
    low_pref: dict[int, list[int]],
) -> Optional[dict[int, int]]:
    """Backtracking proper coloring with per-vertex candidate lists.

    Tries the preference lists first and falls back to the full lists, so
    palette colors beyond the promise bound are spent only under pressure.
    """
    order = graph.sorted_vertices()
    index = {v: i for i, v in enumerate(order)}
    nbrs_before: list[list[int]] = [[] for _ in order]
    for u, w in graph.edges:
        lo, hi = (u, w) if index[u] < index[w] else (w, u)
        nbrs_before[index[hi]].append(index[lo])

    def attempt(cands: dict[int, list[int]]) -> Optional[dict[int, int]]:
        chosen = [0] * len(order)

        def extend(i: int) -> bool:
            if i == len(order):
                return True
            v = order[i]
            forbidden = {chosen[j] for j in nbrs_before[i]}
            for c in cands[v]:
                if c in forbidden:
                    continue
                chosen[i] = c
                if extend(i + 1):
                    return True
            return False

        if extend(0):
            return {order[i]: chosen[i] for i in range(len(order))}
        return None

    plan = attempt(low_pref)
    if plan is None:
        plan = attempt(lists)
    return plan


def schmerl_color(
    stream: GraphStream, k: int, check_promise: bool = True, final: bool = True
) -> CommitLog:
    """Palette-(2k-1) online coloring of a bounded stream whose every
    revealed prefix is promised k-colorable.

    A vertex commits once every candidate neighbor of its bound ball is
    settled, so its adjacency is final and the stream can never attach new
    structure to it.  Commit colors come from a deterministic proper
    list-coloring of the whole uncommitted frontier (lists exclude the
    colors of committed neighbors) that prefers the first k colors on
    vertices whose adjacency may still grow.
    """
    if stream.bound is None:
        raise StreamError("schmerl_color requires a bounded stream")
    if k < 1:
        raise PromiseViolation("k must be at least 1")
    palette = 2 * k - 1
    bound = stream.bound
    committed: dict[int, int] = {}
    entries: list[Commit] = []

    for pos, stage, closing in _boundaries(stream):
        if closing and not final:
            break
        g = revealed(stream, pos)
        if not g.vertices:
            continue
        stages = _settled_with_stages(stream, pos)
        settled = set(stages)
        if closing:
            frozen = set(g.vertices)
        else:
            frozen = {
                v
                for v in settled
                if all(w in settled for w in range(bound(v) + 1))
            }
        eligible = sorted(v for v in frozen if v not in committed)
        if not eligible:
            continue
        if check_promise and is_k_colorable(g, k) is None:
            raise PromiseViolation(
                f"revealed prefix after {stage} vertex events is not {k}-colorable"
            )
        frontier_vs = frozenset(v for v in g.vertices if v not in committed)
        frontier_es = frozenset(
            e for e in g.edges if e[0] in frontier_vs and e[1] in frontier_vs
        )
        frontier = FiniteGraph(frontier_vs, frontier_es)
        adj = g.adjacency()
        lists: dict[int, list[int]] = {}
        low_pref: dict[int, list[int]] = {}
        for v in frontier_vs:
            banned = {committed[u] for u in adj[v] if u in committed}
            full = [c for c in range(palette) if c not in banned]
            if not full:
                raise PlanningError(f"vertex {v} has no admissible color left")
            lists[v] = full
            low_pref[v] = full if v in frozen else [c for c in full if c < k]
            if not low_pref[v]:
                low_pref[v] = full
        plan = _plan_frontier(frontier, lists, low_pref)
        if plan is None:
            raise PlanningError(
                f"no proper list-coloring of the {len(frontier_vs)}-vertex frontier"
            )
        for v in eligible:
            committed[v] = plan[v]
            entries.append(Commit(v, plan[v], stage))
    return CommitLog(tuple(entries))


# ---------------------------------------------------------------------------
# Verification


@dataclass(frozen=True)
class OnlineVerdict:
    ok: bool
    failures: tuple[str, ...] = ()

    @staticmethod
    def passing() -> "OnlineVerdict":
        return OnlineVerdict(True)


def verify_online(
    log: CommitLog,
    stream: GraphStream,
    palette: int,
    algorithm: Optional[Callable[..., CommitLog]] = None,
    **kwargs,
) -> OnlineVerdict:
    """Check properness, palette, commit-stage discipline, and (when the
    producing algorithm is supplied) stability of every prefix replay."""
    failures: list[str] = []
    g = revealed(stream, len(stream.events))
    colors = {}
    duplicate = None
    for e in log.entries:
        if e.vertex in colors:
            duplicate = e.vertex
        colors[e.vertex] = e.color
    if duplicate is not None:
        failures.append(f"duplicate-commit: vertex {duplicate}")

    for u, w in g.sorted_edges():
        if u in colors and w in colors and colors[u] == colors[w]:
            failures.append(f"monochromatic-edge: ({u},{w}) color {colors[u]}")
            break
    missing = sorted(v for v in g.vertices if v not in colors)
    if missing:
        failures.append(f"uncommitted-vertices: {missing[:5]}")
    over = [e for e in log.entries if not 0 <= e.color < palette]
    if over:
        failures.append(
            f"palette-overflow: vertex {over[0].vertex} color {over[0].color}"
        )

    if stream.bound is not None:
        stages = _settled_with_stages(stream, len(stream.events))
        total = sum(1 for kind, _ in stream.events if kind == "vertex")
        for e in log.entries:
            settle = stages.get(e.vertex, total)
            if e.stage < settle:
                failures.append(
                    f"early-commit: vertex {e.vertex} at stage {e.stage} "
                    f"before settlement stage {settle}"
                )
                break

    if algorithm is not None:
        full = algorithm(stream, final=True, **kwargs)
        if full.entries != log.entries:
            failures.append("replay-mismatch: full rerun differs from the log")
        else:
            cut_stage = 0
            for pos, (kind, _) in enumerate(stream.events):
                if kind != "vertex":
                    continue
                partial = algorithm(stream.prefix(pos), final=False, **kwargs)
                if full.entries[: len(partial.entries)] != partial.entries:
                    failures.append(
                        f"replay-instability: prefix of {pos} events diverges"
                    )
                    break
                cut_stage += 1
    return OnlineVerdict(not failures, tuple(failures))
