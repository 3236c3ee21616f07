"""Hamilton-path gadgets and corpus deciders.

The range gadget turns membership of a target value in an injection's range
into whether a unique Hamilton path keeps its head vertex as an endpoint.
The tree reduction turns depth-reaching branches of a truncated sequence
tree into Hamilton paths of a small graph, one trace class per branch.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import FiniteGraph, GraphStream, InjectionStream, NatSet, Tree
from .oracle import PathTrace, hamilton_paths, tree_has_deep_path


class HamiltonError(ValueError):
    """Precondition failure in a Hamilton operation."""


# ---------------------------------------------------------------------------
# Range gadget


@dataclass(frozen=True)
class HamiltonRangeGadget:
    """Path v_0 v_1 v_2 ... with one rewiring: if the target value is

    revealed as f(j), the spine edge into v_{j+2} is replaced by a chord
    from v_0, so the unique Hamilton path must pass through v_0 mid-way."""

    target: int
    window: int
    f_pairs: tuple[tuple[int, int], ...]
    graph: FiniteGraph

    def metadata(self) -> dict:
        return {
            "kind": "hamilton-range",
            "target": self.target,
            "window": self.window,
            "f_pairs": [list(p) for p in self.f_pairs],
            "id_scheme": "v_i -> i",
        }


def build_hamilton_range_gadget(
    f: InjectionStream, target: int, window: int
) -> HamiltonRangeGadget:
    if window < 2:
        raise HamiltonError("window must be at least 2")
    pairs = dict(f.pairs())
    edges = [(0, 1)]
    for j in range(window - 2):
        if pairs.get(j) == target:
            edges.append((0, j + 2))
        else:
            edges.append((j + 1, j + 2))
    graph = FiniteGraph.build(range(window), edges)
    return HamiltonRangeGadget(target, window, tuple(f.pairs()), graph)


def decode_hamilton_range(gadget: HamiltonRangeGadget, trace: PathTrace) -> bool:
    """True when v_0 sits in the interior of the Hamilton trace.

    Finite traces are orientation-free, so endpoint-ness of v_0 replaces
    the infinite reading of "v_0 comes first"; it equals range membership
    of the target whenever the witnessing argument fits the window.
    """
    if not trace.is_hamilton(gadget.graph):
        raise HamiltonError("trace is not a Hamilton path of the gadget graph")
    return trace.vertices[0] != 0 and trace.vertices[-1] != 0


# ---------------------------------------------------------------------------
# Tree reduction


@dataclass(frozen=True)
class ReductionOutput:
    """Graph encoding of a truncated tree plus the back-map for traces.

    Vertex layout: the tree's non-deepest nodes form a lex-ordered corridor
    path; the depth-reaching nodes hang off the corridor tip as a single
    leaf (one branch), a triangle (two branches), or a ring with spokes
    (three or more).  With no depth-reaching node a pendant claw is placed
    at the tip instead, which kills all Hamilton paths.  Two Hamilton
    traces are regarded as equivalent when they use the same tip-to-leaf
    spoke; trace classes then correspond one-to-one to branches.
    """

    tree: Tree
    stream: GraphStream
    graph: FiniteGraph
    node_of_id: tuple[tuple[int, ...], ...]
    corridor: tuple[int, ...]
    leaves: tuple[int, ...]
    filler: tuple[int, ...]

    def tip(self) -> Optional[int]:
        return self.corridor[-1] if self.corridor else None


def harel_reduce(tree: Tree) -> ReductionOutput:
    """Encode depth-reaching branches of a tree as Hamilton trace classes."""
    if not tree.members:
        raise HamiltonError("reduction needs a nonempty tree")
    depth = tree.truncation_depth
    nodes = sorted(tree.members)
    deep = [s for s in nodes if len(s) == depth]
    shallow = [s for s in nodes if len(s) < depth]
    node_of_id = tuple(shallow + deep)
    corridor = tuple(range(len(shallow)))
    leaves = tuple(range(len(shallow), len(shallow) + len(deep)))

    edges: list[tuple[int, int]] = []
    for i in range(len(corridor) - 1):
        edges.append((corridor[i], corridor[i + 1]))
    tip = corridor[-1] if corridor else None
    filler: tuple[int, ...] = ()

    n_leaves = len(leaves)
    if n_leaves >= 2 and len(corridor) == 1:
        # A lone corridor vertex would sit inside a wheel and admit
        # two-spoke traces; a pendant anchor pins it to one spoke.
        anchor = len(node_of_id)
        filler = (anchor,)
        edges.append((anchor, tip))
    if n_leaves == 0:
        # Pendant claw: three degree-one vertices at the tip leave no
        # Hamilton path through the corridor.
        base = len(node_of_id)
        filler = (base, base + 1, base + 2)
        edges.extend((tip, x) for x in filler)
    elif n_leaves == 1:
        if tip is not None:
            edges.append((tip, leaves[0]))
    elif n_leaves == 2:
        a, b = leaves
        edges.append((a, b))
        if tip is not None:
            edges.extend([(tip, a), (tip, b)])
    else:
        ring = list(leaves)
        for i in range(n_leaves):
            edges.append(tuple(sorted((ring[i], ring[(i + 1) % n_leaves]))))
        if tip is not None:
            edges.extend((tip, x) for x in ring)

    all_vertices = list(range(len(node_of_id))) + list(filler)
    graph = FiniteGraph.build(all_vertices, set(edges))
    stream = GraphStream.from_graph(graph)
    return ReductionOutput(
        tree=tree,
        stream=stream,
        graph=graph,
        node_of_id=node_of_id,
        corridor=corridor,
        leaves=leaves,
        filler=filler,
    )


def extract_tree_path(out: ReductionOutput, trace: PathTrace) -> tuple[int, ...]:
    """Map a Hamilton trace back to the depth-reaching branch it selects."""
    if not trace.is_hamilton(out.graph):
        raise HamiltonError("trace is not a Hamilton path of the reduced graph")
    if not out.leaves:
        raise HamiltonError("the reduced graph encodes no branch")
    if len(out.leaves) == 1 and not out.corridor:
        return out.node_of_id[out.leaves[0]]
    tip = out.tip()
    if tip is None:
        # Leaves only (depth 0 trees have a single node handled above).
        raise HamiltonError("reduced graph has no corridor tip")
    pos = trace.vertices.index(tip)
    neighbors = []
    if pos > 0:
        neighbors.append(trace.vertices[pos - 1])
    if pos + 1 < len(trace.vertices):
        neighbors.append(trace.vertices[pos + 1])
    chosen = [v for v in neighbors if v in out.leaves]
    if not chosen:
        raise HamiltonError("trace never leaves the corridor through a branch")
    return out.node_of_id[chosen[0]]


# ---------------------------------------------------------------------------
# Corpus deciders


def decide_unique_hamilton_corpus(graphs: list[FiniteGraph]) -> NatSet:
    """Indices whose graph has exactly one Hamilton path up to reversal.

    Rejects the whole corpus when some graph has two or more, reporting
    both witnesses: the at-most-one promise is a precondition.
    """
    members = set()
    for idx, g in enumerate(graphs):
        found = hamilton_paths(g, cap=2)
        if len(found) >= 2:
            raise HamiltonError(
                f"graph {idx} has at least two Hamilton paths: "
                f"{found[0].vertices} and {found[1].vertices}"
            )
        if found:
            members.add(idx)
    return NatSet(frozenset(members), len(graphs))


def decide_hamilton_corpus(graphs: list[FiniteGraph]) -> NatSet:
    """Indices whose graph has some Hamilton path."""
    members = set()
    for idx, g in enumerate(graphs):
        if hamilton_paths(g, cap=1):
            members.add(idx)
    return NatSet(frozenset(members), len(graphs))
