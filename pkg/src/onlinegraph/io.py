"""File formats: JSON graphs, JSON-lines streams, injections, trees,
colorings, traces, gadget metadata, and DOT export.

Graph files carry ``{"vertices": [...], "edges": [[u, w], ...]}`` with an
optional ``"bound"`` object mapping vertex to its neighbor bound.  Stream
files are JSON lines of ``{"vertex": n}`` or ``{"edge": [u, w]}``; a single
optional ``{"bound": {...}}`` line (anywhere, conventionally first)
attaches the bound.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .core import (
    BoundFn,
    FiniteGraph,
    GraphStream,
    InjectionStream,
    NatSet,
    Tree,
    edge_event,
    vertex_event,
)
from .euler import EulerGadget, build_euler_gadget
from .hamilton import HamiltonRangeGadget, build_hamilton_range_gadget
from .oracle import Coloring, PathTrace
from .separation import BlockGadget, FlipGadget, build_block_gadget, build_flip_gadget
from .cliqueseq import CliqueGadget, build_clique_gadget
from .core import DisjointInjections


def graph_to_json(graph: FiniteGraph, bound: Optional[BoundFn] = None) -> dict:
    out = {
        "vertices": graph.sorted_vertices(),
        "edges": [list(e) for e in graph.sorted_edges()],
    }
    if bound is not None:
        out["bound"] = {str(v): bound(v) for v in graph.sorted_vertices()}
    return out


def graph_from_json(data: dict) -> tuple[FiniteGraph, Optional[BoundFn]]:
    graph = FiniteGraph.build(data["vertices"], [tuple(e) for e in data["edges"]])
    bound = None
    if "bound" in data:
        bound = BoundFn({int(v): int(h) for v, h in data["bound"].items()})
    return graph, bound


def load_graph(path: str | Path) -> tuple[FiniteGraph, Optional[BoundFn]]:
    return graph_from_json(json.loads(Path(path).read_text()))


def save_graph(path: str | Path, graph: FiniteGraph, bound: Optional[BoundFn] = None) -> None:
    Path(path).write_text(json.dumps(graph_to_json(graph, bound), indent=2) + "\n")


def stream_to_jsonl(stream: GraphStream) -> str:
    lines = []
    if stream.bound is not None:
        lines.append(json.dumps({"bound": {str(v): h for v, h in sorted(stream.bound.mapping.items())}}))
    for kind, payload in stream.events:
        if kind == "vertex":
            lines.append(json.dumps({"vertex": payload}))
        else:
            lines.append(json.dumps({"edge": list(payload)}))
    return "\n".join(lines) + "\n"


def stream_from_jsonl(text: str) -> GraphStream:
    events = []
    bound = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "vertex" in obj:
            events.append(vertex_event(int(obj["vertex"])))
        elif "edge" in obj:
            u, w = obj["edge"]
            events.append(edge_event(int(u), int(w)))
        elif "bound" in obj:
            bound = BoundFn({int(v): int(h) for v, h in obj["bound"].items()})
        else:
            raise ValueError(f"unrecognized stream line: {line}")
    return GraphStream(tuple(events), bound)


def load_stream(path: str | Path) -> GraphStream:
    return stream_from_jsonl(Path(path).read_text())


def save_stream(path: str | Path, stream: GraphStream) -> None:
    Path(path).write_text(stream_to_jsonl(stream))


def load_injection(path: str | Path) -> InjectionStream:
    data = json.loads(Path(path).read_text())
    return InjectionStream(tuple(int(v) for v in data["values"]))


def save_injection(path: str | Path, inj: InjectionStream) -> None:
    Path(path).write_text(json.dumps({"values": list(inj.values)}) + "\n")


def load_tree(path: str | Path, depth: Optional[int] = None) -> Tree:
    data = json.loads(Path(path).read_text())
    return Tree.build([tuple(seq) for seq in data], depth)


def save_tree(path: str | Path, tree: Tree) -> None:
    seqs = sorted(tree.members)
    Path(path).write_text(json.dumps([list(s) for s in seqs]) + "\n")


def coloring_to_json(chi: Coloring) -> dict:
    return {
        "palette": chi.palette_size,
        "colors": {str(v): c for v, c in sorted(chi.assignment.items())},
    }


def coloring_from_json(data: dict) -> Coloring:
    return Coloring(
        {int(v): int(c) for v, c in data["colors"].items()}, int(data["palette"])
    )


def load_coloring(path: str | Path) -> Coloring:
    return coloring_from_json(json.loads(Path(path).read_text()))


def save_coloring(path: str | Path, chi: Coloring) -> None:
    Path(path).write_text(json.dumps(coloring_to_json(chi), indent=2) + "\n")


def trace_to_json(trace: PathTrace) -> dict:
    return {"kind": trace.kind, "vertices": list(trace.vertices)}


def trace_from_json(data: dict) -> PathTrace:
    return PathTrace(tuple(int(v) for v in data["vertices"]), data.get("kind", "vertex-path"))


def load_trace(path: str | Path) -> PathTrace:
    return trace_from_json(json.loads(Path(path).read_text()))


def save_trace(path: str | Path, trace: PathTrace) -> None:
    Path(path).write_text(json.dumps(trace_to_json(trace)) + "\n")


def natset_to_json(s: NatSet) -> dict:
    return {"members": sorted(s.members), "window": s.window}


# ---------------------------------------------------------------------------
# Gadget metadata round-trips


def _injections_from_pairs(pairs: list[list[int]]) -> InjectionStream:
    ordered = sorted((int(i), int(n)) for i, n in pairs)
    if [i for i, _ in ordered] != list(range(len(ordered))):
        raise ValueError("gadget metadata pairs must enumerate steps 0..t-1")
    return InjectionStream(tuple(n for _, n in ordered))


def gadget_from_metadata(data: dict):
    """Rebuild a gadget object from its recorded construction parameters."""
    kind = data["kind"]
    if kind == "flip":
        fg = DisjointInjections(
            _injections_from_pairs(data["f_pairs"]),
            _injections_from_pairs(data["g_pairs"]),
        )
        return build_flip_gadget(
            data["k"], fg, data["steps"], data["spine_len"], window=data["window"]
        )
    if kind == "blocks":
        fg = DisjointInjections(
            _injections_from_pairs(data["f_pairs"]),
            _injections_from_pairs(data["g_pairs"]),
        )
        return build_block_gadget(
            data["k"], fg, data["steps"], rows=data["rows"], cols=data["cols"]
        )
    if kind == "euler-range":
        f = _injections_from_pairs(data["f_pairs"])
        return build_euler_gadget(f, data["steps"], data["window"])
    if kind == "hamilton-range":
        f = _injections_from_pairs(data["f_pairs"])
        return build_hamilton_range_gadget(f, data["target"], data["window"])
    if kind == "clique-seq":
        g = _injections_from_pairs(data["g_pairs"])
        return build_clique_gadget(g, data["target"], data["window"])
    raise ValueError(f"unknown gadget kind {kind!r}")


def load_gadget(path: str | Path):
    return gadget_from_metadata(json.loads(Path(path).read_text()))


def save_gadget(path: str | Path, gadget) -> None:
    Path(path).write_text(json.dumps(gadget.metadata(), indent=2) + "\n")


# ---------------------------------------------------------------------------
# DOT export


def to_dot(graph: FiniteGraph, labels: Optional[dict[int, str]] = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in graph.sorted_vertices():
        if labels and v in labels:
            lines.append(f'  {v} [label="{labels[v]}"];')
        else:
            lines.append(f"  {v};")
    for u, w in graph.sorted_edges():
        lines.append(f"  {u} -- {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"
