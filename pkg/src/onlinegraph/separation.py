"""Gadget graphs whose proper colorings encode range-separating sets.

Two constructions live here.  The flip gadget attaches one k-clique per
value to a complete k-partite spine, twisting the attachment for values of
the second injection; decoding a coloring of it recovers a set containing
the first injection's range and missing the second's.  The block gadget
does the same for bounded graphs out of k x k blocks linked so that any
(2k-2)-coloring is forced to propagate a row/column orientation.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .core import BoundFn, DisjointInjections, FiniteGraph, NatSet
from .oracle import Coloring


class GadgetError(ValueError):
    """Bad gadget parameters or a coloring the decoder cannot accept."""


# ---------------------------------------------------------------------------
# Flip gadget


@dataclass(frozen=True)
class FlipGadget:
    """Complete k-partite spine plus per-value k-cliques, attached straight
    for f-values and twisted one part over for g-values."""

    k: int
    spine_len: int
    steps: int
    window: tuple[int, ...]
    f_pairs: tuple[tuple[int, int], ...]
    g_pairs: tuple[tuple[int, int], ...]
    graph: FiniteGraph

    def spine_id(self, p: int, m: int) -> int:
        if not (0 <= p < self.k and 0 <= m < self.spine_len):
            raise GadgetError(f"no spine vertex for part {p}, column {m}")
        return m * self.k + p

    def value_id(self, n: int, p: int) -> int:
        if n not in self.window or not 0 <= p < self.k:
            raise GadgetError(f"no value vertex for {n}^{p}")
        return self.spine_len * self.k + self.window.index(n) * self.k + p

    def labels(self) -> dict[int, str]:
        out = {}
        for m in range(self.spine_len):
            for p in range(self.k):
                out[self.spine_id(p, m)] = f"b[{p},{m}]"
        for n in self.window:
            for p in range(self.k):
                out[self.value_id(n, p)] = f"{n}^{p}"
        return out

    def metadata(self) -> dict:
        return {
            "kind": "flip",
            "k": self.k,
            "spine_len": self.spine_len,
            "steps": self.steps,
            "window": list(self.window),
            "f_pairs": [list(p) for p in self.f_pairs],
            "g_pairs": [list(p) for p in self.g_pairs],
            "id_scheme": "spine b[p,m] -> m*k+p; value n^p -> spine_len*k + window_index(n)*k + p",
        }


def build_flip_gadget(
    k: int,
    fg: DisjointInjections,
    steps: int,
    spine_len: int,
    window: Optional[list[int]] = None,
) -> FlipGadget:
    """Assemble the gadget for the first ``steps`` revealed pairs of f and g.

    ``spine_len`` must cover the steps; the value window defaults to exactly
    the revealed values and must cover them when given explicitly.
    """
    if k < 2:
        raise GadgetError("flip gadget needs k >= 2")
    if spine_len < steps:
        raise GadgetError(f"spine length {spine_len} shorter than steps {steps}")
    f_pairs = tuple(fg.f.pairs()[:steps])
    g_pairs = tuple(fg.g.pairs()[:steps])
    revealed_vals = {n for _, n in f_pairs} | {n for _, n in g_pairs}
    if window is None:
        win = tuple(sorted(revealed_vals))
    else:
        win = tuple(sorted(set(window)))
        if not revealed_vals <= set(win):
            raise GadgetError("window does not cover all revealed values")

    gadget = FlipGadget(k, spine_len, steps, win, f_pairs, g_pairs, FiniteGraph.empty())
    vertices: set[int] = set()
    edges: set[tuple[int, int]] = set()

    def add(u: int, w: int) -> None:
        edges.add((u, w) if u < w else (w, u))

    for m in range(spine_len):
        for p in range(k):
            vertices.add(gadget.spine_id(p, m))
    for n in win:
        for p in range(k):
            vertices.add(gadget.value_id(n, p))

    # Complete k-partite spine: all cross-part pairs.
    for m in range(spine_len):
        for mm in range(spine_len):
            for p in range(k):
                for pp in range(p + 1, k):
                    add(gadget.spine_id(p, m), gadget.spine_id(pp, mm))
    # One k-clique per window value.
    for n in win:
        for p in range(k):
            for pp in range(p + 1, k):
                add(gadget.value_id(n, p), gadget.value_id(n, pp))
    # Straight attachment for f, twisted for g, from the step's column on.
    for i, n in f_pairs:
        for m in range(i, spine_len):
            for p in range(k):
                for pp in range(k):
                    if p != pp:
                        add(gadget.spine_id(p, m), gadget.value_id(n, pp))
    for i, n in g_pairs:
        for m in range(i, spine_len):
            for p in range(k):
                for pp in range(k):
                    if p % k != (pp + 1) % k:
                        add(gadget.spine_id(p, m), gadget.value_id(n, pp))

    graph = FiniteGraph(frozenset(vertices), frozenset(edges))
    return FlipGadget(k, spine_len, steps, win, f_pairs, g_pairs, graph)


def _check_proper(gadget_graph: FiniteGraph, chi: Coloring) -> None:
    bad = chi.monochromatic_edge(gadget_graph)
    if bad is not None:
        raise GadgetError(f"coloring is improper on edge {bad}")
    if not chi.is_total_on(gadget_graph):
        missing = sorted(gadget_graph.vertices - set(chi.assignment))
        raise GadgetError(f"coloring misses vertices {missing[:5]}")


def _spine_part_colors(gadget: FlipGadget, chi: Coloring) -> list[int]:
    """Per-part spine colors, valid only when the spine uses <= k colors.

    A proper coloring of a complete k-partite graph with at most k colors
    makes every part monochromatic with pairwise distinct part colors.
    """
    spine_colors = {
        chi(gadget.spine_id(p, m))
        for p in range(gadget.k)
        for m in range(gadget.spine_len)
    }
    if len(spine_colors) > gadget.k:
        raise GadgetError(
            f"spine uses {len(spine_colors)} colors; the simple decode needs <= {gadget.k}"
        )
    out = []
    for p in range(gadget.k):
        cols = {chi(gadget.spine_id(p, m)) for m in range(gadget.spine_len)}
        if len(cols) != 1:
            raise GadgetError(f"spine part {p} is not monochromatic")
        out.append(cols.pop())
    return out


def decode_simple(gadget: FlipGadget, chi: Coloring) -> NatSet:
    """Separating set read off a coloring whose spine stays within k colors."""
    _check_proper(gadget.graph, chi)
    _spine_part_colors(gadget, chi)
    members = set()
    for n in gadget.window:
        if any(
            chi(gadget.value_id(n, p)) == chi(gadget.spine_id(p, 0))
            for p in range(gadget.k)
        ):
            members.add(n)
    window_bound = max(gadget.window) + 1 if gadget.window else 0
    return NatSet(frozenset(members), window_bound)


def find_j(gadget: FlipGadget, chi: Coloring, j_max: Optional[int] = None) -> int:
    """Least column j from which the coloring classifies attachments cleanly.

    At a good j every f-value attached from step j on matches some spine
    part's column-j color, and every g-value attached from step j on matches
    none.  Raises with per-column witnesses when no column qualifies.
    """
    _check_proper(gadget.graph, chi)
    if chi.palette_size > 2 * gadget.k - 1:
        raise GadgetError(
            f"palette {chi.palette_size} exceeds {2 * gadget.k - 1}"
        )
    if j_max is None:
        j_max = gadget.spine_len - 1
    j_max = min(j_max, gadget.spine_len - 1)
    failures: list[str] = []
    for j in range(j_max + 1):
        witness = None
        for i, n in gadget.f_pairs:
            if i >= j and not any(
                chi(gadget.value_id(n, p)) == chi(gadget.spine_id(p, j))
                for p in range(gadget.k)
            ):
                witness = f"j={j}: f-value {n} (step {i}) matches no part"
                break
        if witness is None:
            for i, n in gadget.g_pairs:
                if i >= j and any(
                    chi(gadget.value_id(n, p)) == chi(gadget.spine_id(p, j))
                    for p in range(gadget.k)
                ):
                    witness = f"j={j}: g-value {n} (step {i}) matches a part"
                    break
        if witness is None:
            return j
        failures.append(witness)
    raise GadgetError(
        "no admissible column j <= %d; violations: %s" % (j_max, "; ".join(failures))
    )


def decode_with_j(gadget: FlipGadget, chi: Coloring, j: int) -> NatSet:
    """Separating set for a coloring certified at column j by find_j."""
    _check_proper(gadget.graph, chi)
    if not 0 <= j < gadget.spine_len:
        raise GadgetError(f"column {j} outside spine of length {gadget.spine_len}")
    members = {n for i, n in gadget.f_pairs if i < j}
    early_g = {n for i, n in gadget.g_pairs if i < j}
    for n in gadget.window:
        if n in early_g:
            continue
        if any(
            chi(gadget.value_id(n, p)) == chi(gadget.spine_id(p, j))
            for p in range(gadget.k)
        ):
            members.add(n)
    window_bound = max(gadget.window) + 1 if gadget.window else 0
    return NatSet(frozenset(members), window_bound)


# ---------------------------------------------------------------------------
# Blocks


@dataclass(frozen=True)
class Block:
    """k x k vertex grid; vertex (i, j) is wired to its cofactor cells."""

    k: int
    offset: int = 0

    def vertex(self, i: int, j: int) -> int:
        if not (0 <= i < self.k and 0 <= j < self.k):
            raise GadgetError(f"no block cell ({i},{j}) for k={self.k}")
        return self.offset + i * self.k + j

    def vertices(self) -> list[int]:
        return [self.offset + x for x in range(self.k * self.k)]

    def internal_edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.k):
            for j in range(self.k):
                for r in range(self.k):
                    for s in range(self.k):
                        if i != r and j != s:
                            u, w = self.vertex(i, j), self.vertex(r, s)
                            if u < w:
                                out.append((u, w))
        return sorted(out)

    def graph(self) -> FiniteGraph:
        return FiniteGraph(frozenset(self.vertices()), frozenset(self.internal_edges()))


def build_block(k: int, offset: int = 0) -> Block:
    if k < 2:
        raise GadgetError("blocks need k >= 2")
    return Block(k, offset)


def link_blocks(b: Block, b2: Block) -> list[tuple[int, int]]:
    """Transpose link: (i,j) in one block is joined to (r,s) in the other
    whenever i != s and j != r.  This is the wiring that forces a colorful
    row on one side to pair with a colorful column on the other."""
    if b.k != b2.k:
        raise GadgetError(f"cannot link blocks with k={b.k} and k={b2.k}")
    out = []
    for i in range(b.k):
        for j in range(b.k):
            for r in range(b.k):
                for s in range(b.k):
                    if i != s and j != r:
                        out.append((b.vertex(i, j), b2.vertex(r, s)))
    return sorted(tuple(sorted(e)) for e in out)


def _colorful_line(block: Block, chi: Coloring, rows: bool) -> Optional[int]:
    for idx in range(block.k):
        cells = [
            block.vertex(idx, j) if rows else block.vertex(j, idx)
            for j in range(block.k)
        ]
        colors = [chi(c) for c in cells]
        if len(set(colors)) == block.k:
            return idx
    return None


def colorful_row(block: Block, chi: Coloring) -> Optional[int]:
    """Least row whose k cells carry pairwise distinct colors, if any."""
    return _colorful_line(block, chi, rows=True)


def colorful_column(block: Block, chi: Coloring) -> Optional[int]:
    """Least column whose k cells carry pairwise distinct colors, if any."""
    return _colorful_line(block, chi, rows=False)


# ---------------------------------------------------------------------------
# Block gadget


@dataclass(frozen=True)
class BlockGadget:
    """Spine chain of blocks plus one chain per value row, cross-linked at
    the columns where the injections reveal their values."""

    k: int
    steps: int
    rows: int
    cols: int
    f_pairs: tuple[tuple[int, int], ...]
    g_pairs: tuple[tuple[int, int], ...]
    spine: tuple[Block, ...]
    row_blocks: dict[tuple[int, int], Block] = field(compare=False)
    links: tuple[tuple[str, tuple, tuple], ...] = ()
    graph: FiniteGraph = field(default_factory=FiniteGraph.empty, compare=False)
    bound: BoundFn = field(default_factory=lambda: BoundFn({}), compare=False)

    def spine_block(self, j: int) -> Block:
        if not 0 <= j < self.cols:
            raise GadgetError(f"no spine block at column {j}")
        return self.spine[j]

    def row_block(self, i: int, j: int) -> Block:
        try:
            return self.row_blocks[(i, j)]
        except KeyError:
            raise GadgetError(f"no row block at ({i},{j})") from None

    def labels(self) -> dict[int, str]:
        out = {}
        for j, blk in enumerate(self.spine):
            for i in range(self.k):
                for jj in range(self.k):
                    out[blk.vertex(i, jj)] = f"B{j}[{i},{jj}]"
        for (r, c), blk in self.row_blocks.items():
            for i in range(self.k):
                for jj in range(self.k):
                    out[blk.vertex(i, jj)] = f"B{r},{c}[{i},{jj}]"
        return out

    def metadata(self) -> dict:
        return {
            "kind": "blocks",
            "k": self.k,
            "steps": self.steps,
            "rows": self.rows,
            "cols": self.cols,
            "f_pairs": [list(p) for p in self.f_pairs],
            "g_pairs": [list(p) for p in self.g_pairs],
            "spine_offsets": [b.offset for b in self.spine],
            "row_offsets": {f"{i},{j}": b.offset for (i, j), b in sorted(self.row_blocks.items())},
            "id_scheme": "blocks laid out in link-order breadth-first from spine "
            "column 0, k*k consecutive ids per block, cell (i,j) -> offset+i*k+j",
        }


def build_block_gadget(
    k: int,
    fg: DisjointInjections,
    steps: int,
    rows: Optional[int] = None,
    cols: Optional[int] = None,
) -> BlockGadget:
    """Assemble the bounded separation gadget for the first ``steps`` pairs.

    Blocks receive consecutive id ranges in breadth-first link order from
    spine column 0, which keeps the id-ordered coloring oracle fast and
    makes the neighbor bound explicit: a block's cross links are fixed by
    the enumeration step of its column, so every vertex's bound is the
    largest id over its own and all linked blocks.
    """
    if k < 3:
        raise GadgetError("block gadget supports k >= 3 only")
    f_pairs = tuple(fg.f.pairs()[:steps])
    g_pairs = tuple(fg.g.pairs()[:steps])
    revealed_vals = [n for _, n in f_pairs] + [n for _, n in g_pairs]
    min_rows = max(revealed_vals) + 1 if revealed_vals else 1
    min_cols = 2 * steps + 2
    rows = min_rows if rows is None else rows
    cols = min_cols if cols is None else cols
    if rows < min_rows or cols < min_cols:
        raise GadgetError(
            f"need rows >= {min_rows} and cols >= {min_cols}, got {rows}, {cols}"
        )

    # Link graph over abstract block names.
    spine_names = [("spine", 0, j) for j in range(cols)]
    row_names = [("row", i, j) for i in range(rows) for j in range(cols)]
    link_pairs: list[tuple[tuple, tuple]] = []
    for j in range(cols - 1):
        link_pairs.append((("spine", 0, j), ("spine", 0, j + 1)))
    for i in range(rows):
        for j in range(cols - 1):
            link_pairs.append((("row", i, j), ("row", i, j + 1)))
    cross: list[tuple[str, tuple, tuple]] = []
    for m, n in f_pairs:
        pair = (("row", n, 2 * m), ("spine", 0, 2 * m))
        link_pairs.append(pair)
        cross.append(("f", *pair))
    for m, n in g_pairs:
        pair = (("row", n, 2 * m), ("spine", 0, 2 * m + 1))
        link_pairs.append(pair)
        cross.append(("g", *pair))

    neigh: dict[tuple, list[tuple]] = {name: [] for name in spine_names + row_names}
    for a, b in link_pairs:
        neigh[a].append(b)
        neigh[b].append(a)

    # Breadth-first block layout from spine column 0; leftover (uncrossed)
    # row chains follow in row-major order.
    order: list[tuple] = []
    seen: set[tuple] = set()

    def bfs(start: tuple) -> None:
        queue = deque([start])
        seen.add(start)
        while queue:
            cur = queue.popleft()
            order.append(cur)
            for nxt in sorted(neigh[cur]):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)

    bfs(("spine", 0, 0))
    for name in spine_names + row_names:
        if name not in seen:
            bfs(name)

    blocks: dict[tuple, Block] = {}
    for idx, name in enumerate(order):
        blocks[name] = Block(k, idx * k * k)

    edges: set[tuple[int, int]] = set()
    for blk in blocks.values():
        edges.update(blk.internal_edges())
    for a, b in link_pairs:
        edges.update(link_blocks(blocks[a], blocks[b]))

    vertices = frozenset(v for blk in blocks.values() for v in blk.vertices())
    graph = FiniteGraph(vertices, frozenset(edges))

    bound_map: dict[int, int] = {}
    for name, blk in blocks.items():
        reach = [blk] + [blocks[o] for o in neigh[name]]
        top = max(b.offset + k * k - 1 for b in reach)
        for v in blk.vertices():
            bound_map[v] = top

    spine = tuple(blocks[("spine", 0, j)] for j in range(cols))
    row_blocks = {
        (i, j): blocks[("row", i, j)] for i in range(rows) for j in range(cols)
    }
    return BlockGadget(
        k=k,
        steps=steps,
        rows=rows,
        cols=cols,
        f_pairs=f_pairs,
        g_pairs=g_pairs,
        spine=spine,
        row_blocks=row_blocks,
        links=tuple(cross),
        graph=graph,
        bound=BoundFn(bound_map),
    )


def decode_blocks(gadget: BlockGadget, chi: Coloring) -> tuple[NatSet, str]:
    """Separating set plus the spine orientation that certifies it.

    With a colorful row at spine column 0 the decoded set contains the
    first injection's revealed range; with a colorful column the roles of
    the two injections swap.
    """
    _check_proper(gadget.graph, chi)
    if chi.palette_size > 2 * gadget.k - 2:
        raise GadgetError(
            f"palette {chi.palette_size} exceeds {2 * gadget.k - 2}"
        )

    def classify(blk: Block, what: str) -> str:
        row = colorful_row(blk, chi)
        col = colorful_column(blk, chi)
        if (row is None) == (col is None):
            raise GadgetError(
                f"{what} has colorful row={row} column={col}; "
                "expected exactly one (is the coloring proper?)"
            )
        return "row" if row is not None else "column"

    orientation = classify(gadget.spine_block(0), "spine block 0")
    members = set()
    for n in range(gadget.rows):
        if classify(gadget.row_block(n, 0), f"row block ({n},0)") == "column":
            members.add(n)
    return NatSet(frozenset(members), gadget.rows), orientation
