"""Sequence gadget tying colorability to range membership.

For a target index i and injection g, edges grow a clique on the low
vertices until g reveals i; a hit freezes the clique, so bounded
chromatic number within the window is exactly range membership.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteGraph, InjectionStream


@dataclass(frozen=True)
class CliqueGadget:
    """Clique prefix v_0..v_{T-1} inside a window of otherwise isolated
    vertices, where T is the first argument at which g hits the target."""

    target: int
    window: int
    g_pairs: tuple[tuple[int, int], ...]
    graph: FiniteGraph

    def metadata(self) -> dict:
        return {
            "kind": "clique-seq",
            "target": self.target,
            "window": self.window,
            "g_pairs": [list(p) for p in self.g_pairs],
            "id_scheme": "v_i -> i",
        }


def build_clique_gadget(g: InjectionStream, target: int, window: int) -> CliqueGadget:
    """Edge (v_j, v_k) for j < k < window iff no revealed g(m)=target with m <= k."""
    pairs = dict(g.pairs())
    edges = []
    for k in range(window):
        if any(pairs.get(m) == target for m in range(k + 1)):
            break
        for j in range(k):
            edges.append((j, k))
    graph = FiniteGraph.build(range(window), edges)
    return CliqueGadget(target, window, tuple(g.pairs()), graph)


@dataclass(frozen=True)
class ColorabilityVerdict:
    """Windowed answer: a stopped clique with its chromatic bound, or a
    clique still filling the window (no bound certifiable so far)."""

    stopped: bool
    clique_size: int

    @property
    def chromatic_bound(self) -> int:
        return max(self.clique_size, 1)


def decide_colorability_window(gadget: CliqueGadget) -> ColorabilityVerdict:
    """Stopped exactly when the target is in the revealed range.

    A hit at argument m caps the clique at size m, so colorability holds at
    that bound forever; while no hit is revealed the clique spans the whole
    window and no bound can be asserted.
    """
    hits = [m for m, n in gadget.g_pairs if n == gadget.target]
    if gadget.window == 0:
        size = 0
    elif not hits:
        size = gadget.window
    else:
        size = max(min(min(hits), gadget.window), 1)
    return ColorabilityVerdict(bool(hits), size)
