"""Extraction of a still-dense subgraph from a graph of near-minimum average degree.

Given H whose average degree is within a (1 + eps) factor of its minimum
degree, removing the few vertices of unusually high degree and then peeling
low-degree vertices leaves a nonempty subgraph in which every vertex keeps
degree at least (1 - alpha)/2 times the original minimum degree while never
exceeding the high-degree cutoff.  All threshold arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .graph import Graph, average_degree


@dataclass(frozen=True)
class ExtractionResult:
    kept: tuple[int, ...]
    removed_high: tuple[int, ...]
    removed_peel: tuple[int, ...]
    high_cutoff: Fraction
    low_cutoff: Fraction


def extract_dense_subgraph(h: Graph, alpha: Fraction, eps: Fraction) -> ExtractionResult:
    """Drop vertices of degree above (1 + (1+alpha)/(alpha-eps) eps) delta(H),
    then repeatedly peel (lowest id first) vertices of current degree below
    (1 - alpha)/2 delta(H).  Fails loudly if nothing survives."""
    if not (0 < eps < alpha < 1):
        raise ValueError("need 0 < eps < alpha < 1")
    if h.n == 0:
        raise ValueError("empty graph")
    delta = h.min_degree()
    ad = average_degree(h)
    if ad > (1 + eps) * delta:
        raise ValueError(
            f"average degree {ad} exceeds (1 + eps) * minimum degree "
            f"{(1 + eps) * delta}; extraction hypotheses violated"
        )
    high_cutoff = (1 + (1 + alpha) / (alpha - eps) * eps) * delta
    low_cutoff = Fraction(1 - alpha, 2) * delta

    removed_high = tuple(v for v in range(h.n) if len(h.adj[v]) > high_cutoff)
    alive = set(range(h.n)) - set(removed_high)
    deg = {v: sum(1 for u in h.adj[v] if u in alive) for v in alive}
    removed_peel: list[int] = []
    while True:
        low = sorted(v for v in alive if deg[v] < low_cutoff)
        if not low:
            break
        v = low[0]
        alive.remove(v)
        removed_peel.append(v)
        del deg[v]
        for u in h.adj[v]:
            if u in alive:
                deg[u] -= 1
    if not alive:
        raise RuntimeError(
            "extraction removed every vertex; the density hypotheses do not "
            f"support a dense core (delta={delta}, ad={ad})"
        )
    kept = tuple(sorted(alive))
    # post-hoc verification of both degree bounds on the kept subgraph
    for v in kept:
        if deg[v] < low_cutoff:
            raise RuntimeError(f"kept vertex {v} has degree {deg[v]} < {low_cutoff}")
        if len(h.adj[v]) > high_cutoff:
            raise RuntimeError(f"kept vertex {v} exceeds the high-degree cutoff")
    return ExtractionResult(kept, removed_high, tuple(removed_peel), high_cutoff, low_cutoff)
