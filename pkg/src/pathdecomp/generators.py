"""Deterministic graph generators for experiments: grids and random k-trees.

Grids give a planar family; k-trees give a bounded-treewidth family whose
construction order doubles as a treewidth certificate (every vertex is
simplicial at creation, so treewidth <= k).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .graph import WeightedGraph
from .sampler import RngStream

WEIGHT_MODES = ("unit", "uniform")


def _weights(mode: str, count: int, rng: RngStream):
    if mode == "unit":
        return [1.0] * count
    if mode == "uniform":
        return [1.0 + u for u in rng.uniforms(count)]
    raise ValueError(f"unknown weight mode {mode!r}; expected one of {WEIGHT_MODES}")


def gen_grid(rows: int, cols: int, weight_mode: str = "unit", seed: int = 0) -> WeightedGraph:
    """rows x cols grid, vertices numbered row-major; weights all 1 or
    uniform in [1, 2] depending on the mode."""
    if rows < 1 or cols < 1:
        raise ValueError(f"grid dimensions must be >= 1, got {rows}x{cols}")
    pairs = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                pairs.append((v, v + 1))
            if r + 1 < rows:
                pairs.append((v, v + cols))
    w = _weights(weight_mode, len(pairs), RngStream(seed))
    return WeightedGraph(rows * cols, [(u, v, wi) for (u, v), wi in zip(pairs, w)])


@dataclass(frozen=True)
class KTreeSample:
    """A generated k-tree plus its treewidth certificate.

    elimination_order lists the vertices newest-first; eliminating them in
    this order meets only cliques of size <= k, witnessing treewidth <= k
    (for edge_keep_prob < 1 the graph is a partial k-tree and inherits the
    bound from its k-tree supergraph).
    """

    graph: WeightedGraph
    k: int
    elimination_order: tuple[int, ...]


def gen_ktree(n: int, k: int, weight_mode: str = "unit", seed: int = 0,
              edge_keep_prob: float = 1.0) -> KTreeSample:
    """Random k-tree: a (k+1)-clique, then each new vertex adopts a random
    existing k-clique. edge_keep_prob < 1 drops clique edges independently,
    always keeping at least one per new vertex so the graph stays connected."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if n <= k:
        raise ValueError(f"need n > k, got n={n}, k={k}")
    if not 0.0 < edge_keep_prob <= 1.0:
        raise ValueError(f"edge_keep_prob must lie in (0, 1], got {edge_keep_prob}")
    rng = RngStream(seed)
    pairs = [(i, j) for i in range(k + 1) for j in range(i + 1, k + 1)]
    cliques = [tuple(sorted(set(range(k + 1)) - {i})) for i in range(k + 1)]
    for v in range(k + 1, n):
        base = cliques[rng.integer(len(cliques))]
        if edge_keep_prob >= 1.0:
            kept = list(base)
        else:
            kept = [u for u in base if rng.uniform() < edge_keep_prob]
            if not kept:
                kept = [base[0]]
        for u in kept:
            pairs.append((u, v))
        for u in base:
            cliques.append(tuple(sorted((set(base) - {u}) | {v})))
    w = _weights(weight_mode, len(pairs), rng)
    graph = WeightedGraph(n, [(u, v, wi) for (u, v), wi in zip(pairs, w)])
    order = tuple(range(n - 1, -1, -1))
    return KTreeSample(graph, k, order)


def expected_grid_edges(rows: int, cols: int) -> int:
    return 2 * rows * cols - rows - cols


def expected_ktree_edges(n: int, k: int) -> int:
    return comb(k + 1, 2) + k * (n - k - 1)
