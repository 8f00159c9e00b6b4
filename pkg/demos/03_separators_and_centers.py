"""Shortest-path separators and the center sequence built on them.

A separator is a set of shortest paths whose removal leaves only components
of at most half the size. The decomposition recurses on those components, and
along every separator path it places net points (spacing delta/4) that later
serve as carving centers, each tied to the residual subgraph its path lived in.
"""

import pathdecomp as pd
from pathdecomp import separator_lines, validate_separator

g = pd.gen_grid(8, 8)
mask = pd.VertexMask.full(g.n)

sep = pd.greedy_find(g, mask)
print(f"greedy separator: {sep.total_paths} path(s), "
      f"flap sizes {[len(f) for f in sep.flaps]} (limit {len(mask) // 2})")
for line in separator_lines(sep):
    print(" ", line)
print("validator says:", validate_separator(g, mask, sep) or "ok")

# trees admit an exact one-vertex separator: the centroid
t = pd.gen_ktree(31, 1, seed=3).graph
tsep = pd.tree_centroid_find(t, pd.VertexMask.full(31))
print(f"\ntree centroid: vertex {min(tsep.separator_vertices)}, "
      f"flap sizes {[len(f) for f in tsep.flaps]}")

# the recursion assembles a deterministic center sequence
delta = 8.0
seq = pd.choose_centers(g, delta)
print(f"\ncenter sequence for delta={delta}: {len(seq.records)} centers, "
      f"p_eff={seq.p_eff}, recursion depth {seq.max_depth} "
      f"(limit {pd.ceil_log2(g.n)})")
for rec in seq.records[:6]:
    print(f"  order={rec.order} center={rec.center:2d} depth={rec.depth} "
          f"subgraph_size={len(rec.subgraph)}")
print("  ...")

# every vertex lands on exactly one separator path across the recursion
covered = sorted(v for p in seq.paths for v in p.vertices)
print(f"separator paths partition the vertices: {covered == list(range(g.n))}")
