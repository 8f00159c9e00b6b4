"""Subgraph carving vs. the all-centers baseline.

The baseline carves balls in the full graph around every vertex in random
order; its padding exponent scales with ln(n). The subgraph scheme places
centers only on separator paths and measures distances inside residual
subgraphs, which shrinks each vertex's set of threatening centers; its
exponent scales with ln(p_eff * log n). At desk scale both schemes pad
perfectly (unit-weight diameters are tiny next to 100 * min_weight, so
padding balls are single vertices) and the fitted exponents tie at zero;
the visible difference is structural: beta and threatener counts.
"""

import math

import pathdecomp as pd

for n in (256, 1024):
    g = pd.gen_ktree(n, 2, seed=500 + n).graph
    w = pd.weighted_diameter(g)
    delta = w / 4

    seq = pd.choose_centers(g, delta)
    part = pd.decompose(g, delta, seed=3)
    base = pd.baseline_decompose(g, delta, seed=3)
    print(f"k-tree k=2 n={n} (W={w:.1f}, delta={delta:.2f}):")
    print(f"  paper:    {len(seq.records):4d} centers -> {len(part):4d} clusters, "
          f"p_eff={seq.p_eff}, beta={pd.beta_bound(seq.p_eff, n):.0f}")
    print(f"  baseline: {n:4d} centers -> {len(base):4d} clusters, "
          f"beta={40 * math.log(n) / math.log(2):.0f}")

    paper_fit = pd.estimate_padding(g, delta, trials=400, seed=3).fitted_beta()
    base_fit = pd.estimate_padding(g, delta, trials=400, seed=3,
                                   scheme="baseline").fitted_beta()
    print(f"  fitted padding exponents: paper={paper_fit}, baseline={base_fit}")

# threatener counts are where the subgraph trick shows up at desk scale:
# the subgraph scheme keeps them under 4 * p_eff * log2(n), while in the
# baseline every vertex inside distance 2*delta/5 + gamma*delta is a
# threatening center
g = pd.gen_grid(16, 16)
delta = 7.5
seq = pd.choose_centers(g, delta)
params = pd.DecompositionParams.for_graph(delta, 0, seq.p_eff, g.n)
rep = pd.threatener_report(g, seq, params, gamma=1 / 100)
full = pd.VertexMask.full(g.n)
baseline_threat = max(
    len(pd.ball(g, full, x, 0.4 * delta + delta / 100)) for x in range(g.n)
)
print(f"\n16x16 grid, delta={delta}: worst threatener count "
      f"paper={rep.worst()} (bound {rep.bound}) vs baseline={baseline_threat}")
