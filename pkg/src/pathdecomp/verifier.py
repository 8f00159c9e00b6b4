"""Empirical certification of decomposition guarantees.

Exact checks: partition validity, cluster diameters (at most 4*delta/5 in the
full-graph metric), recursion depth, and the deterministic threatener bound.
Statistical check: Monte-Carlo estimation of the padding probability
Pr[B(x, gamma*delta) stays in one cluster], accepted when the one-sided
Wilson 99% lower confidence bound clears the floor 2^(-beta*gamma).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.sparse.csgraph import dijkstra as csgraph_dijkstra
from scipy.special import ndtri

from .decomposer import (
    CenterSequence,
    DecompositionParams,
    Partition,
    _baseline_records,
    _carve_records,
    _ensure_profiles,
    beta_bound,
    carve,
    ceil_log2,
    choose_centers,
)
from .graph import VertexMask, WeightedGraph, ball
from .sampler import RngStream, derive_seed
from .separators import greedy_find

GAMMA_MAX = 1.0 / 100.0
WILSON_CONFIDENCE = 0.99
MAX_EXHAUSTIVE_VERTICES = 256


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str

    def __str__(self):
        return f"[{self.kind}] {self.message}"


def check_partition(g: WeightedGraph, part: Partition):
    """Disjointness, coverage, no empty cluster; first Violation or None."""
    owner = np.full(g.n, -1, dtype=np.int64)
    for cid, cl in enumerate(part.clusters):
        if len(cl.vertices) == 0:
            return Violation("empty-cluster", f"cluster {cid} is empty")
        for v in cl.vertices:
            v = int(v)
            if owner[v] >= 0:
                return Violation(
                    "disjointness", f"vertex {v} appears in clusters {owner[v]} and {cid}"
                )
            owner[v] = cid
    uncovered = np.nonzero(owner < 0)[0]
    if uncovered.size:
        return Violation("coverage", f"vertex {int(uncovered[0])} belongs to no cluster")
    if not np.array_equal(owner, part.cluster_of):
        bad = int(np.nonzero(owner != part.cluster_of)[0][0])
        return Violation("index", f"cluster_of[{bad}] disagrees with the cluster lists")
    return None


def check_cluster_diameters(g: WeightedGraph, part: Partition, delta: float):
    """Every cluster's full-graph diameter must be at most 4*delta/5."""
    bound = 0.8 * delta
    csr = g.csr()
    limit = float(np.nextafter(bound, np.inf))
    for cid, cl in enumerate(part.clusters):
        verts = cl.vertices
        if len(verts) <= 1:
            continue
        dmat = np.atleast_2d(csgraph_dijkstra(csr, directed=False, indices=verts, limit=limit))
        inside = dmat[:, verts]
        worst = inside.max()
        if math.isinf(worst) or worst > bound:
            i, j = np.unravel_index(int(np.argmax(inside)), inside.shape)
            return Violation(
                "diameter",
                f"cluster {cid}: d({int(verts[i])},{int(verts[j])}) = {worst} "
                f"exceeds 4*delta/5 = {bound}",
            )
    return None


def check_recursion_depth(centers: CenterSequence, n: int | None = None):
    """Separator recursion must not exceed ceil(log2 n) levels."""
    if n is None:
        n = centers.n
    limit = ceil_log2(n)
    if centers.max_depth > limit:
        return Violation(
            "recursion-depth", f"depth {centers.max_depth} exceeds ceil(log2 {n}) = {limit}"
        )
    return None


def threatener_bound(p_eff: int, n: int) -> int:
    return 4 * p_eff * max(1, ceil_log2(n))


@dataclass(frozen=True)
class ThreatenerCount:
    vertex: int
    gamma: float
    count: int
    bound: int
    ok: bool


@dataclass(frozen=True)
class ThreatenerReport:
    """Per-vertex counts of centers whose maximal ball can reach B(x, gamma*delta)."""

    gamma: float
    vertices: tuple[int, ...]
    counts: tuple[int, ...]
    bound: int

    def all_ok(self) -> bool:
        return all(c <= self.bound for c in self.counts)

    def worst(self) -> int:
        return max(self.counts)


def count_threateners(g: WeightedGraph, centers: CenterSequence,
                      params: DecompositionParams, x: int, gamma: float) -> ThreatenerCount:
    """Count centers t with B_{G_t}(t, 2*delta/5) intersecting B_G(x, gamma*delta).

    This is the support condition for t's ball ever touching x's ball, since
    radii range over [delta/4, 2*delta/5] with full support. The count is a
    property of the center sequence alone, independent of the radii.
    """
    if not 0.0 <= gamma <= GAMMA_MAX:
        raise ValueError(f"gamma must lie in [0, 1/100], got {gamma}")
    _ensure_profiles(g, centers.records, params.delta)
    near = ball(g, VertexMask.full(g.n), x, gamma * params.delta)
    near_mask = np.zeros(g.n, dtype=bool)
    near_mask[list(near)] = True
    count = sum(1 for rec in centers.records if near_mask[rec._profile[2]].any())
    bound = threatener_bound(params.p_eff, params.n)
    return ThreatenerCount(x, gamma, count, bound, count <= bound)


def threatener_report(g: WeightedGraph, centers: CenterSequence,
                      params: DecompositionParams, gamma: float,
                      vertices=None) -> ThreatenerReport:
    """Vectorized count_threateners over many vertices at once."""
    if not 0.0 <= gamma <= GAMMA_MAX:
        raise ValueError(f"gamma must lie in [0, 1/100], got {gamma}")
    if vertices is None:
        vertices = np.arange(g.n, dtype=np.int64)
    else:
        vertices = np.asarray(sorted(vertices), dtype=np.int64)
    _ensure_profiles(g, centers.records, params.delta)
    radius = gamma * params.delta
    dmat = np.atleast_2d(csgraph_dijkstra(
        g.csr(), directed=False, indices=vertices,
        limit=float(np.nextafter(radius, np.inf)),
    ))
    ballmat = (dmat <= radius).astype(np.float32)
    profmat = np.zeros((len(centers.records), g.n), dtype=np.float32)
    for i, rec in enumerate(centers.records):
        profmat[i, rec._profile[2]] = 1.0
    hits = ballmat @ profmat.T
    counts = (hits > 0).sum(axis=1)
    return ThreatenerReport(
        gamma, tuple(int(v) for v in vertices), tuple(int(c) for c in counts),
        threatener_bound(params.p_eff, params.n),
    )


def wilson_lower_bound(successes: int, trials: int,
                       confidence: float = WILSON_CONFIDENCE) -> float:
    """One-sided Wilson score lower confidence bound for a binomial proportion."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    z = float(ndtri(confidence))
    p = successes / trials
    denom = 1.0 + z * z / trials
    centre = p + z * z / (2.0 * trials)
    rad = z * math.sqrt(p * (1.0 - p) / trials + z * z / (4.0 * trials * trials))
    return max(0.0, (centre - rad) / denom)


@dataclass(frozen=True)
class PaddingRecord:
    vertex: int
    gamma: float
    trials: int
    successes: int
    empirical: float
    wilson_lb: float
    floor: float
    passed: bool

    def to_json_obj(self) -> dict:
        return {
            "vertex": self.vertex,
            "gamma": self.gamma,
            "trials": self.trials,
            "successes": self.successes,
            "empirical": self.empirical,
            "wilson_lb": self.wilson_lb,
            "floor": self.floor,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class PaddingReport:
    """Monte-Carlo padding estimates for sampled vertices over a gamma grid."""

    scheme: str
    delta: float
    gammas: tuple[float, ...]
    trials: int
    seed: int
    n: int
    p_eff: int | None
    beta: float
    vertices: tuple[int, ...]
    records: tuple[PaddingRecord, ...]

    def all_pass(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[PaddingRecord]:
        return [r for r in self.records if not r.passed]

    def fitted_beta(self) -> float | None:
        """Smallest beta' with every measured probability >= 2^(-beta'*gamma);
        None when some probability is zero (no finite exponent works)."""
        need = 0.0
        for r in self.records:
            if r.gamma <= 0.0:
                continue
            if r.successes == 0:
                return None
            need = max(need, -math.log2(r.empirical) / r.gamma)
        return need

    def to_json_obj(self) -> dict:
        return {
            "scheme": self.scheme,
            "delta": self.delta,
            "gammas": list(self.gammas),
            "trials": self.trials,
            "seed": self.seed,
            "n": self.n,
            "p_eff": self.p_eff,
            "beta": self.beta,
            "vertices": list(self.vertices),
            "records": [r.to_json_obj() for r in self.records],
            "all_pass": self.all_pass(),
            "fitted_beta": self.fitted_beta(),
        }


def sample_vertices(g: WeightedGraph, seed: int) -> np.ndarray:
    """All vertices when n <= 256; otherwise 256 drawn deterministically from
    the master seed (stream index -1, reserved; trials use indices >= 0)."""
    if g.n <= MAX_EXHAUSTIVE_VERTICES:
        return np.arange(g.n, dtype=np.int64)
    rng = RngStream(derive_seed(seed, -1))
    picked = rng.sample_without_replacement(g.n, MAX_EXHAUSTIVE_VERTICES)
    return np.sort(picked.astype(np.int64))


def _flatten_balls(g: WeightedGraph, delta: float, gammas, vertices):
    """Concatenated ball vertex lists for every (vertex, gamma) pair, with
    segment starts and the anchor vertex repeated per element."""
    gmax = max(gammas)
    dmat = np.atleast_2d(csgraph_dijkstra(
        g.csr(), directed=False, indices=vertices,
        limit=float(np.nextafter(gmax * delta, np.inf)) if gmax > 0 else 0.0,
    ))
    flat, anchors, starts = [], [], []
    for xi, x in enumerate(vertices):
        row = dmat[xi]
        for gamma in gammas:
            members = np.nonzero(row <= gamma * delta)[0]
            starts.append(len(flat))
            flat.extend(int(v) for v in members)
            anchors.extend([int(x)] * len(members))
    return (
        np.array(flat, dtype=np.int64),
        np.array(anchors, dtype=np.int64),
        np.array(starts, dtype=np.int64),
    )


def estimate_padding(g: WeightedGraph, delta: float, finder=greedy_find,
                     gammas=(0.0, 1.0 / 400.0, 1.0 / 200.0, 1.0 / 100.0),
                     trials: int = 1000, seed: int = 0,
                     scheme: str = "paper") -> PaddingReport:
    """Monte-Carlo padding probabilities against the 2^(-beta*gamma) floor.

    Runs `trials` independent decompositions with per-trial seeds derived from
    the master seed, and counts, per sampled vertex x and per gamma, the
    trials in which B_G(x, gamma*delta) stayed inside x's cluster. Acceptance
    per (x, gamma): Wilson 99% lower bound >= floor for gamma > 0; for
    gamma = 0 the event holds surely, so the check is successes == trials.
    """
    gammas = tuple(float(gamma) for gamma in gammas)
    if not gammas:
        raise ValueError("need at least one gamma")
    for gamma in gammas:
        if not 0.0 <= gamma <= GAMMA_MAX:
            raise ValueError(f"gamma must lie in [0, 1/100], got {gamma}")
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if scheme not in ("paper", "baseline"):
        raise ValueError(f"unknown scheme {scheme!r}")

    vertices = sample_vertices(g, seed)
    flat, anchors, starts = _flatten_balls(g, delta, gammas, vertices)

    if scheme == "paper":
        seq = choose_centers(g, delta, finder)
        params = DecompositionParams.for_graph(delta, seed, seq.p_eff, g.n)
        p_eff = seq.p_eff
        beta = beta_bound(p_eff, g.n)

        def run_trial(t):
            return carve(g, seq, replace(params, seed=derive_seed(seed, t)))
    else:
        records = _baseline_records(g)
        lam = delta / (10.0 * math.log(max(2, g.n)))
        p_eff = None
        beta = 40.0 * math.log(max(2, g.n)) / math.log(2.0)

        def run_trial(t):
            rng = RngStream(derive_seed(seed, t))
            order = rng.permutation(g.n)
            return _carve_records(g, [records[i] for i in order], delta, lam, rng)

    successes = np.zeros(len(starts), dtype=np.int64)
    for t in range(trials):
        labels = run_trial(t).cluster_of
        ok = labels[flat] == labels[anchors]
        successes += np.logical_and.reduceat(ok, starts)

    records_out = []
    i = 0
    for x in vertices:
        for gamma in gammas:
            s = int(successes[i])
            emp = s / trials
            lb = wilson_lower_bound(s, trials)
            floor = 2.0 ** (-beta * gamma)
            passed = (s == trials) if gamma == 0.0 else (lb >= floor)
            records_out.append(
                PaddingRecord(int(x), gamma, trials, s, emp, lb, floor, passed)
            )
            i += 1

    return PaddingReport(
        scheme, delta, gammas, trials, int(seed), g.n, p_eff, beta,
        tuple(int(v) for v in vertices), tuple(records_out),
    )
