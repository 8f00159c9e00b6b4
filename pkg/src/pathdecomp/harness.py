"""Experiment orchestration: run decompositions over a delta grid, apply every
verifier check, estimate padding, and emit one JSON report.

Reports are deterministic for a fixed config: the only run-dependent field is
the single `timestamp` header entry, so golden-file comparisons just mask it.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone

from .decomposer import (
    DecompositionParams,
    baseline_decompose,
    beta_bound,
    carve,
    choose_centers,
    dump_partition,
)
from .generators import gen_grid, gen_ktree
from .graph import WeightedGraph, load_graph, weighted_diameter
from .separators import greedy_find, tree_centroid_find
from . import verifier

FINDERS = {"greedy": greedy_find, "centroid": tree_centroid_find}
SCHEMES = ("paper", "baseline", "both")
DEFAULT_GAMMAS = (0.0, 1.0 / 400.0, 1.0 / 200.0, 1.0 / 100.0)


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass
class ExperimentConfig:
    """Everything one experiment needs; all state flows through this object."""

    graph_file: str | None = None
    gen: str | None = None                 # "grid:R,C" or "ktree:N,K"
    weights: str = "unit"
    gen_seed: int = 0
    deltas: tuple[float, ...] | None = None  # None -> {W/8, W/4, W/2}
    gammas: tuple[float, ...] = DEFAULT_GAMMAS
    trials: int = 500
    seed: int = 0
    finder: str = "greedy"
    scheme: str = "paper"
    out: str | None = None
    dump_partition: str | None = None

    def validate(self):
        if (self.graph_file is None) == (self.gen is None):
            raise ConfigError("provide exactly one of a graph file or a generator spec")
        if self.finder not in FINDERS:
            raise ConfigError(f"unknown finder {self.finder!r}; expected greedy|centroid")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"unknown scheme {self.scheme!r}; expected paper|baseline|both")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.deltas is not None:
            for d in self.deltas:
                if not d > 0:
                    raise ConfigError(f"delta must be positive, got {d}")
        for gamma in self.gammas:
            if not 0.0 <= gamma <= verifier.GAMMA_MAX:
                raise ConfigError(f"gamma must lie in [0, 1/100], got {gamma}")

    def to_json_obj(self) -> dict:
        return {
            "graph_file": self.graph_file,
            "gen": self.gen,
            "weights": self.weights,
            "gen_seed": self.gen_seed,
            "deltas": list(self.deltas) if self.deltas is not None else None,
            "gammas": list(self.gammas),
            "trials": self.trials,
            "seed": self.seed,
            "finder": self.finder,
            "scheme": self.scheme,
        }


def parse_gen_spec(spec: str):
    """Parse "grid:R,C" / "ktree:N,K" into (kind, (a, b))."""
    try:
        kind, args = spec.split(":", 1)
        a, b = (int(x) for x in args.split(","))
    except ValueError as exc:
        raise ConfigError(f"bad generator spec {spec!r}; expected grid:R,C or ktree:N,K") from exc
    if kind not in ("grid", "ktree"):
        raise ConfigError(f"unknown generator {kind!r}; expected grid or ktree")
    return kind, (a, b)


def build_graph(cfg: ExperimentConfig):
    """Materialize the input graph; returns (graph, description, extras)."""
    if cfg.graph_file is not None:
        try:
            g = load_graph(cfg.graph_file)
        except OSError as exc:
            raise ConfigError(f"cannot read graph file {cfg.graph_file}: {exc}") from exc
        return g, f"file:{cfg.graph_file}", {}
    kind, (a, b) = parse_gen_spec(cfg.gen)
    desc = f"gen:{kind}:{a},{b}:{cfg.weights}:seed{cfg.gen_seed}"
    if kind == "grid":
        return gen_grid(a, b, cfg.weights, cfg.gen_seed), desc, {}
    sample = gen_ktree(a, b, cfg.weights, cfg.gen_seed)
    extras = {"treewidth_certificate": list(sample.elimination_order), "k": sample.k}
    return sample.graph, desc, extras


def default_deltas(g: WeightedGraph) -> tuple[float, ...]:
    """{W/8, W/4, W/2} for weighted diameter W; a single-vertex graph (W = 0)
    falls back to delta = 1."""
    w = weighted_diameter(g)
    if w <= 0:
        return (1.0,)
    return (w / 8.0, w / 4.0, w / 2.0)


def _check_str(violation) -> str:
    return "ok" if violation is None else str(violation)


def _run_scheme(g: WeightedGraph, delta: float, scheme: str, cfg: ExperimentConfig) -> dict:
    result: dict = {"delta": delta, "scheme": scheme}
    checks: dict = {}

    if scheme == "paper":
        finder = FINDERS[cfg.finder]
        seq = choose_centers(g, delta, finder)
        params = DecompositionParams.for_graph(delta, cfg.seed, seq.p_eff, g.n)
        part = carve(g, seq, params)
        result.update({
            "p_eff": seq.p_eff,
            "K": params.K,
            "lambda": params.lam,
            "beta": beta_bound(seq.p_eff, g.n),
            "centers": len(seq.records),
            "max_depth": seq.max_depth,
        })
        checks["recursion_depth"] = _check_str(verifier.check_recursion_depth(seq))
        threat = verifier.threatener_report(
            g, seq, params, verifier.GAMMA_MAX, verifier.sample_vertices(g, cfg.seed)
        )
        checks["threateners"] = (
            "ok" if threat.all_ok()
            else f"[threateners] worst count {threat.worst()} exceeds bound {threat.bound}"
        )
        result["threatener_bound"] = threat.bound
        result["threatener_worst"] = threat.worst()
    else:
        part = baseline_decompose(g, delta, cfg.seed)
        result["lambda"] = delta / (10.0 * math.log(max(2, g.n)))

    checks["partition"] = _check_str(verifier.check_partition(g, part))
    checks["diameter"] = _check_str(verifier.check_cluster_diameters(g, part, delta))
    result["clusters"] = len(part.clusters)

    padding = verifier.estimate_padding(
        g, delta, FINDERS[cfg.finder], cfg.gammas, cfg.trials, cfg.seed, scheme
    )
    checks["padding"] = "ok" if padding.all_pass() else (
        "[padding] " + "; ".join(
            f"vertex {r.vertex} gamma {r.gamma}: wilson {r.wilson_lb:.6f} < floor {r.floor:.6f}"
            for r in padding.failures()[:5]
        )
    )
    result["padding"] = padding.to_json_obj()
    result["fitted_beta"] = padding.fitted_beta()

    result["checks"] = checks
    result["pass"] = all(v == "ok" for v in checks.values())

    if cfg.dump_partition:
        if scheme == "paper":
            dump_params = params
        else:
            dump_params = DecompositionParams(
                delta, cfg.seed, 0, g.n, max(2, g.n), result["lambda"]
            )
        path = f"{cfg.dump_partition}.delta-{delta!r}.{scheme}.txt"
        _dump_with_baseline_guard(part, dump_params, path, scheme, g.n)
        result["partition_dump"] = path
    return result


def _dump_with_baseline_guard(part, params, path, scheme, n):
    if scheme == "paper":
        dump_partition(part, params, path)
        return
    # baseline has no separator machinery; p_eff is written as 0 and beta
    # comes from the baseline exponent ln(max(2, n))
    from .decomposer import format_partition

    header = {
        "delta": repr(params.delta),
        "seed": params.seed,
        "p_eff": 0,
        "K": params.K,
        "lambda": repr(params.lam),
        "beta": repr(40.0 * math.log(max(2, n)) / math.log(2.0)),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_partition(part, header))


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Execute the experiment and return the report dict (also written to
    cfg.out when set). report["pass"] aggregates every check."""
    cfg.validate()
    g, desc, extras = build_graph(cfg)
    deltas = cfg.deltas if cfg.deltas is not None else default_deltas(g)
    schemes = ("paper", "baseline") if cfg.scheme == "both" else (cfg.scheme,)

    results = []
    for delta in deltas:
        for scheme in schemes:
            results.append(_run_scheme(g, float(delta), scheme, cfg))

    report = {
        "config": cfg.to_json_obj(),
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "graph": {
            "source": desc,
            "n": g.n,
            "m": len(g.edges),
            "weighted_diameter": weighted_diameter(g),
            **extras,
        },
        "deltas": [float(d) for d in deltas],
        "results": results,
        "pass": all(r["pass"] for r in results),
    }
    if cfg.out:
        write_report(report, cfg.out)
    return report


def write_report(report: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
