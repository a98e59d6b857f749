"""SCMD, P-SCMD, E-SCMD, the joint-MMD baseline, and pairwise environment matrices.

The per-pair building block is the interventional embedding distance

    mimd^2 = w1' K1 w1 - 2 w1' K12 w2 + w2' K2 w2

with K1, K2, K12 the Gram matrices of the target variable's samples within
and across the two datasets, and w1, w2 the case-dispatched embedding
weights of :func:`scmdist.embedding.omega`.  SCMD sums mimd over all ordered
variable pairs (i, j), i != j; P-SCMD fixes the target j; E-SCMD averages
SCMD over intervention vectors built from per-variable empirical quantiles.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .cache import GramCache
from .dataset import Dataset
from .embedding import EstimatorConfig, omega
from .errors import NumericalError, ValidationError
from .graph import Dag
from .kernel import KernelConfig

__all__ = [
    "InterventionSpec",
    "DistanceReport",
    "PairwiseMatrix",
    "mimd",
    "scmd",
    "p_scmd",
    "e_scmd",
    "mmd_vstat",
    "pairwise_matrix",
]

DEFAULT_ESCMD_LEVELS = (0.1, 0.3, 0.5, 0.7, 0.9)


@dataclass(frozen=True)
class InterventionSpec:
    """One intervention value per variable for one environment."""

    values: Mapping[str, float]
    origin: str = "user"

    def __post_init__(self):
        vals = {str(k): float(v) for k, v in dict(self.values).items()}
        for name, v in vals.items():
            if not np.isfinite(v):
                raise ValidationError(f"intervention value for {name!r} is not finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_means(cls, data: Dataset) -> "InterventionSpec":
        """Each variable intervened at its own column mean."""
        return cls({v: data.mean(v) for v in data.variable_names}, origin="per-variable-mean")

    @classmethod
    def from_quantile(cls, data: Dataset, level: float) -> "InterventionSpec":
        """Each variable intervened at its empirical quantile of ``level``."""
        return cls({v: data.quantile(v, level) for v in data.variable_names},
                   origin=f"quantile({level:g})")

    def value_for(self, name: str) -> float:
        if name not in self.values:
            raise ValidationError(f"no intervention value for variable {name!r}")
        return self.values[name]


@dataclass(frozen=True)
class DistanceReport:
    """A distance value with its per-pair decomposition and provenance."""

    value: float
    pair_terms: Mapping[tuple[str, str], float]
    dataset_ids: tuple[str, str]
    kind: str
    config_echo: Mapping = field(default_factory=dict)


@dataclass(frozen=True)
class PairwiseMatrix:
    """Symmetric zero-diagonal matrix of distances between environments."""

    ids: tuple[str, ...]
    values: np.ndarray
    metric: str
    reports: Mapping[tuple[str, str], DistanceReport] = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)


def _as_spec(v, policy_hint: str = "user") -> InterventionSpec:
    if isinstance(v, InterventionSpec):
        return v
    return InterventionSpec(v, origin=policy_hint)


def _effective_clamp(cfg: EstimatorConfig, n1: int, n2: int) -> float:
    if cfg.clamp_tol is not None:
        return cfg.clamp_tol
    return 1e-8 * max(n1, n2)


def _canonical_order(g1, d1, v1, g2, d2, v2):
    """Order the two (graph, dataset, intervention) triples by dataset id.

    Distances are symmetric under swapping the triples; fixing one evaluation
    order makes that symmetry exact in floating point as well.
    """
    if d1 is not d2 and d1.id == d2.id:
        raise ValidationError(
            f"distinct datasets share the id {d1.id!r}; give them distinct ids")
    if d2.id < d1.id:
        return g2, d2, v2, g1, d1, v1
    return g1, d1, v1, g2, d2, v2


def _mimd_sq(g1, d1, g2, d2, i, j, v1_i, v2_i, cfg, cache) -> float:
    w1 = omega(g1, d1, i, j, v1_i, cfg, cache)
    w2 = omega(g2, d2, i, j, v2_i, cfg, cache)
    k = cfg.kernel
    k11 = cache.gram(d1, d1, (j,), k)
    k22 = cache.gram(d2, d2, (j,), k)
    k12 = cache.gram(d1, d2, (j,), k)
    a = w1.weights @ (k11 @ w1.weights)
    b = w1.weights @ (k12 @ w2.weights)
    c = w2.weights @ (k22 @ w2.weights)
    return a - 2.0 * b + c


def mimd(g1: Dag, d1: Dataset, g2: Dag, d2: Dataset, i: str, j: str,
         v1: float, v2: float, cfg: EstimatorConfig,
         cache: GramCache | None = None) -> float:
    """Estimated embedding distance between do(V_i=v1) in (g1, d1) and
    do(V_i=v2) in (g2, d2), measured on target variable V_j."""
    if i == j:
        raise ValidationError("mimd requires i != j")
    cache = cache or GramCache()
    g1, d1, v1, g2, d2, v2 = _canonical_order(g1, d1, v1, g2, d2, v2)
    sq = _mimd_sq(g1, d1, g2, d2, i, j, v1, v2, cfg, cache)
    clamp = _effective_clamp(cfg, d1.n, d2.n)
    if sq < -clamp:
        raise NumericalError(
            f"squared distance for pair ({i!r}, {j!r}) is {sq:.3e} < -{clamp:.1e}; "
            f"numerical breakdown (bandwidth_sq={cfg.kernel.bandwidth_sq:g}, "
            f"ridge_lambda={cfg.ridge_lambda:g})"
        )
    return math.sqrt(max(sq, 0.0))


def _check_same_variables(d1: Dataset, d2: Dataset, g1: Dag, g2: Dag):
    names = set(d1.variable_names)
    for other, what in ((set(d2.variable_names), "datasets"),
                        (set(g1.nodes), "graph 1 and data"),
                        (set(g2.nodes), "graph 2 and data")):
        if other != names:
            raise ValidationError(f"variable sets of the {what} differ: "
                                  f"{sorted(names)} vs {sorted(other)}")
    return sorted(names)


def _config_echo(cfg: EstimatorConfig, **extra) -> dict:
    echo = {
        "bandwidth_sq": cfg.kernel.bandwidth_sq,
        "ridge_lambda": cfg.ridge_lambda,
        "jitter": cfg.jitter,
        "clamp_tol": cfg.clamp_tol,
    }
    echo.update(extra)
    return echo


def _sum_pairs(g1, d1, g2, d2, pairs, v1, v2, cfg, cache) -> dict:
    terms = {}
    for i, j in pairs:
        terms[(i, j)] = mimd(g1, d1, g2, d2, i, j,
                             v1.value_for(i), v2.value_for(i), cfg, cache)
    return terms


def scmd(g1: Dag, d1: Dataset, g2: Dag, d2: Dataset,
         v1: InterventionSpec | Mapping[str, float],
         v2: InterventionSpec | Mapping[str, float],
         cfg: EstimatorConfig, cache: GramCache | None = None) -> DistanceReport:
    """Structural causal model distance: sum of mimd over all ordered pairs."""
    names = _check_same_variables(d1, d2, g1, g2)
    v1, v2 = _as_spec(v1), _as_spec(v2)
    cache = cache or GramCache()
    pairs = [(i, j) for i in names for j in names if i != j]
    terms = _sum_pairs(g1, d1, g2, d2, pairs, v1, v2, cfg, cache)
    value = math.fsum(terms[p] for p in pairs)
    return DistanceReport(
        value=value, pair_terms=terms, dataset_ids=(d1.id, d2.id), kind="scmd",
        config_echo=_config_echo(cfg, interventions_1=dict(v1.values),
                                 interventions_2=dict(v2.values),
                                 origins=(v1.origin, v2.origin)),
    )


def p_scmd(g1: Dag, d1: Dataset, g2: Dag, d2: Dataset, target: str,
           v1: InterventionSpec | Mapping[str, float],
           v2: InterventionSpec | Mapping[str, float],
           cfg: EstimatorConfig, cache: GramCache | None = None) -> DistanceReport:
    """Prediction-oriented variant: only pairs with target j fixed."""
    names = _check_same_variables(d1, d2, g1, g2)
    if target not in names:
        raise ValidationError(f"unknown target variable {target!r}")
    v1, v2 = _as_spec(v1), _as_spec(v2)
    cache = cache or GramCache()
    pairs = [(i, target) for i in names if i != target]
    terms = _sum_pairs(g1, d1, g2, d2, pairs, v1, v2, cfg, cache)
    value = math.fsum(terms[p] for p in pairs)
    return DistanceReport(
        value=value, pair_terms=terms, dataset_ids=(d1.id, d2.id), kind="p-scmd",
        config_echo=_config_echo(cfg, target=target,
                                 interventions_1=dict(v1.values),
                                 interventions_2=dict(v2.values),
                                 origins=(v1.origin, v2.origin)),
    )


def e_scmd(g1: Dag, d1: Dataset, g2: Dag, d2: Dataset,
           levels: Sequence[float] = DEFAULT_ESCMD_LEVELS,
           cfg: EstimatorConfig | None = None,
           pairing: str = "grid",
           cache: GramCache | None = None) -> DistanceReport:
    """Quantile-averaged SCMD, approximating the expectation over
    independently drawn intervention vectors from the two environments.

    Intervention vectors are each environment's own per-variable empirical
    quantiles at the given levels.  With ``pairing="grid"`` (default) the
    value is the mean of SCMD over all (level-in-1, level-in-2) combinations,
    mirroring independence of the two environments' intervention draws; with
    ``pairing="paired"`` both environments use the same level per term.
    Pair terms are averaged the same way.
    """
    if cfg is None:
        raise ValidationError("e_scmd requires an EstimatorConfig")
    levels = [float(q) for q in levels]
    if not levels:
        raise ValidationError("e_scmd needs at least one quantile level")
    for q in levels:
        if not 0.0 < q < 1.0:
            raise ValidationError(f"quantile level must be in (0, 1), got {q}")
    if pairing not in ("grid", "paired"):
        raise ValidationError(f"pairing must be 'grid' or 'paired', got {pairing!r}")
    cache = cache or GramCache()
    if pairing == "grid":
        combos = [(q1, q2) for q1 in levels for q2 in levels]
    else:
        combos = [(q, q) for q in levels]
    reports = []
    for q1, q2 in combos:
        reports.append(scmd(g1, d1, g2, d2,
                            InterventionSpec.from_quantile(d1, q1),
                            InterventionSpec.from_quantile(d2, q2), cfg, cache))
    value = math.fsum(r.value for r in reports) / len(reports)
    pair_terms = {
        p: math.fsum(r.pair_terms[p] for r in reports) / len(reports)
        for p in reports[0].pair_terms
    }
    return DistanceReport(
        value=value, pair_terms=pair_terms, dataset_ids=(d1.id, d2.id), kind="e-scmd",
        config_echo=_config_echo(cfg, levels=levels, pairing=pairing),
    )


def mmd_vstat(d1: Dataset, d2: Dataset, kcfg: KernelConfig, block: int = 2048) -> float:
    """Biased V-statistic estimate of the joint-distribution MMD.

    The joint kernel over all shared variables is the product of per-variable
    Gaussian kernels.  Sums are accumulated blockwise so memory stays
    O(block * N) for large samples.
    """
    if set(d1.variable_names) != set(d2.variable_names):
        raise ValidationError("datasets must share the same variable names")
    names = sorted(d1.variable_names)
    a = np.column_stack([d1.column(v) for v in names])
    b = np.column_stack([d2.column(v) for v in names])

    def total(u, w):
        s = 0.0
        for lo in range(0, u.shape[0], block):
            du = u[lo:lo + block, None, :] - w[None, :, :]
            sq = np.einsum("spd,spd->sp", du, du)
            sq *= -1.0 / (2.0 * kcfg.bandwidth_sq)
            s += float(np.exp(sq, out=sq).sum())
        return s

    n1, n2 = a.shape[0], b.shape[0]
    sq = total(a, a) / n1 ** 2 + total(b, b) / n2 ** 2 - 2.0 * total(a, b) / (n1 * n2)
    return math.sqrt(max(sq, 0.0))


def pairwise_matrix(envs: Sequence[Dataset], g: Dag, metric: str,
                    cfg: EstimatorConfig,
                    intervention_policy: str = "per-variable-mean",
                    interventions: Mapping[str, Mapping[str, float]] | None = None,
                    threads: int = 1,
                    cache: GramCache | None = None) -> PairwiseMatrix:
    """Symmetric distance matrix between environments sharing one causal graph.

    ``metric`` is "scmd" or "mmd".  Under the "per-variable-mean" policy each
    environment is intervened at its own column means; under "user" the
    ``interventions`` mapping (environment id -> variable -> value) is used.
    Each unordered pair is computed once and mirrored.
    """
    envs = list(envs)
    if len(envs) < 2:
        raise ValidationError("pairwise_matrix needs at least 2 environments")
    ids = [e.id for e in envs]
    if len(set(ids)) != len(ids):
        raise ValidationError("environment datasets must have distinct ids")
    if metric not in ("scmd", "mmd"):
        raise ValidationError(f"metric must be 'scmd' or 'mmd', got {metric!r}")
    if intervention_policy not in ("per-variable-mean", "user"):
        raise ValidationError(f"unknown intervention policy {intervention_policy!r}")

    specs = {}
    if metric == "scmd":
        for e in envs:
            if set(e.variable_names) != set(g.nodes):
                raise ValidationError(
                    f"environment {e.id!r} variables do not match the graph nodes")
            if intervention_policy == "per-variable-mean":
                specs[e.id] = InterventionSpec.from_means(e)
            else:
                if interventions is None or e.id not in interventions:
                    raise ValidationError(
                        f"policy 'user' needs intervention values for environment {e.id!r}")
                specs[e.id] = InterventionSpec(interventions[e.id])

    cache = cache or GramCache(capacity=max(12, 4 * len(envs)))
    pair_index = [(r, c) for r in range(len(envs)) for c in range(r + 1, len(envs))]

    def compute(rc):
        r, c = rc
        if metric == "mmd":
            return mmd_vstat(envs[r], envs[c], cfg.kernel)
        return scmd(g, envs[r], g, envs[c], specs[ids[r]], specs[ids[c]], cfg, cache)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(compute, pair_index))
    else:
        results = [compute(rc) for rc in pair_index]

    values = np.zeros((len(envs), len(envs)))
    reports = {}
    for (r, c), res in zip(pair_index, results):
        if metric == "mmd":
            val = res
        else:
            val = res.value
            reports[(ids[r], ids[c])] = res
        values[r, c] = values[c, r] = val
    return PairwiseMatrix(ids=tuple(ids), values=values, metric=metric, reports=reports)
