"""Command-line front end.

Subcommands: scmd, pscmd, escmd, mmd, sid, pairwise, synth.
Exit codes: 0 success, 1 usage error, 2 data/graph validation error,
3 numerical failure.  Results go to stdout (or --out) as deterministic
JSON/CSV; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from ._version import __version__
from .dataset import Dataset
from .distance import (
    DEFAULT_ESCMD_LEVELS,
    DistanceReport,
    InterventionSpec,
    e_scmd,
    mmd_vstat,
    p_scmd,
    pairwise_matrix,
    scmd,
)
from .embedding import EstimatorConfig
from .errors import NumericalError, ValidationError
from .graph import sid
from .io import load_dataset, load_graph, render_report, save_dataset
from .kernel import KernelConfig, median_heuristic
from .synth import LinearGaussianScm, sample_m1, sample_m2, sample_scm
from .graph import Dag

DEFAULT_COST_BUDGET = 2e14


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_common(p, two_graphs=True):
    p.add_argument("--data1", required=True, help="first dataset CSV")
    p.add_argument("--data2", required=True, help="second dataset CSV")
    if two_graphs:
        p.add_argument("--graph1", required=True, help="first causal graph (edge list)")
        p.add_argument("--graph2", required=True, help="second causal graph (edge list)")
    p.add_argument("--sigma-sq", type=float, default=None,
                   help="Gaussian kernel variance (default: median heuristic)")
    p.add_argument("--lam", type=float, default=0.5, help="ridge regularization (default 0.5)")
    p.add_argument("--jitter", type=float, default=1e-10, help="initial diagonal jitter")
    p.add_argument("--out", default=None, help="write the result here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--cost-budget", type=float, default=DEFAULT_COST_BUDGET,
                   help="warn when predicted d^3*N^3 work exceeds this")


def _add_interventions(p):
    p.add_argument("--policy", choices=("user", "mean"), default="user",
                   help="intervention values: explicit name=value flags, or per-variable means")
    p.add_argument("--intervene", action="append", default=[], metavar="NAME=VALUE",
                   help="intervention value applied to both environments (repeatable)")
    p.add_argument("--intervene1", action="append", default=[], metavar="NAME=VALUE",
                   help="intervention value for environment 1 only")
    p.add_argument("--intervene2", action="append", default=[], metavar="NAME=VALUE",
                   help="intervention value for environment 2 only")


def build_parser() -> _Parser:
    parser = _Parser(prog="scmdist",
                     description="Kernel-based distances between structural causal models")
    parser.add_argument("--version", action="version", version=f"scmdist {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scmd", help="SCMD between two environments")
    _add_common(p)
    _add_interventions(p)

    p = sub.add_parser("pscmd", help="prediction-oriented SCMD for one target variable")
    _add_common(p)
    _add_interventions(p)
    p.add_argument("--target", required=True, help="target variable name")

    p = sub.add_parser("escmd", help="quantile-averaged SCMD")
    _add_common(p)
    p.add_argument("--levels", default=",".join(f"{q:g}" for q in DEFAULT_ESCMD_LEVELS),
                   help="comma-separated quantile levels in (0,1)")
    p.add_argument("--pairing", choices=("grid", "paired"), default="grid",
                   help="combine levels across environments as a full grid or pairwise")

    p = sub.add_parser("mmd", help="joint-distribution MMD (biased V-statistic)")
    _add_common(p, two_graphs=False)

    p = sub.add_parser("sid", help="structural intervention distance between two graphs")
    p.add_argument("graph1", help="first graph file")
    p.add_argument("graph2", help="second graph file")

    p = sub.add_parser("pairwise", help="pairwise distance matrix over environments")
    p.add_argument("--data", nargs="+", required=True, help="two or more dataset CSVs")
    p.add_argument("--graph", required=True, help="shared causal graph")
    p.add_argument("--metric", choices=("scmd", "mmd"), required=True)
    p.add_argument("--policy", choices=("mean", "user"), default="mean")
    p.add_argument("--intervene", action="append", default=[], metavar="ENV:NAME=VALUE",
                   help="user-policy intervention value for one environment (repeatable)")
    p.add_argument("--sigma-sq", type=float, default=None)
    p.add_argument("--lam", type=float, default=0.5)
    p.add_argument("--jitter", type=float, default=1e-10)
    p.add_argument("--threads", type=int,
                   default=int(os.environ.get("SCMDIST_THREADS", "1")),
                   help="parallel pair computations (default $SCMDIST_THREADS or 1)")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--cost-budget", type=float, default=DEFAULT_COST_BUDGET)

    p = sub.add_parser("synth", help="sample a linear-Gaussian SCM to CSV")
    p.add_argument("--model", choices=("m1", "m2", "scm"), required=True,
                   help="m1: X->Y slope a; m2: reversed twin; scm: --spec JSON file")
    p.add_argument("--a", type=float, default=3.0, help="slope parameter for m1/m2")
    p.add_argument("--spec", default=None, help="JSON model description for --model scm")
    p.add_argument("--n", type=int, required=True, help="sample size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output CSV path")
    return parser


def _parse_assignments(pairs, what="intervention"):
    out = {}
    for item in pairs:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise _UsageError(f"bad {what} {item!r}, expected NAME=VALUE")
        try:
            out[name.strip()] = float(value)
        except ValueError:
            raise _UsageError(f"bad {what} value in {item!r}") from None
    return out


def _shared_bandwidth(datasets) -> KernelConfig:
    per_column = [
        median_heuristic(d.column(v)).bandwidth_sq
        for d in datasets for v in d.variable_names
    ]
    return KernelConfig(float(np.median(per_column)))


def _estimator_config(args, datasets) -> EstimatorConfig:
    if args.sigma_sq is not None:
        kcfg = KernelConfig(args.sigma_sq)
    else:
        kcfg = _shared_bandwidth(datasets)
        print(f"scmdist: using median-heuristic bandwidth_sq={kcfg.bandwidth_sq:g}",
              file=sys.stderr)
    return EstimatorConfig(kernel=kcfg, ridge_lambda=args.lam, jitter=args.jitter)


def _cost_guardrail(n_max: int, d: int, budget: float):
    predicted = (d ** 3) * float(n_max) ** 3
    print(f"scmdist: predicted work ~ d^3*N^3 = {predicted:.2e} kernel-solve ops "
          f"(d={d}, N={n_max})", file=sys.stderr)
    if predicted > budget:
        print(f"scmdist: warning: predicted work exceeds budget {budget:.2e}; "
              f"this may take a long time", file=sys.stderr)


def _specs_for(args, d1: Dataset, d2: Dataset):
    if args.policy == "mean":
        return InterventionSpec.from_means(d1), InterventionSpec.from_means(d2)
    shared = _parse_assignments(args.intervene)
    v1 = dict(shared)
    v1.update(_parse_assignments(args.intervene1))
    v2 = dict(shared)
    v2.update(_parse_assignments(args.intervene2))
    if not v1 or not v2:
        raise _UsageError("policy 'user' needs --intervene/--intervene1/--intervene2 "
                          "values (or use --policy mean)")
    return InterventionSpec(v1), InterventionSpec(v2)


def _emit(result, args) -> None:
    text = render_report(result, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_pair_command(args) -> int:
    d1 = load_dataset(args.data1)
    d2 = load_dataset(args.data2)
    cfg = _estimator_config(args, (d1, d2))
    if args.command == "mmd":
        value = mmd_vstat(d1, d2, cfg.kernel)
        report = DistanceReport(value=value, pair_terms={}, dataset_ids=(d1.id, d2.id),
                                kind="mmd", config_echo={"bandwidth_sq": cfg.kernel.bandwidth_sq})
        _emit(report, args)
        return 0
    g1 = load_graph(args.graph1, nodes=d1.variable_names)
    g2 = load_graph(args.graph2, nodes=d2.variable_names)
    _cost_guardrail(max(d1.n, d2.n), len(d1.variable_names), args.cost_budget)
    if args.command == "scmd":
        v1, v2 = _specs_for(args, d1, d2)
        report = scmd(g1, d1, g2, d2, v1, v2, cfg)
    elif args.command == "pscmd":
        v1, v2 = _specs_for(args, d1, d2)
        report = p_scmd(g1, d1, g2, d2, args.target, v1, v2, cfg)
    else:
        levels = [float(tok) for tok in args.levels.split(",") if tok.strip()]
        report = e_scmd(g1, d1, g2, d2, levels, cfg, pairing=args.pairing)
    _emit(report, args)
    return 0


def _run_pairwise(args) -> int:
    envs = [load_dataset(path) for path in args.data]
    g = load_graph(args.graph, nodes=envs[0].variable_names)
    cfg = _estimator_config(args, envs)
    _cost_guardrail(max(e.n for e in envs), len(envs[0].variable_names), args.cost_budget)
    interventions = None
    if args.policy == "user":
        interventions = {}
        for item in args.intervene:
            env, sep, assign = item.partition(":")
            if not sep:
                raise _UsageError(f"bad --intervene {item!r}, expected ENV:NAME=VALUE")
            interventions.setdefault(env.strip(), {}).update(_parse_assignments([assign]))
    matrix = pairwise_matrix(
        envs, g, args.metric, cfg,
        intervention_policy="per-variable-mean" if args.policy == "mean" else "user",
        interventions=interventions, threads=max(1, args.threads))
    _emit(matrix, args)
    return 0


def _run_synth(args) -> int:
    if args.model == "m1":
        data = sample_m1(args.a, args.n, args.seed)
    elif args.model == "m2":
        data = sample_m2(args.a, args.n, args.seed)
    else:
        if not args.spec:
            raise _UsageError("--model scm requires --spec FILE")
        import json

        with open(args.spec, encoding="utf-8") as fh:
            desc = json.load(fh)
        dag = Dag(desc["nodes"], [tuple(e[:2]) for e in desc.get("edges", [])])
        coeffs = {(e[0], e[1]): float(e[2]) for e in desc.get("edges", [])}
        model = LinearGaussianScm(
            dag=dag, coefficients=coeffs,
            noise_variances={k: float(v) for k, v in desc["noise_variances"].items()},
            intercepts={k: float(v) for k, v in desc.get("intercepts", {}).items()})
        data = sample_scm(model, args.n, args.seed)
    save_dataset(data, args.out)
    print(f"scmdist: wrote {data.n} rows x {len(data.variable_names)} columns to {args.out}",
          file=sys.stderr)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "sid":
            g1 = load_graph(args.graph1)
            g2 = load_graph(args.graph2)
            print(sid(g1, g2))
            return 0
        if args.command == "pairwise":
            return _run_pairwise(args)
        if args.command == "synth":
            return _run_synth(args)
        return _run_pair_command(args)
    except _UsageError as exc:
        print(f"scmdist: usage error: {exc}", file=sys.stderr)
        return 1
    except ValidationError as exc:
        print(f"scmdist: invalid input: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"scmdist: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"scmdist: i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
