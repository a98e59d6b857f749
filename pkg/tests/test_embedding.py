import math

import numpy as np
import pytest

from scmdist import (
    Dag,
    Dataset,
    EstimatorConfig,
    Gaussian1D,
    GramCache,
    KernelConfig,
    ValidationError,
    conditional_weights,
    embedding_distance_to_gaussian,
    gaussian_kernel,
    interventional_weights,
    marginal_weights,
    omega,
    sample_m1,
    sample_scm,
    LinearGaussianScm,
)


def small_cfg(bandwidth_sq=0.5, lam=0.1):
    return EstimatorConfig(kernel=KernelConfig(bandwidth_sq), ridge_lambda=lam)


def test_marginal_weights_quarter():
    w = marginal_weights(4)
    assert np.array_equal(w.weights, np.full(4, 0.25))
    assert w.case_tag == "marginal"


def test_marginal_weights_sum_to_one():
    for n in (1, 3, 7, 100, 999):
        assert abs(math.fsum(marginal_weights(n).weights) - 1.0) <= 1e-12


def test_marginal_weights_rejects_zero():
    with pytest.raises(ValidationError):
        marginal_weights(0)


def test_marginal_embedding_norm_matches_double_sum():
    rng = np.random.default_rng(20)
    col = rng.normal(size=20)
    cfg = KernelConfig(0.7)
    w = marginal_weights(20).weights
    direct = 0.0
    for s in range(20):
        for t in range(20):
            direct += w[s] * w[t] * gaussian_kernel(col[s], col[t], cfg)
    gram = np.exp(-np.subtract.outer(col, col) ** 2 / (2 * 0.7))
    assert w @ gram @ w == pytest.approx(direct, rel=1e-12)


def test_conditional_weights_vanish_under_huge_ridge():
    d = sample_m1(3, 100, 0)
    cfg = EstimatorConfig(kernel=KernelConfig(0.5), ridge_lambda=1e12)
    w = conditional_weights(d, "X", 1.0, cfg)
    assert np.all(np.abs(w.weights) < 1e-9)


def test_conditional_weights_match_naive_ridge_solve():
    rng = np.random.default_rng(21)
    d = Dataset({"X": rng.normal(size=50), "Y": rng.normal(size=50)}, id="krr")
    cfg = small_cfg(0.4, 0.3)
    w = conditional_weights(d, "X", 0.2, cfg)
    # independent assembly: explicit matrix, generic LU solve
    x = d.column("X")
    k_mat = np.exp(-np.subtract.outer(x, x) ** 2 / (2 * 0.4))
    k_vec = np.exp(-((x - 0.2) ** 2) / (2 * 0.4))
    naive = np.linalg.solve(k_mat + (0.3 + cfg.jitter) * np.eye(50), k_vec)
    np.testing.assert_allclose(w.weights, naive, atol=1e-10)
    # and the induced prediction of f = k(y0, .) agrees
    y = d.column("Y")
    y0 = 0.7
    f_vals = np.exp(-((y - y0) ** 2) / (2 * 0.4))
    assert w.weights @ f_vals == pytest.approx(naive @ f_vals, abs=1e-10)


def test_conditional_embedding_mean_recovers_linear_effect():
    # forward model with slope 3: E[Y | X=1] = 3, weighted-sample mean within 0.1
    d = sample_m1(3, 10_000, 7)
    cfg = EstimatorConfig(kernel=KernelConfig(0.1), ridge_lambda=0.05)
    w = conditional_weights(d, "X", 1.0, cfg)
    assert w.weights @ d.column("Y") == pytest.approx(3.0, abs=0.1)


def test_interventional_constant_adjustment_column_degenerates():
    rng = np.random.default_rng(22)
    d = Dataset({"X": rng.normal(size=60), "C": np.full(60, 2.0),
                 "Y": rng.normal(size=60)}, id="const-z")
    cfg = small_cfg()
    w_int = interventional_weights(d, "X", {"C"}, 0.5, cfg)
    w_cond = conditional_weights(d, "X", 0.5, cfg)
    np.testing.assert_allclose(w_int.weights, w_cond.weights, atol=1e-12)
    assert w_int.case_tag == "interventional"


def test_interventional_recovers_chain_causal_effect():
    dag = Dag(["Z", "X", "Y"], [("Z", "X"), ("X", "Y")])
    model = LinearGaussianScm(dag, {("Z", "X"): 1.0, ("X", "Y"): 2.0},
                              {"Z": 1.0, "X": 1.0, "Y": 1.0})
    d = sample_scm(model, 10_000, 11)
    cfg = EstimatorConfig(kernel=KernelConfig(0.5), ridge_lambda=0.05)
    w = interventional_weights(d, "X", {"Z"}, 1.0, cfg)
    assert w.weights @ d.column("Y") == pytest.approx(2.0, abs=0.1)


def test_interventional_equals_average_of_per_sample_conditionals():
    rng = np.random.default_rng(23)
    n = 30
    d = Dataset({"X": rng.normal(size=n), "Z": rng.normal(size=n),
                 "Y": rng.normal(size=n)}, id="avg")
    cfg = small_cfg(0.6, 0.2)
    w = interventional_weights(d, "X", {"Z"}, 0.4, cfg).weights

    x, z = d.column("X"), d.column("Z")
    kx = np.exp(-np.subtract.outer(x, x) ** 2 / (2 * 0.6))
    kz = np.exp(-np.subtract.outer(z, z) ** 2 / (2 * 0.6))
    joint = kx * kz
    solve_mat = joint + (0.2 + cfg.jitter) * np.eye(n)
    acc = np.zeros(n)
    for sample in range(n):
        query = np.exp(-((x - 0.4) ** 2) / (2 * 0.6)) * kz[:, sample]
        acc += np.linalg.solve(solve_mat, query)
    np.testing.assert_allclose(w, acc / n, atol=1e-10)


def test_interventional_validation():
    d = sample_m1(3, 50, 0)
    cfg = small_cfg()
    with pytest.raises(ValidationError):
        interventional_weights(d, "X", set(), 1.0, cfg)
    with pytest.raises(ValidationError):
        interventional_weights(d, "X", {"X"}, 1.0, cfg)


def test_omega_dispatch_matches_graph_cases():
    cfg = small_cfg()
    fwd = Dag(["X", "Y"], [("X", "Y")])
    d = sample_m1(3, 80, 1)
    assert omega(fwd, d, "Y", "X", 0.0, cfg).case_tag == "marginal"
    assert omega(fwd, d, "X", "Y", 0.0, cfg).case_tag == "conditional"

    chain = Dag(["Z", "X", "Y"], [("Z", "X"), ("X", "Y")])
    model = LinearGaussianScm(chain, {("Z", "X"): 1.0, ("X", "Y"): 1.0},
                              {"Z": 1.0, "X": 1.0, "Y": 1.0})
    dc = sample_scm(model, 80, 2)
    w = omega(chain, dc, "X", "Y", 0.0, cfg)
    assert w.case_tag == "interventional"
    assert w.target_variable == "Y"


def test_omega_deterministic():
    cfg = small_cfg()
    g = Dag(["X", "Y"], [("X", "Y")])
    d = sample_m1(3, 200, 3)
    w1 = omega(g, d, "X", "Y", 1.0, cfg)
    w2 = omega(g, d, "X", "Y", 1.0, cfg, cache=GramCache())
    assert np.array_equal(w1.weights, w2.weights)


def test_omega_rejects_same_variable():
    cfg = small_cfg()
    g = Dag(["X", "Y"], [("X", "Y")])
    d = sample_m1(3, 50, 4)
    with pytest.raises(ValidationError):
        omega(g, d, "X", "X", 1.0, cfg)


def test_conditional_estimate_converges_to_closed_form():
    # median distance to the closed-form conditional embedding is
    # non-increasing over growing sample sizes
    cfg = EstimatorConfig(kernel=KernelConfig(0.5), ridge_lambda=0.1)
    target = Gaussian1D(3.0, 1.0)  # P(Y | X=1) under slope 3
    medians = []
    for n in (250, 1000, 4000):
        dists = []
        for seed in range(20):
            d = sample_m1(3, n, 100 * seed + n)
            w = conditional_weights(d, "X", 1.0, cfg)
            dists.append(embedding_distance_to_gaussian(
                w.weights, d.column("Y"), target, 0.5))
        medians.append(float(np.median(dists)))
    assert medians[0] >= medians[1] >= medians[2]


def test_estimator_config_validation():
    k = KernelConfig(1.0)
    with pytest.raises(ValidationError):
        EstimatorConfig(kernel=k, ridge_lambda=-1.0)
    with pytest.raises(ValidationError):
        EstimatorConfig(kernel=k, jitter=-1e-3)
    with pytest.raises(ValidationError):
        EstimatorConfig(kernel=k, clamp_tol=-1.0)


def test_cache_rejects_id_reuse():
    cache = GramCache()
    rng = np.random.default_rng(24)
    d1 = Dataset({"X": rng.normal(size=10)}, id="same")
    d2 = Dataset({"X": rng.normal(size=10)}, id="same")
    cache.gram(d1, d1, ("X",), KernelConfig(1.0))
    with pytest.raises(ValidationError):
        cache.gram(d2, d2, ("X",), KernelConfig(1.0))


def test_cache_builds_each_gram_once_under_threads(monkeypatch):
    import threading
    from concurrent.futures import ThreadPoolExecutor

    import scmdist.cache as cache_mod

    calls = []
    real = cache_mod.gram_entries

    def counting(*args, **kwargs):
        calls.append(threading.get_ident())
        return real(*args, **kwargs)

    monkeypatch.setattr(cache_mod, "gram_entries", counting)
    d = sample_m1(3, 200, 90)
    cache = GramCache()
    kcfg = KernelConfig(0.5)
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda _: cache.gram(d, d, ("X",), kcfg), range(16)))
    assert len(calls) == 1
    assert all(r is results[0] for r in results)


def test_cache_evicts_least_recently_used():
    d = sample_m1(3, 50, 91)
    cache = GramCache(capacity=2)
    kcfg = KernelConfig(0.5)
    first = cache.gram(d, d, ("X",), kcfg)
    cache.gram(d, d, ("Y",), kcfg)
    cache.gram(d, d, ("X", "Y"), kcfg)  # evicts the oldest entry
    again = cache.gram(d, d, ("X",), kcfg)
    assert np.array_equal(first, again)
