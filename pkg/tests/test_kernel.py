import numpy as np
import pytest

from scmdist import (
    KernelConfig,
    ValidationError,
    gaussian_kernel,
    gram,
    hadamard_gram,
    median_heuristic,
)


def test_kernel_identity():
    assert gaussian_kernel(1.0, 1.0, KernelConfig(0.1)) == 1.0


def test_kernel_direct_substitution():
    assert gaussian_kernel(0.0, 2.0, KernelConfig(2.0)) == pytest.approx(np.exp(-1.0), rel=1e-12)


def test_kernel_symmetry_random_pairs():
    rng = np.random.default_rng(0)
    cfg = KernelConfig(0.7)
    for _ in range(100):
        x, y = rng.normal(size=2)
        assert gaussian_kernel(x, y, cfg) == gaussian_kernel(y, x, cfg)


def test_kernel_bounded_and_self_one():
    rng = np.random.default_rng(1)
    cfg = KernelConfig(0.3)
    for x in rng.normal(scale=10, size=50):
        assert gaussian_kernel(x, x, cfg) == 1.0
    for x, y in rng.normal(scale=2, size=(50, 2)):
        assert 0.0 < gaussian_kernel(x, y, cfg) <= 1.0


def test_kernel_rejects_non_finite():
    with pytest.raises(ValidationError):
        gaussian_kernel(np.nan, 0.0, KernelConfig(1.0))
    with pytest.raises(ValidationError):
        gaussian_kernel(0.0, np.inf, KernelConfig(1.0))


def test_bandwidth_must_be_positive():
    with pytest.raises(ValidationError):
        KernelConfig(0.0)
    with pytest.raises(ValidationError):
        KernelConfig(-1.0)


def test_gram_same_column_unit_diagonal_symmetric():
    col = [0.0, 1.0, 2.5]
    g = gram(col, col, KernelConfig(0.5))
    assert np.allclose(np.diag(g.entries), 1.0)
    assert np.array_equal(g.entries, g.entries.T)


def test_gram_constant_column_all_ones():
    col = [2.0] * 5
    g = gram(col, col, KernelConfig(0.5))
    assert np.array_equal(g.entries, np.ones((5, 5)))


def test_gram_entries_match_scalar_kernel():
    rng = np.random.default_rng(2)
    a, b = rng.normal(size=6), rng.normal(size=4)
    cfg = KernelConfig(0.9)
    g = gram(a, b, cfg)
    for s in range(6):
        for t in range(4):
            assert g.entries[s, t] == pytest.approx(gaussian_kernel(a[s], b[t], cfg), abs=1e-15)


def test_gram_psd_random_column():
    rng = np.random.default_rng(3)
    col = rng.normal(size=50)
    g = gram(col, col, KernelConfig(0.2))
    eigs = np.linalg.eigvalsh(g.entries)
    assert eigs.min() >= -1e-8 * 50


def test_gram_rejects_empty_and_non_finite():
    cfg = KernelConfig(1.0)
    with pytest.raises(ValidationError):
        gram([], [1.0], cfg)
    with pytest.raises(ValidationError):
        gram([1.0, np.nan], [1.0], cfg)


def test_hadamard_single_input_is_identity():
    g = gram([0.0, 1.0], [0.0, 1.0], KernelConfig(1.0))
    assert hadamard_gram([g]) is g


def test_hadamard_with_all_ones_unchanged():
    rng = np.random.default_rng(4)
    col = rng.normal(size=8)
    g = gram(col, col, KernelConfig(0.4))
    ones = gram([1.0] * 8, [1.0] * 8, KernelConfig(0.4))
    assert np.array_equal(hadamard_gram([g, ones]).entries, g.entries)


def test_hadamard_of_psd_is_psd():
    rng = np.random.default_rng(5)
    cfg = KernelConfig(0.3)
    a = gram(rng.normal(size=30), rng.normal(size=30), cfg)
    # same column on both sides so each factor is PSD
    ca = rng.normal(size=30)
    cb = rng.normal(size=30)
    ga = gram(ca, ca, cfg)
    gb = gram(cb, cb, cfg)
    prod = hadamard_gram([ga, gb])
    assert np.linalg.eigvalsh(prod.entries).min() >= -1e-8 * 30
    del a


def test_hadamard_shape_mismatch():
    cfg = KernelConfig(1.0)
    g1 = gram([0.0, 1.0], [0.0, 1.0], cfg)
    g2 = gram([0.0, 1.0, 2.0], [0.0, 1.0, 2.0], cfg)
    with pytest.raises(ValidationError):
        hadamard_gram([g1, g2])


def test_median_heuristic_single_pair():
    assert median_heuristic([0.0, 2.0]).bandwidth_sq == pytest.approx(4.0)


def test_median_heuristic_three_points():
    # squared diffs {1, 4, 1} -> median 1
    assert median_heuristic([0.0, 1.0, 2.0]).bandwidth_sq == pytest.approx(1.0)


def test_median_heuristic_matches_all_pairs_brute_force():
    rng = np.random.default_rng(6)
    col = rng.normal(size=500)
    got = median_heuristic(col).bandwidth_sq
    diffs = [
        (col[s] - col[t]) ** 2
        for s in range(col.size) for t in range(s + 1, col.size)
    ]
    assert got == pytest.approx(float(np.median(diffs)), rel=1e-12)


def test_median_heuristic_identical_values_error():
    with pytest.raises(ValidationError):
        median_heuristic([3.0, 3.0, 3.0])
    with pytest.raises(ValidationError):
        median_heuristic([1.0])


def test_median_heuristic_subsample_deterministic():
    rng = np.random.default_rng(7)
    col = rng.normal(size=5000)
    assert median_heuristic(col).bandwidth_sq == median_heuristic(col).bandwidth_sq
