from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np
import pytest

from leasc import sampling
from leasc.exceptions import InvalidInputError


def test_select_random_draws_unordered_pairs_uniformly():
    Y = np.arange(8, dtype=float).reshape(2, 4)
    draws = 20000
    counts = {}
    for seed in range(draws):
        reps = sampling.select_random(Y, 2, seed=seed)
        key = frozenset(int(i) for i in reps.indices)
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 6
    p = 1.0 / 6.0
    sigma = np.sqrt(draws * p * (1 - p))
    for key, count in counts.items():
        assert abs(count - draws * p) <= 3 * sigma, (key, count)


def test_select_random_indices_are_unique_and_in_range():
    rng = np.random.default_rng(0)
    Y = rng.standard_normal((3, 20))
    reps = sampling.select_random(Y, 7, seed=1)
    assert len(set(reps.indices.tolist())) == 7
    assert reps.X.shape == (3, 7)
    assert np.all((reps.indices >= 0) & (reps.indices < 20))
    with pytest.raises(InvalidInputError):
        sampling.select_random(Y, 0)
    with pytest.raises(InvalidInputError):
        sampling.select_random(Y, 21)


def test_select_kmeans_hits_each_blob():
    rng = np.random.default_rng(2)
    blob_a = rng.standard_normal((2, 30)) * 0.1 + np.array([[10.0], [0.0]])
    blob_b = rng.standard_normal((2, 30)) * 0.1 + np.array([[-10.0], [0.0]])
    Y = np.concatenate([blob_a, blob_b], axis=1)
    for seed in range(10):
        reps = sampling.select_kmeans(Y, 2, seed=seed)
        sides = set(np.sign(Y[0, reps.indices]).tolist())
        assert sides == {1.0, -1.0}, seed


def test_select_kmeans_returns_actual_columns():
    rng = np.random.default_rng(3)
    Y = rng.standard_normal((4, 25))
    reps = sampling.select_kmeans(Y, 6, seed=0)
    assert len(set(reps.indices.tolist())) == 6
    for pos, idx in enumerate(reps.indices):
        assert np.array_equal(reps.X[:, pos], Y[:, idx])


def inclusion_exclusion_coverage(sizes, n):
    """Exact rational coverage probability by inclusion-exclusion over the
    subspaces that could be missed entirely."""
    m = sum(sizes)
    total = comb(m, n)
    p = Fraction(0)
    for r in range(len(sizes) + 1):
        for missed in combinations(sizes, r):
            p += (-1) ** r * Fraction(comb(m - sum(missed), n), total)
    return p


def test_coverage_matches_inclusion_exclusion_small_case():
    sizes = (3, 4, 5)
    got = sampling.coverage_probability(sizes, 5)
    expect = float(inclusion_exclusion_coverage(sizes, 5))
    assert abs(got - expect) <= 1e-12


def test_coverage_reference_value():
    assert abs(sampling.coverage_probability((50, 50), 7) - 0.9875) <= 1e-4


def test_coverage_boundary_cases():
    assert sampling.coverage_probability((3, 4), 1) == 0.0  # fewer than subspaces
    assert sampling.coverage_probability((3, 4), 5) == 1.0  # misses impossible
    with pytest.raises(InvalidInputError):
        sampling.coverage_probability((3, 4), 8)
    with pytest.raises(InvalidInputError):
        sampling.SubspaceSizes([3, 0])


def test_coverage_logspace_agrees_with_exact():
    sizes = [400, 350, 300]  # total 1050 forces the log-space path
    n = 12
    got = sampling.coverage_probability(sizes, n)
    expect = sampling._coverage_exact(sizes, n)
    assert abs(got - expect) <= 1e-9 * max(expect, 1e-300)


def test_coverage_monte_carlo_agreement():
    rng = np.random.default_rng(4)
    sizes = [6, 9, 11]
    n = 8
    m = sum(sizes)
    owner = np.repeat(np.arange(3), sizes)
    draws = 20000
    hits = 0
    for _ in range(draws):
        chosen = rng.choice(m, size=n, replace=False)
        if len(set(owner[chosen])) == 3:
            hits += 1
    est = hits / draws
    p = sampling.coverage_probability(sizes, n)
    se = np.sqrt(p * (1 - p) / draws)
    assert abs(est - p) <= 4 * se


def test_suggest_representative_count_sweep_oracle():
    assert sampling.suggest_representative_count((50, 50), 0.98) == 7
    assert sampling.coverage_probability((50, 50), 6) < 0.98
    with pytest.raises(InvalidInputError):
        sampling.suggest_representative_count((50, 50), 1.0)
