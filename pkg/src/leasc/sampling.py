"""Representative selection and the exact subspace coverage probability."""

from dataclasses import dataclass
from math import comb, lgamma, inf, exp, log1p

import numpy as np

from .exceptions import InvalidInputError


@dataclass
class RepresentativeSet:
    indices: np.ndarray  # unique column indices into the source matrix
    X: np.ndarray  # the selected columns, d x n


@dataclass
class SubspaceSizes:
    sizes: list

    def __post_init__(self):
        self.sizes = [int(s) for s in self.sizes]
        if not self.sizes or any(s < 1 for s in self.sizes):
            raise InvalidInputError("all subspace sizes must be >= 1")

    @property
    def total(self):
        return sum(self.sizes)


def select_random(Y, n, seed=0):
    """Uniform sample of n columns without replacement, deterministic per seed."""
    Y = np.asarray(Y, dtype=float)
    m = Y.shape[1]
    if not 1 <= n <= m:
        raise InvalidInputError("representative count %d out of range [1, %d]" % (n, m))
    rng = np.random.default_rng(seed)
    idx = rng.choice(m, size=n, replace=False)
    return RepresentativeSet(indices=idx, X=Y[:, idx].copy())


def select_kmeans(Y, n, seed=0, max_iter=100):
    """K-means on columns, then snap each centroid to its nearest data column.

    Representatives must be actual data points since they double as the
    self-expressive dictionary.
    """
    from .spectral import kmeans_centroids

    Y = np.asarray(Y, dtype=float)
    m = Y.shape[1]
    if not 1 <= n <= m:
        raise InvalidInputError("representative count %d out of range [1, %d]" % (n, m))
    centroids = kmeans_centroids(Y.T, n, seed=seed, max_iter=max_iter)
    idx = []
    taken = set()
    for c in centroids:
        d2 = np.sum((Y - c[:, None]) ** 2, axis=0)
        order = np.argsort(d2, kind="stable")
        for j in order:
            if int(j) not in taken:
                taken.add(int(j))
                idx.append(int(j))
                break
    idx = np.array(sorted(idx))
    return RepresentativeSet(indices=idx, X=Y[:, idx].copy())


def _coverage_exact(sizes, n):
    # DP convolution over subspaces; coeffs[j] counts selections of j points
    # covering every subspace seen so far (each n_i >= 1). Exact integers.
    coeffs = {0: 1}
    for mi in sizes:
        new = {}
        for j, ways in coeffs.items():
            for ni in range(1, mi + 1):
                key = j + ni
                if key > n:
                    break
                new[key] = new.get(key, 0) + ways * comb(mi, ni)
        coeffs = new
        if not coeffs:
            return 0.0
    total = comb(sum(sizes), n)
    return float(coeffs.get(n, 0) / total)


def _log_comb(m, n):
    if n < 0 or n > m:
        return -inf
    return lgamma(m + 1) - lgamma(n + 1) - lgamma(m - n + 1)


def _logaddexp(a, b):
    if a == -inf:
        return b
    if b == -inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + log1p(exp(lo - hi))


def _coverage_logspace(sizes, n):
    # Same DP in log space; needed when the binomials overflow practicality.
    coeffs = {0: 0.0}
    for mi in sizes:
        new = {}
        for j, logways in coeffs.items():
            for ni in range(1, mi + 1):
                key = j + ni
                if key > n:
                    break
                term = logways + _log_comb(mi, ni)
                prev = new.get(key, -inf)
                new[key] = _logaddexp(prev, term)
        coeffs = new
        if not coeffs:
            return 0.0
    log_p = coeffs.get(n, -inf) - _log_comb(sum(sizes), n)
    return float(exp(min(log_p, 0.0)))


def coverage_probability(sizes, n):
    """Probability that a uniform sample of n columns hits every subspace.

    Exact big-integer arithmetic for moderate totals; a log-space DP takes
    over past 1000 points to stay stable at million scale.
    """
    if not isinstance(sizes, SubspaceSizes):
        sizes = SubspaceSizes(list(sizes))
    n = int(n)
    m = sizes.total
    if n < 0 or n > m:
        raise InvalidInputError("sample size %d out of range [0, %d]" % (n, m))
    if n < len(sizes.sizes):
        return 0.0
    if n > max(m - mi for mi in sizes.sizes):
        return 1.0
    if m > 1000:
        return _coverage_logspace(sizes.sizes, n)
    return _coverage_exact(sizes.sizes, n)


def suggest_representative_count(sizes, target_p):
    """Smallest n with coverage_probability(sizes, n) >= target_p."""
    if not isinstance(sizes, SubspaceSizes):
        sizes = SubspaceSizes(list(sizes))
    if not 0.0 < target_p < 1.0:
        raise InvalidInputError("target probability must lie strictly in (0, 1)")
    lo = len(sizes.sizes)  # first n with nonzero probability
    hi = max(sizes.total - mi for mi in sizes.sizes) + 1  # P == 1 from here
    # coverage_probability is monotone non-decreasing for n >= number of subspaces
    while lo < hi:
        mid = (lo + hi) // 2
        if coverage_probability(sizes, mid) >= target_p:
            hi = mid
        else:
            lo = mid + 1
    return lo
