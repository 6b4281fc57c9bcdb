"""Landmark spectral clustering on code matrices.

The similarity matrix W = Ztilde^T Ztilde over all m points is never formed;
the embedding comes from the small n x n Gram matrix of the normalized codes,
which keeps the cost linear in m.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateInputError, InvalidInputError, NumericError


@dataclass
class SimilarityEmbedding:
    V: np.ndarray  # m x k embedding, one row per data point
    sigma: np.ndarray  # k singular values, descending
    k: int


def normalize_codes(Zf):
    """Scale row i of |Zf| by 1/sqrt(sum_j |Zf_ij|); zero rows stay zero."""
    Zf = np.asarray(Zf, dtype=float)
    absZ = np.abs(Zf)
    row_sums = absZ.sum(axis=1)
    if np.all(row_sums == 0):
        raise DegenerateInputError("code matrix is entirely zero")
    scale = np.zeros_like(row_sums)
    nz = row_sums > 0
    scale[nz] = 1.0 / np.sqrt(row_sums[nz])
    return absZ * scale[:, None]


def spectral_embed(Ztilde, k, use_svd=False):
    """Top-k spectral embedding of the implicit similarity Ztilde^T Ztilde.

    Eigen-decomposes the n x n Gram matrix G = Ztilde Ztilde^T and maps back
    with V = Ztilde^T U Sigma^{-1}. The direct SVD path (use_svd) is kept for
    cross-checking when n is comparable to m.
    """
    Ztilde = np.asarray(Ztilde, dtype=float)
    n, m = Ztilde.shape
    k = int(k)
    if not 1 <= k <= n:
        raise InvalidInputError("cluster count %d out of range [1, %d]" % (k, n))
    if use_svd:
        U, s, Vt = np.linalg.svd(Ztilde, full_matrices=False)
        sigma = s[:k]
        V = Vt[:k].T.copy()
        _check_rank(sigma, k)
        return SimilarityEmbedding(V=V, sigma=sigma, k=k)
    G = Ztilde @ Ztilde.T
    evals, evecs = np.linalg.eigh(G)
    order = np.argsort(evals)[::-1][:k]
    sigma = np.sqrt(np.maximum(evals[order], 0.0))
    _check_rank(sigma, k)
    U = evecs[:, order]
    V = Ztilde.T @ (U / sigma[None, :])
    return SimilarityEmbedding(V=V, sigma=sigma, k=k)


def _check_rank(sigma, k):
    if sigma[0] <= 0 or sigma[k - 1] < 1e-12 * sigma[0]:
        deficient = int(np.argmax(sigma < 1e-12 * max(sigma[0], 1e-300)))
        raise NumericError(
            "similarity embedding is rank deficient at singular value %d" % deficient)


def _kmeans_pp_init(points, k, rng):
    m = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    first = rng.integers(m)
    centers[0] = points[first]
    d2 = np.sum((points - centers[0]) ** 2, axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total <= 0:
            idx = rng.integers(m)
        else:
            idx = rng.choice(m, p=d2 / total)
        centers[c] = points[idx]
        d2 = np.minimum(d2, np.sum((points - centers[c]) ** 2, axis=1))
    return centers


def _assign(points, centers):
    d2 = (np.sum(points ** 2, axis=1)[:, None]
          - 2.0 * points @ centers.T
          + np.sum(centers ** 2, axis=1)[None, :])
    return np.argmin(d2, axis=1), d2


def kmeans(points_rows, k, seed=0, max_iter=300):
    """Lloyd iterations with k-means++ seeding, deterministic per seed.

    Empty clusters are re-seeded to the point farthest from its center.
    """
    points = np.asarray(points_rows, dtype=float)
    m = points.shape[0]
    k = int(k)
    if k < 1 or k > m:
        raise InvalidInputError("k=%d must lie in [1, %d]" % (k, m))
    rng = np.random.default_rng(seed)
    centers = _kmeans_pp_init(points, k, rng)
    labels = None
    for _ in range(max_iter):
        new_labels, d2 = _assign(points, centers)
        for c in range(k):
            mask = new_labels == c
            if not np.any(mask):
                farthest = int(np.argmax(d2[np.arange(m), new_labels]))
                centers[c] = points[farthest]
                new_labels[farthest] = c
                mask = new_labels == c
            centers[c] = points[mask].mean(axis=0)
        if labels is not None and np.array_equal(labels, new_labels):
            break
        labels = new_labels
    return labels


def kmeans_centroids(points_rows, k, seed=0, max_iter=300):
    """Final cluster centroids for the same Lloyd procedure as kmeans()."""
    points = np.asarray(points_rows, dtype=float)
    labels = kmeans(points, k, seed=seed, max_iter=max_iter)
    return np.stack([points[labels == c].mean(axis=0) if np.any(labels == c)
                     else points[0] for c in range(k)])


def cluster_embedding(Zf, k, seed=0, row_normalize=True):
    """normalize_codes -> spectral_embed -> unit rows -> k-means."""
    emb = spectral_embed(normalize_codes(Zf), k)
    V = emb.V
    if row_normalize:
        norms = np.linalg.norm(V, axis=1)
        nz = norms > 0
        V = V.copy()
        V[nz] /= norms[nz, None]
    return kmeans(V, k, seed=seed)
