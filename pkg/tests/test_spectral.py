import numpy as np
import pytest

from leasc import spectral
from leasc.exceptions import DegenerateInputError, InvalidInputError, NumericError


def _random_codes(rng, n, m):
    return rng.uniform(0.1, 1.0, size=(n, m))


def test_normalize_codes_scaling():
    rng = np.random.default_rng(0)
    Z = rng.standard_normal((4, 10))
    Zt = spectral.normalize_codes(Z)
    absZ = np.abs(Z)
    expect = absZ / np.sqrt(absZ.sum(axis=1))[:, None]
    assert np.allclose(Zt, expect)


def test_normalize_codes_zero_row_and_all_zero():
    Z = np.array([[1.0, 2.0], [0.0, 0.0]])
    Zt = spectral.normalize_codes(Z)
    assert np.all(Zt[1] == 0.0)
    with pytest.raises(DegenerateInputError):
        spectral.normalize_codes(np.zeros((3, 4)))


def test_embedding_columns_orthonormal():
    rng = np.random.default_rng(1)
    Zt = _random_codes(rng, 6, 40)
    emb = spectral.spectral_embed(Zt, 3)
    assert np.max(np.abs(emb.V.T @ emb.V - np.eye(3))) <= 1e-8
    assert np.all(np.diff(emb.sigma) <= 1e-12)  # descending


def test_embedding_matches_full_svd():
    rng = np.random.default_rng(2)
    Zt = _random_codes(rng, 5, 40)
    emb = spectral.spectral_embed(Zt, 3)
    _, s, Vt = np.linalg.svd(Zt, full_matrices=False)
    assert np.max(np.abs(emb.sigma - s[:3])) <= 1e-8
    for j in range(3):
        cos = abs(float(emb.V[:, j] @ Vt[j]))
        assert abs(cos - 1.0) <= 1e-8


def test_gram_and_svd_paths_agree():
    rng = np.random.default_rng(3)
    Zt = _random_codes(rng, 7, 30)
    a = spectral.spectral_embed(Zt, 4, use_svd=False)
    b = spectral.spectral_embed(Zt, 4, use_svd=True)
    assert np.max(np.abs(a.sigma - b.sigma)) <= 1e-8
    for j in range(4):
        cos = abs(float(a.V[:, j] @ b.V[:, j]))
        assert abs(cos - 1.0) <= 1e-8


def test_embedding_reproduces_materialized_similarity():
    rng = np.random.default_rng(4)
    Zt = _random_codes(rng, 6, 50)
    k = 3
    emb = spectral.spectral_embed(Zt, k)
    W = Zt.T @ Zt
    P = emb.V @ emb.V.T
    topk = emb.V @ np.diag(emb.sigma ** 2) @ emb.V.T
    assert np.max(np.abs(topk - P @ W @ P)) <= 1e-8


def test_rank_deficiency_reported_with_index():
    Zt = np.zeros((4, 20))
    Zt[0] = 1.0
    Zt[1] = 1.0  # rank 1 similarity
    with pytest.raises(NumericError, match="singular value 1"):
        spectral.spectral_embed(Zt, 3)
    with pytest.raises(InvalidInputError):
        spectral.spectral_embed(Zt, 0)


def test_kmeans_recovers_separated_blobs():
    for seed in range(10):
        rng = np.random.default_rng(seed)
        centers = np.array([[0.0, 0.0], [10.0, 0.0], [0.0, 10.0]])
        points = np.concatenate([c + rng.standard_normal((20, 2)) * 0.5
                                 for c in centers])
        labels = spectral.kmeans(points, 3, seed=seed)
        truth = np.repeat(np.arange(3), 20)
        # same partition up to renaming
        for c in range(3):
            block = labels[truth == c]
            assert len(set(block.tolist())) == 1
        assert len(set(labels.tolist())) == 3


def test_kmeans_input_validation():
    with pytest.raises(InvalidInputError):
        spectral.kmeans(np.zeros((3, 2)), 4)


def test_kmeans_handles_duplicate_points():
    points = np.zeros((6, 2))
    points[3:] = 1.0
    labels = spectral.kmeans(points, 2, seed=0)
    assert len(set(labels.tolist())) == 2


def test_cluster_embedding_block_structure():
    # Codes supported on disjoint representative sets make the implicit
    # similarity block-diagonal, so the two blocks separate exactly.
    rng = np.random.default_rng(5)
    Zf = np.zeros((6, 30))
    Zf[:3, :15] = rng.uniform(0.5, 1.0, size=(3, 15))
    Zf[3:, 15:] = rng.uniform(0.5, 1.0, size=(3, 15))
    labels = spectral.cluster_embedding(Zf, 2, seed=0)
    assert len(set(labels[:15].tolist())) == 1
    assert len(set(labels[15:].tolist())) == 1
    assert labels[0] != labels[15]
