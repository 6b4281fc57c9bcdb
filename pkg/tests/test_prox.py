import numpy as np
import pytest

from leasc.exceptions import InvalidInputError
from leasc.prox import (RegularizerKind, prox_l1, prox_l21, prox_nuclear,
                        prox_sq_frobenius, regularizer_value)

ALL_PROX = [
    (prox_l1, RegularizerKind.L1),
    (prox_nuclear, RegularizerKind.NUCLEAR),
    (prox_l21, RegularizerKind.L21),
    (prox_sq_frobenius, RegularizerKind.SQUARED_FROBENIUS),
]


def _objective(Z, A, tau, kind):
    val = regularizer_value(Z, kind)
    return tau * val + 0.5 * np.sum((Z - A) ** 2)


def _grid_min_scalar(a, tau, penalty):
    grid = np.linspace(-2 * abs(a) - 1e-9, 2 * abs(a) + 1e-9, 40001)
    vals = tau * penalty(grid) + 0.5 * (grid - a) ** 2
    return grid[np.argmin(vals)]


def test_l1_entrywise_grid_oracle():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((3, 3))
    Z = prox_l1(A, 0.7)
    for i in range(3):
        for j in range(3):
            expect = _grid_min_scalar(A[i, j], 0.7, np.abs)
            assert abs(Z[i, j] - expect) <= 1e-4


def test_sq_frobenius_entrywise_grid_oracle():
    rng = np.random.default_rng(1)
    A = rng.standard_normal((3, 3))
    Z = prox_sq_frobenius(A, 1.2)
    for i in range(3):
        for j in range(3):
            expect = _grid_min_scalar(A[i, j], 1.2, np.square)
            assert abs(Z[i, j] - expect) <= 1e-4


def test_l21_column_scaling_grid_oracle():
    rng = np.random.default_rng(2)
    A = rng.standard_normal((5, 3))
    Z = prox_l21(A, 0.9)
    for j in range(3):
        a = A[:, j]
        scales = np.linspace(0.0, 1.0, 20001)
        cand = scales[:, None] * a[None, :]
        vals = 0.9 * np.linalg.norm(cand, axis=1) \
            + 0.5 * np.sum((cand - a) ** 2, axis=1)
        best = cand[np.argmin(vals)]
        assert np.max(np.abs(Z[:, j] - best)) <= 1e-4


def test_l21_small_column_fully_shrunk():
    A = np.zeros((4, 2))
    A[:, 0] = [0.1, 0.1, 0.0, 0.0]
    A[:, 1] = [3.0, 0.0, 0.0, 0.0]
    Z = prox_l21(A, 0.5)
    assert np.all(Z[:, 0] == 0.0)
    assert np.linalg.norm(Z[:, 1]) > 0


def test_nuclear_tau_zero_is_identity():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((4, 4))
    assert np.max(np.abs(prox_nuclear(A, 0.0) - A)) <= 1e-10


def test_nuclear_spectrum_oracle():
    rng = np.random.default_rng(4)
    A = rng.standard_normal((4, 4))
    Z = prox_nuclear(A, 1.5)
    s_in = np.linalg.svd(A, compute_uv=False)
    s_out = np.linalg.svd(Z, compute_uv=False)
    assert np.max(np.abs(s_out - np.maximum(s_in - 1.5, 0.0))) <= 1e-8


def test_nuclear_preserves_singular_subspaces():
    rng = np.random.default_rng(5)
    # Distinct singular values so the subspaces are uniquely defined.
    U, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    V, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    s = np.array([5.0, 4.0, 3.0, 2.0, 1.0])
    A = (U * s) @ V.T
    tau = 1.5
    Z = prox_nuclear(A, tau)
    Uz, sz, Vzt = np.linalg.svd(Z)
    surviving = int(np.sum(s - tau > 0))
    for i in range(surviving):
        # principal angle between matched 1-D subspaces
        cos_u = abs(float(U[:, i] @ Uz[:, i]))
        cos_v = abs(float(V[:, i] @ Vzt[i]))
        assert np.arccos(min(cos_u, 1.0)) <= 1e-6
        assert np.arccos(min(cos_v, 1.0)) <= 1e-6


@pytest.mark.parametrize("prox,kind", ALL_PROX)
def test_prox_optimality_under_perturbation(prox, kind):
    rng = np.random.default_rng(6)
    A = rng.standard_normal((4, 4))
    tau = 0.8
    Z = prox(A, tau)
    base = _objective(Z, A, tau, kind)
    for _ in range(100):
        delta = rng.standard_normal((4, 4))
        delta *= 0.1 * rng.uniform() / np.linalg.norm(delta)
        assert base <= _objective(Z + delta, A, tau, kind) + 1e-10


@pytest.mark.parametrize("prox,kind", ALL_PROX)
def test_prox_nonexpansive(prox, kind):
    rng = np.random.default_rng(7)
    for _ in range(20):
        A1 = rng.standard_normal((4, 4))
        A2 = rng.standard_normal((4, 4))
        tau = rng.uniform(0.1, 2.0)
        lhs = np.linalg.norm(prox(A1, tau) - prox(A2, tau))
        assert lhs <= np.linalg.norm(A1 - A2) + 1e-10


def test_regularizer_value_nuclear_svd_oracle():
    rng = np.random.default_rng(8)
    A = rng.standard_normal((5, 3))
    expect = float(np.sum(np.linalg.svd(A, compute_uv=False)))
    assert abs(regularizer_value(A, RegularizerKind.NUCLEAR) - expect) <= 1e-8


def test_regularizer_value_elastic_returns_pair():
    A = np.array([[1.0, -2.0], [0.0, 3.0]])
    l1, sq = regularizer_value(A, RegularizerKind.ELASTIC_NET)
    assert l1 == 6.0
    assert sq == 14.0


def test_nonfinite_input_rejected():
    A = np.array([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(InvalidInputError):
        prox_l1(A, 0.5)
    with pytest.raises(InvalidInputError):
        prox_l1(np.eye(2), -0.1)
