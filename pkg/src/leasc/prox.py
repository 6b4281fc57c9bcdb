"""Proximal operators and norm evaluators for the RPCM regularizers.

Each ``prox_*`` function returns the minimizer of

    tau * R(Z) + 0.5 * ||Z - A||_F^2

for its regularizer R. All operators are pure functions of their inputs.
"""

from enum import Enum

import numpy as np

from .exceptions import InvalidInputError, NumericError


class RegularizerKind(Enum):
    SQUARED_FROBENIUS = "sq_frobenius"
    L1 = "l1"
    NUCLEAR = "nuclear"
    L21 = "l21"
    ELASTIC_NET = "elastic_net"


def _check_finite(A):
    A = np.asarray(A, dtype=float)
    if not np.all(np.isfinite(A)):
        raise InvalidInputError("input matrix contains non-finite entries")
    return A


def _check_tau(tau):
    tau = float(tau)
    if not np.isfinite(tau) or tau < 0:
        raise InvalidInputError("tau must be a finite nonnegative scalar")
    return tau


def prox_l1(A, tau):
    """Elementwise soft thresholding: sign(a) * max(|a| - tau, 0)."""
    A = _check_finite(A)
    tau = _check_tau(tau)
    return np.sign(A) * np.maximum(np.abs(A) - tau, 0.0)


def prox_nuclear(A, tau):
    """Singular value thresholding: U max(S - tau, 0) V^T."""
    A = _check_finite(A)
    tau = _check_tau(tau)
    if tau == 0.0:
        return A.copy()
    try:
        U, s, Vt = np.linalg.svd(A, full_matrices=False)
    except np.linalg.LinAlgError as err:
        raise NumericError("SVD failed to converge in prox_nuclear: %s" % err)
    s = np.maximum(s - tau, 0.0)
    return (U * s) @ Vt


def prox_l21(A, tau):
    """Columnwise shrinkage: a_j * max(||a_j|| - tau, 0) / ||a_j||.

    Zero columns map to zero (the limit of the shrinkage factor).
    """
    A = _check_finite(A)
    tau = _check_tau(tau)
    norms = np.linalg.norm(A, axis=0)
    scale = np.zeros_like(norms)
    nz = norms > 0
    scale[nz] = np.maximum(norms[nz] - tau, 0.0) / norms[nz]
    return A * scale


def prox_sq_frobenius(A, tau):
    """Minimizer of tau*||Z||_F^2 + 0.5*||Z - A||_F^2, i.e. A / (1 + 2 tau)."""
    A = _check_finite(A)
    tau = _check_tau(tau)
    return A / (1.0 + 2.0 * tau)


def regularizer_value(A, kind):
    """Evaluate the regularizer of the given kind at A.

    ELASTIC_NET returns the pair (l1 value, squared-Frobenius value); every
    other kind returns a scalar.
    """
    A = _check_finite(A)
    if kind is RegularizerKind.L1:
        return float(np.sum(np.abs(A)))
    if kind is RegularizerKind.NUCLEAR:
        return float(np.sum(np.linalg.svd(A, compute_uv=False)))
    if kind is RegularizerKind.L21:
        return float(np.sum(np.linalg.norm(A, axis=0)))
    if kind is RegularizerKind.SQUARED_FROBENIUS:
        return float(np.sum(A * A))
    if kind is RegularizerKind.ELASTIC_NET:
        return (float(np.sum(np.abs(A))), float(np.sum(A * A)))
    raise InvalidInputError("unknown regularizer kind: %r" % (kind,))


PROX_BY_KIND = {
    RegularizerKind.L1: prox_l1,
    RegularizerKind.NUCLEAR: prox_nuclear,
    RegularizerKind.L21: prox_l21,
    RegularizerKind.SQUARED_FROBENIUS: prox_sq_frobenius,
}
