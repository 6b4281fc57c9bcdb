"""Empirical checks of the encoder's contraction bound.

For every data point y with nearest representative x, the encoder should
satisfy ||f(x) - f(y)|| <= ||df/dx(x)||_F * ||x - y|| up to a higher-order
remainder that shrinks faster than the representative radius.
"""

from dataclasses import dataclass

import numpy as np

from . import encoder as enc
from .exceptions import InvalidInputError


@dataclass
class PairRecord:
    point_index: int
    rep_index: int
    distance: float
    lhs: float  # ||f(x) - f(y)||_2
    bound: float  # ||J(x)||_F * ||x - y||_2
    slack: float  # bound - lhs
    remainder: float  # ||f(y) - f(x) - J(x)(y - x)||_2
    satisfied: bool


@dataclass
class ContractionReport:
    rho: float
    records: list
    fraction_satisfied: float
    max_remainder: float


def representative_radius(Y, reps):
    """Nearest-representative assignment and the largest assigned distance."""
    Y = np.asarray(Y, dtype=float)
    X = np.asarray(reps.X, dtype=float)
    if X.shape[1] == 0:
        raise InvalidInputError("representative set is empty")
    d2 = (np.sum(Y ** 2, axis=0)[:, None]
          - 2.0 * Y.T @ X
          + np.sum(X ** 2, axis=0)[None, :])
    assignment = np.argmin(d2, axis=1)
    dists = np.sqrt(np.maximum(d2[np.arange(Y.shape[1]), assignment], 0.0))
    return float(dists.max()), assignment


def check_contraction(Y, reps, params, margin=0.25):
    """First-order contraction bound per (point, representative) pair.

    ``satisfied`` allows a multiplicative margin absorbing the higher-order
    Taylor term; the raw remainder is recorded for radius-scaling regressions.
    """
    Y = np.asarray(Y, dtype=float)
    X = np.asarray(reps.X, dtype=float)
    if Y.shape[0] != params.input_dim or X.shape[0] != params.input_dim:
        raise InvalidInputError("data dimension does not match the encoder input")
    rho, assignment = representative_radius(Y, reps)
    fX = enc.forward(X, params)
    fY = enc.forward(Y, params)
    jacobians = {}
    records = []
    for i in range(Y.shape[1]):
        j = int(assignment[i])
        if j not in jacobians:
            jacobians[j] = enc.jacobian(X[:, j], params)
        J = jacobians[j]
        diff = Y[:, i] - X[:, j]
        dist = float(np.linalg.norm(diff))
        lhs = float(np.linalg.norm(fY[:, i] - fX[:, j]))
        bound = float(np.linalg.norm(J)) * dist
        remainder = float(np.linalg.norm(fY[:, i] - fX[:, j] - J @ diff))
        records.append(PairRecord(
            point_index=i, rep_index=j, distance=dist, lhs=lhs, bound=bound,
            slack=bound - lhs, remainder=remainder,
            satisfied=lhs <= bound * (1.0 + margin)))
    frac = sum(r.satisfied for r in records) / len(records)
    return ContractionReport(rho=rho, records=records, fraction_satisfied=frac,
                             max_remainder=max(r.remainder for r in records))


def radius_scaling(Y, rep_sets, params):
    """(rho, max remainder) per representative set, for log-log regressions."""
    out = []
    for reps in rep_sets:
        report = check_contraction(Y, reps, params)
        out.append((report.rho, report.max_remainder))
    return out
