"""Clustering accuracy (optimal label matching) and normalized mutual information."""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .exceptions import InvalidInputError


@dataclass
class EvalReport:
    acc: float
    nmi: float
    contingency: np.ndarray  # k_pred x k_true count table


def _contingency(pred, truth):
    pred = np.asarray(pred, dtype=int)
    truth = np.asarray(truth, dtype=int)
    if pred.shape != truth.shape or pred.ndim != 1:
        raise InvalidInputError("label vectors must be 1-D and equally long")
    pred_ids, pred_inv = np.unique(pred, return_inverse=True)
    true_ids, true_inv = np.unique(truth, return_inverse=True)
    table = np.zeros((len(pred_ids), len(true_ids)), dtype=np.int64)
    np.add.at(table, (pred_inv, true_inv), 1)
    return table


def accuracy(pred, truth):
    """Best-bijection agreement rate, solved by maximum-weight assignment."""
    table = _contingency(pred, truth)
    rows, cols = linear_sum_assignment(-table)
    return float(table[rows, cols].sum() / table.sum())


def _entropy(p):
    p = p[p > 0]
    return float(-np.sum(p * np.log(p)))


def nmi(pred, truth, normalization="geometric"):
    """Mutual information normalized by the mean of the label entropies.

    Both partitions constant is treated as perfect agreement (1); exactly one
    constant partition carries no information (0).
    """
    table = _contingency(pred, truth).astype(float)
    m = table.sum()
    joint = table / m
    p_pred = joint.sum(axis=1)
    p_true = joint.sum(axis=0)
    h_pred = _entropy(p_pred)
    h_true = _entropy(p_true)
    if h_pred == 0.0 and h_true == 0.0:
        return 1.0
    if h_pred == 0.0 or h_true == 0.0:
        return 0.0
    outer = p_pred[:, None] * p_true[None, :]
    mask = joint > 0
    mi = float(np.sum(joint[mask] * np.log(joint[mask] / outer[mask])))
    if normalization == "geometric":
        denom = np.sqrt(h_pred * h_true)
    elif normalization == "arithmetic":
        denom = 0.5 * (h_pred + h_true)
    else:
        raise InvalidInputError("unknown normalization %r" % normalization)
    return float(min(max(mi / denom, 0.0), 1.0))


def evaluate(pred, truth):
    return EvalReport(acc=accuracy(pred, truth), nmi=nmi(pred, truth),
                      contingency=_contingency(pred, truth))
