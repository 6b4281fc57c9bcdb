"""End-to-end clustering pipeline: select -> fit -> encode -> embed -> k-means."""

import time
from dataclasses import dataclass, field

import numpy as np

from . import encoder as enc
from . import metrics as met
from . import sampling
from . import spectral
from .exceptions import InvalidInputError
from .rpcm import RpcmConfig, RpcmResult, rpcm_fit

PHASES = ("select", "fit", "encode", "embed", "kmeans")


@dataclass
class PipelineConfig:
    n_representatives: int = 88
    selection: str = "kmeans"  # or "random"
    n_clusters: int = 4
    seed: int = 0
    row_normalize: bool = True
    rpcm: RpcmConfig = field(default_factory=RpcmConfig)

    def validate(self):
        if self.selection not in ("random", "kmeans"):
            raise InvalidInputError("selection must be random or kmeans")
        if self.n_clusters < 1:
            raise InvalidInputError("cluster count must be >= 1")
        if self.n_representatives < 2:
            raise InvalidInputError("need at least 2 representatives")
        self.rpcm.validate()


@dataclass
class PipelineResult:
    labels: np.ndarray
    reps: sampling.RepresentativeSet
    fit: RpcmResult
    codes: np.ndarray  # n x m encoder outputs for all points
    report: met.EvalReport  # None when no ground truth given
    timings: dict  # phase name -> seconds


def run_pipeline(Y, config, truth=None):
    """Cluster the columns of Y; returns labels, artifacts and phase timings."""
    config.validate()
    Y = np.asarray(Y, dtype=float)
    if config.n_representatives > Y.shape[1]:
        raise InvalidInputError("more representatives requested than data points")
    timings = {}

    t0 = time.perf_counter()
    if config.selection == "random":
        reps = sampling.select_random(Y, config.n_representatives, seed=config.seed)
    else:
        reps = sampling.select_kmeans(Y, config.n_representatives, seed=config.seed)
    timings["select"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    fit = rpcm_fit(reps.X, config.rpcm)
    timings["fit"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    codes = enc.forward(Y, fit.params)
    timings["encode"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    emb = spectral.spectral_embed(spectral.normalize_codes(codes), config.n_clusters)
    V = emb.V
    if config.row_normalize:
        norms = np.linalg.norm(V, axis=1)
        nz = norms > 0
        V = V.copy()
        V[nz] /= norms[nz, None]
    timings["embed"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    labels = spectral.kmeans(V, config.n_clusters, seed=config.seed)
    timings["kmeans"] = time.perf_counter() - t0

    report = met.evaluate(labels, truth) if truth is not None else None
    return PipelineResult(labels=labels, reps=reps, fit=fit, codes=codes,
                          report=report, timings=timings)
