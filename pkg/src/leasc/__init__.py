"""Learnable subspace clustering: RPCM coding, linear-time encoding and
landmark-based spectral clustering."""

from .encoder import EncoderConfig, EncoderParams, encoder_init, forward, \
    jacobian_frobenius_norm, train_to_target
from .estimator import LeascClustering, RpcmCoder
from .metrics import accuracy, evaluate, nmi
from .pipeline import PipelineConfig, run_pipeline
from .prox import RegularizerKind, prox_l1, prox_l21, prox_nuclear, \
    prox_sq_frobenius, regularizer_value
from .rpcm import RpcmConfig, RpcmResult, lsr_closed_form, rpcm_fit
from .sampling import RepresentativeSet, SubspaceSizes, coverage_probability, \
    select_kmeans, select_random, suggest_representative_count
from .spectral import cluster_embedding, kmeans, normalize_codes, spectral_embed
from .synth import SynthConfig, four_lines_dataset, generate

__version__ = "0.1.0"

__all__ = [
    "EncoderConfig", "EncoderParams", "encoder_init", "forward",
    "jacobian_frobenius_norm", "train_to_target",
    "LeascClustering", "RpcmCoder",
    "accuracy", "evaluate", "nmi",
    "PipelineConfig", "run_pipeline",
    "RegularizerKind", "prox_l1", "prox_l21", "prox_nuclear",
    "prox_sq_frobenius", "regularizer_value",
    "RpcmConfig", "RpcmResult", "lsr_closed_form", "rpcm_fit",
    "RepresentativeSet", "SubspaceSizes", "coverage_probability",
    "select_kmeans", "select_random", "suggest_representative_count",
    "cluster_embedding", "kmeans", "normalize_codes", "spectral_embed",
    "SynthConfig", "four_lines_dataset", "generate",
]
