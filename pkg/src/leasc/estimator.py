"""scikit-learn style wrappers around the RPCM coder and the full pipeline.

Estimators follow the sklearn convention of one sample per row; internally the
solver works on one point per column.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils import check_array

from . import encoder as enc
from . import pipeline as pipe
from . import rpcm


def _rpcm_config(variant, alpha_bar, alpha, beta, gamma, max_outer, eps1, eps2,
                 train_schedule, hidden_sizes, learning_rate, max_epochs,
                 init_scale, hidden_activation, output_activation, seed):
    encoder_cfg = enc.EncoderConfig(
        hidden_sizes=list(hidden_sizes), learning_rate=learning_rate,
        max_epochs=max_epochs, init_scale=init_scale, seed=seed,
        hidden_activation=hidden_activation, output_activation=output_activation)
    return rpcm.RpcmConfig(
        variant=variant, alpha_bar=alpha_bar, alpha=alpha, beta=beta,
        gamma=gamma, max_outer=max_outer, eps1=eps1, eps2=eps2,
        train_schedule=train_schedule, encoder=encoder_cfg)


class RpcmCoder(BaseEstimator, TransformerMixin):
    """Learns the parametric coder on the fitted samples as representatives.

    ``transform`` maps arbitrary points to their representative-basis codes in
    time linear in the number of points.
    """

    def __init__(self, variant="f2", alpha_bar=1.0, alpha=0.0, beta=0.1,
                 gamma=1.0, max_outer=300, eps1=1e-2, eps2=1e-4,
                 train_schedule="TrainLast", hidden_sizes=(1500,),
                 learning_rate=1e-4, max_epochs=5, init_scale=0.01,
                 hidden_activation="relu", output_activation="identity",
                 random_state=0):
        self.variant = variant
        self.alpha_bar = alpha_bar
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.max_outer = max_outer
        self.eps1 = eps1
        self.eps2 = eps2
        self.train_schedule = train_schedule
        self.hidden_sizes = hidden_sizes
        self.learning_rate = learning_rate
        self.max_epochs = max_epochs
        self.init_scale = init_scale
        self.hidden_activation = hidden_activation
        self.output_activation = output_activation
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        config = _rpcm_config(
            self.variant, self.alpha_bar, self.alpha, self.beta, self.gamma,
            self.max_outer, self.eps1, self.eps2, self.train_schedule,
            self.hidden_sizes, self.learning_rate, self.max_epochs,
            self.init_scale, self.hidden_activation, self.output_activation,
            self.random_state)
        result = rpcm.rpcm_fit(X.T, config)
        self.result_ = result
        self.encoder_params_ = result.params
        self.codes_ = result.Z.T
        self.converged_ = result.converged
        return self

    def transform(self, X):
        X = check_array(X, dtype=np.float64)
        return enc.forward(X.T, self.encoder_params_).T


class LeascClustering(BaseEstimator, ClusterMixin):
    """Full learnable subspace clustering: representatives, RPCM, landmark
    spectral clustering. ``fit`` populates ``labels_``."""

    def __init__(self, n_clusters=4, n_representatives=88, selection="kmeans",
                 variant="f2", alpha_bar=1.0, alpha=0.0, beta=0.1, gamma=1.0,
                 max_outer=300, eps1=1e-2, eps2=1e-4, train_schedule="TrainLast",
                 hidden_sizes=(1500,), learning_rate=1e-4, max_epochs=5,
                 init_scale=0.01, hidden_activation="relu",
                 output_activation="identity", row_normalize=True,
                 random_state=0):
        self.n_clusters = n_clusters
        self.n_representatives = n_representatives
        self.selection = selection
        self.variant = variant
        self.alpha_bar = alpha_bar
        self.alpha = alpha
        self.beta = beta
        self.gamma = gamma
        self.max_outer = max_outer
        self.eps1 = eps1
        self.eps2 = eps2
        self.train_schedule = train_schedule
        self.hidden_sizes = hidden_sizes
        self.learning_rate = learning_rate
        self.max_epochs = max_epochs
        self.init_scale = init_scale
        self.hidden_activation = hidden_activation
        self.output_activation = output_activation
        self.row_normalize = row_normalize
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        config = pipe.PipelineConfig(
            n_representatives=self.n_representatives, selection=self.selection,
            n_clusters=self.n_clusters, seed=self.random_state,
            row_normalize=self.row_normalize,
            rpcm=_rpcm_config(
                self.variant, self.alpha_bar, self.alpha, self.beta, self.gamma,
                self.max_outer, self.eps1, self.eps2, self.train_schedule,
                self.hidden_sizes, self.learning_rate, self.max_epochs,
                self.init_scale, self.hidden_activation, self.output_activation,
                self.random_state))
        result = pipe.run_pipeline(X.T, config)
        self.labels_ = result.labels
        self.encoder_params_ = result.fit.params
        self.representative_indices_ = result.reps.indices
        self.timings_ = result.timings
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_
