"""Fully-connected encoder: forward pass, backprop and gradient-descent training.

The encoder maps d-dimensional points (columns) to n-dimensional codes through
stacked layers ``activation(W_i @ h)``. There are no bias terms unless
``use_bias`` is set. Training is full-batch gradient descent on the squared
Frobenius reconstruction loss with backtracking halving of the learning rate,
so the loss history is monotone non-increasing.
"""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigError, InvalidInputError, NumericError

_ACTIVATIONS = ("relu", "tanh", "sigmoid", "identity")


def _act(name, x):
    if name == "relu":
        return np.maximum(x, 0.0)
    if name == "tanh":
        return np.tanh(x)
    if name == "sigmoid":
        return 1.0 / (1.0 + np.exp(-x))
    if name == "identity":
        return x
    raise ConfigError("unknown activation %r" % name)


def _act_deriv(name, pre):
    # Derivative evaluated at the pre-activation. ReLU subgradient at 0 is 0.
    if name == "relu":
        return (pre > 0).astype(float)
    if name == "tanh":
        t = np.tanh(pre)
        return 1.0 - t * t
    if name == "sigmoid":
        s = 1.0 / (1.0 + np.exp(-pre))
        return s * (1.0 - s)
    if name == "identity":
        return np.ones_like(pre)
    raise ConfigError("unknown activation %r" % name)


@dataclass
class EncoderConfig:
    hidden_sizes: list = field(default_factory=lambda: [1500])
    learning_rate: float = 1e-4
    max_epochs: int = 5
    init_scale: float = 0.01
    seed: int = 0
    hidden_activation: str = "relu"
    output_activation: str = "identity"
    use_bias: bool = False

    def validate(self):
        if any(int(h) < 1 for h in self.hidden_sizes):
            raise ConfigError("hidden sizes must be positive")
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")
        if self.max_epochs < 1:
            raise ConfigError("max_epochs must be >= 1")
        if self.init_scale < 0:
            raise ConfigError("init_scale must be nonnegative")
        if self.hidden_activation not in _ACTIVATIONS:
            raise ConfigError("unknown hidden activation %r" % self.hidden_activation)
        if self.output_activation not in ("identity", "relu"):
            raise ConfigError("output activation must be identity or relu")


@dataclass
class EncoderParams:
    weights: list  # ordered weight matrices, first maps the input
    biases: list  # per-layer bias vectors, or None entries when unused
    hidden_activation: str
    output_activation: str

    @property
    def input_dim(self):
        return self.weights[0].shape[1]

    @property
    def output_dim(self):
        return self.weights[-1].shape[0]

    def copy(self):
        return EncoderParams(
            weights=[W.copy() for W in self.weights],
            biases=[None if b is None else b.copy() for b in self.biases],
            hidden_activation=self.hidden_activation,
            output_activation=self.output_activation,
        )

    def _activation_of(self, layer_index):
        if layer_index == len(self.weights) - 1:
            return self.output_activation
        return self.hidden_activation


def encoder_init(d, n, config):
    """Random uniform initialization on [-init_scale, init_scale], per seed."""
    config.validate()
    if d < 1 or n < 1:
        raise InvalidInputError("input and output dimensions must be >= 1")
    rng = np.random.default_rng(config.seed)
    sizes = [int(d)] + [int(h) for h in config.hidden_sizes] + [int(n)]
    weights = []
    biases = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        weights.append(rng.uniform(-config.init_scale, config.init_scale,
                                   size=(fan_out, fan_in)))
        if config.use_bias:
            biases.append(np.zeros(fan_out))
        else:
            biases.append(None)
    return EncoderParams(weights=weights, biases=biases,
                         hidden_activation=config.hidden_activation,
                         output_activation=config.output_activation)


def _forward_trace(X, params):
    """Forward pass keeping pre-activations and activations per layer."""
    pres = []
    acts = [X]
    h = X
    for i, W in enumerate(params.weights):
        pre = W @ h
        if params.biases[i] is not None:
            pre = pre + params.biases[i][:, None]
        h = _act(params._activation_of(i), pre)
        pres.append(pre)
        acts.append(h)
    return pres, acts


def forward(X, params):
    """Evaluate the encoder on every column of X; returns an n x m matrix."""
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[0] != params.input_dim:
        raise InvalidInputError(
            "input has %r rows, encoder expects %d" % (X.shape[:1], params.input_dim))
    _, acts = _forward_trace(X, params)
    return acts[-1]


def loss_to_target(X, target, params):
    return float(np.sum((np.asarray(target, dtype=float) - forward(X, params)) ** 2))


def gradients(X, target, params):
    """Backprop gradients of ||target - f(X)||_F^2 w.r.t. weights and biases."""
    X = np.asarray(X, dtype=float)
    target = np.asarray(target, dtype=float)
    pres, acts = _forward_trace(X, params)
    if target.shape != acts[-1].shape:
        raise InvalidInputError("target shape %r does not match encoder output %r"
                                % (target.shape, acts[-1].shape))
    n_layers = len(params.weights)
    grads_w = [None] * n_layers
    grads_b = [None] * n_layers
    delta = 2.0 * (acts[-1] - target) * _act_deriv(
        params._activation_of(n_layers - 1), pres[-1])
    for i in range(n_layers - 1, -1, -1):
        grads_w[i] = delta @ acts[i].T
        if params.biases[i] is not None:
            grads_b[i] = delta.sum(axis=1)
        if i > 0:
            delta = (params.weights[i].T @ delta) * _act_deriv(
                params._activation_of(i - 1), pres[i - 1])
    return grads_w, grads_b


def train_to_target(X, target, params, config, eps1):
    """Full-batch gradient descent until the loss drops below eps1.

    The step size is halved whenever a step would increase the loss and grows
    mildly after accepted steps, so the recorded loss history never increases.
    Returns the updated parameters and the final loss.
    """
    config.validate()
    params = params.copy()
    loss = loss_to_target(X, target, params)
    if not np.isfinite(loss):
        raise NumericError("initial loss is non-finite", iteration=0)
    lr = config.learning_rate
    lr_cap = config.learning_rate * 1e6
    for epoch in range(config.max_epochs):
        if loss < eps1:
            break
        grads_w, grads_b = gradients(X, target, params)
        if not all(np.all(np.isfinite(g)) for g in grads_w):
            raise NumericError("gradient became non-finite", iteration=epoch)
        accepted = False
        while lr > 1e-300:
            trial = params.copy()
            for i in range(len(trial.weights)):
                trial.weights[i] -= lr * grads_w[i]
                if trial.biases[i] is not None:
                    trial.biases[i] -= lr * grads_b[i]
            trial_loss = loss_to_target(X, target, trial)
            if not np.isfinite(trial_loss):
                raise NumericError("loss became non-finite", iteration=epoch)
            if trial_loss <= loss:
                params, loss = trial, trial_loss
                lr = min(lr * 1.2, lr_cap)
                accepted = True
                break
            lr *= 0.5
        if not accepted:
            break  # gradient numerically zero; no descent direction left
    return params, loss


def jacobian(x, params):
    """Analytic n x d Jacobian of the encoder at a single point x."""
    x = np.asarray(x, dtype=float).reshape(-1, 1)
    if x.shape[0] != params.input_dim:
        raise InvalidInputError("point has %d entries, encoder expects %d"
                                % (x.shape[0], params.input_dim))
    pres, _ = _forward_trace(x, params)
    J = np.eye(params.input_dim)
    for i, W in enumerate(params.weights):
        deriv = _act_deriv(params._activation_of(i), pres[i][:, 0])
        J = deriv[:, None] * (W @ J)
    return J


def jacobian_frobenius_norm(x, params):
    return float(np.linalg.norm(jacobian(x, params)))
