"""Unified RPCM solver: Jacobi-proximal ADMM over (J, Z, E) plus encoder training.

The self-expressive program

    min ||Z - f(X; theta)||_F^2 + abar*R1(J) + alpha*R2(Z) + beta*R3(E)
    s.t. X = X Z + E,  J = Z   (diag(Z) = 0 for the constrained variants)

is solved by updating J, Z and E in parallel from iteration-k values, each via
one linearized proximal step, with dual ascent on the two constraint residuals
and a geometrically growing penalty. The encoder is trained toward the code
iterate either every outer iteration or once after convergence.
"""

from dataclasses import dataclass, field

import numpy as np

from . import encoder as enc
from .exceptions import ConfigError, InvalidInputError, NumericError
from .prox import PROX_BY_KIND, RegularizerKind

# Regularizer assignment per variant: (R1 on J, R2 on Z or None, R3 on E,
# whether diag(Z)=0 is enforced).
VARIANTS = {
    "f2": (RegularizerKind.SQUARED_FROBENIUS, None,
           RegularizerKind.SQUARED_FROBENIUS, True),
    "l1": (RegularizerKind.L1, None, RegularizerKind.L21, True),
    "nuclear": (RegularizerKind.NUCLEAR, None, RegularizerKind.L21, False),
    "elastic": (RegularizerKind.L1, RegularizerKind.SQUARED_FROBENIUS,
                RegularizerKind.L21, True),
}


@dataclass
class RpcmConfig:
    variant: str = "f2"
    alpha_bar: float = 1.0
    alpha: float = 0.0  # only meaningful for the elastic-net variant
    beta: float = 0.1
    gamma: float = 1.0
    mu0: float = 1e-2
    mu_growth: float = 1.2
    mu_max: float = 1e6
    eps1: float = 1e-2
    eps2: float = 1e-4
    max_outer: int = 300
    tau_safety: float = 1.01
    train_schedule: str = "TrainLast"  # or "PerIteration"
    encoder: enc.EncoderConfig = field(default_factory=enc.EncoderConfig)

    def validate(self):
        if self.variant not in VARIANTS:
            raise ConfigError("unknown variant %r; expected one of %s"
                              % (self.variant, sorted(VARIANTS)))
        if self.variant != "elastic" and self.alpha != 0.0:
            raise ConfigError("alpha must be 0 for the %s variant" % self.variant)
        if not 0.0 < self.gamma < 2.0:
            raise ConfigError("gamma must lie strictly in (0, 2)")
        if self.alpha_bar < 0 or self.alpha < 0 or self.beta <= 0:
            raise ConfigError("regularization weights out of range")
        if self.mu0 <= 0 or self.mu_growth <= 1.0 or self.mu_max <= 0:
            raise ConfigError("invalid mu schedule")
        if self.eps1 <= 0 or self.eps2 < 0:
            raise ConfigError("tolerances must be positive")
        if self.max_outer < 1:
            raise ConfigError("max_outer must be >= 1")
        if self.tau_safety <= 1.0:
            raise ConfigError("tau safety factor must exceed 1")
        if self.train_schedule not in ("TrainLast", "PerIteration"):
            raise ConfigError("train_schedule must be TrainLast or PerIteration")
        self.encoder.validate()


@dataclass
class RpcmState:
    Z: np.ndarray
    J: np.ndarray
    E: np.ndarray
    Q1: np.ndarray
    Q2: np.ndarray
    mu: float
    iter: int = 0
    residual_history: list = field(default_factory=list)
    # squared spectral norm of the Z-block coupling [-I; X], cached by the fit
    a1_sq_norm: float = 0.0


@dataclass
class RpcmResult:
    params: enc.EncoderParams
    Z: np.ndarray
    E: np.ndarray
    converged: bool
    iterations: int
    residual_history: list
    final_train_loss: float


def spectral_norm(X, tol=1e-6, max_iter=5000):
    """Largest singular value of X via power iteration on X^T X."""
    X = np.asarray(X, dtype=float)
    v = np.ones(X.shape[1]) / np.sqrt(X.shape[1])
    s_prev = 0.0
    for _ in range(max_iter):
        w = X.T @ (X @ v)
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        v = w / norm
        s = np.sqrt(norm)
        if abs(s - s_prev) <= tol * s:
            return float(s)
        s_prev = s
    return float(s_prev)


def _step_sizes(mu, gamma, a1_sq_norm, safety):
    base = 2.0 * mu / (2.0 - gamma)
    tau_j = safety * base
    tau_z = safety * base * a1_sq_norm
    tau_e = safety * base
    return tau_j, tau_z, tau_e


def _guard_taus(tau_j, tau_z, tau_e, mu, gamma, a1_sq_norm):
    bound = 2.0 * mu / (2.0 - gamma)
    if tau_j <= bound or tau_e <= bound or tau_z <= bound * a1_sq_norm:
        raise ConfigError("proximal step sizes violate the JP-ADMM condition")


def _zero_diag(M):
    np.fill_diagonal(M, 0.0)
    return M


def jacobi_step(state, X, anchorZ, config):
    """One parallel proximal update of (J, Z, E) from iteration-k values."""
    r1, r2, r3, zero_diag = VARIANTS[config.variant]
    mu = state.mu
    tau_j, tau_z, tau_e = _step_sizes(mu, config.gamma, state.a1_sq_norm,
                                      config.tau_safety)
    _guard_taus(tau_j, tau_z, tau_e, mu, config.gamma, state.a1_sq_norm)

    J, Z, E, Q1, Q2 = state.J, state.Z, state.E, state.Q1, state.Q2
    data_gap = X @ anchorZ + E - X - Q2 / mu  # residual of X = XZ + E

    J_new = PROX_BY_KIND[r1](J - (mu / tau_j) * (J - Z + Q1 / mu),
                             config.alpha_bar / tau_j)
    z_anchor_corrected = anchorZ - (mu / tau_z) * (
        -(J - anchorZ + Q1 / mu) + X.T @ data_gap)
    if r2 is None:
        Z_new = z_anchor_corrected
    else:
        Z_new = PROX_BY_KIND[r2](z_anchor_corrected, config.alpha / tau_z)
    E_new = PROX_BY_KIND[r3](E - (mu / tau_e) * data_gap, config.beta / tau_e)

    if zero_diag:
        _zero_diag(J_new)
        _zero_diag(Z_new)
    if not (np.all(np.isfinite(J_new)) and np.all(np.isfinite(Z_new))
            and np.all(np.isfinite(E_new))):
        raise NumericError("RPCM iterate became non-finite", iteration=state.iter)

    return RpcmState(Z=Z_new, J=J_new, E=E_new, Q1=Q1.copy(), Q2=Q2.copy(),
                     mu=mu, iter=state.iter,
                     residual_history=state.residual_history,
                     a1_sq_norm=state.a1_sq_norm)


def dual_step(state, X, config):
    """Dual ascent: Q1 += gamma*mu*(J - Z), Q2 += gamma*mu*(X - XZ - E)."""
    step = config.gamma * state.mu
    Q1 = state.Q1 + step * (state.J - state.Z)
    Q2 = state.Q2 + step * (X - X @ state.Z - state.E)
    return RpcmState(Z=state.Z, J=state.J, E=state.E, Q1=Q1, Q2=Q2,
                     mu=state.mu, iter=state.iter,
                     residual_history=state.residual_history,
                     a1_sq_norm=state.a1_sq_norm)


def constraint_residual(state, X):
    return (float(np.sum((X - X @ state.Z - state.E) ** 2))
            + float(np.sum((state.J - state.Z) ** 2)))


def rpcm_fit(X, config):
    """Run the full alternating JP-ADMM / gradient-descent loop on X."""
    config.validate()
    X = np.asarray(X, dtype=float)
    if X.ndim != 2 or X.shape[1] < 2:
        raise InvalidInputError("X must be a d x n matrix with n >= 2 columns")
    if not np.all(np.isfinite(X)):
        raise InvalidInputError("X contains non-finite entries")
    d, n = X.shape

    params = enc.encoder_init(d, n, config.encoder)
    state = RpcmState(Z=np.zeros((n, n)), J=np.zeros((n, n)),
                      E=np.zeros((d, n)), Q1=np.zeros((n, n)),
                      Q2=np.zeros((d, n)), mu=config.mu0,
                      a1_sq_norm=1.0 + spectral_norm(X) ** 2)

    converged = False
    train_loss = float("nan")
    for it in range(config.max_outer):
        state.iter = it
        if config.train_schedule == "PerIteration":
            params, train_loss = enc.train_to_target(X, state.Z, params,
                                                     config.encoder, config.eps1)
            state.Z = enc.forward(X, params)
        state = jacobi_step(state, X, state.Z, config)
        state = dual_step(state, X, config)
        state.mu = min(config.mu_growth * state.mu, config.mu_max)
        residual = constraint_residual(state, X)
        state.residual_history.append(residual)
        if residual < config.eps2:
            converged = True
            state.iter = it + 1
            break
        state.iter = it + 1

    target = state.Z
    if config.train_schedule == "TrainLast":
        params, train_loss = enc.train_to_target(X, target, params,
                                                 config.encoder, config.eps1)
    return RpcmResult(params=params, Z=state.Z, E=state.E, converged=converged,
                      iterations=state.iter,
                      residual_history=state.residual_history,
                      final_train_loss=train_loss)


def lsr_closed_form(X, lam):
    """Ridge self-expression baseline: (X^T X + lam I)^{-1} X^T X, diag zeroed."""
    X = np.asarray(X, dtype=float)
    if lam <= 0:
        raise InvalidInputError("lambda must be positive")
    G = X.T @ X
    Z = np.linalg.solve(G + lam * np.eye(G.shape[0]), G)
    return _zero_diag(Z)
