"""Synthetic unions of linear subspaces with Gaussian noise."""

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidInputError


@dataclass
class SynthConfig:
    ambient_dim: int = 2
    num_subspaces: int = 4
    subspace_dims: list = field(default_factory=lambda: [1, 1, 1, 1])
    points_per_subspace: int = 200
    noise_sigma: float = 0.02
    coefficient_range: tuple = (0.2, 1.0)
    seed: int = 0

    def validate(self):
        if self.num_subspaces < 1:
            raise InvalidInputError("need at least one subspace")
        if len(self.subspace_dims) != self.num_subspaces:
            raise InvalidInputError("subspace_dims length must equal num_subspaces")
        for di in self.subspace_dims:
            if not 1 <= di <= self.ambient_dim - 1:
                raise InvalidInputError(
                    "subspace dimension %d out of range [1, %d]" % (di, self.ambient_dim - 1))
        if self.points_per_subspace < 1:
            raise InvalidInputError("points_per_subspace must be >= 1")
        lo, hi = self.coefficient_range
        if not 0 <= lo <= hi:
            raise InvalidInputError("coefficient_range must satisfy 0 <= lo <= hi")


@dataclass
class LabeledDataset:
    Y: np.ndarray  # d x m, one point per column
    labels: np.ndarray
    bases: list  # per-subspace d x d_i orthonormal bases


def _random_basis(rng, d, di):
    Q, R = np.linalg.qr(rng.standard_normal((d, di)))
    return Q * np.sign(np.diag(R))[None, :]


def generate(config, bases=None):
    """Sample points per subspace as B_i z + noise, deterministic per seed.

    Coefficients have magnitude uniform in coefficient_range and random sign.
    Explicit bases override the random orthonormal draw.
    """
    config.validate()
    rng = np.random.default_rng(config.seed)
    d = config.ambient_dim
    if bases is None:
        bases = [_random_basis(rng, d, di) for di in config.subspace_dims]
    else:
        bases = [np.asarray(B, dtype=float) for B in bases]
        for B, di in zip(bases, config.subspace_dims):
            if B.shape != (d, di):
                raise InvalidInputError("basis shape %r does not match config" % (B.shape,))
    blocks = []
    labels = []
    lo, hi = config.coefficient_range
    for i, B in enumerate(bases):
        di = config.subspace_dims[i]
        mags = rng.uniform(lo, hi, size=(di, config.points_per_subspace))
        signs = rng.choice([-1.0, 1.0], size=(di, config.points_per_subspace))
        pts = B @ (mags * signs)
        if config.noise_sigma > 0:
            pts = pts + config.noise_sigma * rng.standard_normal(pts.shape)
        blocks.append(pts)
        labels.extend([i] * config.points_per_subspace)
    return LabeledDataset(Y=np.concatenate(blocks, axis=1),
                          labels=np.array(labels, dtype=int),
                          bases=bases)


def four_lines_dataset(seed=0, points_per_subspace=200, noise_sigma=0.02):
    """800 planar points on 4 lines through the origin at 45-degree spacing."""
    angles = np.deg2rad([0.0, 45.0, 90.0, 135.0])
    bases = [np.array([[np.cos(a)], [np.sin(a)]]) for a in angles]
    config = SynthConfig(ambient_dim=2, num_subspaces=4, subspace_dims=[1, 1, 1, 1],
                         points_per_subspace=points_per_subspace,
                         noise_sigma=noise_sigma, seed=seed)
    return generate(config, bases=bases)
