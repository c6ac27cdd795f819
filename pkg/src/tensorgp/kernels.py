"""Covariance functions over latent factor rows.

Each mode of the model gets a Gram matrix ``gram(spec, X)`` where the rows
of ``X`` are that mode's latent factors.  Training needs derivatives of the
Gram matrix with respect to ``X``; both directions of the chain rule are
provided: :func:`gram_directional_grad` (forward, d gram(X + t dX)/dt) and
:func:`gram_weighted_grad` (reverse, the gradient of <G, gram(X)> for a
symmetric weight matrix G).  The two are adjoint linear maps and are tested
against each other and against finite differences.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NumericError

__all__ = ["KernelSpec", "gram", "gram_directional_grad", "gram_weighted_grad"]

FAMILIES = ("linear", "rbf", "polynomial", "matern")
MATERN_ORDERS = (1.5, 2.5)


@dataclass(frozen=True)
class KernelSpec:
    """Kernel family plus hyperparameters.

    ``jitter`` is added to the Gram diagonal for conditioning; ``None``
    resolves to 1e-6 * variance.  ``matern_order`` must be 1.5 or 2.5
    (the half-integer orders with closed forms).
    """

    family: str = "rbf"
    lengthscale: float = 1.0
    variance: float = 1.0
    degree: int = 2
    bias: float = 1.0
    matern_order: float = 1.5
    jitter: float = field(default=None)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigError(
                "unknown kernel family %r (choose from %s)" % (self.family, ", ".join(FAMILIES))
            )
        if self.lengthscale <= 0 or self.variance <= 0:
            raise ConfigError("lengthscale and variance must be positive")
        if self.degree < 1 or self.bias < 0:
            raise ConfigError("polynomial degree must be >= 1 and bias >= 0")
        if self.matern_order not in MATERN_ORDERS:
            raise ConfigError("matern_order must be 1.5 or 2.5")
        if self.jitter is None:
            object.__setattr__(self, "jitter", 1e-6 * self.variance)
        elif self.jitter < 0:
            raise ConfigError("jitter must be >= 0")


def _check_finite(X):
    X = np.asarray(X, dtype=float)
    if not np.isfinite(X).all():
        raise NumericError("kernel input contains non-finite values")
    if X.ndim != 2:
        raise NumericError("kernel input must be a 2-D row matrix")
    return X


def _sqdist(X):
    # Clipped at 0 to absorb rounding in the expanded form.
    g = X @ X.T
    d = np.diag(g)
    return np.maximum(d[:, None] + d[None, :] - 2.0 * g, 0.0)


def _matern_scale(spec):
    return np.sqrt(3.0 if spec.matern_order == 1.5 else 5.0) / spec.lengthscale


def gram(spec, X):
    """Pairwise kernel matrix of the rows of ``X``, plus jitter * I.

    Returns a symmetric (n, n) matrix.  Families:

    - linear:      v * x.y
    - rbf:         v * exp(-|x - y|^2 / (2 l^2))
    - polynomial:  v * (x.y + bias)^degree
    - matern:      v * (1 + a) exp(-a)            (order 3/2)
                   v * (1 + a + a^2/3) exp(-a)    (order 5/2)
      with a = sqrt(3 or 5) * |x - y| / l
    """
    X = _check_finite(X)
    v = spec.variance
    if spec.family == "linear":
        K = v * (X @ X.T)
    elif spec.family == "rbf":
        K = v * np.exp(-_sqdist(X) / (2.0 * spec.lengthscale**2))
    elif spec.family == "polynomial":
        K = v * (X @ X.T + spec.bias) ** spec.degree
    else:
        a = _matern_scale(spec) * np.sqrt(_sqdist(X))
        if spec.matern_order == 1.5:
            K = v * (1.0 + a) * np.exp(-a)
        else:
            K = v * (1.0 + a + a**2 / 3.0) * np.exp(-a)
    K = 0.5 * (K + K.T)
    return K + spec.jitter * np.eye(len(X))


def _matern_radial_factor(spec, X):
    # W such that d k(x_i, x_j) / d x_i = W_ij * (x_i - x_j); finite at
    # coincident rows (the d -> 0 limit is taken analytically).
    c = _matern_scale(spec)
    a = c * np.sqrt(_sqdist(X))
    if spec.matern_order == 1.5:
        return -spec.variance * c**2 * np.exp(-a)
    return -spec.variance * c**2 / 3.0 * (1.0 + a) * np.exp(-a)


def gram_directional_grad(spec, X, dX):
    """Directional derivative of ``gram(spec, X)`` along ``dX``.

    Linear in ``dX``; the jitter term is constant and contributes nothing.
    """
    X = _check_finite(X)
    dX = np.asarray(dX, dtype=float)
    if dX.shape != X.shape:
        raise NumericError("dX must have the same shape as X")
    P = X @ dX.T
    inner = P + P.T  # d(x_i . x_j)
    if spec.family == "linear":
        return spec.variance * inner
    if spec.family == "polynomial":
        base = (X @ X.T + spec.bias) ** (spec.degree - 1)
        return spec.variance * spec.degree * base * inner
    # Stationary families depend on d|x_i - x_j|^2 = 2 (x_i - x_j).(dx_i - dx_j).
    a = np.einsum("ij,ij->i", X, dX)
    s = a[:, None] + a[None, :] - inner
    if spec.family == "rbf":
        K0 = spec.variance * np.exp(-_sqdist(X) / (2.0 * spec.lengthscale**2))
        return -K0 * s / spec.lengthscale**2
    return _matern_radial_factor(spec, X) * s


def gram_weighted_grad(spec, X, G):
    """Gradient of ``sum_ij G_ij * gram(spec, X)_ij`` with respect to ``X``.

    ``G`` must be symmetric (sensitivities to a symmetric Gram matrix).
    Adjoint of :func:`gram_directional_grad`: for any dX,

        <gram_weighted_grad(s, X, G), dX> == <G, gram_directional_grad(s, X, dX)>
    """
    X = _check_finite(X)
    G = np.asarray(G, dtype=float)
    G = 0.5 * (G + G.T)
    if spec.family == "linear":
        return 2.0 * spec.variance * G @ X
    if spec.family == "polynomial":
        H = spec.variance * spec.degree * (X @ X.T + spec.bias) ** (spec.degree - 1) * G
        return 2.0 * H @ X
    if spec.family == "rbf":
        W = -spec.variance / spec.lengthscale**2 * np.exp(
            -_sqdist(X) / (2.0 * spec.lengthscale**2)
        )
    else:
        W = _matern_radial_factor(spec, X)
    H = G * W
    return 2.0 * (H.sum(axis=1)[:, None] * X - H @ X)
