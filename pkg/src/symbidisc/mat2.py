"""2x2 complex matrix kit.

Matrices are plain numpy arrays of shape ``(..., 2, 2)``; every function
broadcasts over the leading axes, which the solver relies on to evaluate many
parameter vectors at once. Closed forms are used throughout (2x2 admits exact
radicals), so results do not depend on iteration counts.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotPositiveDefinite
from .settings import DEFAULT

I2 = np.eye(2, dtype=complex)
SWAP = np.array([[0, 1], [1, 0]], dtype=complex)


def as_mat(x):
    x = np.asarray(x, dtype=complex)
    if x.shape[-2:] != (2, 2):
        raise ValueError(f"expected (..., 2, 2) array, got shape {x.shape}")
    return x


def mat(x11, x12, x21, x22):
    return np.array([[x11, x12], [x21, x22]], dtype=complex)


def det(x):
    return x[..., 0, 0] * x[..., 1, 1] - x[..., 0, 1] * x[..., 1, 0]


def trace(x):
    return x[..., 0, 0] + x[..., 1, 1]


def adj(x):
    out = np.empty_like(x)
    out[..., 0, 0] = x[..., 1, 1]
    out[..., 1, 1] = x[..., 0, 0]
    out[..., 0, 1] = -x[..., 0, 1]
    out[..., 1, 0] = -x[..., 1, 0]
    return out


def inv(x):
    return adj(x) / det(x)[..., None, None]


def dagger(x):
    return np.conj(np.swapaxes(x, -1, -2))


def transpose(x):
    return np.swapaxes(x, -1, -2)


def tau(x):
    """Swap the two columns: [[x12, x11], [x22, x21]]."""
    return np.asarray(x)[..., ::-1]


def scalar(c):
    """``c * I`` for scalar or array ``c``."""
    c = np.asarray(c, dtype=complex)
    return c[..., None, None] * I2


def operator_norm(x):
    """Largest singular value from the closed form of the 2x2 Gram matrix."""
    x = as_mat(x)
    t = np.sum(np.abs(x) ** 2, axis=(-2, -1))
    d = np.abs(det(x)) ** 2
    disc = np.maximum(t * t - 4 * d, 0.0)
    out = np.sqrt(np.maximum((t + np.sqrt(disc)) / 2, 0.0))
    return out[()] if np.ndim(out) == 0 else out


def _min_eig_hermitian(a):
    t = np.real(trace(a))
    d = np.real(det(a))
    disc = np.maximum(t * t / 4 - d, 0.0)
    return t / 2 - np.sqrt(disc)


def hermitian_sqrt(a, settings=DEFAULT):
    """Positive square root of a Hermitian positive definite matrix.

    Uses sqrt(A) = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A)).
    """
    a = as_mat(a)
    if np.any(_min_eig_hermitian(a) <= settings.pos_def):
        raise NotPositiveDefinite("matrix is not positive definite")
    sd = np.sqrt(np.real(det(a)))
    denom = np.sqrt(np.real(trace(a)) + 2 * sd)
    return (a + scalar(sd)) / denom[..., None, None]


def hermitian_inv_sqrt(a, settings=DEFAULT):
    return inv(hermitian_sqrt(a, settings))


def is_unitary(x, tol=1e-10):
    x = as_mat(x)
    return bool(np.all(np.abs(dagger(x) @ x - I2) <= tol))


def is_symmetric(x, tol=1e-10):
    x = as_mat(x)
    return bool(np.all(np.abs(x - transpose(x)) <= tol))


@dataclass(frozen=True)
class UnitaryParam:
    """Four angles for U(2)::

        U = e^{i phase} [[ e^{i alpha} cos(theta),  e^{i beta} sin(theta)],
                         [-e^{-i beta} sin(theta),  e^{-i alpha} cos(theta)]]
    """
    phase: float = 0.0
    theta: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0

    def as_tuple(self):
        return (self.phase, self.theta, self.alpha, self.beta)

    def matrix(self):
        return unitary_realize(self)


def unitary_from_angles(angles):
    """Vectorized realization; ``angles`` has shape (..., 4)."""
    a = np.asarray(angles, dtype=float)
    phase, theta, alpha, beta = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    c, s = np.cos(theta), np.sin(theta)
    g = np.exp(1j * phase)
    out = np.empty(a.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = g * np.exp(1j * alpha) * c
    out[..., 0, 1] = g * np.exp(1j * beta) * s
    out[..., 1, 0] = -g * np.exp(-1j * beta) * s
    out[..., 1, 1] = g * np.exp(-1j * alpha) * c
    return out


def unitary_realize(p: UnitaryParam):
    return unitary_from_angles(p.as_tuple())


def unitary_angles(u) -> UnitaryParam:
    """Inverse of :func:`unitary_realize` (one branch)."""
    u = as_mat(u)
    phase = np.angle(det(u)) / 2
    w = u * np.exp(-1j * phase)
    theta = np.arctan2(abs(w[0, 1]), abs(w[0, 0]))
    alpha = np.angle(w[0, 0]) if abs(w[0, 0]) > 1e-15 else 0.0
    beta = np.angle(w[0, 1]) if abs(w[0, 1]) > 1e-15 else 0.0
    return UnitaryParam(float(phase), float(theta), float(alpha), float(beta))


def bounded_chart(m, scale=0.95):
    """Map arbitrary matrices into the ball: ``scale * M (I + M* M)^{-1/2}``."""
    m = as_mat(m)
    return scale * (m @ hermitian_inv_sqrt(I2 + dagger(m) @ m))
