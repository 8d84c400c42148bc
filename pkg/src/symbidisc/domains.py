"""Membership predicates and structural maps.

* ``G2 = {(s, p): |s - conj(s) p| + |p|^2 < 1}``, the symmetrized bidisc;
* ``R_I``: 2x2 matrices of operator norm < 1, ``R_II`` its symmetric slice;
* ``sym_map(l1, l2) = (l1 + l2, l1 l2)``, ``pi_map(x) = (tr x, det x)``,
  ``Pi_map(x) = (x11, x22, det x)``;
* the royal variety ``{(2 l, l^2)}``, i.e. the zero set of ``s^2 - 4p``.

Membership functions take an explicit ``mode`` ("interior" or "closure");
there is deliberately no default.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import mat2
from .settings import DEFAULT

INTERIOR = "interior"
CLOSURE = "closure"


class G2Point(NamedTuple):
    s: complex
    p: complex


def _check_mode(mode):
    if mode not in (INTERIOR, CLOSURE):
        raise ValueError(f"mode must be 'interior' or 'closure', not {mode!r}")


def g2_defining(s, p):
    """``|s - conj(s) p| + |p|^2``; < 1 inside G2, == 1 on its topological boundary."""
    s = np.asarray(s, dtype=complex)
    p = np.asarray(p, dtype=complex)
    return np.abs(s - np.conj(s) * p) + np.abs(p) ** 2


def g2_contains(z, mode):
    _check_mode(mode)
    val = g2_defining(*z)
    out = val < 1 if mode == INTERIOR else val <= 1
    return bool(out) if np.ndim(out) == 0 else out


def sym_map(l1, l2):
    return G2Point(np.add(l1, l2), np.multiply(l1, l2))


def pi_map(x):
    x = np.asarray(x, dtype=complex)
    return G2Point(mat2.trace(x), mat2.det(x))


def Pi_map(x):
    x = np.asarray(x, dtype=complex)
    return x[..., 0, 0], x[..., 1, 1], mat2.det(x)


def quadratic_roots(s, p):
    """Both roots of ``z^2 - s z + p`` (cancellation-free form)."""
    s = np.asarray(s, dtype=complex)
    p = np.asarray(p, dtype=complex)
    w = np.sqrt(s * s - 4 * p)
    w = np.where(np.real(np.conj(s) * w) < 0, -w, w)
    r1 = (s + w) / 2
    safe = np.abs(r1) > 0
    r2 = np.where(safe, p / np.where(safe, r1, 1), (s - w) / 2)
    return r1, r2


def shilov_residual(s, p):
    """Deviation from the algebraic Shilov description (0 on the boundary)."""
    s = np.asarray(s, dtype=complex)
    p = np.asarray(p, dtype=complex)
    return np.maximum.reduce([
        np.abs(np.abs(p) - 1),
        np.abs(s - np.conj(s) * p),
        np.maximum(np.abs(s) - 2, 0.0),
    ])


def shilov_g2_contains(z, tol=DEFAULT.boundary):
    out = shilov_residual(*z) <= tol
    return bool(out) if np.ndim(out) == 0 else out


_TORUS_CACHE = {}


def _torus_image(n):
    if n not in _TORUS_CACHE:
        t = np.exp(2j * np.pi * np.arange(n) / n)
        l1, l2 = np.meshgrid(t, t, indexing="ij")
        _TORUS_CACHE[n] = ((l1 + l2).ravel(), (l1 * l2).ravel())
    return _TORUS_CACHE[n]


def torus_step_bound(n):
    """Worst-case grid distance of points on the torus image to the grid."""
    # each factor is within angle pi/n of a grid angle, i.e. a chord of
    # 2 sin(pi/(2n)); |ds| and |dp| are both bounded by the sum of two chords
    chord = 2 * np.sin(np.pi / (2 * n))
    return float(2 * np.sqrt(2) * chord)


def _torus_d2(th, s, p):
    l1, l2 = np.exp(1j * th[:, 0]), np.exp(1j * th[:, 1])
    return np.abs(l1 + l2 - s) ** 2 + np.abs(l1 * l2 - p) ** 2


def _polish(th, s, p, iters=20):
    """Vectorized Gauss-Newton on the torus angles; returns best squared distance."""
    best = _torus_d2(th, s, p)
    for _ in range(iters):
        l1, l2 = np.exp(1j * th[:, 0]), np.exp(1j * th[:, 1])
        r1, r2 = l1 + l2 - s, l1 * l2 - p
        # d/dth of (l1 + l2, l1 l2)
        j = np.stack([np.stack([1j * l1, 1j * l2], -1),
                      np.stack([1j * l1 * l2, 1j * l1 * l2], -1)], -2)
        jr = np.concatenate([j.real, j.imag], axis=-2)
        rr = np.stack([r1.real, r2.real, r1.imag, r2.imag], -1)
        jtj = np.swapaxes(jr, -1, -2) @ jr + 1e-14 * np.eye(2)
        g = np.einsum("nij,ni->nj", jr, rr)
        th = th - np.linalg.solve(jtj, g[..., None])[..., 0]
        best = np.minimum(best, _torus_d2(th, s, p))
    return best


def shilov_distance(z, grid=360, refine=True, skip=1e-9, chunk=32):
    """Euclidean distance in C^2 from ``z`` to ``{(l1 + l2, l1 l2): l1, l2 in T}``.

    Accepts a single point or arrays ``(s, p)``. With ``refine=False`` this is
    the plain minimum over a ``grid x grid`` sampling of the torus, which
    overestimates the true distance by at most :func:`torus_step_bound`.

    With ``refine=True`` the radial projections of the roots of
    ``z^2 - s z + p`` onto T are polished by Gauss-Newton first; points whose
    candidate is already below ``skip`` do not run the grid search, the others
    are also polished from their best grid point. Every candidate is a point
    of the image, so the result is always an upper bound on the distance.
    """
    s = np.atleast_1d(np.asarray(z[0], dtype=complex)).ravel()
    p = np.atleast_1d(np.asarray(z[1], dtype=complex)).ravel()
    best = np.full(s.shape, np.inf)
    if refine:
        r1, r2 = quadratic_roots(s, p)
        th = np.stack([np.angle(r1), np.angle(r2)], -1)
        best = _polish(th, s, p)
        todo = np.nonzero(best > skip * skip)[0]
    else:
        todo = np.arange(s.size)
    S, Pm = _torus_image(grid)
    for lo in range(0, todo.size, chunk):
        idx = todo[lo:lo + chunk]
        d2 = (np.abs(S[None] - s[idx, None]) ** 2 + np.abs(Pm[None] - p[idx, None]) ** 2)
        j = np.argmin(d2, axis=1)
        g = d2[np.arange(idx.size), j]
        if refine:
            ang = np.stack(np.divmod(j, grid), -1) * (2 * np.pi / grid)
            g = np.minimum(g, _polish(ang, s[idx], p[idx]))
        best[idx] = np.minimum(best[idx], g)
    out = np.sqrt(best)
    return float(out[0]) if np.ndim(z[0]) == 0 else out.reshape(np.shape(z[0]))


def cartan_contains(x, which, mode, settings=DEFAULT):
    _check_mode(mode)
    if which not in ("R_I", "R_II"):
        raise ValueError("which must be 'R_I' or 'R_II'")
    n = mat2.operator_norm(x)
    ok = n < 1 if mode == INTERIOR else n <= 1
    if which == "R_II":
        ok = ok and mat2.is_symmetric(x, settings.symmetric)
    return bool(ok)


def royal_param(lam):
    lam = np.asarray(lam, dtype=complex)
    if np.any(np.abs(lam) >= 1):
        raise ValueError("royal_param needs |lambda| < 1")
    return G2Point(2 * lam, lam * lam)


def royal_detect(z, tol=DEFAULT.boundary):
    s, p = np.asarray(z[0], dtype=complex), np.asarray(z[1], dtype=complex)
    out = (np.abs(s * s - 4 * p) <= tol) & (np.abs(s / 2) < 1 + tol)
    return bool(out) if np.ndim(out) == 0 else out
