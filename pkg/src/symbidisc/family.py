"""Schur-parametrized family of rational G2-inner discs.

A member is described by ``k`` automorphisms ``Phi_1..Phi_k`` of the matrix
ball, ``k - 1`` scalar multipliers and a base Blaschke product ``b``::

    G2 variant:   f(l) = pi(Phi_1(m_1(l) Phi_2( ... m_{k-1}(l) Phi_k(diag(l, b(l))))))
    RII variant:  psi(l) = Phi_1(l Phi_2( ... l Phi_k(diag(l, b(l))))),  f = pi(tau(psi))

with ``m_j`` disc automorphisms. On the unit circle the innermost diagonal is
unitary, every level maps unitaries to unitaries, and ``pi`` sends unitaries
to the Shilov boundary of G2, so each member is G2-inner by construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import mat2
from .automorphisms import R_I, R_II, CartanAut, phi_core
from .domains import G2Point
from .errors import FitFailure, InputError
from .mat2 import I2
from .scalar import BlaschkeProduct, MoebiusMap, rational_fit

G2_MODE = "G2"
RII_MODE = "RII"


@dataclass(frozen=True, eq=False)
class SchurParams:
    k: int
    nodes: tuple
    auts: tuple
    base: BlaschkeProduct
    variant: str = G2_MODE

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "auts", tuple(self.auts))
        if self.k < 1:
            raise InputError("level count k must be >= 1")
        if self.variant not in (G2_MODE, RII_MODE):
            raise InputError(f"unknown variant {self.variant!r}")
        if len(self.auts) != self.k:
            raise InputError(f"expected {self.k} automorphisms, got {len(self.auts)}")
        want = R_II if self.variant == RII_MODE else R_I
        if any(a.mode != want for a in self.auts):
            raise InputError(f"{self.variant} variant needs {want} automorphisms")
        if self.variant == G2_MODE and len(self.nodes) != self.k - 1:
            raise InputError(f"expected {self.k - 1} Moebius nodes, got {len(self.nodes)}")
        if self.variant == RII_MODE and self.nodes:
            raise InputError("RII variant uses l itself between levels; no nodes")

    @property
    def m(self):
        """Number of interpolation nodes this member is sized for (k + deg b)."""
        return self.k + self.base.degree


class FamilyArrays(NamedTuple):
    """Batched, precomputed form of one or many parameter sets.

    Leading axis is the batch. ``node``/``node_rot`` have shape (B, k-1),
    matrices (B, k, 2, 2), ``zeros`` (B, n), ``factor`` (B,).
    """
    node: np.ndarray
    node_rot: np.ndarray
    L: np.ndarray
    b: np.ndarray
    bd: np.ndarray
    R: np.ndarray
    zeros: np.ndarray
    factor: np.ndarray
    variant: str


def to_arrays(params: SchurParams) -> FamilyArrays:
    node = np.array([[m.node for m in params.nodes]], dtype=complex).reshape(1, -1)
    rot = np.array([[m.rotation for m in params.nodes]], dtype=complex).reshape(1, -1)
    L = np.stack([a._L for a in params.auts])[None]
    b = np.stack([a.center for a in params.auts])[None]
    bd = np.stack([a._bd for a in params.auts])[None]
    R = np.stack([a._R for a in params.auts])[None]
    zeros = np.array([params.base.zeros], dtype=complex).reshape(1, -1)
    factor = np.array([params.base.unimodular_factor])
    return FamilyArrays(node, rot, L, b, bd, R, zeros, factor, params.variant)


def eval_arrays(fa: FamilyArrays, lam):
    """Matrix value of the outermost level, shape (B, N, 2, 2)."""
    lam = np.asarray(lam, dtype=complex).ravel()
    B, N = fa.L.shape[0], lam.size
    k = fa.L.shape[1]
    base = np.broadcast_to(fa.factor[:, None], (B, N)).astype(complex)
    for j in range(fa.zeros.shape[1]):
        a = fa.zeros[:, j:j + 1]
        base = base * (a - lam) / (1 - np.conj(a) * lam)
    x = np.zeros((B, N, 2, 2), dtype=complex)
    x[..., 0, 0] = lam
    x[..., 1, 1] = base
    for j in range(k - 1, -1, -1):
        if j < k - 1:
            if fa.variant == G2_MODE:
                a = fa.node[:, j:j + 1]
                mult = fa.node_rot[:, j:j + 1] * (a - lam) / (1 - np.conj(a) * lam)
            else:
                mult = lam[None, :]
            x = mult[..., None, None] * x
        sl = (slice(None), slice(j, j + 1))
        x = phi_core(fa.L[sl], fa.b[sl], fa.bd[sl], fa.R[sl], x)
    return x


def g2_from_matrix(x, apply_tau):
    if apply_tau:
        x = mat2.tau(x)
    return mat2.trace(x), mat2.det(x)


def family_eval(params: SchurParams, lam, apply_tau=False):
    """G2Point for the G2 variant, the R_II matrix for the RII variant."""
    scalar_in = np.ndim(lam) == 0
    x = eval_arrays(to_arrays(params), lam)[0]
    if params.variant == RII_MODE:
        return x[0] if scalar_in else x.reshape(np.shape(lam) + (2, 2))
    s, p = g2_from_matrix(x, apply_tau)
    if scalar_in:
        return G2Point(complex(s[0]), complex(p[0]))
    return G2Point(s.reshape(np.shape(lam)), p.reshape(np.shape(lam)))


def disc_eval(params: SchurParams, lam, apply_tau=None):
    """G2-valued disc for either variant.

    ``apply_tau`` defaults to False for the G2 variant and True for RII,
    where the disc is ``pi(tau(psi))``.
    """
    if apply_tau is None:
        apply_tau = params.variant == RII_MODE
    scalar_in = np.ndim(lam) == 0
    x = eval_arrays(to_arrays(params), lam)[0]
    s, p = g2_from_matrix(x, apply_tau)
    if scalar_in:
        return G2Point(complex(s[0]), complex(p[0]))
    return G2Point(s.reshape(np.shape(lam)), p.reshape(np.shape(lam)))


# -- sampling -----------------------------------------------------------------

def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_disc_point(rng, radius=0.9):
    r = radius * np.sqrt(rng.uniform())
    return complex(r * np.exp(2j * np.pi * rng.uniform()))


def random_center(rng, symmetric=False, scale=0.95):
    m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    if symmetric:
        m = (m + m.T) / 2
    b = mat2.bounded_chart(m, scale)
    if symmetric:
        b = (b + b.T) / 2
    return b


def random_aut(rng, mode=R_I):
    b = random_center(rng, symmetric=(mode == R_II))
    u = mat2.unitary_from_angles(rng.uniform(-np.pi, np.pi, 4))
    v = None if mode == R_II else mat2.unitary_from_angles(rng.uniform(-np.pi, np.pi, 4))
    return CartanAut(b, u, v, mode)


def family_sample(rng_seed, m, variant=G2_MODE, k=None) -> SchurParams:
    """Random member sized for ``m`` nodes: k in 1..m-1, base degree m - k."""
    if m < 2:
        raise InputError("family_sample needs m >= 2")
    rng = _rng(rng_seed)
    if k is None:
        k = int(rng.integers(1, m))
    mode = R_II if variant == RII_MODE else R_I
    nodes = ()
    if variant == G2_MODE:
        nodes = tuple(MoebiusMap(random_disc_point(rng)) for _ in range(k - 1))
    auts = tuple(random_aut(rng, mode) for _ in range(k))
    zeros = tuple(random_disc_point(rng) for _ in range(m - k))
    factor = np.exp(1j * rng.uniform(-np.pi, np.pi))
    return SchurParams(k, nodes, auts, BlaschkeProduct(zeros, factor), variant)


# -- degrees and rational form -------------------------------------------------

def degree_bound(params: SchurParams):
    """Certified upper bound on the rational degree of (s, p).

    Bookkeeping: write the current matrix as ``N/q`` and its determinant as
    ``D/q`` with all polynomials of degree <= d. Each ``Phi`` is affine in
    (entries, det) over an affine denominator, so it keeps d. A scalar factor
    ``u/v`` of degree 1 needs the common denominator ``v^2 q``, adding 2.
    """
    d = params.base.degree + 1
    d += 2 * (params.k - 1)
    return d, d


@dataclass(eq=False)
class ExtremalDisc:
    params: SchurParams
    apply_tau: bool | None = None
    _rational: tuple | None = field(default=None, repr=False)

    def __call__(self, lam):
        return disc_eval(self.params, lam, self.apply_tau)

    def rational(self):
        if self._rational is None:
            self._rational = to_rational(self.params, self.apply_tau)
        return self._rational


def to_rational(params: SchurParams, apply_tau=None, held_out=64, tol=1e-8, seed=0):
    """Fit exact rational forms for the s and p components.

    Samples ``4 (bound + 1)`` points on the circle of radius 0.9 and as many on
    T, fits at the degree bound and checks ``held_out`` random points of the
    closed disc. Raises :class:`FitFailure` above ``tol``.
    """
    bound = max(degree_bound(params))
    n = 4 * (bound + 1)
    t = np.exp(2j * np.pi * (np.arange(n) + 0.5) / n)
    z = np.concatenate([0.9 * t, t])
    s, p = disc_eval(params, z, apply_tau)
    rng = np.random.default_rng(seed)
    zh = np.sqrt(rng.uniform(size=held_out)) * np.exp(2j * np.pi * rng.uniform(size=held_out))
    sh, ph = disc_eval(params, zh, apply_tau)
    out = []
    for vals, check, name in ((s, sh, "s"), (p, ph, "p")):
        fit = rational_fit(z, vals, max_degree=bound, tol=1e-11)
        err = float(np.max(np.abs(fit.rational(zh) - check)))
        if not err <= tol:
            raise FitFailure(f"{name}-component held-out residual {err:.3e} > {tol:.1e}")
        out.append(fit.rational.trimmed())
    return tuple(out)


# -- serialization -----------------------------------------------------------

def _c(z):
    return [float(np.real(z)), float(np.imag(z))]


def params_to_dict(params: SchurParams) -> dict:
    auts = []
    for a in params.auts:
        auts.append({
            "center_re": np.real(a.center).tolist(),
            "center_im": np.imag(a.center).tolist(),
            "angles_left": list(mat2.unitary_angles(a.left).as_tuple()),
            "angles_right": list(mat2.unitary_angles(a.right).as_tuple()),
        })
    return {
        "k": params.k,
        "nodes": [_c(m.node) for m in params.nodes],
        "node_rotations": [_c(m.rotation) for m in params.nodes],
        "auts": auts,
        "base_zeros": [_c(z) for z in params.base.zeros],
        "base_factor": _c(params.base.unimodular_factor),
        "variant": params.variant,
    }


def params_from_dict(d: dict) -> SchurParams:
    try:
        variant = d.get("variant", G2_MODE)
        mode = R_II if variant == RII_MODE else R_I
        rots = d.get("node_rotations") or [[1.0, 0.0]] * len(d["nodes"])
        nodes = tuple(MoebiusMap(complex(*n), complex(*r)) for n, r in zip(d["nodes"], rots))
        auts = []
        for a in d["auts"]:
            b = np.asarray(a["center_re"], float) + 1j * np.asarray(a["center_im"], float)
            u = mat2.unitary_from_angles(a["angles_left"])
            v = None if mode == R_II else mat2.unitary_from_angles(a["angles_right"])
            if mode == R_II:
                b = (b + b.T) / 2
            auts.append(CartanAut(b, u, v, mode))
        base = BlaschkeProduct(tuple(complex(*z) for z in d["base_zeros"]),
                               complex(*d["base_factor"]))
        return SchurParams(int(d["k"]), nodes, tuple(auts), base, variant)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed family parameters: {exc!r}") from exc


def identity_aut(mode=R_I):
    """``x -> x``, written as ``(i I) Phi_0(x) (i I)``."""
    u = 1j * I2
    return CartanAut(np.zeros((2, 2), complex), u, None if mode == R_II else u, mode)
