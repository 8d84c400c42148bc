"""Automorphisms of the matrix ball R_I / R_II and of G2.

A :class:`CartanAut` is ``x -> U Phi_b(x) V`` with

    Phi_b(x) = (1 - b b*)^{-1/2} (b - x) (1 - b* x)^{-1} (1 - b* b)^{1/2}.

``Phi_b`` swaps 0 and b and is an involution. In R_II mode the center is
symmetric and ``V = U^t``, which keeps symmetric matrices symmetric.

A :class:`G2Aut` acts on G2 by symmetrizing a disc automorphism
``m(l) = rotation (a - l) / (1 - conj(a) l)`` over both roots, followed by
``(s, p) -> (w s, w^2 p)``; it is evaluated root-free.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import mat2
from .domains import G2Point
from .errors import CenterOutsideBall, DegenerateDenominator, InputError, SingularResolvent
from .mat2 import I2, UnitaryParam
from .settings import DEFAULT

R_I = "R_I"
R_II = "R_II"


@dataclass(frozen=True, eq=False)
class CartanAut:
    center: np.ndarray = field(default_factory=lambda: np.zeros((2, 2), complex))
    left: np.ndarray = field(default_factory=lambda: I2.copy())
    right: np.ndarray | None = None
    mode: str = R_I

    def __post_init__(self):
        b = mat2.as_mat(self.center).copy()
        u = mat2.as_mat(self.left).copy()
        if self.mode not in (R_I, R_II):
            raise InputError(f"unknown mode {self.mode!r}")
        if self.right is None:
            v = u.T.copy() if self.mode == R_II else I2.copy()
        else:
            v = mat2.as_mat(self.right).copy()
        if mat2.operator_norm(b) >= 1 - DEFAULT.center_margin:
            raise CenterOutsideBall(f"center norm {mat2.operator_norm(b):.12f} too close to 1")
        if not (mat2.is_unitary(u, 1e-9) and mat2.is_unitary(v, 1e-9)):
            raise InputError("unitary factors are not unitary")
        if self.mode == R_II:
            if not mat2.is_symmetric(b, DEFAULT.symmetric):
                raise InputError("R_II automorphism needs a symmetric center")
            if np.max(np.abs(v - u.T)) > 1e-12:
                raise InputError("R_II automorphism needs right factor = left^t")
        bd = mat2.dagger(b)
        for name, val in (("center", b), ("left", u), ("right", v),
                          ("_bd", bd),
                          ("_L", u @ mat2.hermitian_inv_sqrt(I2 - b @ bd)),
                          ("_R", mat2.hermitian_sqrt(I2 - bd @ b) @ v)):
            object.__setattr__(self, name, val)

    @classmethod
    def from_angles(cls, center, left=UnitaryParam(), right=UnitaryParam(), mode=R_I):
        u = mat2.unitary_realize(left)
        v = None if mode == R_II else mat2.unitary_realize(right)
        return cls(center, u, v, mode)

    @classmethod
    def unitary(cls, u, v, mode=R_I):
        """Pure unitary map ``x -> u x v`` (written as ``(i u)(-x)(i v)``)."""
        return cls(np.zeros((2, 2), complex), 1j * np.asarray(u), 1j * np.asarray(v), mode)

    def __call__(self, x):
        return cartan_aut_eval(self, x)

    def inverse(self):
        return cartan_aut_inverse(self)


def phi_core(L, b, bd, R, x, settings=DEFAULT):
    """``L (b - x)(1 - b* x)^{-1} R`` with broadcasting over leading axes."""
    m = I2 - bd @ x
    dm = mat2.det(m)
    if np.any(np.abs(dm) < settings.resolvent):
        raise SingularResolvent("1 - b* x is singular")
    return L @ ((b - x) @ (mat2.adj(m) / dm[..., None, None])) @ R


def cartan_aut_eval(A: CartanAut, x, settings=DEFAULT):
    x = mat2.as_mat(x)
    return phi_core(A._L, A.center, A._bd, A._R, x, settings)


@dataclass(frozen=True)
class AutComposite:
    """Generators applied left to right: ``steps[0]`` acts first."""
    steps: tuple

    def __call__(self, x):
        for g in self.steps:
            x = g(x)
        return x

    def inverse(self):
        return AutComposite(tuple(g.inverse() for g in reversed(self.steps)))


def cartan_aut_inverse(A: CartanAut) -> AutComposite:
    # y = U Phi_b(x) V  =>  x = Phi_b(U* y V*), Phi_b being an involution
    ud, vd = mat2.dagger(A.left), mat2.dagger(A.right)
    undo = CartanAut.unitary(ud, vd, A.mode)
    return AutComposite((undo, CartanAut(A.center, mode=A.mode)))


@dataclass(frozen=True)
class G2Aut:
    node: complex = 0j
    rotation: complex = 1 + 0j
    post_rotation: complex = 1 + 0j

    def __post_init__(self):
        if not abs(self.node) < 1:
            raise InputError("G2Aut node must lie in the open disc")
        for r in (self.rotation, self.post_rotation):
            if abs(abs(r) - 1) > DEFAULT.unimodular:
                raise InputError("rotations must be unimodular")

    def __call__(self, z):
        return g2_aut_eval(self, z)


def g2_aut_eval(A: G2Aut, z, settings=DEFAULT) -> G2Point:
    s = np.asarray(z[0], dtype=complex)
    p = np.asarray(z[1], dtype=complex)
    a, r, w = complex(A.node), complex(A.rotation), complex(A.post_rotation)
    ab = a.conjugate()
    den = 1 - ab * s + ab * ab * p
    if np.any(np.abs(den) < settings.denominator):
        raise DegenerateDenominator("1 - conj(a) s + conj(a)^2 p vanishes")
    s1 = -r * ((1 + abs(a) ** 2) * s - 2 * a - 2 * ab * p) / den
    p1 = r * r * (p - a * s + a * a) / den
    out = G2Point(w * s1, w * w * p1)
    if np.ndim(out.s) == 0:
        return G2Point(complex(out.s), complex(out.p))
    return out


def induced_cartan_aut(A: G2Aut, mode=R_I) -> CartanAut:
    """Scalar-center automorphism of R_I whose image under ``pi`` is ``A``.

    ``Phi_{aI}`` acts on eigenvalues by ``l -> (a - l)/(1 - conj(a) l)``;
    the two rotations are absorbed into ``U = V = w~ I`` with
    ``w~^2 = post_rotation * rotation``.
    """
    wt = np.sqrt(complex(A.post_rotation) * complex(A.rotation))
    u = wt * I2
    return CartanAut(complex(A.node) * I2, u, None if mode == R_II else u, mode)
