"""Verification toolkit for discs in G2.

A *disc* is anything callable on an array of points of the closed unit disc
returning ``(s, p)`` arrays: a :class:`RationalPair`, an
:class:`~symbidisc.family.ExtremalDisc` or a plain function. Checks that need
polynomial data (royal intersections, lifting) take a :class:`RationalPair`.

Boundary statements that hold almost everywhere are tested on finite
equispaced grids; for rational maps a violation is an open condition, so a
fine grid detects it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from . import domains
from .errors import BranchAmbiguity, IdenticallyRoyal, NotInner, RoyalIntersection, SymbidiscError
from .scalar import (BlaschkeProduct, RationalFn, blaschke_extract, cluster_roots, poly_roots,
                     rational_fit, unit_circle)
from .settings import DEFAULT


@dataclass(frozen=True)
class RationalPair:
    s: RationalFn
    p: RationalFn

    def __call__(self, lam):
        return self.s(lam), self.p(lam)

    def to_dict(self):
        def enc(c):
            return [[float(v.real), float(v.imag)] for v in c]
        return {name: {"num": enc(r.numerator), "den": enc(r.denominator)}
                for name, r in (("s", self.s), ("p", self.p))}

    @classmethod
    def from_dict(cls, d):
        def dec(c):
            return np.array([complex(a, b) for a, b in c])
        return cls(*(RationalFn(dec(d[k]["num"]), dec(d[k].get("den", [[1, 0]])))
                     for k in ("s", "p")))


def as_pair(f):
    if isinstance(f, RationalPair):
        return f
    if isinstance(f, tuple) and len(f) == 2 and all(isinstance(r, RationalFn) for r in f):
        return RationalPair(*f)
    raise TypeError("expected a RationalPair or a pair of RationalFn")


def _as_disc(f):
    if isinstance(f, tuple) and len(f) == 2 and all(isinstance(r, RationalFn) for r in f):
        return RationalPair(*f)
    return f


@dataclass
class Report:
    check: str
    grid: object
    tolerance: float
    max_residual: float
    passed: bool
    details: dict = field(default_factory=dict)

    def to_dict(self):
        out = {"check": self.check, "grid": self.grid, "tolerance": self.tolerance,
               "max_residual": self.max_residual, "pass": self.passed}
        if self.details:
            out["details"] = self.details
        return out


# -- royal variety -----------------------------------------------------------

def discriminant_numerator(f):
    """Numerator of ``s^2 - 4p`` written over ``Ds^2 Dp``."""
    f = as_pair(f)
    ns, ds = f.s.numerator, f.s.denominator
    np_, dp = f.p.numerator, f.p.denominator
    return P.polysub(P.polymul(P.polymul(ns, ns), dp), 4 * P.polymul(np_, P.polymul(ds, ds)))


def royal_intersections(f, radius=1.0, settings=DEFAULT):
    """Points of the open disc where the disc meets the royal variety.

    Roots of the discriminant numerator, repeated by multiplicity. Roots
    that are within ``settings.root_cluster`` of each other are merged, and
    a root within that distance of T counts as a boundary root: a double root
    on T is only located to about the square root of the coefficient error.
    """
    num = discriminant_numerator(f)
    scale = np.max(np.abs(num)) if num.size else 0.0
    if scale == 0 or np.all(np.abs(num) <= settings.trim * _pair_scale(f)):
        raise IdenticallyRoyal("discriminant s^2 - 4p vanishes identically")
    roots = np.array(cluster_roots(poly_roots(num), settings.root_cluster))
    return [complex(r) for r in roots if abs(r) < radius - settings.root_cluster]


def _pair_scale(f):
    f = as_pair(f)
    c = [f.s.numerator, f.s.denominator, f.p.numerator, f.p.denominator]
    return max(np.max(np.abs(x)) for x in c) ** 3


# -- lifting through (l1, l2) -> (l1 + l2, l1 l2) -----------------------------

@dataclass
class Lift:
    lam: np.ndarray           # mesh, shape (n_theta, n_r + 1); column 0 is l = 0
    a1: np.ndarray
    a2: np.ndarray
    resubstitution: float
    max_modulus: float
    refinements: int


def _step(f, lam0, pair, lam1, depth, counter, max_refine=8, ratio=10.0):
    r1, r2 = domains.quadratic_roots(*f(np.array([lam1])))
    r1, r2 = complex(r1[0]), complex(r2[0])
    a, b = pair
    if abs(a - r1) + abs(b - r2) <= abs(a - r2) + abs(b - r1):
        new = (r1, r2)
    else:
        new = (r2, r1)
    move = max(abs(a - new[0]), abs(b - new[1]))
    if abs(r1 - r2) > ratio * move:
        return new
    if depth >= max_refine:
        raise BranchAmbiguity(f"cannot separate root branches near {lam1}")
    counter[0] += 1
    mid = (lam0 + lam1) / 2
    half = _step(f, lam0, pair, mid, depth + 1, counter, max_refine, ratio)
    return _step(f, mid, half, lam1, depth + 1, counter, max_refine, ratio)


def lift_to_bidisc(f, grid_size=(32, 64), r_max=0.99, settings=DEFAULT) -> Lift:
    """Continue the two roots of ``z^2 - s z + p`` radially from the origin.

    Returns both branches on a polar mesh of ``grid_size = (n_r, n_theta)``.
    Raises :class:`RoyalIntersection` when the disc meets the royal variety
    in the open disc (checked on the discriminant polynomial and on the mesh)
    and :class:`BranchAmbiguity` when 8 step halvings do not separate the
    branches.
    """
    pair = as_pair(f)
    hits = royal_intersections(pair, 1.0, settings)
    if hits:
        raise RoyalIntersection(f"disc meets the royal variety at {hits}", hits)
    n_r, n_t = grid_size
    radii = r_max * np.arange(n_r + 1) / n_r
    theta = 2 * np.pi * np.arange(n_t) / n_t
    lam = radii[None, :] * np.exp(1j * theta)[:, None]
    s, p = pair(lam)
    disc = s * s - 4 * p
    if np.any(np.abs(disc) <= settings.discriminant):
        bad = lam[np.abs(disc) <= settings.discriminant]
        raise RoyalIntersection("discriminant vanishes on the mesh", list(bad))
    r1, r2 = domains.quadratic_roots(s, p)
    a1 = np.empty_like(lam)
    a2 = np.empty_like(lam)
    a1[:, 0] = r1[0, 0]
    a2[:, 0] = r2[0, 0]
    counter = [0]
    for i in range(1, n_r + 1):
        prev1, prev2 = a1[:, i - 1], a2[:, i - 1]
        c1, c2 = r1[:, i], r2[:, i]
        keep = np.abs(prev1 - c1) + np.abs(prev2 - c2) <= np.abs(prev1 - c2) + np.abs(prev2 - c1)
        n1, n2 = np.where(keep, c1, c2), np.where(keep, c2, c1)
        move = np.maximum(np.abs(prev1 - n1), np.abs(prev2 - n2))
        ok = np.abs(c1 - c2) > 10 * move
        a1[:, i], a2[:, i] = n1, n2
        for j in np.nonzero(~ok)[0]:
            counter[0] += 1
            mid = (lam[j, i - 1] + lam[j, i]) / 2
            half = _step(pair, lam[j, i - 1], (prev1[j], prev2[j]), mid, 1, counter)
            a1[j, i], a2[j, i] = _step(pair, mid, half, lam[j, i], 1, counter)
    resub = float(max(np.max(np.abs(a1 + a2 - s)), np.max(np.abs(a1 * a2 - p))))
    modulus = float(max(np.max(np.abs(a1)), np.max(np.abs(a2))))
    return Lift(lam, a1, a2, resub, modulus, counter[0])


# -- boundary checks ---------------------------------------------------------

def is_g2_inner(f, n_samples=1024, tol=DEFAULT.boundary) -> Report:
    disc = _as_disc(f)
    s, p = disc(unit_circle(n_samples))
    res = domains.shilov_residual(s, p)
    worst = float(np.max(res)) if np.all(np.isfinite(res)) else float("inf")
    return Report("inner", n_samples, tol, worst, worst <= tol, {
        "max_abs_p_deviation": float(np.max(np.abs(np.abs(p) - 1))),
        "max_s_minus_conj_s_p": float(np.max(np.abs(s - np.conj(s) * p))),
    })


PROPER_RADII = (0.9, 0.99, 0.999, 0.9999, 0.99999, 0.999999)


def is_proper_disc(f, radii=PROPER_RADII, tol=1e-2, n_samples=1024, tail=3) -> Report:
    """Radial decay of the G2 defining-function gap ``1 - (|s - s* p| + |p|^2)``.

    For each radius the largest gap over the circle is recorded. Passes when
    the gaps over the last ``tail`` radii strictly decrease and the final one
    is below ``tol``. Away from T the gap may grow before it decays, so only the
    tail is checked. This is a necessary numerical proxy for properness, not
    a certificate.
    """
    disc = _as_disc(f)
    zeta = unit_circle(n_samples)
    gaps = []
    for r in radii:
        s, p = disc(r * zeta)
        gaps.append(float(np.max(1 - domains.g2_defining(s, p))))
    end = gaps[-tail:]
    decreasing = all(b < a for a, b in zip(end, end[1:]))
    ok = bool(decreasing and gaps[-1] <= tol)
    return Report("proper", {"radii": list(radii), "n": n_samples}, tol, gaps[-1], ok,
                  {"gaps": gaps, "decreasing_tail": decreasing})


def offdiag_balance(psi, tol=1e-10) -> Report:
    """``|psi_12| == |psi_21|`` on boundary samples of a matrix disc."""
    psi = np.asarray(psi, dtype=complex)
    dev = np.abs(np.abs(psi[..., 0, 1]) - np.abs(psi[..., 1, 0]))
    worst = float(np.max(dev)) if dev.size else 0.0
    return Report("offdiag_balance", int(dev.size), tol, worst, worst <= tol)


def normalize_offdiag(psi, tol=1e-10) -> Report:
    """How far ``|psi_21| <= |psi_12|`` fails on interior samples.

    ``details["transpose_fixes"]`` says whether transposing every sample,
    which swaps the off-diagonal roles and leaves ``pi`` unchanged, would meet
    the bound instead.
    """
    psi = np.asarray(psi, dtype=complex)
    excess = np.abs(psi[..., 1, 0]) - np.abs(psi[..., 0, 1])
    worst = float(max(np.max(excess), 0.0)) if excess.size else 0.0
    swapped = float(max(np.max(-excess), 0.0)) if excess.size else 0.0
    return Report("offdiag_normalization", int(excess.size), tol, worst, worst <= tol,
                  {"transpose_fixes": swapped <= tol})


def lifted_degree_check(f, m, grid_size=(24, 64), r_max=0.99, tol=1e-7) -> Report:
    """Lift a Sigma-avoiding disc and test both branches for being Blaschke
    products of degree at most ``m - 1``.
    """
    try:
        lift = lift_to_bidisc(f, grid_size, r_max)
    except RoyalIntersection as exc:
        return Report("lifted_degree", list(grid_size), tol, float("inf"), False,
                      {"error": type(exc).__name__, "message": str(exc)})
    z = lift.lam.ravel()
    degrees, worst, reasons = [], 0.0, []
    for name, branch in (("a1", lift.a1), ("a2", lift.a2)):
        fit = rational_fit(z, branch.ravel(), max_degree=m - 1, tol=1e-11)
        worst = max(worst, fit.residual)
        if fit.residual > tol:
            reasons.append(f"{name}: no rational fit of degree <= {m - 1} "
                           f"(residual {fit.residual:.2e})")
            degrees.append(None)
            continue
        try:
            B = blaschke_extract(fit.rational, tol)
        except (NotInner, SymbidiscError) as exc:
            reasons.append(f"{name}: {exc}")
            degrees.append(None)
            continue
        degrees.append(B.degree)
    ok = not reasons and all(d is not None and d <= m - 1 for d in degrees)
    return Report("lifted_degree", list(grid_size), tol, worst, ok,
                  {"degrees": degrees, "reasons": reasons,
                   "resubstitution": lift.resubstitution})


# -- planted data -----------------------------------------------------------------

def pair_from_branches(a1: RationalFn, a2: RationalFn) -> RationalPair:
    """``(a1 + a2, a1 a2)`` as rational functions over the common denominator."""
    n1, d1, n2, d2 = a1.numerator, a1.denominator, a2.numerator, a2.denominator
    den = P.polymul(d1, d2)
    s = RationalFn(P.polyadd(P.polymul(n1, d2), P.polymul(n2, d1)), den)
    return RationalPair(s, RationalFn(P.polymul(n1, n2), den))


def planted_sigma_avoiding(rng, max_degree=2, margin=1e-3, max_tries=1000):
    """Random disc ``sym_map(a1, a2)`` that stays off the royal variety.

    ``a_i = c_i + rho_i B_i`` with ``|c_i| + rho_i <= 0.95`` and ``B_i`` a
    Blaschke product of degree 1..``max_degree``, so ``|a_i| < 1`` on the
    closed disc. Draws are rejected until ``a1 - a2`` has no zero in
    ``|z| < 1 + margin``. Returns the pair and the branches ``(a1, a2)``.
    """
    for _ in range(max_tries):
        branches = []
        for _ in range(2):
            deg = int(rng.integers(1, max_degree + 1))
            zeros = [0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
                     for _ in range(deg)]
            B = BlaschkeProduct(zeros, np.exp(2j * np.pi * rng.uniform())).to_rational()
            rho = rng.uniform(0.05, 0.6)
            c = (0.95 - rho) * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
            branches.append(RationalFn(P.polyadd(c * B.denominator, rho * B.numerator),
                                       B.denominator))
        a1, a2 = branches
        diff = P.polysub(P.polymul(a1.numerator, a2.denominator),
                         P.polymul(a2.numerator, a1.denominator))
        roots = poly_roots(diff)
        if roots.size == 0 or np.min(np.abs(roots)) >= 1 + margin:
            return pair_from_branches(a1, a2), (a1, a2)
    raise SymbidiscError("no royal-avoiding draw found")
