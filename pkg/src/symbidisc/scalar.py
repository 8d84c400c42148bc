"""Scalar analytic primitives on the unit disc.

Polynomial coefficients are stored in ascending order, ``c[0] + c[1] z + ...``,
which is the numpy.polynomial.polynomial convention.

Disc automorphisms follow one convention throughout the package::

    m(z) = rotation * (node - z) / (1 - conj(node) z)

so a Blaschke product is ``factor * prod_j (a_j - z) / (1 - conj(a_j) z)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import IllConditioned, InputError, NotInner, RootFailure
from .settings import DEFAULT


def unit_circle(n):
    """``n`` equispaced points on T starting at 1."""
    return np.exp(2j * np.pi * np.arange(n) / n)


@dataclass(frozen=True)
class MoebiusMap:
    node: complex = 0j
    rotation: complex = 1 + 0j

    def __post_init__(self):
        if not abs(self.node) < 1:
            raise InputError(f"Moebius node {self.node} is not in the open disc")
        if abs(abs(self.rotation) - 1) > DEFAULT.unimodular:
            raise InputError(f"rotation {self.rotation} is not unimodular")

    def __call__(self, z):
        return moebius_eval(self, z)


def moebius_eval(m: MoebiusMap, z):
    z = np.asarray(z, dtype=complex)
    out = m.rotation * (m.node - z) / (1 - np.conj(m.node) * z)
    return out[()] if out.ndim == 0 else out


def moebius_factor(node, z):
    """``(node - z) / (1 - conj(node) z)`` without validation (array friendly)."""
    return (node - z) / (1 - np.conj(node) * z)


@dataclass(frozen=True)
class BlaschkeProduct:
    zeros: tuple = ()
    unimodular_factor: complex = 1 + 0j

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        object.__setattr__(self, "zeros", zs)
        object.__setattr__(self, "unimodular_factor", complex(self.unimodular_factor))
        for a in zs:
            if not abs(a) < 1:
                raise InputError(f"Blaschke zero {a} is not in the open disc")
        if abs(abs(self.unimodular_factor) - 1) > DEFAULT.unimodular:
            raise InputError(f"factor {self.unimodular_factor} is not unimodular")

    @property
    def degree(self):
        return len(self.zeros)

    def __call__(self, z):
        return blaschke_eval(self, z)

    def to_rational(self) -> RationalFn:
        num = np.array([1.0 + 0j])
        den = np.array([1.0 + 0j])
        for a in self.zeros:
            num = P.polymul(num, [a, -1.0])
            den = P.polymul(den, [1.0, -np.conj(a)])
        return RationalFn(self.unimodular_factor * num, den)


def blaschke_eval(B: BlaschkeProduct, z):
    z = np.asarray(z, dtype=complex)
    out = np.full(z.shape, B.unimodular_factor, dtype=complex)
    for a in B.zeros:
        out = out * moebius_factor(a, z)
    return out[()] if out.ndim == 0 else out


def trim_coefficients(c, tol=DEFAULT.trim):
    """Drop trailing coefficients below ``tol`` relative to the largest one."""
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0:
        return np.zeros(1, dtype=complex)
    keep = np.nonzero(np.abs(c) > tol * scale)[0]
    return c[: keep[-1] + 1].copy()


@dataclass(frozen=True)
class RationalFn:
    numerator: np.ndarray
    denominator: np.ndarray = field(default_factory=lambda: np.ones(1, dtype=complex))

    def __post_init__(self):
        num = np.atleast_1d(np.asarray(self.numerator, dtype=complex))
        den = np.atleast_1d(np.asarray(self.denominator, dtype=complex))
        if not np.any(den):
            raise InputError("denominator is identically zero")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = P.polyval(z, self.numerator) / P.polyval(z, self.denominator)
        return out[()] if out.ndim == 0 else out

    def degrees(self, tol=DEFAULT.trim):
        """(deg numerator, deg denominator) after trailing-coefficient trimming."""
        num = trim_coefficients(self.numerator, tol)
        den = trim_coefficients(self.denominator, tol)
        deg_num = len(num) - 1 if np.any(num) else 0
        return deg_num, len(den) - 1

    @property
    def degree(self):
        return max(self.degrees())

    def trimmed(self, tol=DEFAULT.trim):
        return RationalFn(trim_coefficients(self.numerator, tol),
                          trim_coefficients(self.denominator, tol))

    def poles(self):
        return poly_roots(trim_coefficients(self.denominator))

    def is_analytic_on_closed_disc(self, margin=0.0):
        """True when no denominator root lies in ``|z| <= 1 + margin``.

        Roots shared with the numerator are not cancelled, so a removable
        singularity counts as a pole here.
        """
        poles = self.poles()
        return bool(np.all(np.abs(poles) > 1 + margin)) if poles.size else True


def poly_roots(c, polish=2):
    """Roots of the ascending-order polynomial ``c`` via companion eigenvalues.

    A few Newton steps are applied to each eigenvalue; they are skipped for a
    root whenever they would increase the polynomial residual.
    """
    c = trim_coefficients(c, 0.0)
    n = len(c) - 1
    if n < 1:
        return np.zeros(0, dtype=complex)
    comp = np.zeros((n, n), dtype=complex)
    comp[1:, :-1] = np.eye(n - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    try:
        roots = np.linalg.eigvals(comp)
    except np.linalg.LinAlgError as exc:
        raise RootFailure(str(exc)) from exc
    if not np.all(np.isfinite(roots)):
        raise RootFailure("companion eigenvalues are not finite")
    dc = P.polyder(c)
    for _ in range(polish):
        f = P.polyval(roots, c)
        df = P.polyval(roots, dc)
        ok = np.abs(df) > 1e-300
        trial = roots.copy()
        trial[ok] = roots[ok] - f[ok] / df[ok]
        better = np.abs(P.polyval(trial, c)) < np.abs(f)
        roots = np.where(better, trial, roots)
    return roots


def cluster_roots(roots, radius=DEFAULT.root_cluster):
    """Replace groups of roots closer than ``radius`` by their centroid.

    Multiplicity is kept by repetition, so a double root ``r`` comes back as
    ``[r, r]``.
    """
    roots = list(np.asarray(roots, dtype=complex))
    out = []
    while roots:
        r = roots.pop(0)
        group = [r]
        changed = True
        while changed:
            changed = False
            centre = np.mean(group)
            for q in list(roots):
                if abs(q - centre) < radius:
                    group.append(q)
                    roots.remove(q)
                    changed = True
        out.extend([complex(np.mean(group))] * len(group))
    return out


def blaschke_extract(f: RationalFn, tol=1e-8, n_grid=1024, snap=DEFAULT.snap) -> BlaschkeProduct:
    """Recover the finite Blaschke product represented by a rational function.

    Raises :class:`NotInner` when ``|f|`` deviates from 1 on the unit circle by
    more than ``tol``, or when the rebuilt product does not reproduce ``f``.
    """
    zeta = unit_circle(n_grid)
    vals = f(zeta)
    dev = np.max(np.abs(np.abs(vals) - 1))
    if not np.isfinite(dev) or dev > tol:
        raise NotInner(f"boundary modulus deviates from 1 by {dev:.3e} > {tol:.1e}")
    roots = np.array(cluster_roots(poly_roots(f.trimmed().numerator)))
    zeros = [complex(r) for r in roots if abs(r) < 1 - snap]
    bare = BlaschkeProduct(zeros)(zeta)
    ratio = vals / bare
    factor = np.mean(ratio)
    if abs(factor) < 0.5:
        raise NotInner("unimodular factor is not consistent on the circle")
    factor /= abs(factor)
    B = BlaschkeProduct(zeros, factor)
    err = np.max(np.abs(B(zeta) - vals))
    if err > 10 * tol:
        raise NotInner(f"Blaschke resubstitution error {err:.3e} > {10 * tol:.1e}")
    return B


@dataclass
class FitResult:
    rational: RationalFn
    residual: float
    degree: int          # type (degree, degree) at which the fit stopped
    condition: float


def _fit_at_degree(z, f, d):
    V = np.vander(z, d + 1, increasing=True)
    A = np.hstack([V, -f[:, None] * V])
    colscale = np.linalg.norm(A, axis=0)
    colscale[colscale == 0] = 1
    _, sv, vh = np.linalg.svd(A / colscale, full_matrices=False)
    coef = vh[-1].conj() / colscale
    num, den = coef[: d + 1], coef[d + 1:]
    cond = sv[0] / sv[-2] if len(sv) > 1 and sv[-2] > 0 else np.inf
    return num, den, cond


def _normalise(num, den):
    den_t = trim_coefficients(den)
    if abs(den_t[0]) > 1e-8 * np.max(np.abs(den_t)):
        c = den_t[0]
    else:
        c = den_t[np.argmax(np.abs(den_t))]
    return num / c, den / c


def rational_fit(z, f=None, max_degree=1, tol=1e-10, min_degree=0,
                 settings=DEFAULT) -> FitResult:
    """Linearized least-squares rational fit of type (d, d), d <= ``max_degree``.

    ``z`` is either an array of sample points (with values ``f``) or a
    sequence of ``(point, value)`` pairs. Degrees are tried from
    ``min_degree`` upwards and the first one whose max sample residual is
    below ``tol * (1 + max|f|)`` is returned, so the reported type is minimal
    and the coefficient vector is unique up to scale. If no degree reaches
    the tolerance the ``max_degree`` fit is returned together with its
    residual; callers decide whether that is acceptable.
    """
    if f is None:
        pairs = np.asarray(list(z), dtype=complex)
        z, f = pairs[:, 0], pairs[:, 1]
    z = np.asarray(z, dtype=complex).ravel()
    f = np.asarray(f, dtype=complex).ravel()
    if len(z) != len(f):
        raise InputError("sample points and values differ in length")
    if len(z) < 2 * max_degree + 2:
        raise InputError(f"need at least {2 * max_degree + 2} samples, got {len(z)}")
    scale = 1 + np.max(np.abs(f))
    best = None
    for d in range(min_degree, max_degree + 1):
        num, den, cond = _fit_at_degree(z, f, d)
        if cond > settings.fit_condition:
            raise IllConditioned(f"degree {d} fit has condition estimate {cond:.2e}")
        if not np.any(trim_coefficients(den)):
            continue                    # null vector with no denominator
        num, den = _normalise(num, den)
        r = RationalFn(num, den)
        with np.errstate(all="ignore"):
            res = float(np.max(np.abs(r(z) - f)))
        if not np.isfinite(res):
            res = np.inf
        best = FitResult(r, res, d, float(cond))
        if res <= tol * scale:
            break
    if best is None:
        raise IllConditioned("every fit has a vanishing denominator")
    return best
