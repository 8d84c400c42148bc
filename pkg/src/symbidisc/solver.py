"""Feasibility solver for the Pick problem in G2.

Given nodes ``l_j`` in the disc and targets ``z_j`` in G2, the scaled problem
``t l_j -> z_j`` is solvable for every ``t`` above an infimum ``t*`` and at
``t*`` it is solved by an extremal disc, which lies in the Schur family of
:mod:`symbidisc.family`. The solver

* fits family members to the scaled data by multistart least squares over a
  real parameter vector (:func:`fit_family`);
* calls ``t`` feasible when the best residual is below ``feas_tol``
  (:func:`feasible_at`);
* bisects ``t`` over ``[t_tol, 1]`` (:func:`solve_pick`).

Feasibility is only certified up to the optimization tolerance: a failed fit
is evidence of infeasibility, not a proof.

Parameter charts are unconstrained: disc points go through
``w = sin(|v|) v / |v|``, automorphism centers through
``b = scale * M (I + M* M)^{-1/2}``, unitaries through four angles each.
The disc chart covers the closed disc; a Blaschke zero on T is a unimodular
constant, so one shape of base degree ``d`` also contains all lower degrees.
"""
from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.optimize import least_squares, minimize

from . import analysis, domains, mat2
from .automorphisms import R_I, CartanAut
from .errors import (InputError, NodeCollision, ScalarTarget, SingularResolvent,
                     SpectrumOutsideDisc, SymbidiscError, TargetOutsideDomain)
from .family import (G2_MODE, ExtremalDisc, FamilyArrays, SchurParams, degree_bound,
                     disc_eval, eval_arrays, family_sample, params_from_dict, params_to_dict,
                     random_disc_point, to_arrays)
from .mat2 import I2
from .scalar import BlaschkeProduct, MoebiusMap

FEASIBLE = "feasible"
INFEASIBLE_AT_T1 = "infeasible_at_t1"
EXTREMAL_FOUND = "extremal_found"
DEGENERATE = "degenerate"


# -- problem data --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PickProblem:
    nodes: np.ndarray
    targets: tuple       # of domains.G2Point

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=complex).ravel()
        targets = tuple(domains.G2Point(complex(s), complex(p)) for s, p in self.targets)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)
        if len(nodes) != len(targets):
            raise InputError(f"{len(nodes)} nodes but {len(targets)} targets")
        if len(nodes) < 2:
            raise InputError("a Pick problem needs at least two nodes")
        if not np.all(np.isfinite(nodes)) or np.any(np.abs(nodes) >= 1):
            raise InputError("nodes must lie in the open unit disc")
        _check_distinct(nodes)
        for j, z in enumerate(targets):
            if not (np.isfinite(z.s) and np.isfinite(z.p)) or not domains.g2_contains(z, domains.INTERIOR):
                raise TargetOutsideDomain(f"target {j} = ({z.s}, {z.p}) is not in G2")

    @property
    def m(self):
        return len(self.nodes)

    @property
    def target_array(self):
        return np.array([[z.s, z.p] for z in self.targets], dtype=complex)

    def scaled(self, t):
        """Problem ``t l_j -> z_j``; raises :class:`NodeCollision` when nodes merge."""
        if not 0 < t <= 1:
            raise InputError(f"scaling parameter t = {t} is not in (0, 1]")
        _check_distinct(t * self.nodes)
        return PickProblem(t * self.nodes, self.targets)

    def to_dict(self):
        return {"nodes": [[float(z.real), float(z.imag)] for z in self.nodes],
                "targets": [{"s": [z.s.real, z.s.imag], "p": [z.p.real, z.p.imag]}
                            for z in self.targets]}


def _check_distinct(nodes, tol=1e-10):
    d = np.abs(nodes[:, None] - nodes[None, :])
    d[np.diag_indices(len(nodes))] = np.inf
    if d.size and np.min(d) <= tol:
        i, j = np.unravel_index(np.argmin(d), d.shape)
        raise NodeCollision(f"nodes {i} and {j} are closer than {tol:g}")


def snp_ingest(matrices, nodes) -> PickProblem:
    """Spectral Nevanlinna-Pick data ``l_j -> W_j`` as a Pick problem in G2.

    The reduction needs nonscalar targets; each ``W_j`` also needs spectral
    radius below 1.
    """
    mats = mat2.as_mat(np.asarray(matrices, dtype=complex))
    if mats.ndim != 3:
        raise InputError("expected a list of 2x2 matrices")
    targets = []
    for j, w in enumerate(mats):
        if mat2.operator_norm(w - mat2.trace(w) / 2 * I2) <= 1e-10:
            raise ScalarTarget(f"target matrix {j} is scalar; the reduction does not apply")
        eig = domains.quadratic_roots(mat2.trace(w), mat2.det(w))
        if max(abs(complex(e)) for e in eig) >= 1:
            raise SpectrumOutsideDisc(f"target matrix {j} has spectral radius >= 1")
        targets.append(domains.pi_map(w))
    return PickProblem(np.asarray(nodes, dtype=complex), tuple(targets))


def problem_from_dict(d) -> PickProblem:
    """Parse the JSON problem format (targets or matrices)."""
    if not isinstance(d, dict) or "nodes" not in d:
        raise InputError("problem needs a 'nodes' field")
    nodes = [_pair(v, f"nodes[{j}]") for j, v in enumerate(d["nodes"])]
    if "matrices" in d:
        mats = []
        for j, mtx in enumerate(d["matrices"]):
            if not isinstance(mtx, list) or len(mtx) != 4:
                raise InputError(f"matrices[{j}] must list 4 entries in row-major order")
            mats.append(np.array([_pair(e, f"matrices[{j}][{i}]") for i, e in enumerate(mtx)]).reshape(2, 2))
        return snp_ingest(mats, nodes)
    if "targets" not in d:
        raise InputError("problem needs 'targets' or 'matrices'")
    targets = []
    for j, t in enumerate(d["targets"]):
        if not isinstance(t, dict) or "s" not in t or "p" not in t:
            raise InputError(f"targets[{j}] needs fields 's' and 'p'")
        targets.append((_pair(t["s"], f"targets[{j}].s"), _pair(t["p"], f"targets[{j}].p")))
    return PickProblem(np.array(nodes), tuple(targets))


def _pair(v, where):
    try:
        re, im = v
        return complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: expected [re, im], got {v!r}") from exc


# -- parameter charts -------------------------------------------------------------

def _disc_chart(v):
    """``R^2 -> closed disc``: ``w = sin(|v|) v / |v|``, smooth at 0."""
    z = v[..., 0] + 1j * v[..., 1]
    return z * np.sinc(np.abs(z) / np.pi)


def _disc_chart_inv(w):
    w = complex(w)
    r = abs(w)
    z = w * (np.arcsin(min(r, 1.0)) / r) if r > 0 else 0j
    return [z.real, z.imag]


@dataclass(frozen=True)
class Layout:
    """Positions of each parameter group in the flat real vector (G2 variant)."""
    k: int
    base_degree: int
    center_scale: float = 0.999

    @property
    def n_nodes(self):
        return 3 * (self.k - 1)        # disc chart (2) + rotation angle

    @property
    def n_auts(self):
        return 16 * self.k             # center (8) + 4 + 4 angles

    @property
    def size(self):
        return self.n_nodes + self.n_auts + 2 * self.base_degree + 1

    @property
    def m(self):
        return self.k + self.base_degree


def _sqrt_pd(a):
    """Closed-form square root of Hermitian positive definite (..., 2, 2), no checks."""
    sd = np.sqrt(np.real(a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]))
    tr = np.real(a[..., 0, 0] + a[..., 1, 1])
    out = a.copy()
    out[..., 0, 0] += sd
    out[..., 1, 1] += sd
    return out / np.sqrt(tr + 2 * sd)[..., None, None], sd


def _inv_sqrt_pd(a):
    r, sd = _sqrt_pd(a)
    # det(sqrt(a)) = sqrt(det a)
    return mat2.adj(r) / np.sqrt(sd)[..., None, None] ** 2


def decode(X, lay: Layout) -> FamilyArrays:
    """Batch of flat parameter vectors (B, n) -> :class:`FamilyArrays`."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    B, k, d = X.shape[0], lay.k, lay.base_degree
    nd = X[:, :lay.n_nodes].reshape(B, k - 1, 3)
    node = _disc_chart(nd[..., :2])
    rot = np.exp(1j * nd[..., 2])
    A = X[:, lay.n_nodes:lay.n_nodes + lay.n_auts].reshape(B, k, 16)
    M = (A[..., 0:4] + 1j * A[..., 4:8]).reshape(B, k, 2, 2)
    b = lay.center_scale * (M @ _inv_sqrt_pd(I2 + mat2.dagger(M) @ M))
    u = mat2.unitary_from_angles(A[..., 8:12])
    v = mat2.unitary_from_angles(A[..., 12:16])
    bd = mat2.dagger(b)
    L = u @ _inv_sqrt_pd(I2 - b @ bd)
    R = _sqrt_pd(I2 - bd @ b)[0] @ v
    off = lay.n_nodes + lay.n_auts
    zeros = _disc_chart(X[:, off:off + 2 * d].reshape(B, d, 2))
    factor = np.exp(1j * X[:, off + 2 * d])
    return FamilyArrays(node, rot, L, b, bd, R, zeros, factor, G2_MODE)


def vector_to_params(x, lay: Layout, edge=1e-9) -> SchurParams:
    """Exact family member for a chart vector.

    Base zeros on T are folded into the unimodular factor. Moebius nodes are
    pulled inside ``|a| <= 1 - edge``; the caller re-measures the residual.
    """
    fa = decode(x, lay)
    nodes = []
    for a, r in zip(fa.node[0], fa.node_rot[0]):
        a = complex(a)
        if abs(a) > 1 - edge:
            a *= (1 - edge) / abs(a)
        nodes.append(MoebiusMap(a, complex(r) / abs(r)))
    auts = []
    A = np.asarray(x, float)[lay.n_nodes:lay.n_nodes + lay.n_auts].reshape(lay.k, 16)
    for j in range(lay.k):
        u = mat2.unitary_from_angles(A[j, 8:12])
        v = mat2.unitary_from_angles(A[j, 12:16])
        auts.append(CartanAut(fa.b[0, j], u, v, R_I))
    factor, zeros = complex(fa.factor[0]), []
    for z in fa.zeros[0]:
        if abs(z) >= 1 - 1e-12:
            factor *= z / abs(z)        # (a - l) / (1 - conj(a) l) == a on |a| = 1
        else:
            zeros.append(complex(z))
    base = BlaschkeProduct(tuple(zeros), factor / abs(factor))
    return SchurParams(lay.k, tuple(nodes), tuple(auts), base, G2_MODE)


def params_to_vector(params: SchurParams, lay: Layout) -> np.ndarray:
    """Chart coordinates of a G2-variant member (inverse of :func:`vector_to_params`)."""
    if params.variant != G2_MODE or params.k != lay.k or params.base.degree > lay.base_degree:
        raise InputError("parameters do not match the layout")
    out = []
    for mm in params.nodes:
        out += _disc_chart_inv(mm.node) + [float(np.angle(mm.rotation))]
    for a in params.auts:
        # invert b = c M (I + M* M)^{-1/2}:  M = (b/c) (I - (b/c)* (b/c))^{-1/2}
        bc = a.center / lay.center_scale
        M = bc @ mat2.hermitian_inv_sqrt(I2 - mat2.dagger(bc) @ bc)
        out += list(M.real.ravel()) + list(M.imag.ravel())
        out += list(mat2.unitary_angles(a.left).as_tuple())
        out += list(mat2.unitary_angles(a.right).as_tuple())
    for z in params.base.zeros:
        out += _disc_chart_inv(z)
    out += [np.pi / 2, 0.0] * (lay.base_degree - params.base.degree)   # zeros at 1
    out.append(float(np.angle(params.base.unimodular_factor)))
    return np.array(out, dtype=float)


def random_vector(rng, lay: Layout):
    """Starting point; centers and zeros roughly match ``family.family_sample``."""
    parts = []
    for _ in range(lay.k - 1):
        parts += [*rng.normal(size=2), rng.uniform(-np.pi, np.pi)]
    for _ in range(lay.k):
        parts += list(rng.normal(size=8)) + list(rng.uniform(-np.pi, np.pi, 8))
    parts += list(rng.normal(size=2 * lay.base_degree))
    parts.append(rng.uniform(-np.pi, np.pi))
    return np.array(parts, dtype=float)


# -- objective ------------------------------------------------------------------

def _residual_batch(X, lay, nodes, Z):
    """Real residual vectors (B, 4m) and per-node distances (B, m)."""
    fa = decode(X, lay)
    try:
        x = eval_arrays(fa, nodes)
    except SingularResolvent:
        big = np.full((fa.L.shape[0], 4 * len(nodes)), 1e3)
        return big, np.full((fa.L.shape[0], len(nodes)), 1e3)
    ds = mat2.trace(x) - Z[None, :, 0]
    dp = mat2.det(x) - Z[None, :, 1]
    r = np.concatenate([ds.real, ds.imag, dp.real, dp.imag], axis=1)
    return r, np.sqrt(np.abs(ds) ** 2 + np.abs(dp) ** 2)


def interpolation_residual(params: SchurParams, problem: PickProblem, t=1.0):
    """``max_j |f(t l_j) - z_j|`` in the Euclidean norm of C^2."""
    s, p = disc_eval(params, t * problem.nodes)
    Z = problem.target_array
    return float(np.max(np.sqrt(np.abs(s - Z[:, 0]) ** 2 + np.abs(p - Z[:, 1]) ** 2)))


# -- fitting ------------------------------------------------------------------------

@dataclass(frozen=True)
class FitConfig:
    n_starts: int = 32
    seed: int = 0
    budget: int = 20000           # objective evaluations per start
    feas_tol: float = 1e-6
    method: str = "trf"           # or "nelder-mead"
    fd_step: float = 1e-7
    ftol: float = 1e-8            # relative cost decrease that counts as stagnation
    screen: bool = True           # certified-infeasible shortcut, see pick_screen
    threads: int | None = None    # None: SYMBIDISC_THREADS or 1
    configs: tuple | None = None  # explicit (k, base_degree) list


@dataclass
class FitOutcome:
    params: SchurParams | None
    residual: float
    k: int
    base_degree: int
    start: int
    vector: np.ndarray | None = None


def shapes_for(m, configs=None):
    """(k, base_degree) pairs sized for m nodes: ``(k, m - k)``, k = 1..m-1.

    Lower base degrees and lower level counts are reached inside these shapes
    by moving chart points onto T.
    """
    if configs is not None:
        return [tuple(c) for c in configs]
    return [(k, m - k) for k in range(1, m)]


def _threads(cfg):
    if cfg.threads is not None:
        return max(1, int(cfg.threads))
    try:
        return max(1, int(os.environ.get("SYMBIDISC_THREADS", "1")))
    except ValueError:
        return 1


class _Converged(Exception):
    def __init__(self, x):
        self.x = x


def _local_fit(x0, lay, nodes, Z, cfg, stop_tol):
    n = x0.size

    def fun(x):
        r, dist = _residual_batch(x[None], lay, nodes, Z)
        if np.max(dist) <= stop_tol:
            raise _Converged(x.copy())
        return r[0]

    try:
        if cfg.method == "nelder-mead":
            res = minimize(lambda x: float(np.sum(fun(x) ** 2)), x0, method="Nelder-Mead",
                           options={"maxfev": cfg.budget, "xatol": 1e-12, "fatol": 1e-30,
                                    "adaptive": True})
        else:
            eye = np.eye(n)

            def jac(x):
                h = cfg.fd_step * np.maximum(1.0, np.abs(x))
                r, _ = _residual_batch(np.vstack([x, x + eye * h]), lay, nodes, Z)
                return ((r[1:] - r[0]) / h[:, None]).T

            # ftol ends stagnating (infeasible) starts early; feasible starts
            # converge fast and leave through _Converged
            res = least_squares(fun, x0, jac=jac, method="trf", x_scale="jac",
                                xtol=1e-12, ftol=cfg.ftol, gtol=1e-14,
                                max_nfev=max(10, cfg.budget // (n + 1)))
        x = res.x
    except _Converged as done:
        x = done.x
    worst = float(np.max(_residual_batch(x[None], lay, nodes, Z)[1]))
    return x, worst


def fit_family(problem: PickProblem, k=None, base_degree=None, n_starts=None, seed=None,
               budget=None, config: FitConfig = FitConfig(), warm=None) -> FitOutcome:
    """Best family member interpolating ``problem`` over multistart local fits.

    With ``k`` given, only that level count is fitted (``base_degree``
    defaults to ``m - k``); otherwise all shapes from :func:`shapes_for` are
    tried. A shape stops as soon as a start reaches ``feas_tol / 1000``; the
    reduction over starts is the lowest-index start below that threshold, or
    else the minimum residual with ties to the lower index. ``warm`` is an
    optional :class:`FitOutcome` whose vector is used as start 0 for its shape.
    """
    cfg = config
    if n_starts is not None:
        cfg = replace(cfg, n_starts=n_starts)
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    if budget is not None:
        cfg = replace(cfg, budget=budget)
    m = problem.m
    if k is not None:
        if not 1 <= k <= m - 1:
            raise InputError(f"k = {k} must lie in 1..{m - 1}")
        shapes = [(k, m - k if base_degree is None else base_degree)]
    else:
        shapes = shapes_for(m, cfg.configs)
        if warm is not None and (warm.k, warm.base_degree) in shapes:
            # the warm start's shape is the likeliest to succeed again
            shapes.remove((warm.k, warm.base_degree))
            shapes.insert(0, (warm.k, warm.base_degree))
    nodes, Z = problem.nodes, problem.target_array
    stop_tol = cfg.feas_tol * 1e-3
    best = FitOutcome(None, np.inf, 0, 0, -1)
    for kk, dd in shapes:
        lay = Layout(kk, dd)
        out = _fit_shape(lay, (kk, dd), nodes, Z, cfg, stop_tol, warm)
        if out.residual < best.residual:
            best = out
        if best.residual <= stop_tol:
            break
    if best.vector is not None:
        best.params = _canonical(vector_to_params(best.vector, Layout(best.k, best.base_degree)))
        best.residual = interpolation_residual(best.params, problem)
    return best


def _fit_shape(lay, shape, nodes, Z, cfg, stop_tol, warm):
    threads = _threads(cfg)

    def run(start):
        if start == 0 and warm is not None and warm.vector is not None \
                and (warm.k, warm.base_degree) == (lay.k, lay.base_degree):
            x0 = warm.vector
        else:
            x0 = random_vector(np.random.default_rng([cfg.seed, *shape, start]), lay)
        x, r = _local_fit(np.array(x0, float), lay, nodes, Z, cfg, stop_tol)
        return FitOutcome(None, r, lay.k, lay.base_degree, start, x)

    results = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for lo in range(0, cfg.n_starts, threads):
            wave = list(pool.map(run, range(lo, min(lo + threads, cfg.n_starts))))
            results.extend(wave)
            hits = [o for o in wave if o.residual <= stop_tol]
            if hits:
                return hits[0]
    return min(results, key=lambda o: (o.residual, o.start))


def _canonical(params: SchurParams) -> SchurParams:
    """Round-trip through the JSON form so stored and evaluated values agree."""
    return params_from_dict(json.loads(json.dumps(params_to_dict(params))))


# -- feasibility and bisection -----------------------------------------------------

def pick_screen(problem: PickProblem, n_omega=256):
    """Scalar necessary condition for solvability.

    Each ``F_w(s, p) = (2 w p - s) / (2 - w s)``, ``|w| = 1``, maps G2 into
    the disc, so a solution gives a scalar Pick problem
    ``l_j -> F_w(z_j)`` for every w; its Pick matrix must be positive
    semidefinite. Returns the smallest eigenvalue of the unit-diagonal
    normalized Pick matrix over ``n_omega`` values of w, and that w. A clearly
    negative value certifies infeasibility; a nonnegative one certifies
    nothing for m > 2.
    """
    w = np.exp(2j * np.pi * np.arange(n_omega) / n_omega)[:, None]
    Z = problem.target_array
    f = (2 * w * Z[None, :, 1] - Z[None, :, 0]) / (2 - w * Z[None, :, 0])
    x = problem.nodes
    P = (1 - f[:, :, None] * np.conj(f[:, None, :])) / (1 - x[:, None] * np.conj(x[None, :]))
    d = np.sqrt(np.real(np.diagonal(P, axis1=1, axis2=2)))
    P = P / (d[:, :, None] * d[:, None, :])
    eig = np.linalg.eigvalsh(P)[:, 0]
    j = int(np.argmin(eig))
    return float(eig[j]), complex(w[j, 0])


SCREEN_MARGIN = 1e-9


@dataclass
class Feasibility:
    t: float
    feasible: bool
    witness: FitOutcome
    screened: bool = False       # decided by pick_screen without fitting


def feasible_at(problem: PickProblem, t, config: FitConfig = FitConfig(), warm=None) -> Feasibility:
    """Fit the scaled problem ``t l_j -> z_j``; feasible iff residual <= feas_tol.

    With ``config.screen`` the fit is skipped when :func:`pick_screen`
    certifies that no analytic solution exists.
    """
    scaled = problem.scaled(t)
    if config.screen and pick_screen(scaled)[0] < -SCREEN_MARGIN:
        return Feasibility(float(t), False, FitOutcome(None, float("inf"), 0, 0, -1), True)
    out = fit_family(scaled, config=config, warm=warm)
    return Feasibility(float(t), bool(out.residual <= config.feas_tol), out)


@dataclass(frozen=True)
class SolveConfig:
    fit: FitConfig = FitConfig()
    t_tol: float = 1e-3
    bisect: bool = True
    verify: bool = True


@dataclass
class SolveResult:
    t_star: float
    params: SchurParams | None
    residual: float
    status: str
    verification: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)
    k: int = 0
    base_degree: int = 0

    def to_dict(self):
        return {
            "status": self.status,
            "t_star": self.t_star,
            "residual": self.residual,
            "k": self.k,
            "base_degree": self.base_degree,
            "params": params_to_dict(self.params) if self.params is not None else None,
            "verification": self.verification,
            "trace": [{"t": t, "feasible": f, "residual": r, "screened": sc}
                      for t, f, r, sc in self.trace],
        }


def solve_pick(problem: PickProblem, config: SolveConfig = SolveConfig()) -> SolveResult:
    """Smallest feasible scaling ``t`` in ``[t_tol, 1]`` and its witness.

    Status is ``infeasible_at_t1`` when the unscaled problem cannot be fitted,
    ``degenerate`` when even ``t_tol`` is feasible, ``extremal_found`` after a
    completed bisection and ``feasible`` when bisection is switched off.
    """
    fc, t_tol = config.fit, config.t_tol
    trace = []

    def probe(t, warm=None):
        f = feasible_at(problem, t, fc, warm)
        trace.append((f.t, f.feasible, f.witness.residual, f.screened))
        return f

    top = probe(1.0)
    if not top.feasible:
        return _result(problem, 1.0, top.witness, INFEASIBLE_AT_T1, trace, config)
    if not config.bisect:
        return _result(problem, 1.0, top.witness, FEASIBLE, trace, config)
    floor = probe(t_tol, top.witness)
    if floor.feasible:
        return _result(problem, t_tol, floor.witness, DEGENERATE, trace, config)
    lo, hi, best = t_tol, 1.0, top
    while hi - lo > t_tol:
        mid = (lo + hi) / 2
        f = probe(mid, best.witness)
        if f.feasible:
            hi, best = mid, f
        else:
            lo = mid
    return _result(problem, hi, best.witness, EXTREMAL_FOUND, trace, config)


def _result(problem, t, witness, status, trace, config):
    params = witness.params
    if params is not None and status != INFEASIBLE_AT_T1:
        params = normalize_params(params)
    residual = interpolation_residual(params, problem, t) if params is not None else float("inf")
    ver = {}
    if config.verify and params is not None and status != INFEASIBLE_AT_T1:
        ver = verification_bundle(params, config.fit.feas_tol)
    return SolveResult(float(t), params, residual, status, ver, trace,
                       witness.k, witness.base_degree)


# -- normalization and verification ---------------------------------------------------

def transpose_params(params: SchurParams) -> SchurParams:
    """Member whose matrix disc is the transpose; ``pi`` of it is unchanged.

    ``(U Phi_b(x) V)^t = V^t Phi_{b^t}(x^t) U^t`` and the innermost diagonal
    is symmetric, so transposing every center and swapping the unitaries
    transposes the whole composition.
    """
    auts = tuple(CartanAut(a.center.T, a.right.T, a.left.T, a.mode) for a in params.auts)
    return SchurParams(params.k, params.nodes, auts, params.base, params.variant)


def normalize_params(params: SchurParams, n=64, tol=1e-10) -> SchurParams:
    """Prefer the representative with ``|psi_21| <= |psi_12|`` on interior samples."""
    r = np.sqrt(np.linspace(0.05, 0.95, n // 8))
    lam = (r[:, None] * np.exp(2j * np.pi * np.arange(8) / 8)[None]).ravel()
    psi = eval_arrays(to_arrays(params), lam)[0]
    rep = analysis.normalize_offdiag(psi, tol)
    if not rep.passed and rep.details["transpose_fixes"]:
        return _canonical(transpose_params(params))
    return params


def verification_bundle(params: SchurParams, tol=1e-6) -> dict:
    """Inner, proper and degree reports for a witness."""
    disc = ExtremalDisc(params)
    out = {"inner": analysis.is_g2_inner(disc, tol=tol).to_dict(),
           "proper": analysis.is_proper_disc(disc).to_dict()}
    bound = max(degree_bound(params))
    try:
        s, p = disc.rational()
        deg = max(s.degree, p.degree)
        out["degree"] = analysis.Report("degree", bound, 0.0, float(deg), deg <= bound,
                                        {"degrees": [list(s.degrees()), list(p.degrees())],
                                         "bound": bound}).to_dict()
    except SymbidiscError as exc:
        out["degree"] = analysis.Report("degree", bound, 0.0, float("inf"), False,
                                        {"error": type(exc).__name__, "message": str(exc)}).to_dict()
    return out


def bundle_passed(ver: dict) -> bool:
    return bool(ver) and all(r["pass"] for r in ver.values())


# -- planted instances --------------------------------------------------------------

def planted_problem(seed, m, k=None, node_radius=0.7):
    """Targets generated by a random G2-variant member at random nodes."""
    rng = np.random.default_rng([seed, 7919])
    params = family_sample(rng, m, G2_MODE, k)
    while True:
        nodes = np.array([random_disc_point(rng, node_radius) for _ in range(m)])
        d = np.abs(nodes[:, None] - nodes[None])
        if np.min(d + np.eye(m)) > 0.1:
            break
    s, p = disc_eval(params, nodes)
    return PickProblem(nodes, tuple(zip(s, p))), params
