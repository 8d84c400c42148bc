"""Acceptance criteria 1-8, each at its stated tolerance.

Every test prints one PASS/FAIL line; the lines are repeated in the pytest
terminal summary.
"""
import json

import numpy as np
import pytest
from scipy.stats import unitary_group

from symbidisc import cli, domains, mat2, solver
from symbidisc.analysis import lift_to_bidisc, planted_sigma_avoiding, RationalPair
from symbidisc.automorphisms import CartanAut, G2Aut, g2_aut_eval
from symbidisc.errors import IdenticallyRoyal, RoyalIntersection
from symbidisc.family import disc_eval, family_sample, to_rational, degree_bound
from symbidisc.scalar import RationalFn, blaschke_extract, unit_circle
from symbidisc.solver import FitConfig, SolveConfig, feasible_at, planted_problem, solve_pick

from conftest import random_disc, record
from test_automorphisms import contraction, phi_a_closed_form, phi_c_closed_form
from test_domains import root_oracle


def test_criterion_1_automorphism_algebra():
    rng = np.random.default_rng(1)
    swap = interior = unitary = scalar = offdiag = 0.0
    for _ in range(1000):
        b = mat2.bounded_chart(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)),
                               rng.uniform(0, 0.95))
        u = unitary_group.rvs(2, random_state=rng)
        v = unitary_group.rvs(2, random_state=rng)
        phi = CartanAut(b)
        swap = max(swap, np.max(np.abs(phi(np.zeros((2, 2))) - b)), np.max(np.abs(phi(b))))
        A = CartanAut(b, u, v)
        x = contraction(rng)
        interior = max(interior, mat2.operator_norm(A(x)) - 1 + 1e-9)
        w = unitary_group.rvs(2, random_state=rng)
        y = A(w)
        unitary = max(unitary, np.max(np.abs(mat2.dagger(y) @ y - np.eye(2))))
        a = complex(random_disc(rng, 1, 0.95)[0])
        scalar = max(scalar, np.max(np.abs(CartanAut(a * np.eye(2))(x) - phi_a_closed_form(a, x))))
        c = complex(random_disc(rng, 1, 0.95)[0])
        C = CartanAut(np.array([[0, 0], [c, 0]]))
        offdiag = max(offdiag, np.max(np.abs(C(x) - phi_c_closed_form(c, x))))
    ok = swap < 1e-12 and interior < 1e-9 and unitary < 1e-9 and scalar < 1e-12 and offdiag < 1e-12
    detail = (f"swap={swap:.1e} unitary={unitary:.1e} scalar={scalar:.1e} "
              f"offdiag={offdiag:.1e} interior_ok={interior < 1e-9}")
    assert record(1, ok, detail), detail


def test_criterion_2_g2_aut_oracle():
    rng = np.random.default_rng(2)
    n = 10_000
    a = random_disc(rng, n, 0.99)
    rot = np.exp(2j * np.pi * rng.uniform(size=n))
    w = np.exp(2j * np.pi * rng.uniform(size=n))
    l1, l2 = random_disc(rng, n), random_disc(rng, n)
    s, p = domains.sym_map(l1, l2)
    worst = 0.0
    for j in range(n):
        A = G2Aut(a[j], rot[j], w[j])
        got = g2_aut_eval(A, (s[j], p[j]))
        r1, r2 = np.roots([1, -s[j], p[j]])
        m1 = rot[j] * (a[j] - r1) / (1 - np.conj(a[j]) * r1)
        m2 = rot[j] * (a[j] - r2) / (1 - np.conj(a[j]) * r2)
        worst = max(worst, abs(got.s - w[j] * (m1 + m2)), abs(got.p - w[j] ** 2 * m1 * m2))
    assert record(2, worst < 1e-11, f"max deviation {worst:.2e} over {n}"), worst


def test_criterion_3_membership_oracles():
    rng = np.random.default_rng(3)
    n = 10_000
    s, p = 2.2 * random_disc(rng, n), 1.1 * random_disc(rng, n)
    agree = np.array_equal(domains.g2_contains((s, p), domains.INTERIOR), root_oracle(s, p))
    # Shilov: half on the torus image (perturbed below tolerance), half generic
    m = 1000
    t1, t2 = np.exp(2j * np.pi * rng.uniform(size=(2, m)))
    on_s, on_p = domains.sym_map(t1, t2)
    pts_s = np.where(np.arange(m) % 2 == 0, on_s, 2.2 * random_disc(rng, m))
    pts_p = np.where(np.arange(m) % 2 == 0, on_p, 1.1 * random_disc(rng, m))
    grid = domains.shilov_distance((pts_s, pts_p), grid=360, refine=False)
    bound = domains.torus_step_bound(360)
    pred = domains.shilov_g2_contains((pts_s, pts_p))
    # predicate true => grid distance within grid resolution; grid far => predicate false
    consistent = np.all(grid[pred] <= bound) and not np.any(pred[grid > bound])
    ok = bool(agree and consistent)
    assert record(3, ok, f"defining=root_oracle:{agree} shilov_vs_grid:{consistent} "
                         f"(grid tol {bound:.2e})")


def _family_draws():
    rng = np.random.default_rng(4)
    out = []
    for j in range(200):
        m = int(rng.integers(2, 7))
        variant = "G2" if j % 2 == 0 else "RII"
        out.append(family_sample(rng, m, variant))
    return out


@pytest.fixture(scope="module")
def family_draws():
    draws = _family_draws()
    fits = []
    for params in draws:
        try:
            fits.append(to_rational(params))
        except Exception as exc:            # recorded as failure below
            fits.append(exc)
    return draws, fits


def test_criterion_4_constructive_family(family_draws):
    draws, fits = family_draws
    zeta = unit_circle(256)
    worst_inner, failures, over = 0.0, 0, 0
    for params, fit in zip(draws, fits):
        s, p = disc_eval(params, zeta)
        worst_inner = max(worst_inner, float(np.max(domains.shilov_distance((s, p)))))
        if isinstance(fit, Exception):
            failures += 1
            continue
        bs, bp = degree_bound(params)
        over += fit[0].degree > bs or fit[1].degree > bp
    ok = worst_inner < 1e-8 and failures == 0 and over == 0
    assert record(4, ok, f"max shilov_distance {worst_inner:.1e}, to_rational failures "
                         f"{failures}, degree-bound violations {over}")


def test_criterion_5_p_component_blaschke(family_draws):
    draws, fits = family_draws
    worst, failures = 0.0, 0
    zeta = unit_circle(1024)
    for fit in fits:
        if isinstance(fit, Exception):
            failures += 1
            continue
        try:
            B = blaschke_extract(fit[1])
        except Exception:
            failures += 1
            continue
        worst = max(worst, float(np.max(np.abs(np.abs(fit[1](zeta)) - 1))))
        worst = max(worst, float(np.max(np.abs(B(zeta) - fit[1](zeta)))))
    ok = failures == 0 and worst < 1e-8
    assert record(5, ok, f"extraction failures {failures}, max deviation {worst:.1e}")


def test_criterion_6_lifting_round_trip():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(500):
        pair, _ = planted_sigma_avoiding(rng)
        worst = max(worst, lift_to_bidisc(pair).resubstitution)
    royal = RationalPair(RationalFn([0, 2]), RationalFn([0, 0, 1]))
    touch = RationalPair(RationalFn([0.3, 1]), RationalFn([0, 0.3]))
    errors = []
    for f, want in ((royal, IdenticallyRoyal), (touch, RoyalIntersection)):
        try:
            lift_to_bidisc(f)
            errors.append(False)
        except want:
            errors.append(True)
    ok = worst < 1e-10 and all(errors)
    assert record(6, ok, f"max resubstitution {worst:.1e} over 500, documented errors {errors}")


SEEDS = range(20)


def _criterion_7_instance(seed):
    m = 2 + seed % 2
    problem, _ = planted_problem(seed, m)
    cfg = SolveConfig(fit=FitConfig(n_starts=32, seed=seed))
    res = solve_pick(problem, cfg)
    t, tol = res.t_star, cfg.t_tol
    above = feasible_at(problem, min(1.0, t + tol), cfg.fit)
    below = feasible_at(problem, t - tol, cfg.fit) if t - tol > 0 else None
    pts = sorted((tt, f) for tt, f, *_ in res.trace)
    monotone = [f for _, f in pts] == sorted(f for _, f in pts)
    return {
        "seed": seed, "m": m, "status": res.status, "t_star": t, "residual": res.residual,
        "above": above.feasible, "below": None if below is None else below.feasible,
        "below_screened": None if below is None else below.screened,
        "monotone": monotone, "bundle": solver.bundle_passed(res.verification),
    }


@pytest.mark.slow
def test_criterion_7_plant_and_recover():
    rows = [_criterion_7_instance(seed) for seed in SEEDS]
    bad = []
    for r in rows:
        print(f"  seed {r['seed']:2d} m={r['m']} {r['status']} t*={r['t_star']:.5f} "
              f"res={r['residual']:.1e} above={r['above']} below={r['below']} "
              f"(screen {r['below_screened']}) monotone={r['monotone']} bundle={r['bundle']}")
        ok = (r["residual"] < 1e-6 and r["above"] and r["below"] is not True
              and r["monotone"] and r["bundle"])
        if not ok:
            bad.append(r["seed"])
    screened = sum(bool(r["below_screened"]) for r in rows)
    assert record(7, not bad, f"{len(rows) - len(bad)}/{len(rows)} instances pass; "
                              f"below-bracket verdicts: {screened} by screen, "
                              f"{len(rows) - screened} by fit; failing seeds {bad}"), bad


def test_criterion_8_determinism(tmp_path):
    from importlib import resources
    royal = str(resources.files("symbidisc") / "data" / "royal_m3.json")
    problem, _ = planted_problem(0, 3)
    pfile = tmp_path / "planted.json"
    pfile.write_text(json.dumps(problem.to_dict()))
    outputs = []
    for run in range(2):
        d = tmp_path / f"run{run}"
        d.mkdir()
        cli.main(["solve", royal, "--seed", "5", "--out", str(d / "royal.json")])
        cli.main(["solve", str(pfile), "--seed", "5", "--starts", "8", "--out", str(d / "planted.json")])
        cli.main(["generate", "--m", "4", "--seed", "5", "--count", "2", "--out", str(d / "gen")])
        cli.main(["verify", str(d / "planted.json"), "--out", str(d / "verify.json")])
        outputs.append({p.relative_to(d).as_posix(): p.read_bytes()
                        for p in sorted(d.rglob("*")) if p.is_file()})
    same = outputs[0] == outputs[1] and len(outputs[0]) == 7
    assert record(8, same, f"{len(outputs[0])} files compared byte for byte")
