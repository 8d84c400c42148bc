import json

import numpy as np
import pytest

from symbidisc import domains, mat2
from symbidisc.automorphisms import R_II, CartanAut
from symbidisc.errors import InputError
from symbidisc.family import (G2_MODE, RII_MODE, ExtremalDisc, SchurParams, degree_bound,
                              disc_eval, family_eval, family_sample, identity_aut,
                              params_from_dict, params_to_dict, to_rational)
from symbidisc.scalar import BlaschkeProduct, unit_circle

from conftest import random_disc

LAM = BlaschkeProduct([0], -1)          # b(l) = l


def royal_params():
    return SchurParams(1, (), (CartanAut(),), LAM)


def direct_eval(params, lam):
    """Unbatched composition straight from the definition."""
    out = []
    for l in np.ravel(lam):
        x = np.diag([l, params.base(l)])
        for j in range(params.k - 1, -1, -1):
            if j < params.k - 1:
                mult = params.nodes[j](l) if params.variant == G2_MODE else l
                x = mult * x
            x = params.auts[j](x)
        if params.variant == RII_MODE:
            x = mat2.tau(x)
        out.append(domains.pi_map(x))
    return np.array([z.s for z in out]), np.array([z.p for z in out])


def test_royal_member():
    lam = random_disc(np.random.default_rng(0), 20)
    s, p = family_eval(royal_params(), lam)
    assert np.allclose(s, -2 * lam) and np.allclose(p, lam ** 2)


def test_diagonal_member():
    # base of degree 0 is a unimodular constant eta
    eta = np.exp(0.9j)
    params = SchurParams(1, (), (identity_aut(),), BlaschkeProduct((), eta))
    lam = random_disc(np.random.default_rng(1), 20)
    s, p = family_eval(params, lam)
    assert np.allclose(s, lam + eta) and np.allclose(p, lam * eta)
    S, Pp = to_rational(params)
    assert S.degrees() == (1, 0) and Pp.degrees() == (1, 0)


@pytest.mark.parametrize("variant", [G2_MODE, RII_MODE])
def test_batched_matches_direct(variant):
    rng = np.random.default_rng(2)
    for m in (2, 3, 4):
        params = family_sample(rng, m, variant)
        lam = random_disc(rng, 30)
        s, p = disc_eval(params, lam)
        rs, rp = direct_eval(params, lam)
        assert np.max(np.abs(s - rs)) < 1e-12 and np.max(np.abs(p - rp)) < 1e-12


@pytest.mark.parametrize("variant", [G2_MODE, RII_MODE])
def test_members_are_inner(variant):
    rng = np.random.default_rng(3)
    zeta = unit_circle(256)
    for _ in range(25):
        params = family_sample(rng, int(rng.integers(2, 6)), variant)
        s, p = disc_eval(params, zeta)
        assert np.max(domains.shilov_distance((s, p))) < 1e-8
        assert np.max(domains.shilov_residual(s, p)) < 1e-8
        # and interior points land in G2
        si, pi = disc_eval(params, random_disc(rng, 200, 0.99))
        assert np.all(domains.g2_contains((si, pi), domains.INTERIOR))


def test_rii_matrix_disc_is_symmetric():
    params = family_sample(4, 3, RII_MODE)
    x = family_eval(params, random_disc(np.random.default_rng(4), 10))
    assert np.max(np.abs(x - mat2.transpose(x))) < 1e-10


def test_sampler():
    a, b = family_sample(11, 4), family_sample(11, 4)
    assert params_to_dict(a) == params_to_dict(b)
    p2 = family_sample(5, 2)
    assert p2.k == 1 and p2.base.degree == 1
    for seed in range(20):
        p = family_sample(seed, 5)
        assert 1 <= p.k <= 4 and p.k + p.base.degree == 5
    with pytest.raises(InputError):
        family_sample(0, 1)


def test_boundary_traces_m4():
    rng = np.random.default_rng(6)
    zeta = unit_circle(256)
    for _ in range(100):
        s, p = disc_eval(family_sample(rng, 4), zeta)
        assert np.max(domains.shilov_residual(s, p)) < 1e-8


def test_degree_bound_royal():
    params = royal_params()
    ds, dp = degree_bound(params)
    assert ds >= 1 and dp >= 2
    s, p = to_rational(params)
    assert max(s.degrees()) == 1 and max(p.degrees()) == 2
    lam = unit_circle(16)
    assert np.allclose(s(lam), -2 * lam) and np.allclose(p(lam), lam ** 2)


def test_degree_bound_respected():
    rng = np.random.default_rng(7)
    for m in (2, 3, 4):
        for _ in range(5):
            params = family_sample(rng, m)
            s, p = to_rational(params)
            bound = degree_bound(params)
            assert s.degree <= bound[0] and p.degree <= bound[1]
            assert s.is_analytic_on_closed_disc()


def test_to_rational_held_out_k2():
    rng = np.random.default_rng(8)
    params = family_sample(rng, 4, k=2)
    s, p = to_rational(params)
    z = random_disc(rng, 100)
    rs, rp = disc_eval(params, z)
    assert np.max(np.abs(s(z) - rs)) < 1e-8 and np.max(np.abs(p(z) - rp)) < 1e-8


def test_extremal_disc_wrapper():
    params = family_sample(9, 3)
    d = ExtremalDisc(params)
    s, p = d.rational()
    z = random_disc(np.random.default_rng(9), 64)
    vs, vp = d(z)
    assert np.max(np.abs(s(z) - vs)) < 1e-9 and np.max(np.abs(p(z) - vp)) < 1e-9


def test_symmetric_recombination():
    # a symmetric matrix [[f1, f2], [f2, f1]] has eigenvalues f1 + f2 and f1 - f2
    rng = np.random.default_rng(10)
    f1, f2 = 0.5 * random_disc(rng, 50), 0.5 * random_disc(rng, 50)
    phi = np.stack([np.stack([f1, f2], -1), np.stack([f2, f1], -1)], -2)
    lhs = domains.pi_map(phi)
    rhs = domains.sym_map(f1 + f2, f1 - f2)
    assert np.allclose(lhs.s, rhs.s) and np.allclose(lhs.p, rhs.p)


@pytest.mark.parametrize("variant", [G2_MODE, RII_MODE])
def test_serialization_round_trip(variant):
    params = family_sample(12, 4, variant)
    text = json.dumps(params_to_dict(params))
    back = params_from_dict(json.loads(text))
    z = random_disc(np.random.default_rng(12), 20)
    a, b = disc_eval(params, z), disc_eval(back, z)
    assert np.max(np.abs(a.s - b.s)) < 1e-12 and np.max(np.abs(a.p - b.p)) < 1e-12


def test_params_validation():
    with pytest.raises(InputError):
        SchurParams(2, (), (CartanAut(), CartanAut()), LAM)
    with pytest.raises(InputError):
        SchurParams(1, (), (CartanAut(mode=R_II),), LAM)
    with pytest.raises(InputError):
        SchurParams(0, (), (), LAM)
    with pytest.raises(InputError):
        params_from_dict({"k": 1})
