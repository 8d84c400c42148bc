import numpy as np
import pytest

from symbidisc import domains, mat2
from symbidisc.domains import CLOSURE, INTERIOR

from conftest import random_circle, random_disc


def root_oracle(s, p, closed=False):
    """Membership via the roots of z^2 - s z + p (independent of the defining function)."""
    out = []
    for si, pi in zip(np.ravel(s), np.ravel(p)):
        r = np.roots([1, -si, pi])
        out.append(np.all(np.abs(r) <= 1) if closed else np.all(np.abs(r) < 1))
    return np.array(out)


def test_membership_examples():
    assert domains.g2_contains((0, 0), INTERIOR)
    assert not domains.g2_contains((2, 1), INTERIOR)
    assert domains.g2_contains((2, 1), CLOSURE)
    assert domains.g2_contains((1, 0.25), INTERIOR)
    assert domains.g2_defining(1, 0.25) == pytest.approx(0.8125)
    assert root_oracle([1], [0.25])[0]


def test_membership_bad_mode():
    with pytest.raises(ValueError):
        domains.g2_contains((0, 0), "open")


def test_membership_matches_root_oracle(rng):
    s = 2.2 * random_disc(rng, 2000)
    p = 1.1 * random_disc(rng, 2000)
    ours = domains.g2_contains((s, p), INTERIOR)
    assert np.array_equal(ours, root_oracle(s, p))


def test_sym_map(rng):
    assert tuple(domains.sym_map(0, 0)) == (0, 0)
    lam = 0.3 - 0.4j
    assert domains.royal_detect(domains.sym_map(lam, lam))
    l1, l2 = random_disc(rng, 1000, 0.999), random_disc(rng, 1000, 0.999)
    assert np.all(domains.g2_contains(domains.sym_map(l1, l2), INTERIOR))


def test_pi_map(rng):
    z = domains.pi_map(np.diag([0.2, 0.5j]))
    assert z.s == pytest.approx(0.2 + 0.5j) and z.p == pytest.approx(0.1j)
    from scipy.stats import unitary_group
    for u in unitary_group.rvs(2, size=100, random_state=2):
        s, p = domains.pi_map(u)
        assert abs(abs(p) - 1) < 1e-12 and abs(s - np.conj(s) * p) < 1e-12
    x = rng.normal(size=(1000, 2, 2)) + 1j * rng.normal(size=(1000, 2, 2))
    x = x / (mat2.operator_norm(x)[:, None, None] * (1 + rng.uniform(size=(1000, 1, 1))))
    assert np.all(domains.g2_contains(domains.pi_map(x), INTERIOR))


def test_Pi_map():
    assert domains.Pi_map(np.eye(2)) == (1, 1, 1)
    a, b = 0.3, -0.2j
    assert np.allclose(domains.Pi_map(np.diag([a, b])), (a, b, a * b))
    assert np.allclose(domains.Pi_map(np.array([[0, 1], [1, 0]])), (0, 0, -1))


def test_quadratic_roots_small_root_accuracy():
    r1, r2 = domains.quadratic_roots(1.0, 1e-12)
    assert r2 == pytest.approx(1e-12, rel=1e-12)
    assert r1 * r2 == pytest.approx(1e-12, rel=1e-12)


def test_shilov_examples():
    assert domains.shilov_g2_contains((2, 1))
    assert domains.shilov_g2_contains((0, -1))
    assert domains.shilov_g2_contains((1.5, 1))
    assert not domains.shilov_g2_contains((0, 0.5))
    grid = domains.shilov_distance
    assert grid((1.5, 1), refine=False) < domains.torus_step_bound(360)
    assert grid((0, 0.5), refine=False) > 0.1


def test_shilov_distance_examples():
    assert domains.shilov_distance((2, 1)) < 1e-12
    assert domains.shilov_distance((2, 1), refine=False) < domains.torus_step_bound(360)
    assert abs(domains.shilov_distance((0, 0)) - 1) < 1e-3


def test_shilov_distance_routes_agree(rng):
    s = 2.5 * random_disc(rng, 200)
    p = 1.5 * random_disc(rng, 200)
    fast = domains.shilov_distance((s, p))
    grid = domains.shilov_distance((s, p), refine=False)
    # the refined value is an upper bound close to the grid minimum
    assert np.all(fast <= grid + 1e-12)
    assert np.all(grid - fast <= domains.torus_step_bound(360))


def test_shilov_distance_grid_convergence():
    z = (0.7 + 0.2j, 0.1 - 0.3j)
    d360 = domains.shilov_distance(z, grid=360, refine=False)
    d720 = domains.shilov_distance(z, grid=720, refine=False)
    assert d720 <= d360 + 1e-15
    assert d360 - d720 <= domains.torus_step_bound(360)


def test_torus_points_are_on_boundary(rng):
    l1, l2 = random_circle(rng, 500), random_circle(rng, 500)
    s, p = domains.sym_map(l1, l2)
    assert np.all(domains.shilov_g2_contains((s, p)))
    assert np.max(domains.shilov_distance((s, p))) < 1e-12
    assert np.allclose(domains.g2_defining(s, p), 1)


def test_cartan_contains(rng):
    swap = np.array([[0, 1], [1, 0]])
    assert domains.cartan_contains(np.zeros((2, 2)), "R_I", INTERIOR)
    assert domains.cartan_contains(swap, "R_I", CLOSURE)
    assert not domains.cartan_contains(swap, "R_I", INTERIOR)
    assert domains.cartan_contains(swap, "R_II", CLOSURE)
    assert not domains.cartan_contains(np.array([[0, 0.5], [0, 0]]), "R_II", INTERIOR)
    for _ in range(50):
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        x = (m + m.T) / 2
        x = 0.99 * x / np.linalg.norm(x, 2)
        assert domains.cartan_contains(x, "R_II", INTERIOR)


def test_royal():
    assert tuple(domains.royal_param(0)) == (0, 0)
    assert domains.royal_detect((0, 0))
    assert domains.royal_detect((2 * 0.3, 0.09))
    assert domains.royal_detect((1, 0.25))
    assert not domains.royal_detect((0.5, 0.25))
    with pytest.raises(ValueError):
        domains.royal_param(1.0)
