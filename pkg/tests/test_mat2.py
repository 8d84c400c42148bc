import numpy as np
import pytest
from hypothesis import given, strategies as st

from symbidisc import mat2
from symbidisc.errors import NotPositiveDefinite


def rand_mat(rng, shape=()):
    return rng.normal(size=shape + (2, 2)) + 1j * rng.normal(size=shape + (2, 2))


def power_iteration_norm(x, iters=500):
    a = mat2.dagger(x) @ x
    v = np.array([1.0, 0.3 + 0.1j])
    for _ in range(iters):
        v = a @ v
        v /= np.linalg.norm(v)
    return np.sqrt(np.real(np.vdot(v, a @ v)))


def test_norm_examples():
    assert mat2.operator_norm(np.diag([0.5, 0.3])) == pytest.approx(0.5)
    assert mat2.operator_norm(np.array([[0, 1], [0, 0]])) == pytest.approx(1)


def test_norm_against_power_iteration(rng):
    for _ in range(100):
        x = rand_mat(rng)
        assert abs(mat2.operator_norm(x) - power_iteration_norm(x)) < 1e-10


def test_norm_broadcasts(rng):
    x = rand_mat(rng, (5, 3))
    ref = np.linalg.norm(x, ord=2, axis=(-2, -1))
    assert np.max(np.abs(mat2.operator_norm(x) - ref)) < 1e-12


def test_sqrt_examples():
    assert np.allclose(mat2.hermitian_sqrt(np.eye(2)), np.eye(2))
    assert np.allclose(mat2.hermitian_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    assert np.allclose(mat2.hermitian_inv_sqrt(np.diag([4.0, 9.0])), np.diag([0.5, 1 / 3]))


def test_sqrt_squares_back(rng):
    for _ in range(100):
        m = rand_mat(rng)
        a = mat2.dagger(m) @ m + 0.1 * np.eye(2)
        r = mat2.hermitian_sqrt(a)
        assert np.max(np.abs(r - mat2.dagger(r))) < 1e-12
        assert np.max(np.abs(r @ r - a)) < 1e-11
        q = mat2.hermitian_inv_sqrt(a)
        assert np.max(np.abs(q @ a @ q - np.eye(2))) < 1e-10


def test_sqrt_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        mat2.hermitian_sqrt(np.diag([1.0, -1.0]))
    with pytest.raises(NotPositiveDefinite):
        mat2.hermitian_sqrt(np.diag([1.0, 0.0]))


def test_tau(rng):
    assert np.array_equal(mat2.tau(np.eye(2)), np.array([[0, 1], [1, 0]]))
    x = rand_mat(rng)
    assert np.array_equal(mat2.tau(mat2.tau(x)), x)
    assert mat2.det(mat2.tau(x)) == pytest.approx(-mat2.det(x))
    assert np.array_equal(mat2.tau(x), x @ mat2.SWAP)


def test_det_trace_adj_inv(rng):
    x = rand_mat(rng, (10,))
    assert np.allclose(mat2.det(x), np.linalg.det(x))
    assert np.allclose(mat2.trace(x), np.trace(x, axis1=-2, axis2=-1))
    assert np.allclose(mat2.inv(x), np.linalg.inv(x))


def test_unitary_zero_angles():
    assert np.allclose(mat2.unitary_realize(mat2.UnitaryParam()), np.eye(2))


angles = st.tuples(*[st.floats(-np.pi, np.pi)] * 4)


@given(angles)
def test_unitary_realize_is_unitary(a):
    u = mat2.unitary_realize(mat2.UnitaryParam(*a))
    assert np.max(np.abs(mat2.dagger(u) @ u - np.eye(2))) < 1e-12
    assert abs(abs(mat2.det(u)) - 1) < 1e-12


@given(angles)
def test_unitary_angles_round_trip(a):
    u = mat2.unitary_realize(mat2.UnitaryParam(*a))
    back = mat2.unitary_realize(mat2.unitary_angles(u))
    assert np.max(np.abs(back - u)) < 1e-12


def test_unitary_angles_reach_haar_samples(rng):
    # surjectivity: QR-based Haar unitaries are realized exactly
    from scipy.stats import unitary_group
    for u in unitary_group.rvs(2, size=50, random_state=1):
        back = mat2.unitary_realize(mat2.unitary_angles(u))
        assert np.max(np.abs(back - u)) < 1e-12


def test_bounded_chart_in_ball(rng):
    m = 100 * rand_mat(rng, (200,))
    b = mat2.bounded_chart(m)
    assert np.all(mat2.operator_norm(b) < 0.95 + 1e-12)
