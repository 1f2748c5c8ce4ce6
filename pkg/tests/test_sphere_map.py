import numpy as np
import pytest

from g2sphere.g2_algebra import is_g2_element, real_ip
from g2sphere.octonion import is_octonion_automorphism
from g2sphere.sphere_map import (exp_algebra, f_matrix, f_pullback,
                                 f_pullback_regularized, f_pushforward,
                                 k_matrix, lambda_log)

MAT_TOL = 1e-10
ORACLE_TOL = 1e-8

S3 = np.sqrt(3.0)


def _unit(rng):
    x = rng.standard_normal(7)
    return x / np.linalg.norm(x)


def _tangent(rng, x):
    v = rng.standard_normal(7)
    v -= (v @ x) * x
    return v


def test_rotation_about_first_axis():
    e1 = np.eye(7)[0]
    expected = np.eye(7)
    for (i, j, s) in ((1, 2, 1.0), (3, 4, 1.0), (5, 6, -1.0)):
        expected[i, i] = expected[j, j] = -0.5
        expected[i, j] = -s * S3 / 2.0
        expected[j, i] = s * S3 / 2.0
    assert np.array_equal(f_matrix(e1), expected)


def test_log_of_base_point():
    L = lambda_log()
    assert np.max(np.abs(exp_algebra(L) - f_matrix(np.eye(7)[0]))) < 1e-12
    assert is_g2_element(L)


def test_k_matrix_is_skew_and_annihilates_axis():
    rng = np.random.default_rng(0)
    for _ in range(20):
        x = _unit(rng)
        K = k_matrix(x)
        assert np.max(np.abs(K + K.T)) < 1e-14
        # the octonion square of an imaginary unit is real
        assert np.max(np.abs(K @ x)) < 1e-14


def test_rotation_properties():
    rng = np.random.default_rng(1)
    eye = np.eye(7)
    for _ in range(100):
        x = _unit(rng)
        F = f_matrix(x)
        assert np.max(np.abs(F.T @ F - eye)) < MAT_TOL
        assert np.max(np.abs(F @ F @ F - eye)) < MAT_TOL
        assert np.max(np.abs(F @ x - x)) < MAT_TOL
        assert np.max(np.abs(f_matrix(-x) - F.T)) < MAT_TOL
        assert np.max(np.abs(eye + F + F @ F - 3.0 * np.outer(x, x))) < MAT_TOL
        assert is_octonion_automorphism(F)


def test_pushforward_is_derivative():
    rng = np.random.default_rng(2)
    h = 1e-6
    for _ in range(10):
        x = _unit(rng)
        xi = _tangent(rng, x)
        xp = x + h * xi
        xm = x - h * xi
        numeric = (f_matrix(xp / np.linalg.norm(xp))
                   - f_matrix(xm / np.linalg.norm(xm))) / (2 * h)
        assert np.max(np.abs(numeric - f_pushforward(x, xi))) < 1e-8


def test_differentiated_fixed_point_identity():
    rng = np.random.default_rng(3)
    for _ in range(100):
        x = _unit(rng)
        xi = _tangent(rng, x)
        r = f_matrix(x) @ xi + f_pushforward(x, xi) @ x - xi
        assert np.max(np.abs(r)) < 1e-12 * max(1.0, np.linalg.norm(xi))


def test_translated_derivative_lands_in_algebra_conformally():
    rng = np.random.default_rng(4)
    for _ in range(50):
        x = _unit(rng)
        xi, eta = _tangent(rng, x), _tangent(rng, x)
        F = f_matrix(x)
        Wxi = F.T @ f_pushforward(x, xi)
        Weta = F.T @ f_pushforward(x, eta)
        assert is_g2_element(Wxi)
        assert abs(real_ip(Wxi, Weta) - 9.0 * (xi @ eta)) \
            < MAT_TOL * max(1.0, abs(xi @ eta))


def test_pullback_round_trips():
    rng = np.random.default_rng(5)
    for _ in range(50):
        x = _unit(rng)
        xi = _tangent(rng, x)
        A = f_pushforward(x, xi)
        assert np.max(np.abs(f_pullback(x, A) - xi)) < MAT_TOL
        assert np.max(np.abs(f_pushforward(x, f_pullback(x, A)) - A)) < MAT_TOL


def test_pullback_matches_resolvent_limit():
    rng = np.random.default_rng(6)
    for _ in range(20):
        x = _unit(rng)
        A = f_pushforward(x, _tangent(rng, x))
        assert np.max(np.abs(f_pullback(x, A)
                             - f_pullback_regularized(x, A))) < ORACLE_TOL


def test_pullback_rejects_non_tangent_images():
    x = np.eye(7)[0]
    A = np.eye(7)  # A x = x is not tangent at x
    with pytest.raises(ValueError):
        f_pullback(x, A)


def test_input_validation():
    with pytest.raises(ValueError):
        f_matrix(np.ones(7))
    x = np.eye(7)[0]
    with pytest.raises(ValueError):
        f_pushforward(x, x)  # not tangent
