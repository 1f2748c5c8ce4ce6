import numpy as np
import pytest

from g2sphere.g2_algebra import hermitian_ip
from g2sphere.orbit_analysis import (ComplexSubspace,
                                     IndeterminateDimensionError, coords_14,
                                     dimension_report, intersection_dim,
                                     intersection_dim_power, m_complex,
                                     orbit_tangent, random_g2,
                                     samelson_subspace, subspace_projection)
from g2sphere.samelson import Moduli

PROJ_TOL = 1e-10

M0 = Moduli.from_ab(1, 1)


def test_tangent_space_dimension():
    assert m_complex().dimension == 6
    assert samelson_subspace(M0).dimension == 7
    assert samelson_subspace(M0, conj=True).dimension == 7


def test_orthonormalization():
    S = samelson_subspace(M0)
    for i, A in enumerate(S.basis):
        for j, B in enumerate(S.basis):
            ip = hermitian_ip(A, B)
            expected = 1.0 if i == j else 0.0
            assert abs(ip - expected) < PROJ_TOL


def test_projections_are_hermitian_idempotents():
    for S in (m_complex(), samelson_subspace(M0)):
        P = subspace_projection(S)
        assert np.max(np.abs(P - P.conj().T)) < PROJ_TOL
        assert np.max(np.abs(P @ P - P)) < PROJ_TOL
        assert abs(np.trace(P).real - S.dimension) < PROJ_TOL


def test_coordinates_preserve_products():
    S = samelson_subspace(M0)
    c0 = coords_14(S.basis[0])
    c1 = coords_14(S.basis[1])
    assert abs(np.vdot(c0, c0) - hermitian_ip(S.basis[0], S.basis[0])) < PROJ_TOL
    assert abs(np.vdot(c1, c0) - hermitian_ip(S.basis[0], S.basis[1])) < PROJ_TOL


def test_dimensions_at_the_base_point():
    # at the base point the subalgebra meets the orbit tangent space in
    # complex dimension 3, and so does its conjugate
    r = dimension_report(M0, np.eye(7))
    assert r["s"]["dim"] == 3
    assert r["s_conj"]["dim"] == 3


def test_power_iteration_oracle_agrees_at_base_point():
    P = subspace_projection(samelson_subspace(M0))
    Q = subspace_projection(orbit_tangent(np.eye(7)))
    assert intersection_dim(P, Q) == 3
    assert abs(intersection_dim_power(P, Q) - 3.0) < 1e-6


def test_self_intersection():
    S = samelson_subspace(M0)
    P = subspace_projection(S)
    assert intersection_dim(P, P) == S.dimension


def test_disjoint_from_conjugate():
    P = subspace_projection(samelson_subspace(M0))
    Pc = subspace_projection(samelson_subspace(M0, conj=True))
    assert intersection_dim(P, Pc) == 0


def test_spectrum_bounded_by_one():
    rng = np.random.default_rng(0)
    g = random_g2(rng, scale=0.7)
    P = subspace_projection(samelson_subspace(M0))
    Q = subspace_projection(orbit_tangent(g))
    mu = np.abs(np.linalg.eigvals(P @ Q))
    assert float(mu.max()) <= 1.0 + 1e-9


def test_random_group_elements_are_orthogonal():
    rng = np.random.default_rng(1)
    g = random_g2(rng, scale=1.0)
    assert np.max(np.abs(g.T @ g - np.eye(7))) < 1e-9
    gc = random_g2(rng, scale=0.5, complex_scale=0.3)
    assert abs(np.linalg.det(gc)) > 1e-6  # invertible, generally not unitary


def test_singular_group_element_rejected():
    with pytest.raises(ValueError):
        orbit_tangent(np.zeros((7, 7)))


def test_indeterminate_band_raises():
    # a synthetic pair with an eigenvalue inside the ambiguity band
    lam = 1.0 - 5e-7
    c = np.sqrt(lam)
    s = np.sqrt(1.0 - lam)
    P = np.zeros((14, 14))
    P[0, 0] = 1.0
    v = np.zeros(14)
    v[0], v[1] = c, s
    Q = np.outer(v, v)
    with pytest.raises(IndeterminateDimensionError):
        intersection_dim(P, Q)
