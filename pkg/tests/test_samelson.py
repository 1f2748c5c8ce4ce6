from fractions import Fraction

import numpy as np
import pytest

from g2sphere.g2_algebra import real_basis, span_membership
from g2sphere.samelson import (Moduli, corrupted_j_operator, j_from_subalgebra,
                               j_operator, is_orthogonal_structure,
                               nijenhuis_algebra, samelson_generators)
from g2sphere.scalars import QuadScalar

SQUARE_TOL = 1e-12
AGREE_TOL = 1e-9
NIJ_TOL = 1e-10

B_ORTH = QuadScalar(0, 0, Fraction(2, 3))  # 2/sqrt3

PINNED = [Moduli.from_ab(1, 1), Moduli.from_ab(3, 4), Moduli(0, B_ORTH)]


def test_moduli_validation():
    with pytest.raises(ValueError):
        Moduli(1, 0)
    m = Moduli.from_ab(3, 4)
    assert m.alpha == Fraction(1, 3) and m.b == 4
    assert Moduli(0, 1).is_infinite_a()


def test_square_is_minus_identity_exact():
    for m in PINNED:
        J = j_operator(m, exact=True).matrix
        sq = J @ J
        for i in range(14):
            for j in range(14):
                expected = QuadScalar(-1 if i == j else 0)
                assert sq[i, j] == expected, (m, i, j)


def test_square_is_minus_identity_random_moduli():
    rng = np.random.default_rng(4)
    for _ in range(25):
        m = Moduli(rng.uniform(-3, 3), rng.uniform(0.2, 3))
        J = j_operator(m).as_float()
        assert np.max(np.abs(J @ J + np.eye(14))) < SQUARE_TOL


def test_block_form_matches_subalgebra_construction():
    rng = np.random.default_rng(8)
    for m in PINNED + [Moduli(rng.uniform(-2, 2), rng.uniform(0.5, 2))
                       for _ in range(5)]:
        J1 = j_operator(m).as_float()
        J2 = j_from_subalgebra(m).as_float()
        assert np.max(np.abs(J1 - J2)) < AGREE_TOL, m


def test_block_form_matches_subalgebra_exact():
    for m in PINNED:
        J1 = j_operator(m, exact=True).matrix
        J2 = j_from_subalgebra(m, exact=True).matrix
        for i in range(14):
            for j in range(14):
                assert J1[i, j] == J2[i, j], (m, i, j)


def test_generators_span_eigenspace():
    # J acts as +i on the subalgebra: J(re W) = -im W, J(im W) = re W
    for m in PINNED:
        J = j_operator(m).as_float()
        basis = real_basis()
        flat = np.stack([B.reshape(-1) for B in basis])
        for W in samelson_generators(m):
            re_c = flat @ W.real.reshape(-1)
            im_c = flat @ W.imag.reshape(-1)
            assert np.max(np.abs(J @ re_c + im_c)) < AGREE_TOL
            assert np.max(np.abs(J @ im_c - re_c)) < AGREE_TOL


def test_orthogonality_only_at_special_moduli():
    assert is_orthogonal_structure(Moduli(0, B_ORTH), tol=1e-10)
    assert is_orthogonal_structure(Moduli(0, -B_ORTH), tol=1e-10)
    rng = np.random.default_rng(12)
    for _ in range(10):
        m = Moduli(rng.uniform(0.1, 3), rng.uniform(0.2, 3))
        assert not is_orthogonal_structure(m, tol=1e-6)


def test_left_invariant_nijenhuis_vanishes():
    basis = real_basis()
    rng = np.random.default_rng(1)
    for m in PINNED:
        jop = j_operator(m)
        for _ in range(12):
            p, q = rng.choice(14, size=2, replace=False)
            N = nijenhuis_algebra(m, basis[p], basis[q], jop=jop)
            assert np.max(np.abs(N)) < NIJ_TOL


def test_corrupted_operator_is_a_genuine_control():
    m = Moduli.from_ab(1, 1)
    Jc = corrupted_j_operator(m).as_float()
    assert np.max(np.abs(Jc @ Jc + np.eye(14))) < SQUARE_TOL
    assert np.max(np.abs(Jc - j_operator(m).as_float())) > 0.5
    basis = real_basis()
    # the control fails the left-invariant integrability test
    worst = 0.0
    for p in range(0, 14, 2):
        for q in range(p + 1, 14, 3):
            N = nijenhuis_algebra(m, basis[p], basis[q],
                                  jop=corrupted_j_operator(m))
            worst = max(worst, float(np.max(np.abs(N))))
    assert worst > 1e-2
