from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2sphere.octonion import (MUL_INDEX, MUL_SIGN, Octonion, conj_by_point,
                               is_inner_automorphism_seed,
                               is_octonion_automorphism, oct_conj, oct_im,
                               oct_inv, oct_mul, oct_norm, oct_norm_sq, oct_re,
                               structure_constant)
from g2sphere.sphere_map import f_matrix

NORM_TOL = 1e-12
EXACT = True

# e_i e_j for i < j, upper triangle of the imaginary table: (k, sign)
UPPER_TABLE = {
    (1, 2): (3, +1), (1, 3): (2, -1), (1, 4): (5, +1), (1, 5): (4, -1),
    (1, 6): (7, -1), (1, 7): (6, +1),
    (2, 3): (1, +1), (2, 4): (6, +1), (2, 5): (7, +1), (2, 6): (4, -1),
    (2, 7): (5, -1),
    (3, 4): (7, +1), (3, 5): (6, -1), (3, 6): (5, +1), (3, 7): (4, -1),
    (4, 5): (1, +1), (4, 6): (2, +1), (4, 7): (3, +1),
    (5, 6): (3, -1), (5, 7): (2, +1),
    (6, 7): (1, -1),
}


def test_table_matches_frozen_products():
    for (i, j), (k, s) in UPPER_TABLE.items():
        assert (int(MUL_INDEX[i, j]), int(MUL_SIGN[i, j])) == (k, s)
        # anticommutativity of distinct imaginary units
        assert (int(MUL_INDEX[j, i]), int(MUL_SIGN[j, i])) == (k, -s)
    for i in range(1, 8):
        assert int(MUL_INDEX[i, i]) == 0 and int(MUL_SIGN[i, i]) == -1
        assert int(MUL_INDEX[0, i]) == i and int(MUL_SIGN[0, i]) == 1
        assert int(MUL_INDEX[i, 0]) == i and int(MUL_SIGN[i, 0]) == 1
    assert int(MUL_INDEX[0, 0]) == 0 and int(MUL_SIGN[0, 0]) == 1


def test_exact_unit_products():
    for i in range(8):
        for j in range(8):
            prod = oct_mul(Octonion.basis(i, exact=EXACT),
                           Octonion.basis(j, exact=EXACT))
            k, s = int(MUL_INDEX[i, j]), int(MUL_SIGN[i, j])
            expected = [Fraction(0)] * 8
            expected[k] = Fraction(s)
            assert list(prod.coeffs) == expected


def test_structure_constant_total_antisymmetry():
    for j in range(1, 8):
        for i in range(1, 8):
            for k in range(1, 8):
                c = structure_constant(j, i, k)
                assert c == -structure_constant(i, j, k)
                assert c == -structure_constant(j, k, i)


coords = st.lists(st.integers(min_value=-9, max_value=9),
                  min_size=8, max_size=8)


@settings(max_examples=150, deadline=None)
@given(coords, coords)
def test_norm_multiplicative_exact(uc, vc):
    u = Octonion([Fraction(c) for c in uc])
    v = Octonion([Fraction(c) for c in vc])
    assert oct_norm_sq(oct_mul(u, v)) == oct_norm_sq(u) * oct_norm_sq(v)


@settings(max_examples=150, deadline=None)
@given(coords, coords)
def test_alternative_laws_exact(uc, vc):
    u = Octonion([Fraction(c) for c in uc])
    v = Octonion([Fraction(c) for c in vc])
    assert oct_mul(u, oct_mul(u, v)) == oct_mul(oct_mul(u, u), v)
    assert oct_mul(oct_mul(v, u), u) == oct_mul(v, oct_mul(u, u))


def test_norm_multiplicative_float():
    rng = np.random.default_rng(11)
    for _ in range(200):
        u = Octonion(rng.standard_normal(8))
        v = Octonion(rng.standard_normal(8))
        u = u.scale(1.0 / oct_norm(u))
        v = v.scale(1.0 / oct_norm(v))
        assert abs(oct_norm(oct_mul(u, v)) - 1.0) < NORM_TOL


def test_conjugation_and_inverse():
    rng = np.random.default_rng(5)
    u = Octonion(rng.standard_normal(8))
    uc = oct_conj(u)
    n = oct_mul(u, uc)
    assert abs(n.coeffs[0] - oct_norm_sq(u)) < NORM_TOL
    assert np.max(np.abs(n.to_floats()[1:])) < NORM_TOL
    w = oct_mul(u, oct_inv(u))
    assert abs(w.coeffs[0] - 1.0) < NORM_TOL
    assert (oct_re(u) + oct_im(u)) == u


def test_inner_automorphism_seed_condition():
    x = np.zeros(8)
    x[1] = 1.0
    v = Octonion(np.concatenate([[1.0], np.sqrt(3.0) * x[1:]]))
    assert is_inner_automorphism_seed(v)
    assert not is_inner_automorphism_seed(
        Octonion([1.0, 1.0, 0, 0, 0, 0, 0, 0]))
    with pytest.raises(ValueError):
        is_inner_automorphism_seed(Octonion.basis(0))  # real octonion


def test_point_conjugation_matches_rotation_matrix():
    rng = np.random.default_rng(7)
    for _ in range(25):
        x = rng.standard_normal(7)
        x /= np.linalg.norm(x)
        F = f_matrix(x)
        assert is_octonion_automorphism(F)
        u = Octonion(np.concatenate([[0.0], rng.standard_normal(7)]))
        direct = conj_by_point(x, u).to_floats()
        assert abs(direct[0]) < NORM_TOL
        assert np.max(np.abs(F @ u.to_floats()[1:] - direct[1:])) < 1e-9
