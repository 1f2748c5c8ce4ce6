from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from g2sphere.charts import frame_at
from g2sphere.j_sphere import j_element
from g2sphere.poly_engine import (NVARS, MultiPoly, eval_p_table, eval_q_table,
                                  extract_matrix_elements, moduli_alpha,
                                  poly_eval, reduce, sphere_canonical,
                                  table_to_json)
from g2sphere.samelson import Moduli
from g2sphere.scalars import SQRT3, QuadScalar

EVAL_TOL = 1e-10

M0 = Moduli.from_ab(1, 1)

x1, x2 = MultiPoly.var(0), MultiPoly.var(1)
xi1 = MultiPoly.var(7)


@pytest.fixture(scope="module")
def tables():
    return extract_matrix_elements(M0)


def test_ring_basics():
    p = (x1 + xi1) * (x1 + xi1)
    assert p == x1 * x1 + 2 * (x1 * xi1) + xi1 * xi1
    assert (p * MultiPoly.zero()).is_zero()
    assert (x1 * SQRT3) * (x2 * SQRT3) == 3 * (x1 * x2)
    assert p.total_degree() == 2
    assert p.degree_in(range(7)) == 2
    assert p.degree_in(range(14, 21)) == 0


def test_reduce_relations():
    sum_sq = MultiPoly.zero()
    for i in range(7):
        v = MultiPoly.var(i)
        sum_sq = sum_sq + v * v
    assert reduce(sum_sq) == MultiPoly.const(1)
    cross = MultiPoly.zero()
    for i in range(7):
        cross = cross + MultiPoly.var(i) * MultiPoly.var(7 + i)
    assert reduce(cross).is_zero()
    x7 = MultiPoly.var(6)
    xi7 = MultiPoly.var(13)
    composite = x7 * x7 * xi7 * xi7
    r = reduce(composite)
    assert r == reduce(reduce(composite))
    assert r.degree_in([6]) == 0 and r.degree_in([13]) == 0


small_polys = st.lists(
    st.tuples(st.integers(0, NVARS - 1), st.integers(0, NVARS - 1),
              st.integers(-5, 5)),
    min_size=1, max_size=6)


def _build(pattern):
    p = MultiPoly.zero()
    for i, j, c in pattern:
        p = p + MultiPoly.var(i) * MultiPoly.var(j) * c
    return p


@settings(max_examples=60, deadline=None)
@given(small_polys)
def test_reduce_idempotent(pattern):
    p = _build(pattern)
    assert reduce(reduce(p)) == reduce(p)


@settings(max_examples=30, deadline=None)
@given(small_polys)
def test_reduce_sound_on_admissible_frames(pattern):
    p = _build(pattern)
    rng = np.random.default_rng(17)
    B = frame_at(1, np.eye(7)[0]).B
    # an admissible assignment: unit x with orthonormal tangents xi, eta
    x, xi, eta = B[:, 0], B[:, 1], B[:, 2]
    a = np.concatenate([x, xi, eta])
    assert abs(poly_eval(p, a) - poly_eval(reduce(p), a)) < 1e-9


def test_sphere_canonical_is_equivalent_and_harmonic():
    p = x1 * x1 * x1 * x2 + x2 * x2
    q = sphere_canonical(p)
    rng = np.random.default_rng(3)
    for _ in range(20):
        x = rng.standard_normal(7)
        x /= np.linalg.norm(x)
        a = np.concatenate([x, np.zeros(14)])
        assert abs(poly_eval(p, a) - poly_eval(q, a)) < 1e-12
    # sphere radius polynomial collapses to its mean value
    r2 = MultiPoly.zero()
    for i in range(7):
        r2 = r2 + MultiPoly.var(i) * MultiPoly.var(i)
    assert sphere_canonical(r2) == MultiPoly.const(1)


def test_tables_are_bilinear_and_sparse(tables):
    stats = tables.stats()
    assert stats["nonzero_P"] <= 49
    assert stats["nonzero_Q"] <= 29
    assert tables.P[6][6].is_zero()
    assert tables.Q[6][6].is_zero()
    for i in range(7):
        for j in range(7):
            assert tables.P[i][j].degree_in(range(7, 21)) == 0
            if j < i:
                assert tables.Q[i][j].is_zero()


def test_tables_match_numeric_pipeline(tables):
    rng = np.random.default_rng(23)
    done = 0
    while done < 20:
        y = rng.standard_normal(7)
        y /= np.linalg.norm(y)
        if y[0] <= -0.3:
            continue
        done += 1
        T = frame_at(1, y).tangent_columns()
        xi, eta = T[:, 1], T[:, 4]
        assert abs(eval_p_table(tables, y, xi, eta)
                   - j_element(M0, y, xi, eta)) < EVAL_TOL
        assert abs(eval_q_table(tables, y, xi)
                   - j_element(M0, y, xi, xi)) < EVAL_TOL


def test_non_representable_moduli_rejected():
    with pytest.raises(ValueError):
        extract_matrix_elements(Moduli(0.123, 1.0))


def test_json_emission(tables):
    data = table_to_json(tables)
    assert set(data) == {"P", "Q0", "Q", "reduction_order", "moduli", "stats"}
    assert len(data["P"]) == 7 and len(data["P"][0]) == 7
    assert data["reduction_order"][0] == "x7^2"
    assert data["moduli"] == {"alpha": "1", "b": "1"}
    assert moduli_alpha(M0) == Fraction(1)
