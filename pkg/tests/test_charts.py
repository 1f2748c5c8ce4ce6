import numpy as np
import pytest

from g2sphere.charts import (ChartFrame, chart_contains, chart_pairs,
                             frame_at, solve_x_of_y)
from g2sphere.octonion import is_octonion_automorphism
from g2sphere.sphere_map import f_matrix

FRAME_TOL = 1e-10
FORMULA_TOL = 1e-12


def _unit(rng):
    y = rng.standard_normal(7)
    return y / np.linalg.norm(y)


def test_chart_membership():
    e1 = np.eye(7)[0]
    assert chart_contains(1, e1)
    assert not chart_contains(1, -e1)
    with pytest.raises(ValueError):
        chart_contains(0, e1)


def test_pairs_partition_the_complement():
    for i in range(1, 8):
        pairs = chart_pairs(i)
        seen = {i}
        for j, k, s in pairs:
            assert s in (-1, 1)
            seen.update((j, k))
        assert seen == set(range(1, 8))


def test_solution_inverts_the_projection():
    rng = np.random.default_rng(0)
    for i in range(1, 8):
        for _ in range(100):
            y = _unit(rng)
            if y[i - 1] <= -0.5:
                continue
            x = solve_x_of_y(i, y)
            assert abs(x @ x - 1.0) < FRAME_TOL
            assert x[i - 1] >= 0.0
            assert np.max(np.abs(f_matrix(x)[:, i - 1] - y)) < FRAME_TOL


def test_chart1_closed_form_solution():
    # explicit branch for chart 1; the (6,7) pair couples with opposite sign
    rng = np.random.default_rng(1)
    for _ in range(100):
        y = _unit(rng)
        if y[0] <= -0.5:
            continue
        x = solve_x_of_y(1, y)
        r = np.sqrt(2.0 * y[0] + 1.0)
        d = np.sqrt(3.0) * (y[0] + 1.0)
        expected = np.array([
            r / np.sqrt(3.0),
            (r * y[1] - y[2]) / d,
            (y[1] + r * y[2]) / d,
            (r * y[3] - y[4]) / d,
            (y[3] + r * y[4]) / d,
            (r * y[5] + y[6]) / d,
            (-y[5] + r * y[6]) / d,
        ])
        assert np.max(np.abs(x - expected)) < FORMULA_TOL


def test_frame_properties():
    rng = np.random.default_rng(2)
    eye = np.eye(7)
    for i in range(1, 8):
        count = 0
        while count < 40:
            y = _unit(rng)
            if y[i - 1] <= -0.4:
                continue
            count += 1
            fr = frame_at(i, y)
            B = fr.B
            assert np.max(np.abs(B.T @ B - eye)) < FRAME_TOL
            assert np.max(np.abs(B @ B @ B - eye)) < FRAME_TOL
            assert np.max(np.abs(B[:, i - 1] - y)) < FRAME_TOL
            assert is_octonion_automorphism(B)
            T = fr.tangent_columns()
            assert T.shape == (7, 6)
            assert np.max(np.abs(T.T @ y)) < FRAME_TOL


def test_frame_at_pole_is_the_standard_rotation():
    e1 = np.eye(7)[0]
    assert np.array_equal(frame_at(1, e1).B, f_matrix(e1))


def test_second_column_third_component_closed_form():
    rng = np.random.default_rng(3)
    done = 0
    while done < 100:
        y = _unit(rng)
        if y[0] <= -0.4:
            continue
        done += 1
        y1, y2, y3 = y[0], y[1], y[2]
        value = (y1 * y2 * y3
                 + np.sqrt(2.0 * y1 + 1.0) / 2.0
                 * (y1 ** 2 + y2 ** 2 - y3 ** 2 + 2.0 * y1 + 1.0)) \
            / (y1 ** 2 + 2.0 * y1 + 1.0)
        assert abs(frame_at(1, y).B[2, 1] - value) < FORMULA_TOL


def test_charts_cover_the_sphere():
    rng = np.random.default_rng(4)
    Y = rng.standard_normal((100_000, 7))
    Y /= np.linalg.norm(Y, axis=1, keepdims=True)
    assert bool(np.all(Y.max(axis=1) > -0.5))


def test_boundary_rejection():
    y = np.zeros(7)
    y[0] = -0.6
    y[1] = np.sqrt(1.0 - 0.36)
    with pytest.raises(ValueError):
        solve_x_of_y(1, y)
