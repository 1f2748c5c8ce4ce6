"""The open cover U_i = {y in S^6 : y_i > -1/2} and the gauge frames.

For y in U_i the equation "column i of f(x) = y" has exactly two solutions;
we fix the branch with x_i = +sqrt((2 y_i + 1)/3) >= 0.  The diagonal entry
gives x_i; the remaining coordinates come in pairs (x_j, x_k) coupled by a
2x2 linear system read off column i, where (j, k) are linked through the
octonion product e_j e_i = +- e_k.

The frame B_y := f(x(y)) then has column i equal to y and its other six
columns form an oriented orthonormal frame of T_y S^6.
"""
from __future__ import annotations

import numpy as np

from .octonion import MUL_INDEX, MUL_SIGN
from .sphere_map import f_matrix

_SQRT3 = np.sqrt(3.0)


def chart_contains(i: int, y) -> bool:
    _check_index(i)
    y = np.asarray(y, dtype=float)
    return bool(y[i - 1] > -0.5)


def _check_index(i: int):
    if not 1 <= i <= 7:
        raise ValueError("chart index must be in 1..7")


def chart_pairs(i: int):
    """Partition of the indices != i into pairs (j, k, s) with
    e_j e_i = -s e_k, i.e. s is the coefficient of x_k in entry (j, i)."""
    _check_index(i)
    pairs = []
    seen = set()
    for j in range(1, 8):
        if j == i or j in seen:
            continue
        k = int(MUL_INDEX[j, i])
        s = -int(MUL_SIGN[j, i])
        pairs.append((j, k, s))
        seen.update((j, k))
    return pairs


def solve_x_of_y(i: int, y) -> np.ndarray:
    """The branch of solutions of (f(x) column i) = y with x_i >= 0."""
    _check_index(i)
    y = np.asarray(y, dtype=float)
    if abs(y @ y - 1.0) > 1e-9:
        raise ValueError("y is not on the unit sphere")
    yi = y[i - 1]
    if yi <= -0.5:
        raise ValueError(f"y is outside chart {i} (y_{i} <= -1/2)")
    x = np.zeros(7)
    xi = np.sqrt((2.0 * yi + 1.0) / 3.0)
    x[i - 1] = xi
    det = 1.5 * (yi + 1.0)
    for j, k, s in chart_pairs(i):
        yj, yk = y[j - 1], y[k - 1]
        x[j - 1] = (1.5 * xi * yj - (_SQRT3 / 2.0) * s * yk) / det
        x[k - 1] = ((_SQRT3 / 2.0) * s * yj + 1.5 * xi * yk) / det
    return x


class ChartFrame:
    def __init__(self, chart_index: int, y: np.ndarray, B: np.ndarray):
        self.chart_index = chart_index
        self.y = y
        self.B = B

    def tangent_columns(self) -> np.ndarray:
        """7x6: the frame of T_y S^6 (all columns except column chart_index,
        in their original order)."""
        cols = [c for c in range(7) if c != self.chart_index - 1]
        return self.B[:, cols]


def frame_at(i: int, y) -> ChartFrame:
    y = np.asarray(y, dtype=float)
    x = solve_x_of_y(i, y)
    B = f_matrix(x)
    return ChartFrame(i, y, B)
