"""The induced almost complex tensor on S^6.

For tangent vectors xi, eta at x:

    <J xi, eta> = < f_*^{-1}( f(x) * Jalg( f(x)^{-1} * f_* xi ) ), eta >

where Jalg is the 14x14 operator acting in real-basis coordinates of g2.
The tensor is independent of the moduli.
"""
from __future__ import annotations

import numpy as np

from .charts import chart_contains, frame_at
from .g2_algebra import real_basis, real_ip
from .samelson import JOperator, Moduli, j_operator
from .sphere_map import f_matrix, f_pullback, f_pushforward


class ConsistencyError(RuntimeError):
    """The algebra expansion residual exceeded tolerance: the translated
    derivative failed to land in g2, which signals an internal bug."""


_BASIS_CACHE: list | None = None
_BASIS_FLAT: np.ndarray | None = None


def _basis():
    global _BASIS_CACHE, _BASIS_FLAT
    if _BASIS_CACHE is None:
        _BASIS_CACHE = real_basis()
        _BASIS_FLAT = np.stack([B.reshape(-1) for B in _BASIS_CACHE])
    return _BASIS_CACHE, _BASIS_FLAT


def _expand_in_basis(W: np.ndarray, tol: float = 1e-9):
    basis, flat = _basis()
    coords = flat @ W.reshape(-1)  # orthonormal basis: plain projections
    residual = np.linalg.norm(W.reshape(-1) - flat.T @ coords)
    if residual > tol * max(1.0, np.linalg.norm(W)):
        raise ConsistencyError(
            f"expansion residual {residual:.3e}: element not in g2")
    return coords


def j_apply(jop: JOperator, x, xi, project: bool = False) -> np.ndarray:
    """The tensor applied to a tangent vector: returns J xi at x."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    F = f_matrix(x)
    A = f_pushforward(x, xi)
    W = F.T @ A
    coords = _expand_in_basis(W)
    out_coords = jop.as_float() @ coords
    _, flat = _basis()
    W2 = (flat.T @ out_coords).reshape(7, 7)
    A2 = F @ W2
    if project:
        # tolerate non-tangent A2 x (only relevant for corrupted controls)
        v = (2.0 * (A2 @ x) + F @ (A2 @ x)) / 3.0
        return v - (v @ x) * x
    return f_pullback(x, A2)


def j_element(moduli: Moduli, x, xi, eta, jop: JOperator | None = None) -> float:
    if jop is None:
        jop = j_operator(moduli)
    eta = np.asarray(eta, dtype=float)
    return float(j_apply(jop, x, xi) @ eta)


class SphereJ:
    def __init__(self, chart_index: int, y: np.ndarray, J: np.ndarray,
                 moduli: Moduli):
        self.chart_index = chart_index
        self.y = y
        self.J = J
        self.moduli = moduli


def j_matrix(moduli: Moduli, chart_index: int, y,
             jop: JOperator | None = None) -> SphereJ:
    """6x6 matrix with entries J[p, q] = <J v_p, v_q> over the tangent
    columns v_1..v_6 of the chart frame at y."""
    y = np.asarray(y, dtype=float)
    if not chart_contains(chart_index, y):
        raise ValueError(f"y is outside chart {chart_index}")
    if jop is None:
        jop = j_operator(moduli)
    frame = frame_at(chart_index, y)
    T = frame.tangent_columns()
    out = np.empty((6, 6))
    for p in range(6):
        jv = j_apply(jop, y, T[:, p])
        out[p, :] = T.T @ jv
    return SphereJ(chart_index, y, out, moduli)


def standard_block_j() -> np.ndarray:
    """The tensor at the north pole in its own frame: three 2x2 blocks
    [[0, 1], [-1, 0]] down the diagonal."""
    out = np.zeros((6, 6))
    for k in (0, 2, 4):
        out[k, k + 1] = 1.0
        out[k + 1, k] = -1.0
    return out


def theta(chart_index: int, y1, y2, moduli: Moduli) -> np.ndarray:
    """The intertwiner between tangent spaces, as a 6x6 matrix from the
    frame at y1 to the frame at y2, with group representatives g_y := B_y:

        xi -> f(y2)_*^{-1} ( f(y2) * Ad_{g2 g1^{-1}}( f(y1)^{-1} f(y1)_* xi ) )
    """
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    fr1 = frame_at(chart_index, y1)
    fr2 = frame_at(chart_index, y2)
    g = fr2.B @ fr1.B.T
    F1, F2 = f_matrix(y1), f_matrix(y2)
    T1, T2 = fr1.tangent_columns(), fr2.tangent_columns()
    out = np.empty((6, 6))
    for p in range(6):
        A = f_pushforward(y1, T1[:, p])
        W = F1.T @ A
        W2 = g @ W @ g.T
        v = f_pullback(y2, F2 @ W2)
        out[:, p] = T2.T @ v
    return out


def nijenhuis_sphere(chart_index: int, y, moduli: Moduli, pair: tuple,
                     h: float = 1e-4, jop: JOperator | None = None,
                     project: bool = False) -> np.ndarray:
    """Finite-difference Nijenhuis tensor N(X_p, X_q) at y for the frame
    vector fields X_p, X_q of the chart, returned in frame coordinates.

    Fields are extended 0-homogeneously off the sphere and brackets are
    computed with central differences (O(h^2) truncation)."""
    y = np.asarray(y, dtype=float)
    p, q = pair
    if jop is None:
        jop = j_operator(moduli)

    def field(idx):
        def X(z):
            zn = z / np.linalg.norm(z)
            return frame_at(chart_index, zn).tangent_columns()[:, idx]
        return X

    def jfield(idx):
        X = field(idx)

        def JX(z):
            zn = z / np.linalg.norm(z)
            return j_apply(jop, zn, X(zn), project=project)
        return JX

    def lie(Xf, Yf, z):
        Xz, Yz = Xf(z), Yf(z)
        dY = (Yf(z + h * Xz) - Yf(z - h * Xz)) / (2.0 * h)
        dX = (Xf(z + h * Yz) - Xf(z - h * Yz)) / (2.0 * h)
        return dY - dX

    X, Y = field(p), field(q)
    JX, JY = jfield(p), jfield(q)
    b1 = lie(JX, JY, y)
    b2 = lie(X, Y, y)
    b3 = lie(JX, Y, y)
    b4 = lie(X, JY, y)
    # project the bracket values back to the tangent space before applying J
    def tangent(v):
        return v - (v @ y) * y
    n = (tangent(b1) - tangent(b2)
         - j_apply(jop, y, tangent(b3), project=project)
         - j_apply(jop, y, tangent(b4), project=project))
    T = frame_at(chart_index, y).tangent_columns()
    return T.T @ n
