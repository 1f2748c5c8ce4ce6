"""The injection f: S^6 -> G2 by inner octonion automorphisms, its
derivative, and the closed-form inverse of the derivative.

    f(x) = -1/2 id + 3/2 x x^T + (sqrt3/2) K(x)

where K(x) is the left-multiplication-by-x matrix on the imaginary
octonions: K(x)_{ji} = -sum_k c_{jik} x_k with e_j e_i = sum c_{jik} e_k.
f(x) is the rotation by 2pi/3 about the axis x, so f^3 = id and
id + f + f^2 = 3 x x^T, which yields the closed-form pullback
f_*^{-1} A = (1/3)(2 id + f(x)) A x.
"""
from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from .octonion import MUL_INDEX, MUL_SIGN

_SQRT3 = np.sqrt(3.0)

# K[k] with K(x) = sum_k x_k K[k]; (K[k])_{ji} = -c_{jik} (1-based k shifted).
_K = np.zeros((7, 7, 7))
for _j in range(1, 8):
    for _i in range(1, 8):
        if _j == _i:
            continue
        _k = int(MUL_INDEX[_j, _i])
        _K[_k - 1, _j - 1, _i - 1] = -float(MUL_SIGN[_j, _i])


def _check_unit(x, tol=1e-9):
    x = np.asarray(x, dtype=float)
    if x.shape != (7,):
        raise ValueError("expected a point of S^6 as 7 coordinates")
    if abs(x @ x - 1.0) > tol:
        raise ValueError("point is not on the unit sphere")
    return x


def k_matrix(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.einsum("k,kji->ji", x, _K)


def f_matrix(x) -> np.ndarray:
    x = _check_unit(x)
    return -0.5 * np.eye(7) + 1.5 * np.outer(x, x) + (_SQRT3 / 2.0) * k_matrix(x)


def f_pushforward(x, xi, tol: float = 1e-9) -> np.ndarray:
    """The derivative of f at x in direction xi (tangent: <x, xi> = 0)."""
    x = _check_unit(x)
    xi = np.asarray(xi, dtype=float)
    if abs(x @ xi) > tol * max(1.0, float(np.linalg.norm(xi))):
        raise ValueError("xi is not tangent to the sphere at x")
    return 1.5 * (np.outer(x, xi) + np.outer(xi, x)) + (_SQRT3 / 2.0) * k_matrix(xi)


def f_pullback(x, A, tol: float = 1e-9) -> np.ndarray:
    """Inverse of the derivative on its image: (1/3)(2 id + f(x)) A x.

    Requires A x to be tangent at x (that is exactly when the regularized
    limit s -> 1 of ((s - f(x))^{-1} A) x exists)."""
    x = _check_unit(x)
    A = np.asarray(A, dtype=float)
    Ax = A @ x
    if abs(Ax @ x) > tol * max(1.0, float(np.linalg.norm(A))):
        raise ValueError("A x is not tangent at x; the s -> 1 limit diverges")
    return (2.0 * Ax + f_matrix(x) @ Ax) / 3.0


def f_pullback_regularized(x, A, eps: float = 1e-6) -> np.ndarray:
    """Oracle for f_pullback: Richardson extrapolation of
    ((s - f(x))^{-1} A) x at s = 1 + eps and s = 1 + eps/2."""
    x = _check_unit(x)
    A = np.asarray(A, dtype=float)
    F = f_matrix(x)
    eye = np.eye(7)

    def at(s):
        return np.linalg.solve(s * eye - F, A) @ x

    v1 = at(1.0 + eps)
    v2 = at(1.0 + eps / 2.0)
    return 2.0 * v2 - v1


def lambda_log() -> np.ndarray:
    """A real logarithm of Lambda = f(e1) lying in the Cartan span: the
    generator rotating the (2,3) and (4,5) planes by 2pi/3 and the (6,7)
    plane by 4pi/3.  exp of it is Lambda; the principal branch would leave
    the Cartan span, so the (6,7) angle is taken on the 4pi/3 branch."""
    L = np.zeros((7, 7))
    for (i, j, angle) in ((1, 2, 2 * np.pi / 3), (3, 4, 2 * np.pi / 3),
                          (5, 6, 4 * np.pi / 3)):
        L[i, j] = -angle
        L[j, i] = angle
    return L


def exp_algebra(M) -> np.ndarray:
    """Matrix exponential (group element from an algebra element)."""
    return expm(np.asarray(M))
