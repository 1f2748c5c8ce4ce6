"""Octonion algebra with a fixed multiplication convention.

The table below is the single source of truth for the whole package: the
rotation map into SO(7), the chart solver and the derivation test all read
their structure constants from it.

Convention (e_i * e_j, rows i, columns j):

    e1*e2 =  e3   e1*e3 = -e2   e1*e4 =  e5   e1*e5 = -e4
    e1*e6 = -e7   e1*e7 =  e6   e2*e3 =  e1   e2*e4 =  e6
    e2*e5 =  e7   e2*e6 = -e4   e2*e7 = -e5   e3*e4 =  e7
    e3*e5 = -e6   e3*e6 =  e5   e3*e7 = -e4   e4*e5 =  e1
    e4*e6 =  e2   e4*e7 =  e3   e5*e6 = -e3   e5*e7 =  e2
    e6*e7 = -e1

plus antisymmetry for i != j, e_i^2 = -e0 and e0 the unit.
"""
from __future__ import annotations

import math

import numpy as np

from .scalars import QuadScalar, SQRT3, quad_sqrt

# Upper-triangle products e_i*e_j = sign * e_index for 1 <= i < j <= 7.
_UPPER = {
    (1, 2): (1, 3), (1, 3): (-1, 2), (1, 4): (1, 5), (1, 5): (-1, 4),
    (1, 6): (-1, 7), (1, 7): (1, 6),
    (2, 3): (1, 1), (2, 4): (1, 6), (2, 5): (1, 7), (2, 6): (-1, 4),
    (2, 7): (-1, 5),
    (3, 4): (1, 7), (3, 5): (-1, 6), (3, 6): (1, 5), (3, 7): (-1, 4),
    (4, 5): (1, 1), (4, 6): (1, 2), (4, 7): (1, 3),
    (5, 6): (-1, 3), (5, 7): (1, 2),
    (6, 7): (-1, 1),
}

# MUL_SIGN[i][j], MUL_INDEX[i][j]: e_i * e_j = MUL_SIGN * e_{MUL_INDEX}.
MUL_SIGN = np.zeros((8, 8), dtype=np.int64)
MUL_INDEX = np.zeros((8, 8), dtype=np.int64)
for _i in range(8):
    MUL_SIGN[0, _i] = MUL_SIGN[_i, 0] = 1
    MUL_INDEX[0, _i] = MUL_INDEX[_i, 0] = _i
for _i in range(1, 8):
    MUL_SIGN[_i, _i] = -1
    MUL_INDEX[_i, _i] = 0
for (_i, _j), (_s, _k) in _UPPER.items():
    MUL_SIGN[_i, _j], MUL_INDEX[_i, _j] = _s, _k
    MUL_SIGN[_j, _i], MUL_INDEX[_j, _i] = -_s, _k


def structure_constant(j: int, i: int, k: int) -> int:
    """c_{jik} with e_j * e_i = sum_k c_{jik} e_k on imaginary indices."""
    if MUL_INDEX[j, i] == k:
        return int(MUL_SIGN[j, i])
    return 0


class Octonion:
    """8 coefficients over floats (numeric mode) or QuadScalar (exact mode)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != 8:
            raise ValueError("an octonion needs exactly 8 coefficients")
        self.coeffs = coeffs

    @classmethod
    def basis(cls, i: int, exact: bool = False) -> "Octonion":
        one = QuadScalar(1) if exact else 1.0
        zero = QuadScalar(0) if exact else 0.0
        return cls([one if j == i else zero for j in range(8)])

    @classmethod
    def zero(cls, exact: bool = False) -> "Octonion":
        zero = QuadScalar(0) if exact else 0.0
        return cls([zero] * 8)

    def is_exact(self) -> bool:
        return isinstance(self.coeffs[0], QuadScalar)

    def __add__(self, other):
        return Octonion([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return Octonion([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return Octonion([-a for a in self.coeffs])

    def scale(self, s):
        return Octonion([s * a for a in self.coeffs])

    def __mul__(self, other):
        return oct_mul(self, other)

    def __eq__(self, other):
        return self.coeffs == other.coeffs

    def to_floats(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs])

    def to_json(self):
        if self.is_exact():
            return [c.to_json() for c in self.coeffs]
        return [float(c) for c in self.coeffs]

    def __repr__(self):
        return f"Octonion({self.coeffs!r})"


def oct_mul(u: Octonion, v: Octonion) -> Octonion:
    out = [u.coeffs[0] * 0 for _ in range(8)]
    for i in range(8):
        ui = u.coeffs[i]
        if not ui:
            continue
        for j in range(8):
            vj = v.coeffs[j]
            if not vj:
                continue
            k = MUL_INDEX[i, j]
            s = MUL_SIGN[i, j]
            term = ui * vj
            out[k] = out[k] + (term if s > 0 else -term)
    return Octonion(out)


def oct_conj(u: Octonion) -> Octonion:
    return Octonion([u.coeffs[0]] + [-c for c in u.coeffs[1:]])


def oct_norm_sq(u: Octonion):
    total = u.coeffs[0] * u.coeffs[0]
    for c in u.coeffs[1:]:
        total = total + c * c
    return total


def oct_norm(u: Octonion):
    n2 = oct_norm_sq(u)
    if u.is_exact():
        return quad_sqrt(n2)
    return math.sqrt(n2)


def oct_re(u: Octonion) -> Octonion:
    zero = u.coeffs[0] * 0
    return Octonion([u.coeffs[0]] + [zero] * 7)


def oct_im(u: Octonion) -> Octonion:
    zero = u.coeffs[0] * 0
    return Octonion([zero] + list(u.coeffs[1:]))


def oct_inv(u: Octonion) -> Octonion:
    n2 = oct_norm_sq(u)
    if u.is_exact():
        from .scalars import quad_inv
        s = quad_inv(n2)
    else:
        s = 1.0 / n2
    return oct_conj(u).scale(s)


def is_inner_automorphism_seed(v: Octonion, tol: float = 1e-12) -> bool:
    """True iff conjugation by v is an octonion automorphism, i.e.
    4*(re v)^2 = |v|^2, equivalently 3*(re v)^2 = |im v|^2."""
    re = v.coeffs[0]
    im_sq = oct_norm_sq(oct_im(v))
    if v.is_exact():
        if im_sq.is_zero():
            raise ValueError("criterion is stated for non-real octonions")
        return QuadScalar(3) * re * re == im_sq
    if float(im_sq) <= tol:
        raise ValueError("criterion is stated for non-real octonions")
    return abs(3.0 * float(re) ** 2 - float(im_sq)) <= tol * max(1.0, float(im_sq))


def conj_by_point(x, u: Octonion, tol: float = 1e-9) -> Octonion:
    """The inner automorphism u -> (1/4)(e0 + sqrt3 x) u (e0 - sqrt3 x)
    for a unit imaginary octonion x (given as 7 coefficients or Octonion)."""
    if not isinstance(x, Octonion):
        xs = list(x)
        if len(xs) != 7:
            raise ValueError("x must have 7 imaginary coefficients")
        zero = xs[0] * 0
        x = Octonion([zero] + xs)
    exact = x.is_exact()
    if exact:
        if x.coeffs[0] != QuadScalar(0) or oct_norm_sq(x) != QuadScalar(1):
            raise ValueError("x must be a unit imaginary octonion")
        s3 = SQRT3
        quarter = QuadScalar(1) / 4
    else:
        if abs(float(x.coeffs[0])) > tol or abs(float(oct_norm_sq(x)) - 1.0) > tol:
            raise ValueError("x must be a unit imaginary octonion")
        s3 = math.sqrt(3.0)
        quarter = 0.25
    e0 = Octonion.basis(0, exact=exact)
    v = e0 + x.scale(s3)
    w = e0 - x.scale(s3)
    return oct_mul(oct_mul(v, u), w).scale(quarter)


def is_octonion_automorphism(M: np.ndarray, tol: float = 1e-10) -> bool:
    """True iff phi = diag(1, M) preserves all octonion basis products."""
    M = np.asarray(M, dtype=float)
    if M.shape != (7, 7):
        raise ValueError("expected a 7x7 real matrix")
    phi = np.zeros((8, 8))
    phi[0, 0] = 1.0
    phi[1:, 1:] = M
    images = [Octonion(phi[:, j]) for j in range(8)]
    for i in range(8):
        for j in range(8):
            prod = Octonion.basis(i) * Octonion.basis(j)
            lhs = Octonion(phi @ prod.to_floats())
            rhs = images[i] * images[j]
            if np.max(np.abs(lhs.to_floats() - rhs.to_floats())) > tol:
                return False
    return True
