"""The complexified Lie algebra g2^C as explicit 7x7 complex skew matrices.

Provides the standard root basis {H_{a,+-b}, V_{+-k}, U_{+-k}}, the real
orthonormal basis {H+, H-, X_{+-k}, Y_{+-k}}, the Ad-invariant Hermitian
product, brackets, span membership and the derivation test characterizing
membership in g2.

Every constructor exists in a numeric flavour (complex128 numpy arrays)
and an exact flavour (object arrays of QuadComplex / QuadScalar).
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .octonion import MUL_INDEX, MUL_SIGN
from .scalars import (QuadComplex, QuadScalar, quad_inv, quad_sqrt, SQRT2,
                      SQRT6)

# Entry tables, 1-based indices: (row, col, re_units, im_units) where the
# units multiply the overall normalization of the matrix.
# V_{sigma k}, normalization 1/(2*sqrt2):
_V_ENTRIES = {
    1: lambda s: [(2, 4, -1, 0), (2, 5, 0, -s), (3, 4, 0, s), (3, 5, -1, 0),
                  (4, 2, 1, 0), (4, 3, 0, -s), (5, 2, 0, s), (5, 3, 1, 0)],
    2: lambda s: [(2, 6, -1, 0), (2, 7, 0, s), (3, 6, 0, s), (3, 7, 1, 0),
                  (6, 2, 1, 0), (6, 3, 0, -s), (7, 2, 0, -s), (7, 3, -1, 0)],
    3: lambda s: [(4, 6, -1, 0), (4, 7, 0, s), (5, 6, 0, s), (5, 7, 1, 0),
                  (6, 4, 1, 0), (6, 5, 0, -s), (7, 4, 0, -s), (7, 5, -1, 0)],
}
# U_{sigma k}, normalization 1/(2*sqrt6):
_U_ENTRIES = {
    1: lambda s: [(1, 2, 0, -2 * s), (1, 3, -2, 0), (2, 1, 0, 2 * s),
                  (3, 1, 2, 0), (4, 6, -1, 0), (4, 7, 0, s), (5, 6, 0, -s),
                  (5, 7, -1, 0), (6, 4, 1, 0), (6, 5, 0, s), (7, 4, 0, -s),
                  (7, 5, 1, 0)],
    2: lambda s: [(1, 4, 0, 2 * s), (1, 5, 2, 0), (2, 6, -1, 0),
                  (2, 7, 0, s), (3, 6, 0, -s), (3, 7, -1, 0), (4, 1, 0, -2 * s),
                  (5, 1, -2, 0), (6, 2, 1, 0), (6, 3, 0, s), (7, 2, 0, -s),
                  (7, 3, 1, 0)],
    3: lambda s: [(1, 6, 2, 0), (1, 7, 0, -2 * s), (2, 4, 0, s), (2, 5, 1, 0),
                  (3, 4, 1, 0), (3, 5, 0, -s), (4, 2, 0, -s), (4, 3, -1, 0),
                  (5, 2, -1, 0), (5, 3, 0, s), (6, 1, -2, 0), (7, 1, 0, 2 * s)],
}

# Cartan plane rotations: C_a' acts in the (2,3) and (6,7) planes,
# C_b' in the (4,5) and (6,7) planes.
_CA_ENTRIES = [(2, 3, -1, 0), (3, 2, 1, 0), (6, 7, -1, 0), (7, 6, 1, 0)]
_CB_ENTRIES = [(4, 5, -1, 0), (5, 4, 1, 0), (6, 7, -1, 0), (7, 6, 1, 0)]

ROOT_BASIS_NAMES = ("H+b", "H-b", "V+1", "V-1", "V+2", "V-2", "V+3", "V-3",
                    "U+1", "U-1", "U+2", "U-2", "U+3", "U-3")
REAL_BASIS_NAMES = ("H+", "H-", "X+1", "X-1", "X+2", "X-2", "X+3", "X-3",
                    "Y+1", "Y-1", "Y+2", "Y-2", "Y+3", "Y-3")


def _fill(entries, scale, exact):
    if exact:
        M = np.full((7, 7), QuadComplex(), dtype=object)
        for i, j, re, im in entries:
            M[i - 1, j - 1] = QuadComplex(QuadScalar(re), QuadScalar(im)) * scale
    else:
        M = np.zeros((7, 7), dtype=complex)
        for i, j, re, im in entries:
            M[i - 1, j - 1] = complex(re, im) * scale
    return M


def _cartan_h(a, b, sigma, exact):
    if exact:
        norm = quad_inv(QuadScalar(2) * quad_sqrt(a * a + b * b))
        M = np.full((7, 7), QuadComplex(), dtype=object)
        av = QuadComplex(a * norm)
        bv = QuadComplex(QuadScalar(0), QuadScalar(sigma) * b * norm)
    else:
        norm = 1.0 / (2.0 * np.hypot(float(a), float(b)))
        M = np.zeros((7, 7), dtype=complex)
        av = float(a) * norm
        bv = 1j * sigma * float(b) * norm
    M[1, 2] = -av
    M[2, 1] = av
    M[3, 4] = -bv
    M[4, 3] = bv
    M[5, 6] = -av - bv
    M[6, 5] = av + bv
    return M


def cartan_plane_generators(exact: bool = False):
    """The commuting plane rotations C_a', C_b' spanning the real Cartan."""
    if exact:
        one = QuadComplex(1)
        Ca = _fill(_CA_ENTRIES, one, True)
        Cb = _fill(_CB_ENTRIES, one, True)
    else:
        Ca = _fill(_CA_ENTRIES, 1.0 + 0j, False)
        Cb = _fill(_CB_ENTRIES, 1.0 + 0j, False)
    return Ca, Cb


def root_vector(family: str, k: int, sigma: int, exact: bool = False):
    """V or U root vector; family in {'V','U'}, k in 1..3, sigma = +-1."""
    table = _V_ENTRIES if family == "V" else _U_ENTRIES
    if exact:
        scale = QuadComplex(quad_inv(QuadScalar(2) * (SQRT2 if family == "V" else SQRT6)))
    else:
        scale = 1.0 / (2.0 * np.sqrt(2.0 if family == "V" else 6.0))
    return _fill(table[k](sigma), scale, exact)


class RootBasis:
    """The 14 root-basis matrices at moduli (a, b), in the fixed order
    (H+b, H-b, V+1, V-1, V+2, V-2, V+3, V-3, U+1, U-1, U+2, U-2, U+3, U-3)."""

    def __init__(self, a, b, exact: bool = False):
        if exact:
            a = a if isinstance(a, QuadScalar) else QuadScalar(
                Fraction(a) if not isinstance(a, int) else a)
            b = b if isinstance(b, QuadScalar) else QuadScalar(
                Fraction(b) if not isinstance(b, int) else b)
            if float(a) <= 0:
                raise ValueError("root basis requires a > 0")
            if b.is_zero():
                raise ValueError("root basis requires b != 0")
        else:
            a, b = float(a), float(b)
            if a <= 0:
                raise ValueError("root basis requires a > 0")
            if b == 0:
                raise ValueError("root basis requires b != 0")
        self.a, self.b, self.exact = a, b, exact
        self.H_plus = _cartan_h(a, b, +1, exact)
        self.H_minus = _cartan_h(a, b, -1, exact)
        self.V = {(k, s): root_vector("V", k, s, exact)
                  for k in (1, 2, 3) for s in (+1, -1)}
        self.U = {(k, s): root_vector("U", k, s, exact)
                  for k in (1, 2, 3) for s in (+1, -1)}

    def matrices(self):
        out = [self.H_plus, self.H_minus]
        for fam in (self.V, self.U):
            for k in (1, 2, 3):
                out.append(fam[(k, +1)])
                out.append(fam[(k, -1)])
        return out

    def named(self):
        return dict(zip(ROOT_BASIS_NAMES, self.matrices()))


def root_basis(a, b, exact: bool = False) -> RootBasis:
    return RootBasis(a, b, exact=exact)


# -- products and brackets ---------------------------------------------------

def _as_qc(v):
    return v if isinstance(v, QuadComplex) else QuadComplex(v)


def hermitian_ip(V, W):
    """tr(V * conj(W)^T), the Ad-invariant Hermitian product."""
    if V.dtype == object:
        total = QuadComplex()
        for i in range(7):
            for j in range(7):
                total = total + _as_qc(V[i, j]) * _as_qc(W[i, j]).conjugate()
        return total
    return complex(np.sum(V * W.conj()))


def real_ip(V, W):
    """tr(V W^T) for real matrices (also exact QuadScalar matrices)."""
    if V.dtype == object:
        total = QuadScalar(0)
        for i in range(7):
            for j in range(7):
                total = total + V[i, j] * W[i, j]
        return total
    return float(np.sum(V * W))


def bracket(V, W):
    return V @ W - W @ V


def conj_mat(V):
    """Entrywise complex conjugation."""
    if V.dtype == object:
        out = np.empty((7, 7), dtype=object)
        for i in range(7):
            for j in range(7):
                out[i, j] = V[i, j].conjugate()
        return out
    return V.conj()


# -- real orthonormal basis --------------------------------------------------

def real_basis(a=1, b=1, exact: bool = False):
    """The real orthonormal basis (H+, H-, X_{+-k}, Y_{+-k}) of g2, built
    from the root basis at (a, b) via the displayed combinations

        H+ = (sqrt(a^2+b^2)/(2a)) (H_{a,+b} + H_{a,-b})
        H- = (sqrt(a^2+b^2)/(i sqrt3 b)) (H_{a,+b} - H_{a,-b}) - (1/sqrt3) H+
        X_{+k} = (U_{+k} + U_{-k})/sqrt2,   X_{-k} = (U_{+k} - U_{-k})/sqrt(-2)
        Y_{+k} = (V_{+k} + V_{-k})/sqrt2,   Y_{-k} = (V_{+k} - V_{-k})/sqrt(-2)

    with the branch sqrt(-2) = -i*sqrt2 (so X_{-k} = -sqrt2 * im U_{+k}).

    H+ and H- come out independent of (a, b).  Returned as 14 real matrices
    (float64, or QuadScalar object arrays in exact mode).
    """
    rb = root_basis(a, b, exact=exact)
    if exact:
        n = quad_sqrt(rb.a * rb.a + rb.b * rb.b)
        c_hp = QuadComplex(n / (QuadScalar(2) * rb.a))
        from .scalars import SQRT3
        c_hm = QuadComplex(QuadScalar(0), -(n / (SQRT3 * rb.b)))  # 1/(i z) = -i/z
        inv_s3 = QuadComplex(quad_inv(SQRT3))
        inv_s2 = QuadComplex(quad_inv(SQRT2))
        # 1/sqrt(-2) with the branch sqrt(-2) = -i*sqrt2, so that the
        # operator family acts as X_{+k} -> X_{-k} on the plus vectors
        inv_sm2 = QuadComplex(QuadScalar(0), quad_inv(SQRT2))
    else:
        n = np.hypot(rb.a, rb.b)
        c_hp = n / (2.0 * rb.a)
        c_hm = n / (1j * np.sqrt(3.0) * rb.b)
        inv_s3 = 1.0 / np.sqrt(3.0)
        inv_s2 = 1.0 / np.sqrt(2.0)
        inv_sm2 = 1j / np.sqrt(2.0)
    Hp = c_hp * (rb.H_plus + rb.H_minus)
    Hm = c_hm * (rb.H_plus - rb.H_minus) - inv_s3 * Hp
    out = [Hp, Hm]
    for fam in (rb.U, rb.V):
        for k in (1, 2, 3):
            plus, minus = fam[(k, +1)], fam[(k, -1)]
            out.append(inv_s2 * (plus + minus))
            out.append(inv_sm2 * (plus - minus))
    if exact:
        return [_real_part_exact(M) for M in out]
    reals = []
    for M in out:
        if np.max(np.abs(M.imag)) > 1e-12:
            raise ArithmeticError("real-basis combination has imaginary residue")
        reals.append(M.real.copy())
    return reals


def _real_part_exact(M):
    out = np.empty((7, 7), dtype=object)
    for i in range(7):
        for j in range(7):
            z = M[i, j]
            if not z.im.is_zero():
                raise ArithmeticError("real-basis combination has imaginary residue")
            out[i, j] = z.re
    return out


# -- membership tests --------------------------------------------------------

def span_membership(W, basis, tol: float = 1e-9):
    """Express W in the given basis.  Returns (coefficients, residual);
    coefficients is None when the residual exceeds tol * ||W||.

    Exact inputs (object arrays) are solved exactly via the Gram system;
    numeric inputs use least squares with the stated residual threshold.
    """
    if W.dtype == object:
        return _span_membership_exact(W, basis)
    cols = np.stack([B.reshape(-1) for B in basis], axis=1)
    w = W.reshape(-1)
    coeff, _, rank, _ = np.linalg.lstsq(cols, w, rcond=None)
    if rank < len(basis):
        raise ValueError("rank-deficient basis")
    residual = np.linalg.norm(cols @ coeff - w)
    scale = max(np.linalg.norm(w), 1.0)
    if residual > tol * scale:
        return None, residual
    return coeff, residual


def _span_membership_exact(W, basis):
    k = len(basis)
    G = [[hermitian_ip(basis[i], basis[j]) for j in range(k)] for i in range(k)]
    rhs = [hermitian_ip(W, basis[j]).conjugate() for j in range(k)]
    # Solve conj(G)^T c = <basis_j, W>... directly: sum_i c_i <b_i, b_j> = <W, b_j>
    # i.e. G^H c = rhs with G Hermitian -> G c' ... use plain elimination on
    # the k x k system sum_i <b_i,b_j> c_i = <W,b_j> for all j.
    A = [[G[i][j] for i in range(k)] for j in range(k)]  # A[j][i] = <b_i,b_j>
    y = [hermitian_ip(W, basis[j]) for j in range(k)]
    coeff = _solve_exact(A, y)
    R = W.copy()
    for c, B in zip(coeff, basis):
        R = R - c * B
    residual_sq = hermitian_ip(R, R)
    if residual_sq.re.is_zero() and residual_sq.im.is_zero():
        return coeff, 0.0
    return None, float(residual_sq.re) ** 0.5


def _solve_exact(A, y):
    """Gaussian elimination over QuadComplex; A is a list-of-rows copy."""
    k = len(y)
    A = [row[:] for row in A]
    y = y[:]
    for col in range(k):
        piv = next((r for r in range(col, k) if bool(A[r][col])), None)
        if piv is None:
            raise ValueError("rank-deficient basis")
        A[col], A[piv] = A[piv], A[col]
        y[col], y[piv] = y[piv], y[col]
        inv = QuadComplex(1) / A[col][col]
        A[col] = [v * inv for v in A[col]]
        y[col] = y[col] * inv
        for r in range(k):
            if r != col and bool(A[r][col]):
                f = A[r][col]
                A[r] = [v - f * w for v, w in zip(A[r], A[col])]
                y[r] = y[r] - f * y[col]
    return y


def is_g2_element(M, tol: float = 1e-9) -> bool:
    """True iff D = diag(0, M) is a derivation of the octonions:
    D(uv) = (Du)v + u(Dv) on all 64 basis pairs."""
    M = np.asarray(M, dtype=float)
    D = np.zeros((8, 8))
    D[1:, 1:] = M
    worst = 0.0
    for i in range(8):
        for j in range(8):
            k, s = int(MUL_INDEX[i, j]), int(MUL_SIGN[i, j])
            lhs = s * D[:, k]
            rhs = _mul_vec(D[:, i], j) + _mul_vec_right(i, D[:, j])
            worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst <= tol


def _mul_vec(u, j):
    """(sum_i u_i e_i) * e_j as an 8-vector."""
    out = np.zeros(8)
    for i in range(8):
        if u[i] != 0.0:
            out[MUL_INDEX[i, j]] += MUL_SIGN[i, j] * u[i]
    return out


def _mul_vec_right(i, v):
    """e_i * (sum_j v_j e_j) as an 8-vector."""
    out = np.zeros(8)
    for j in range(8):
        if v[j] != 0.0:
            out[MUL_INDEX[i, j]] += MUL_SIGN[i, j] * v[j]
    return out


# -- fixed sub-bases ----------------------------------------------------------

# The half-dimensional solvable subalgebra generating the operator family.
# Sign labels follow the displayed root matrices; with those conventions the
# span below is the unique bracket-closed choice that also reproduces the
# displayed operator tables (the all-plus labels).
SAMELSON_ROOT_NAMES = ("H+b", "V+1", "V+2", "V+3", "U+1", "U+2", "U+3")
SU3_NAMES = ("H+b", "H-b", "V+1", "V-1", "V+2", "V-2", "V+3", "V-3")
M_COMPLEX_NAMES = ("U+1", "U-1", "U+2", "U-2", "U+3", "U-3")


def sub_basis(rb: RootBasis, names):
    table = rb.named()
    return [table[n] for n in names]
