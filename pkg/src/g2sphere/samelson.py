"""The two-parameter family of left-invariant complex structure operators
on g2, in both constructions:

* the closed block form on the real basis (H+, H-, X_{+-k}, Y_{+-k});
* the defining rule J(re W) = -im W over the half-dimensional solvable
  subalgebra s = span<H_{a,+b}, V_{+k}, U_{+k}>.

Both are materialized as 14x14 matrices in the fixed real-basis order and
must agree exactly; s is the +i eigenspace of the complexified operator.

Moduli are stored as (alpha = 1/a, b); alpha = 0 encodes a = infinity and
is a genuinely separate branch (the Cartan 2x2 block is not the alpha -> 0
limit of the finite-alpha formulas).
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .g2_algebra import (REAL_BASIS_NAMES, SAMELSON_ROOT_NAMES, bracket,
                         real_basis, real_ip, root_vector,
                         cartan_plane_generators)
from .scalars import (QuadComplex, QuadScalar, SQRT3, quad_inv)


class Moduli:
    """Samelson parameters (alpha = 1/a, b != 0).

    Values may be int/Fraction/QuadScalar (exact-capable) or float.
    """

    def __init__(self, alpha, b):
        if isinstance(b, (int, Fraction)):
            b_zero = b == 0
        elif isinstance(b, QuadScalar):
            b_zero = b.is_zero()
        else:
            b_zero = float(b) == 0.0
        if b_zero:
            raise ValueError("moduli require b != 0")
        self.alpha = alpha
        self.b = b

    @classmethod
    def from_ab(cls, a, b) -> "Moduli":
        if isinstance(a, (int, Fraction)):
            return cls(Fraction(1, 1) / Fraction(a), b)
        return cls(1.0 / float(a), b)

    @property
    def alpha_float(self) -> float:
        return float(self.alpha)

    @property
    def b_float(self) -> float:
        return float(self.b)

    def exact_values(self):
        """(alpha, b) as QuadScalars; raises for non-representable moduli."""
        return _exact(self.alpha), _exact(self.b)

    def is_infinite_a(self) -> bool:
        if isinstance(self.alpha, QuadScalar):
            return self.alpha.is_zero()
        return float(self.alpha) == 0.0

    def __repr__(self):
        return f"Moduli(alpha={self.alpha!r}, b={self.b!r})"


def _exact(v) -> QuadScalar:
    if isinstance(v, QuadScalar):
        return v
    if isinstance(v, int):
        return QuadScalar(v)
    if isinstance(v, Fraction):
        return QuadScalar(v)
    raise ValueError(f"{v!r} is not exactly representable in Q(sqrt2, sqrt3)")


class JOperator:
    """A 14x14 complex-structure operator in the ordered real basis."""

    def __init__(self, matrix, moduli: Moduli):
        self.matrix = matrix
        self.moduli = moduli

    def as_float(self) -> np.ndarray:
        if self.matrix.dtype == object:
            return np.array([[float(v) for v in row] for row in self.matrix])
        return self.matrix


_IDX = {name: i for i, name in enumerate(REAL_BASIS_NAMES)}


def _cartan_block_exact(moduli: Moduli):
    alpha, b = moduli.exact_values()
    if alpha.is_zero():
        j00 = QuadScalar(0)
        j10 = QuadScalar(2) / (SQRT3 * b)
        j01 = -(SQRT3 * b) / 2
        j11 = QuadScalar(0)
    else:
        ba = b * alpha
        j00 = -(ba / 2)
        j10 = -(SQRT3 * ba / 2)
        j01 = ba / (QuadScalar(2) * SQRT3) + QuadScalar(2) / (SQRT3 * ba)
        j11 = ba / 2
    return ((j00, j01), (j10, j11))


def _cartan_block_float(moduli: Moduli):
    alpha, b = moduli.alpha_float, moduli.b_float
    s3 = np.sqrt(3.0)
    if alpha == 0.0:
        return ((0.0, -s3 * b / 2.0), (2.0 / (s3 * b), 0.0))
    ba = b * alpha
    return ((-ba / 2.0, ba / (2.0 * s3) + 2.0 / (s3 * ba)),
            (-s3 * ba / 2.0, ba / 2.0))


def j_operator(moduli: Moduli, exact: bool = False) -> JOperator:
    """The closed block form.  On the Cartan 2x2 block (H+, H-):

        J H+ = -(b alpha / 2) H+  -  (sqrt3 b alpha / 2) H-
        J H- = (b alpha/(2 sqrt3) + 2/(sqrt3 b alpha)) H+  +  (b alpha / 2) H-

    and for alpha = 0 (a = infinity)

        J H+ = (2/(sqrt3 b)) H-,      J H- = -(sqrt3 b / 2) H+.

    On the root blocks, independently of the moduli:

        J X_{+k} = X_{-k},  J X_{-k} = -X_{+k},  and the same for Y.
    """
    if exact:
        block = _cartan_block_exact(moduli)
        J = np.full((14, 14), QuadScalar(0), dtype=object)
        one = QuadScalar(1)
    else:
        block = _cartan_block_float(moduli)
        J = np.zeros((14, 14))
        one = 1.0
    J[0, 0], J[0, 1] = block[0]
    J[1, 0], J[1, 1] = block[1]
    for fam in ("X", "Y"):
        for k in (1, 2, 3):
            p, m = _IDX[f"{fam}+{k}"], _IDX[f"{fam}-{k}"]
            J[m, p] = one
            J[p, m] = -one
    return JOperator(J, moduli)


def samelson_generators(moduli: Moduli, exact: bool = False):
    """Seven complex matrices spanning s at the given moduli: a Cartan
    generator plus the six plus-labelled root vectors.

    The Cartan generator is (2 + i b alpha) H+ + i sqrt3 b alpha H-
    (a positive real multiple of H_{a,+b}), or sqrt3 b H+ - 2i H- on the
    a = infinity branch.
    """
    if exact:
        alpha, b = moduli.exact_values()
        rbasis = real_basis(exact=True)
        Hp = _complexify(rbasis[0])
        Hm = _complexify(rbasis[1])
        if alpha.is_zero():
            W = QuadComplex(SQRT3 * b) * Hp + QuadComplex(QuadScalar(0), QuadScalar(-2)) * Hm
        else:
            W = (QuadComplex(QuadScalar(2), b * alpha) * Hp
                 + QuadComplex(QuadScalar(0), SQRT3 * b * alpha) * Hm)
        roots = [root_vector("V", k, +1, exact=True) for k in (1, 2, 3)]
        roots += [root_vector("U", k, +1, exact=True) for k in (1, 2, 3)]
        return [W] + roots
    alpha, b = moduli.alpha_float, moduli.b_float
    rbasis = real_basis()
    Hp = rbasis[0].astype(complex)
    Hm = rbasis[1].astype(complex)
    if alpha == 0.0:
        W = np.sqrt(3.0) * b * Hp - 2j * Hm
    else:
        W = (2 + 1j * b * alpha) * Hp + 1j * np.sqrt(3.0) * b * alpha * Hm
    roots = [root_vector("V", k, +1) for k in (1, 2, 3)]
    roots += [root_vector("U", k, +1) for k in (1, 2, 3)]
    return [W] + roots


def _complexify(M):
    out = np.empty((7, 7), dtype=object)
    for i in range(7):
        for j in range(7):
            out[i, j] = QuadComplex(M[i, j])
    return out


def j_from_subalgebra(moduli: Moduli, exact: bool = False) -> JOperator:
    """Independent construction from the defining rule J(re W) = -im W
    (and hence J(im W) = re W) over a spanning set of s."""
    gens = samelson_generators(moduli, exact=exact)
    basis = real_basis(exact=exact)
    if exact:
        K = np.empty((14, 14), dtype=object)
        T = np.empty((14, 14), dtype=object)
        for col, W in enumerate(gens):
            for row in range(14):
                re_c = _coord_exact(W, basis[row], part="re")
                im_c = _coord_exact(W, basis[row], part="im")
                K[row, col] = re_c
                K[row, col + 7] = im_c
                T[row, col] = -im_c
                T[row, col + 7] = re_c
        J = _mat_solve_exact(K, T)  # J K = T
        return JOperator(J, moduli)
    K = np.zeros((14, 14))
    T = np.zeros((14, 14))
    for col, W in enumerate(gens):
        for row in range(14):
            re_c = real_ip(W.real, basis[row])
            im_c = real_ip(W.imag, basis[row])
            K[row, col] = re_c
            K[row, col + 7] = im_c
            T[row, col] = -im_c
            T[row, col + 7] = re_c
    J = np.linalg.solve(K.T, T.T).T
    return JOperator(J, moduli)


def _coord_exact(W, B, part: str) -> QuadScalar:
    total = QuadScalar(0)
    for i in range(7):
        for j in range(7):
            w = W[i, j]
            comp = w.re if part == "re" else w.im
            total = total + comp * B[i, j]
    return total


def _mat_solve_exact(K, T):
    """Solve J K = T over QuadScalar by eliminating on K^T J^T = T^T."""
    n = K.shape[0]
    A = [[K.T[i, j] for j in range(n)] for i in range(n)]
    Y = [[T.T[i, j] for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if bool(A[r][col])), None)
        if piv is None:
            raise ValueError("generators do not span the algebra")
        A[col], A[piv] = A[piv], A[col]
        Y[col], Y[piv] = Y[piv], Y[col]
        inv = quad_inv(A[col][col])
        A[col] = [v * inv for v in A[col]]
        Y[col] = [v * inv for v in Y[col]]
        for r in range(n):
            if r != col and bool(A[r][col]):
                f = A[r][col]
                A[r] = [v - f * w for v, w in zip(A[r], A[col])]
                Y[r] = [v - f * w for v, w in zip(Y[r], Y[col])]
    J = np.empty((14, 14), dtype=object)
    for i in range(n):
        for j in range(n):
            J[i, j] = Y[j][i]
    return J


def is_orthogonal_structure(moduli: Moduli, tol: float = 1e-12) -> bool:
    """True iff J preserves the real inner product (holds exactly at
    alpha = 0, b = +-2/sqrt3, and nowhere else)."""
    J = j_operator(moduli).as_float()
    return bool(np.max(np.abs(J.T @ J - np.eye(14))) <= tol)


def apply_j(jop: JOperator, M: np.ndarray, basis=None) -> np.ndarray:
    """Apply the operator to a real g2 element given as a 7x7 matrix."""
    if basis is None:
        basis = real_basis()
    coords = np.array([real_ip(M, B) for B in basis])
    out_coords = jop.as_float() @ coords
    out = np.zeros((7, 7))
    for c, B in zip(out_coords, basis):
        out += c * B
    return out


def nijenhuis_algebra(moduli: Moduli, V: np.ndarray, W: np.ndarray,
                      jop: JOperator | None = None) -> np.ndarray:
    """N(V, W) = [JV, JW] - [V, W] - J[JV, W] - J[V, JW] on left-invariant
    fields; identically zero for every member of the family."""
    basis = real_basis()
    if jop is None:
        jop = j_operator(moduli)
    JV = apply_j(jop, V, basis)
    JW = apply_j(jop, W, basis)
    return (bracket(JV, JW) - bracket(V, W)
            - apply_j(jop, bracket(JV, W), basis)
            - apply_j(jop, bracket(V, JW), basis))


def corrupted_j_operator(moduli: Moduli) -> JOperator:
    """The operator with the sign of the X1 block flipped: still squares to
    -id but is no longer induced by a subalgebra; used as a control to show
    the integrability tests have power."""
    J = j_operator(moduli).as_float().copy()
    p, m = _IDX["X+1"], _IDX["X-1"]
    J[m, p] *= -1.0
    J[p, m] *= -1.0
    return JOperator(J, moduli)
