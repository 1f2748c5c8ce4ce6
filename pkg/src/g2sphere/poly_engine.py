"""Exact sparse polynomials over Q(sqrt2, sqrt3) in the 21 variables
x1..x7, xi1..xi7, eta1..eta7, and the symbolic extraction of the P/Q
tables for the matrix elements <J xi, eta> of the sphere tensor.

Terms are maps from 21-long exponent tuples to QuadScalar coefficients;
the canonical reduction rewrites modulo the six orthogonality relations
with the fixed solved-for monomials x7^2, xi7^2, eta7^2, x7*xi7,
x7*eta7, xi7*eta7, in this order.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .samelson import Moduli, j_operator
from .g2_algebra import real_basis
from .scalars import QuadScalar, quad_inv
from .sphere_map import _K

NVARS = 21
VAR_NAMES = tuple(f"x{i}" for i in range(1, 8)) \
    + tuple(f"xi{i}" for i in range(1, 8)) \
    + tuple(f"eta{i}" for i in range(1, 8))

_ZERO_EXP = (0,) * NVARS


class MultiPoly:
    """Sparse exact polynomial; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms if terms is not None else {}

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls({})

    @classmethod
    def const(cls, c) -> "MultiPoly":
        c = _coerce(c)
        return cls({} if c.is_zero() else {_ZERO_EXP: c})

    @classmethod
    def var(cls, index: int) -> "MultiPoly":
        e = [0] * NVARS
        e[index] = 1
        return cls({tuple(e): QuadScalar(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(out)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = -c if s is None else s - c
            if s.is_zero():
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(out)

    def __neg__(self):
        return MultiPoly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            out: dict = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    c = c1 * c2
                    s = out.get(e)
                    s = c if s is None else s + c
                    if s.is_zero():
                        out.pop(e, None)
                    else:
                        out[e] = s
            return MultiPoly(out)
        c0 = _coerce(other)
        if c0.is_zero():
            return MultiPoly({})
        return MultiPoly({e: c * c0 for e, c in self.terms.items()})

    __rmul__ = __mul__

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, indices) -> int:
        return max((sum(e[i] for i in indices) for e in self.terms), default=0)

    def __eq__(self, other):
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def sorted_terms(self):
        """Graded lexicographic within the x < xi < eta block order."""
        def key(e):
            return (sum(e), tuple(-v for v in e))
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def __repr__(self):
        parts = []
        for e, c in self.sorted_terms()[:8]:
            mono = "*".join(f"{VAR_NAMES[i]}^{p}" if p > 1 else VAR_NAMES[i]
                            for i, p in enumerate(e) if p)
            parts.append(f"({c!r})" + ("*" + mono if mono else ""))
        more = "" if len(self.terms) <= 8 else f" ... [{len(self.terms)} terms]"
        return " + ".join(parts) + more if parts else "0"


def _coerce(c) -> QuadScalar:
    if isinstance(c, QuadScalar):
        return c
    return QuadScalar(c if isinstance(c, (int, Fraction)) else Fraction(c))


def poly_add(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p + q


def poly_mul(p: MultiPoly, q) -> MultiPoly:
    return p * q


def poly_subst(p: MultiPoly, monomial, replacement: MultiPoly) -> MultiPoly:
    """Replace the designated monomial once in every term it divides
    (iterated to a fixpoint by the caller).  `monomial` is an exponent
    tuple of length 21."""
    kept: dict = {}
    changed = MultiPoly.zero()
    hit = False
    for e, c in p.terms.items():
        if all(a >= b for a, b in zip(e, monomial)):
            hit = True
            rest = tuple(a - b for a, b in zip(e, monomial))
            changed = changed + MultiPoly({rest: c}) * replacement
        else:
            s = kept.get(e)
            kept[e] = c if s is None else s + c
    if not hit:
        return p
    return MultiPoly(kept) + changed


def _mono(*pairs) -> tuple:
    e = [0] * NVARS
    for idx, p in pairs:
        e[idx] += p
    return tuple(e)


def _relation_pairs():
    """(monomial, replacement) in the canonical order."""
    one = MultiPoly.const(1)
    rels = []
    for block in (0, 7, 14):  # x, xi, eta squares
        rep = one
        for i in range(6):
            v = MultiPoly.var(block + i)
            rep = rep - v * v
        rels.append((_mono((block + 6, 2)), rep))
    for b1, b2 in ((0, 7), (0, 14), (7, 14)):  # mixed products
        rep = MultiPoly.zero()
        for i in range(6):
            rep = rep - MultiPoly.var(b1 + i) * MultiPoly.var(b2 + i)
        rels.append((_mono((b1 + 6, 1), (b2 + 6, 1)), rep))
    return rels


_RELATIONS = None


def relations():
    global _RELATIONS
    if _RELATIONS is None:
        _RELATIONS = _relation_pairs()
    return _RELATIONS


def reduce(p: MultiPoly) -> MultiPoly:
    """Canonical form modulo the six orthogonality relations: substitute
    x7^2, xi7^2, eta7^2, x7*xi7, x7*eta7, xi7*eta7 in this fixed order
    until no designated monomial divides any term."""
    rels = relations()
    while True:
        changed = False
        for mono, rep in rels:
            q = poly_subst(p, mono, rep)
            if q is not p:
                p = q
                changed = True
        if not changed:
            return p


def poly_eval(p: MultiPoly, assignment) -> float:
    """Numeric evaluation at 21 reals."""
    a = np.asarray(assignment, dtype=float)
    total = 0.0
    for e, c in p.terms.items():
        v = float(c)
        for i, pw in enumerate(e):
            if pw:
                v *= a[i] ** pw
        total += v
    return total


# -- symbolic sphere-tensor pipeline ------------------------------------------

def _sym_vector(block: int):
    return [MultiPoly.var(block + i) for i in range(7)]


def _sym_k(vec):
    """K(v) as a matrix of polynomials: K[j][i] = -c_{jik} v_k."""
    out = [[MultiPoly.zero() for _ in range(7)] for _ in range(7)]
    for k in range(7):
        for j in range(7):
            for i in range(7):
                s = _K[k, j, i]
                if s:
                    out[j][i] = out[j][i] + vec[k] * _coerce(int(s))
    return out


_HALF_SQRT3 = quad_inv(QuadScalar(2)) * QuadScalar(0, 0, 1, 0)  # sqrt3/2
_THIRD = quad_inv(QuadScalar(3))


def f_matrix_sym(x):
    """f(x) = -1/2 id + 3/2 x x^T + (sqrt3/2) K(x), symbolically."""
    K = _sym_k(x)
    F = [[None] * 7 for _ in range(7)]
    half = Fraction(1, 2)
    for i in range(7):
        for j in range(7):
            F[i][j] = x[i] * x[j] * Fraction(3, 2) + K[i][j] * _HALF_SQRT3
        F[i][i] = F[i][i] - MultiPoly.const(half)
    return F


def f_pushforward_sym(x, xi):
    K = _sym_k(xi)
    A = [[None] * 7 for _ in range(7)]
    for i in range(7):
        for j in range(7):
            A[i][j] = (x[i] * xi[j] + xi[i] * x[j]) * Fraction(3, 2) \
                + K[i][j] * _HALF_SQRT3
    return A


def _mat_mul_sym(A, B):
    n = len(A)
    out = [[MultiPoly.zero()] * n for _ in range(n)]
    for i in range(n):
        for k in range(n):
            a = A[i][k]
            if a.is_zero():
                continue
            for j in range(n):
                if not B[k][j].is_zero():
                    out[i][j] = out[i][j] + a * B[k][j]
    return out


def _mat_vec_sym(A, v):
    out = [MultiPoly.zero() for _ in range(7)]
    for i in range(7):
        for k in range(7):
            if not A[i][k].is_zero() and not v[k].is_zero():
                out[i] = out[i] + A[i][k] * v[k]
    return out


def j_scalar_sym(moduli: Moduli) -> MultiPoly:
    """<J xi, eta> as an exact polynomial in the 21 variables (unreduced).

    Pipeline: A = f_* xi; W = f(x)^T A; expand in the orthonormal real
    basis; apply the exact 14x14 operator; reassemble W2; then the
    closed-form pullback.  With u := W2 x the identities f^2 = 3xx^T-id-f
    (on the sphere) and x^T W2 x = 0 (W2 is exactly skew) collapse the
    pullback (1/3)(2 + f)(f W2)x to

        f_*^{-1}(f W2) = -u/2 + (sqrt3/6) K(x) u,

    of total degree 6 and x-degree 4; finally paired with eta."""
    x = _sym_vector(0)
    xi = _sym_vector(7)
    eta = _sym_vector(14)
    F = f_matrix_sym(x)
    A = f_pushforward_sym(x, xi)
    # W = F^T A
    FT = [[F[j][i] for j in range(7)] for i in range(7)]
    W = _mat_mul_sym(FT, A)
    basis = real_basis(exact=True)
    jmat = j_operator(moduli, exact=True).matrix
    coords = []
    for B in basis:
        acc = MultiPoly.zero()
        for i in range(7):
            for j in range(7):
                b = B[i, j]
                if not b.is_zero():
                    acc = acc + W[i][j] * b
        coords.append(acc)
    out_coords = []
    for p in range(14):
        acc = MultiPoly.zero()
        for q in range(14):
            c = jmat[p, q]
            if not c.is_zero():
                acc = acc + coords[q] * c
        out_coords.append(acc)
    W2 = [[MultiPoly.zero()] * 7 for _ in range(7)]
    for c, B in zip(out_coords, basis):
        for i in range(7):
            for j in range(7):
                b = B[i, j]
                if not b.is_zero():
                    W2[i][j] = W2[i][j] + c * b
    u = _mat_vec_sym(W2, x)
    K = _sym_k(x)
    Ku = _mat_vec_sym(K, u)
    half = Fraction(-1, 2)
    sixth_sqrt3 = _HALF_SQRT3 * _THIRD  # sqrt3/6
    S = MultiPoly.zero()
    for i in range(7):
        w_i = u[i] * half + Ku[i] * sixth_sqrt3
        S = S + w_i * eta[i]
    return S


def _subst_eta_by_xi(p: MultiPoly) -> MultiPoly:
    out: dict = {}
    for e, c in p.terms.items():
        e2 = list(e)
        for i in range(7):
            e2[7 + i] += e2[14 + i]
            e2[14 + i] = 0
        e2 = tuple(e2)
        s = out.get(e2)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(e2, None)
        else:
            out[e2] = s
    return MultiPoly(out)


class MatrixElementTables:
    """P: 7x7 table with <J xi, eta> = sum P[i][j](x) xi_i eta_j;
    Qconst + Q upper-triangular with <J xi, xi> = Qconst(x) + sum Q[i][j](x)
    xi_i xi_j.  All entries reduced polynomials in x only."""

    def __init__(self, P, Qconst, Q, moduli):
        self.P = P
        self.Qconst = Qconst
        self.Q = Q
        self.moduli = moduli

    def stats(self) -> dict:
        nz_p = sum(1 for row in self.P for p in row if not p.is_zero())
        nz_q = sum(1 for i in range(7) for j in range(i, 7)
                   if not self.Q[i][j].is_zero()) \
            + (0 if self.Qconst.is_zero() else 1)
        terms = [len(p.terms) for row in self.P for p in row]
        terms += [len(self.Q[i][j].terms) for i in range(7) for j in range(i, 7)]
        terms.append(len(self.Qconst.terms))
        degs = [p.degree_in(range(7)) for row in self.P for p in row]
        degs += [self.Q[i][j].degree_in(range(7))
                 for i in range(7) for j in range(i, 7)]
        degs.append(self.Qconst.degree_in(range(7)))
        return {"nonzero_P": nz_p, "nonzero_Q": nz_q,
                "max_terms": max(terms), "max_x_degree": max(degs)}


# -- canonical minimal representatives modulo the x-sphere relation -----------

def _laplacian_x(p: MultiPoly) -> MultiPoly:
    out: dict = {}
    for e, c in p.terms.items():
        for i in range(7):
            a = e[i]
            if a >= 2:
                e2 = list(e)
                e2[i] -= 2
                e2 = tuple(e2)
                add = c * (a * (a - 1))
                s = out.get(e2)
                s = add if s is None else s + add
                if s.is_zero():
                    out.pop(e2, None)
                else:
                    out[e2] = s
    return MultiPoly(out)


def _r2_poly() -> MultiPoly:
    acc = MultiPoly.zero()
    for i in range(7):
        v = MultiPoly.var(i)
        acc = acc + v * v
    return acc


def _monomials_x(m: int):
    """All exponent tuples of total degree m in the 7 x-variables."""
    out = []

    def rec(pos, left, cur):
        if pos == 6:
            out.append(tuple(cur + [left]) + (0,) * 14)
            return
        for a in range(left + 1):
            rec(pos + 1, left - a, cur + [a])
    rec(0, m, [])
    return out


_LIFT_CACHE: dict = {}


def _lift_solver(m: int):
    """Row-reduced solver for L q = rhs on homogeneous x-degree m, where
    L = r^2 Delta + (4m + 14) is the operator governing the top-degree
    split T = r^2 q + harmonic."""
    if m in _LIFT_CACHE:
        return _LIFT_CACHE[m]
    monos = _monomials_x(m)
    index = {e: i for i, e in enumerate(monos)}
    n = len(monos)
    A = [[Fraction(0)] * n for _ in range(n)]
    r2 = _r2_poly()
    c = Fraction(4 * m + 14)
    for j, e in enumerate(monos):
        img = _r2_poly() * _laplacian_x(MultiPoly({e: QuadScalar(1)})) \
            + MultiPoly({e: QuadScalar(c)})
        for e2, coeff in img.terms.items():
            A[index[e2]][j] = coeff.c0  # integer operator: c0 component only
    # LU-style exact elimination with recorded operations
    perm = list(range(n))
    M = [row[:] for row in A]
    ops = []  # (kind, ...) replayed on right-hand sides
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            ops.append(("swap", col, piv))
        inv = Fraction(1) / M[col][col]
        M[col] = [v * inv for v in M[col]]
        ops.append(("scale", col, inv))
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
                ops.append(("axpy", r, col, f))
    _LIFT_CACHE[m] = (monos, index, ops)
    return _LIFT_CACHE[m]


def _solve_lift(m: int, rhs: MultiPoly):
    monos, index, ops = _lift_solver(m)
    y = [QuadScalar(0)] * len(monos)
    for e, c in rhs.terms.items():
        y[index[e]] = c
    for op in ops:
        if op[0] == "swap":
            _, i, j = op
            y[i], y[j] = y[j], y[i]
        elif op[0] == "scale":
            _, i, f = op
            y[i] = y[i] * QuadScalar(f)
        else:
            _, r, c2, f = op
            y[r] = y[r] - QuadScalar(f) * y[c2]
    out = {e: v for e, v in zip(monos, y) if not v.is_zero()}
    return MultiPoly(out)


def sphere_canonical(p: MultiPoly) -> MultiPoly:
    """The unique representative of an x-only polynomial modulo the ideal
    (x1^2+...+x7^2 - 1) whose homogeneous parts are all harmonic; it has
    the minimal possible total degree."""
    r2m1 = _r2_poly() - MultiPoly.const(1)
    d = p.degree_in(range(7))
    for deg in range(d, 1, -1):
        top = MultiPoly({e: c for e, c in p.terms.items() if sum(e) == deg})
        if top.is_zero():
            continue
        rhs = _laplacian_x(top)
        if rhs.is_zero():
            continue  # already harmonic
        q = _solve_lift(deg - 2, rhs)
        p = p - r2m1 * q
    return p


def extract_matrix_elements(moduli: Moduli) -> MatrixElementTables:
    """The exact polynomial tables at exactly-representable moduli."""
    moduli.exact_values()  # raises for non-representable moduli
    S_raw = j_scalar_sym(moduli)
    S = reduce(S_raw)
    P = [[MultiPoly.zero() for _ in range(7)] for _ in range(7)]
    for e, c in S.terms.items():
        xi_idx = [i for i in range(7) if e[7 + i]]
        eta_idx = [i for i in range(7) if e[14 + i]]
        if len(xi_idx) != 1 or len(eta_idx) != 1 \
                or e[7 + xi_idx[0]] != 1 or e[14 + eta_idx[0]] != 1:
            raise ArithmeticError("matrix element is not bilinear in (xi, eta)")
        xpart = e[:7] + (0,) * 14
        i, j = xi_idx[0], eta_idx[0]
        P[i][j] = P[i][j] + MultiPoly({xpart: c})
    Sd = reduce(_subst_eta_by_xi(S_raw))
    Qconst = MultiPoly.zero()
    Q = [[MultiPoly.zero() for _ in range(7)] for _ in range(7)]
    for e, c in Sd.terms.items():
        xi_exp = e[7:14]
        deg = sum(xi_exp)
        xpart = e[:7] + (0,) * 14
        if deg == 0:
            Qconst = Qconst + MultiPoly({xpart: c})
        elif deg == 2:
            idx = [i for i in range(7) if xi_exp[i]]
            if len(idx) == 1:
                i = j = idx[0]
            else:
                i, j = idx
            Q[i][j] = Q[i][j] + MultiPoly({xpart: c})
        else:
            raise ArithmeticError("diagonal element has odd xi-degree")
    return MatrixElementTables(P, Qconst, Q, moduli)


def eval_p_table(tables: MatrixElementTables, x, xi, eta) -> float:
    """Numeric Sum P_ij(x) xi_i eta_j."""
    assign = np.concatenate([x, np.zeros(14)])
    total = 0.0
    for i in range(7):
        for j in range(7):
            if not tables.P[i][j].is_zero():
                total += poly_eval(tables.P[i][j], assign) * xi[i] * eta[j]
    return total


def eval_q_table(tables: MatrixElementTables, x, xi) -> float:
    assign = np.concatenate([x, np.zeros(14)])
    total = poly_eval(tables.Qconst, assign)
    for i in range(7):
        for j in range(i, 7):
            if not tables.Q[i][j].is_zero():
                total += poly_eval(tables.Q[i][j], assign) * xi[i] * xi[j]
    return total


def table_to_json(tables: MatrixElementTables) -> dict:
    def poly_json(p: MultiPoly):
        return {" ".join(f"{VAR_NAMES[i]}^{pw}" for i, pw in enumerate(e) if pw)
                or "1": c.to_json() for e, c in p.sorted_terms()}
    return {
        "P": [[poly_json(p) for p in row] for row in tables.P],
        "Q0": poly_json(tables.Qconst),
        "Q": [[poly_json(tables.Q[i][j]) for j in range(7)] for i in range(7)],
        "reduction_order": ["x7^2", "xi7^2", "eta7^2", "x7*xi7", "x7*eta7",
                            "xi7*eta7"],
        "moduli": {"alpha": str(moduli_alpha(tables.moduli)),
                   "b": str(tables.moduli.b)},
        "stats": tables.stats(),
    }


def moduli_alpha(m: Moduli):
    return m.alpha
