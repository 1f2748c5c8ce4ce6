"""Orbit tangent spaces and subspace intersection dimensions.

The conjugate orbit through Lambda = f(e1) has left-translated tangent
space m^C = span<U_{+-1}, U_{+-2}, U_{+-3}> at Lambda, and Ad_g(m^C) at
the point g Lambda g^{-1}.  The operator family restricts to the orbit at
a point exactly when the half-dimensional subalgebra s meets that tangent
space in complex dimension 3; this module measures those dimensions via
the spectrum of the product of the two orthogonal projections (with the
alternating-projection power limit kept as a cross-check oracle).
"""
from __future__ import annotations

import numpy as np

from .g2_algebra import (M_COMPLEX_NAMES, hermitian_ip, real_basis,
                         root_basis, sub_basis)
from .samelson import Moduli, samelson_generators

_COORD_FLAT: np.ndarray | None = None


def _coord_frame() -> np.ndarray:
    """14x49 matrix whose rows are the flattened orthonormal real basis."""
    global _COORD_FLAT
    if _COORD_FLAT is None:
        _COORD_FLAT = np.stack([B.reshape(-1) for B in real_basis()])
    return _COORD_FLAT


def coords_14(W: np.ndarray) -> np.ndarray:
    """Coordinates of a (complex) algebra element in the orthonormal basis."""
    return _coord_frame().conj() @ np.asarray(W, dtype=complex).reshape(-1)


class IndeterminateDimensionError(RuntimeError):
    """The spectrum of PQ has eigenvalues too close to 1 to classify."""

    def __init__(self, spectrum):
        self.spectrum = spectrum
        super().__init__(
            "ambiguous PQ spectrum near 1: "
            + ", ".join(f"{abs(m):.9f}" for m in spectrum))


class ComplexSubspace:
    """A subspace of g2^C held as an orthonormal basis of 7x7 matrices."""

    def __init__(self, basis):
        self.basis = _gram_schmidt(basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _gram_schmidt(mats, tol: float = 1e-12):
    out = []
    for M in mats:
        V = np.asarray(M, dtype=complex).copy()
        for B in out:
            V = V - hermitian_ip(V, B) * B
        nrm = np.sqrt(hermitian_ip(V, V).real)
        if nrm > tol:
            out.append(V / nrm)
    return out


def m_complex() -> ComplexSubspace:
    """The 6-dimensional left-translated orbit tangent space at Lambda."""
    rb = root_basis(1, 1)
    return ComplexSubspace(sub_basis(rb, M_COMPLEX_NAMES))


def samelson_subspace(moduli: Moduli, conj: bool = False) -> ComplexSubspace:
    """The half-dimensional subalgebra s (or its complex conjugate)."""
    gens = samelson_generators(moduli)
    if conj:
        gens = [g.conj() for g in gens]
    return ComplexSubspace(gens)


def orbit_tangent(g) -> ComplexSubspace:
    """Ad_g(m^C), the left-translated orbit tangent at g Lambda g^{-1}."""
    g = np.asarray(g, dtype=complex)
    if abs(np.linalg.det(g)) < 1e-9:
        raise ValueError("group element is numerically singular")
    ginv = np.linalg.inv(g)
    return ComplexSubspace([g @ U @ ginv for U in m_complex().basis])


def subspace_projection(S: ComplexSubspace) -> np.ndarray:
    """14x14 Hermitian idempotent projecting onto S, in the coordinates of
    the fixed orthonormal basis of g2."""
    C = np.stack([coords_14(B) for B in S.basis], axis=1)
    return C @ C.conj().T


def intersection_dim(P: np.ndarray, Q: np.ndarray, max_iter: int = 200,
                     tol: float = 1e-7) -> int:
    """dim of (range P) intersect (range Q), counted as the eigenvalues of
    PQ within tol of 1 (the power limit of (PQ)^j projects onto the
    intersection, so unit eigenvalues are exactly the intersection)."""
    mu = np.linalg.eigvals(P @ Q)
    mags = np.abs(mu)
    ambiguous = mu[(mags >= 1.0 - 10.0 * tol) & (mags < 1.0 - tol)]
    if len(ambiguous):
        raise IndeterminateDimensionError(sorted(ambiguous, key=abs))
    return int(np.sum(mags >= 1.0 - tol))


def intersection_dim_power(P: np.ndarray, Q: np.ndarray, power: int = 64
                           ) -> float:
    """Oracle: tr((PQ)^j) by repeated squaring; converges to the dimension
    when the non-unit spectrum is well separated from 1."""
    M = P @ Q
    n = 1
    while n < power:
        M = M @ M
        n *= 2
    return float(np.trace(M).real)


def random_g2(rng: np.random.Generator, scale: float = 1.0,
              complex_scale: float = 0.0) -> np.ndarray:
    """exp of a random algebra element: real in G2 for complex_scale = 0,
    otherwise a bounded element of the complexified group."""
    from scipy.linalg import expm
    basis = real_basis()
    c = rng.standard_normal(14) * scale
    Z = sum(ci * B for ci, B in zip(c, basis))
    if complex_scale:
        d = rng.standard_normal(14) * complex_scale
        Z = Z + 1j * sum(di * B for di, B in zip(d, basis))
    return expm(Z)


def dimension_report(moduli: Moduli, g) -> dict:
    """Both intersection dimensions at the orbit point g Lambda g^{-1},
    with the raw near-1 spectrum tail for diagnostics."""
    T = orbit_tangent(g)
    Q = subspace_projection(T)
    out = {}
    for label, conj in (("s", False), ("s_conj", True)):
        P = subspace_projection(samelson_subspace(moduli, conj=conj))
        mu = np.abs(np.linalg.eigvals(P @ Q))
        mu.sort()
        try:
            dim = intersection_dim(P, Q)
        except IndeterminateDimensionError:
            dim = -1
        out[label] = {"dim": dim, "top_spectrum": mu[-6:].tolist()}
    return out
