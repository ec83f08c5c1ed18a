"""Orthonormal basis of the symmetric matrices and the coordinate maps.

A p x p symmetric matrix is identified with a coordinate vector of length
m = p(p+1)/2 relative to an orthonormal basis under the trace inner product
<U, V> = tr(UV).  Diagonal positions carry single-entry unit matrices; each
off-diagonal pair (i, j), i < j, carries 1/sqrt(2) in the two mirrored
positions, the unique scaling that makes the family orthonormal.  The map is
then an isometry: ||vec(S)||_2 = ||S||_F for every symmetric S.

Coordinates enumerate the upper triangle in row-major order, so for p = 2
the basis is [[1,0],[0,0]], (1/sqrt 2)[[0,1],[1,0]], [[0,0],[0,1]].
"""

from __future__ import annotations

import numpy as np

_SQRT2 = np.sqrt(2.0)


class SymmetricBasis:
    """Orthonormal basis E_1..E_m of the p x p symmetric matrices.

    Attributes:
        p: matrix dimension.
        m: coordinate dimension, p(p+1)/2.
        rows, cols: upper-triangle index pairs in row-major order; coordinate
            a lives at positions (rows[a], cols[a]) and (cols[a], rows[a]).
        off_diag: boolean mask of the off-diagonal coordinates.
    """

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, (int, np.integer)):
            raise ValueError(f"matrix dimension must be an integer, got {p!r}")
        if p < 1:
            raise ValueError(f"matrix dimension must be >= 1, got {p}")
        self.p = int(p)
        self.m = self.p * (self.p + 1) // 2
        rows, cols = np.triu_indices(self.p)
        self.rows = rows
        self.cols = cols
        self.off_diag = rows != cols
        # <S, E_a> picks up both mirrored entries of an off-diagonal pair.
        self._vec_scale = np.where(self.off_diag, _SQRT2, 1.0)

    def mat_to_vec(self, S: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
        """Coordinates of a symmetric matrix: s_a = <S, E_a>.

        Diagonal entries map unchanged; an off-diagonal entry S_ij maps to
        sqrt(2) * S_ij.  Asymmetric input (beyond `rtol` relative to ||S||_F)
        is rejected rather than silently symmetrized.
        """
        S = np.asarray(S, dtype=float)
        if S.shape != (self.p, self.p):
            raise ValueError(f"expected a {self.p}x{self.p} matrix, got shape {S.shape}")
        asym = np.linalg.norm(S - S.T)
        if asym > rtol * np.linalg.norm(S):
            raise ValueError(
                f"matrix is not symmetric: ||S - S.T||_F = {asym:.3e} exceeds "
                f"the relative tolerance {rtol:g}"
            )
        return S[self.rows, self.cols] * self._vec_scale

    def vec_to_mat(self, v: np.ndarray) -> np.ndarray:
        """Matrix sum_a v_a E_a; exact inverse of :meth:`mat_to_vec`."""
        v = np.asarray(v, dtype=float)
        if v.shape != (self.m,):
            raise ValueError(f"expected a coordinate vector of length {self.m}, got shape {v.shape}")
        S = np.zeros((self.p, self.p))
        S[self.rows, self.cols] = v / self._vec_scale
        S[self.cols, self.rows] = S[self.rows, self.cols]
        return S

    def element(self, a: int) -> np.ndarray:
        """The a-th basis matrix E_a."""
        e = np.zeros(self.m)
        e[a] = 1.0
        return self.vec_to_mat(e)

    def elements(self) -> np.ndarray:
        """All basis matrices stacked as an (m, p, p) array."""
        return np.stack([self.element(a) for a in range(self.m)])

    def sym_kron(self, A: np.ndarray) -> np.ndarray:
        """Matrix of the congruence map X -> A X A in this basis.

        Returns the m x m matrix G with G[a, b] = tr(E_a A E_b A) for a
        symmetric A (the symmetric Kronecker product of A with itself).
        Writing E_a = c_a (e_i e_j^T + e_j e_i^T) with c_a = 1/2 on the
        diagonal and 1/sqrt(2) off it, the trace expands into four products
        of entries of A, which vectorizes to O(m^2) work.
        """
        A = np.asarray(A, dtype=float)
        i, j = self.rows, self.cols
        c = np.where(self.off_diag, 1.0 / _SQRT2, 0.5)
        G = (
            A[np.ix_(j, i)] * A[np.ix_(i, j)]
            + A[np.ix_(j, j)] * A[np.ix_(i, i)]
            + A[np.ix_(i, i)] * A[np.ix_(j, j)]
            + A[np.ix_(i, j)] * A[np.ix_(j, i)]
        )
        G *= np.outer(c, c)
        return G


def build_basis(p: int) -> SymmetricBasis:
    """Construct the orthonormal symmetric-matrix basis for dimension p."""
    return SymmetricBasis(p)
