"""Exact linear algebra over GF(p) for boundary matrices.

Sparse matrices are kept column-compressed with byte entries.  Ranks go
through dense elimination compiled with numba; for p = 2 the rows are packed
64 columns to a machine word, which is what makes the largest desk-scale
levels (tens of thousands of subspaces) tractable.
"""

from __future__ import annotations

import numba
import numpy as np
import scipy.sparse as sp


class SparseMatModP:
    """Sparse matrix over GF(p), p < 256, backed by a scipy CSC array."""

    __slots__ = ("mat", "p")

    def __init__(self, mat, p: int):
        if not 2 <= p < 256:
            raise ValueError(f"coefficient prime must be < 256, got {p}")
        m = sp.csc_array(mat, dtype=np.int64)
        m.data %= p
        m.eliminate_zeros()
        m.sum_duplicates()
        m.data %= p
        m.eliminate_zeros()
        self.mat = sp.csc_array(m, dtype=np.uint8)
        self.p = p

    @classmethod
    def from_scipy(cls, m, p: int) -> "SparseMatModP":
        return cls(m, p)

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries, p: int) -> "SparseMatModP":
        entries = list(entries)
        if not entries:
            return cls.zeros(rows, cols, p)
        r, c, v = (np.array(x, dtype=np.int64) for x in zip(*entries))
        seen = set(zip(r.tolist(), c.tolist()))
        if len(seen) != len(entries):
            raise ValueError("duplicate (row, col) entries")
        if ((r < 0) | (r >= rows) | (c < 0) | (c >= cols)).any():
            raise ValueError("entry outside the matrix shape")
        return cls(sp.csc_array((v, (r, c)), shape=(rows, cols)), p)

    @classmethod
    def from_dense(cls, A, p: int) -> "SparseMatModP":
        return cls(sp.csc_array(np.asarray(A, dtype=np.int64) % p), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "SparseMatModP":
        return cls(sp.csc_array((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, size: int, p: int) -> "SparseMatModP":
        return cls(sp.identity(size, dtype=np.int64, format="csc"), p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.mat.shape

    @property
    def nnz(self) -> int:
        return self.mat.nnz

    def is_zero(self) -> bool:
        return self.mat.nnz == 0

    def entries(self) -> list[tuple[int, int, int]]:
        coo = self.mat.tocoo()
        order = np.lexsort((coo.row, coo.col))
        return [(int(coo.row[j]), int(coo.col[j]), int(coo.data[j])) for j in order]

    def toarray(self) -> np.ndarray:
        return self.mat.toarray().astype(np.int64)

    def astype_int(self):
        return sp.csc_array(self.mat, dtype=np.int64)

    def __matmul__(self, other: "SparseMatModP") -> "SparseMatModP":
        if self.p != other.p:
            raise ValueError("mismatched coefficient primes")
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return SparseMatModP(self.astype_int() @ other.astype_int(), self.p)

    def apply(self, V: np.ndarray) -> np.ndarray:
        """``M @ v`` mod p for each row ``v`` of ``V`` (returns rows)."""
        V = np.atleast_2d(np.asarray(V, dtype=np.int64))
        if V.shape[0] == 0:
            return np.zeros((0, self.shape[0]), dtype=np.int64)
        return np.asarray(self.astype_int() @ V.T).T % self.p

    def scale(self, c: int) -> "SparseMatModP":
        return SparseMatModP(self.astype_int() * (c % self.p), self.p)

    @property
    def T(self) -> "SparseMatModP":
        return SparseMatModP(self.mat.T, self.p)

    def __eq__(self, other):
        if not isinstance(other, SparseMatModP):
            return NotImplemented
        if self.p != other.p or self.shape != other.shape:
            return False
        return (self.astype_int() != other.astype_int()).nnz == 0

    def __repr__(self):
        return f"SparseMatModP(shape={self.shape}, nnz={self.nnz}, p={self.p})"


# -- numba kernels -------------------------------------------------------------

@numba.njit(cache=True)
def _inv_mod(a, p):
    r, b, e = 1, a % p, p - 2
    while e:
        if e & 1:
            r = r * b % p
        b = b * b % p
        e >>= 1
    return r


@numba.njit(cache=True)
def _eliminate(A, p, full):
    """Gaussian elimination in place; first nonzero row is the pivot.

    ``full`` clears above pivots too and normalizes them to 1 (RREF);
    otherwise only below-pivot entries are cleared.  Returns pivot columns.
    """
    R, C = A.shape
    pivots = np.empty(min(R, C), dtype=np.int64)
    r = 0
    for c in range(C):
        if r == R:
            break
        piv = -1
        for i in range(r, R):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, C):
                t = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = t
        inv = _inv_mod(np.int64(A[r, c]), p)
        if inv != 1:
            for j in range(c, C):
                A[r, j] = np.int64(A[r, j]) * inv % p
        start = 0 if full else r + 1
        for i in range(start, R):
            if i == r or A[i, c] == 0:
                continue
            f = p - np.int64(A[i, c])
            for j in range(c, C):
                if A[r, j] != 0:
                    A[i, j] = (np.int64(A[i, j]) + f * np.int64(A[r, j])) % p
        pivots[r] = c
        r += 1
    return pivots[:r]


@numba.njit(cache=True)
def _rank_gf2_packed(W, ncols):
    R, nw = W.shape
    r = 0
    one = np.uint64(1)
    for c in range(ncols):
        if r == R:
            break
        w = c >> 6
        bit = one << np.uint64(c & 63)
        piv = -1
        for i in range(r, R):
            if W[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(w, nw):
                t = W[r, j]
                W[r, j] = W[piv, j]
                W[piv, j] = t
        for i in range(r + 1, R):
            if W[i, w] & bit:
                for j in range(w, nw):
                    W[i, j] ^= W[r, j]
        r += 1
    return r


def _as_csr_int(M) -> tuple[sp.csr_array, int]:
    if isinstance(M, SparseMatModP):
        return sp.csr_array(M.astype_int()), M.p
    raise TypeError("expected SparseMatModP")


def pack_gf2(M: sp.csr_array) -> np.ndarray:
    """Bit-pack the odd entries of a CSR matrix, 64 columns per uint64 word."""
    rows, cols = M.shape
    W = np.zeros((rows, max(1, (cols + 63) // 64)), dtype=np.uint64)
    coo = M.tocoo()
    keep = (coo.data % 2) == 1
    r, c = coo.row[keep].astype(np.int64), coo.col[keep].astype(np.int64)
    np.bitwise_or.at(W, (r, c >> 6), np.left_shift(np.uint64(1), (c & 63).astype(np.uint64)))
    return W


def _small_dtype(p: int):
    return np.uint8 if p < 256 else np.int64


def rank_mod_p(M: SparseMatModP) -> int:
    """Rank of ``M`` over GF(p)."""
    rows, cols = M.shape
    if rows == 0 or cols == 0 or M.nnz == 0:
        return 0
    csr, p = _as_csr_int(M)
    if rows > cols:
        csr = sp.csr_array(csr.T)
        rows, cols = cols, rows
    if p == 2:
        return int(_rank_gf2_packed(pack_gf2(csr), cols))
    A = csr.toarray().astype(_small_dtype(p))
    return len(_eliminate(A, p, False))


def rref_mod_p(A: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row-echelon form of a dense matrix; returns nonzero rows and pivots."""
    A = np.array(A, dtype=np.int64) % p
    if A.size == 0:
        return A[:0], np.zeros(0, dtype=np.int64)
    piv = _eliminate(A, p, True)
    return A[: len(piv)], piv


def kernel_basis(M: SparseMatModP | np.ndarray, p: int | None = None) -> np.ndarray:
    """Basis of ``{v : M v = 0}`` as rows, one per non-pivot column.

    The vector for free column ``f`` has a 1 at ``f``, zeros at the other
    free columns, and is determined on the pivot columns.
    """
    if isinstance(M, SparseMatModP):
        p = M.p
        A = M.toarray()
    else:
        A = np.asarray(M, dtype=np.int64)
    cols = A.shape[1]
    R, piv = rref_mod_p(A, p) if A.shape[0] else (A[:0], np.zeros(0, dtype=np.int64))
    free = np.setdiff1d(np.arange(cols), piv)
    K = np.zeros((len(free), cols), dtype=np.int64)
    K[np.arange(len(free)), free] = 1
    if len(piv):
        K[:, piv] = (-R[:, free].T) % p
    return K


def reduce_rows(V: np.ndarray, R: np.ndarray, piv: np.ndarray, p: int) -> np.ndarray:
    """Clear the pivot coordinates of each row of ``V`` using RREF rows ``R``."""
    V = np.atleast_2d(np.asarray(V, dtype=np.int64)) % p
    if len(piv) == 0 or V.shape[0] == 0:
        return V
    return (V - V[:, piv] @ R) % p


def span_rank(V: np.ndarray, p: int) -> int:
    V = np.atleast_2d(np.asarray(V, dtype=np.int64))
    if V.size == 0:
        return 0
    return len(rref_mod_p(V, p)[1])
