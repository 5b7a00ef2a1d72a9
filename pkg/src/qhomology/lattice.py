"""Subspaces of GF(q)^n as canonical RREF matrices, and their incidences.

A level ``L^n_k`` is stored as one ``(N, k, n)`` integer array in canonical
order: pivot-column sets in lexicographic order, and within one pivot set the
free entries (read row-major, first entry most significant) in increasing
base-q value.  Because of that order, the index of an RREF matrix is
``offset[pivot set] + value of its free entries`` and can be computed for
whole batches at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np
import scipy.sparse as sp

from .linalg import SparseMatModP
from .qcomb import gauss_binomial, q_factorial
from .qfield import FieldTable, gf

DEFAULT_CAP = 200_000


class CapExceeded(ValueError):
    pass


# -- batched field arithmetic ------------------------------------------------

def matmul(field: FieldTable, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Batched matrix product over GF(q); broadcasts like ``A @ B``."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if field.is_prime_field:
        return (A @ B) % field.q
    inner = A.shape[-1]
    out = None
    for j in range(inner):
        term = field.mul(A[..., :, j : j + 1], B[..., j : j + 1, :])
        out = term if out is None else field.add(out, term)
    if out is None:
        batch = np.broadcast_shapes(A.shape[:-2], B.shape[:-2])
        return np.zeros(batch + (A.shape[-2], B.shape[-1]), dtype=np.int64)
    return np.asarray(out, dtype=np.int64)


def rref_batch(field: FieldTable, M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduced row-echelon form of a stack of matrices over GF(q).

    Args:
        M: array of shape ``(N, r, n)``.

    Returns:
        ``(R, rank)`` with ``R`` the reduced stack (zero rows last) and
        ``rank`` the per-matrix rank, shape ``(N,)``.
    """
    R = np.array(M, dtype=np.int64, copy=True)
    N, r, n = R.shape
    prow = np.zeros(N, dtype=np.int64)
    ar = np.arange(N)
    rows = np.arange(r)
    inv = np.array([0] + [field.inv(a) for a in range(1, field.q)], dtype=np.int64)
    for col in range(n):
        active = prow < r
        if not active.any():
            break
        cand = (R[:, :, col] != 0) & (rows[None, :] >= prow[:, None])
        has = cand.any(axis=1) & active
        if not has.any():
            continue
        idx = ar[has]
        src = np.argmax(cand[idx], axis=1)
        dst = prow[idx]
        a = R[idx, src].copy()
        b = R[idx, dst].copy()
        R[idx, dst] = a
        R[idx, src] = b
        piv = R[idx, dst]
        piv = field.mul(piv, inv[piv[:, col]][:, None])
        R[idx, dst] = piv
        coef = R[idx, :, col].copy()  # (len(idx), r)
        coef[np.arange(len(idx)), dst] = 0
        sub = field.mul(field.neg(coef)[:, :, None], piv[:, None, :])
        R[idx] = field.add(R[idx], sub)
        prow[idx] += 1
    return R, prow


def rref(field: FieldTable, M) -> tuple[np.ndarray, list[int]]:
    """RREF of one matrix; returns the nonzero rows and the pivot columns."""
    M = np.asarray(M, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    if M.shape[0] == 0:
        return M.copy(), []
    R, rank = rref_batch(field, M[None])
    R = R[0, : rank[0]]
    return R, [int(np.flatnonzero(row)[0]) for row in R]


def rank_gfq(field: FieldTable, M) -> int:
    return len(rref(field, M)[1])


# -- subspaces ----------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A k-dimensional subspace of GF(q)^n in canonical RREF form."""

    n: int
    q: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def k(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, v in enumerate(r) if v) for r in self.rows)

    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.k, self.n)

    @classmethod
    def from_matrix(cls, field: FieldTable, M) -> "Subspace":
        """Row space of an arbitrary matrix (rows need not be independent)."""
        M = np.asarray(M, dtype=np.int64)
        R, _ = rref(field, M)
        return cls(M.shape[1], field.q, tuple(tuple(int(v) for v in r) for r in R))


class Level:
    """All k-dimensional subspaces of GF(q)^n with vectorized index lookup."""

    def __init__(self, n: int, k: int, field: FieldTable, cap: int = DEFAULT_CAP):
        if not 0 <= k <= n:
            raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
        size = gauss_binomial(n, k, field.q)
        if size > cap:
            raise CapExceeded(
                f"level L^{n}_{k} over GF({field.q}) has {size} subspaces, cap is {cap}"
            )
        self.n, self.k, self.field, self.size = n, k, field, size
        q = field.q
        self._offset = np.full(1 << n, -1, dtype=np.int64)
        self._weights = {}
        blocks = []
        pos = 0
        for piv in combinations(range(n), k):
            mask = sum(1 << c for c in piv)
            free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, n) if c not in piv]
            F = len(free)
            W = np.zeros((k, n), dtype=np.int64)
            for j, (r, c) in enumerate(free):
                W[r, c] = q ** (F - 1 - j)
            self._offset[mask] = pos
            self._weights[mask] = W
            count = q**F
            block = np.zeros((count, k, n), dtype=np.int64)
            for r, c in enumerate(piv):
                block[:, r, c] = 1
            vals = np.arange(count)
            for j, (r, c) in enumerate(free):
                block[:, r, c] = (vals // q ** (F - 1 - j)) % q
            blocks.append(block)
            pos += count
        assert pos == size
        self.mats = np.concatenate(blocks) if blocks else np.zeros((0, k, n), dtype=np.int64)
        masks = sorted(self._weights)
        self._mask_pos = np.full(1 << n, -1, dtype=np.int64)
        self._mask_pos[masks] = np.arange(len(masks))
        self._W = np.stack([self._weights[mk] for mk in masks])
        self.mats.setflags(write=False)

    def __len__(self):
        return self.size

    def index_of(self, Y: np.ndarray) -> np.ndarray:
        """Canonical indices of a batch ``(N, k, n)`` of RREF matrices."""
        Y = np.asarray(Y, dtype=np.int64)
        N = Y.shape[0]
        if self.k == 0:
            return np.zeros(N, dtype=np.int64)
        piv = np.argmax(Y != 0, axis=2)
        masks = np.bitwise_or.reduce(np.left_shift(1, piv), axis=1)
        vals = np.einsum("xrc,xrc->x", Y, self._W[self._mask_pos[masks]])
        return self._offset[masks] + vals

    def subspace(self, j: int) -> Subspace:
        return Subspace(self.n, self.field.q, tuple(tuple(int(v) for v in r) for r in self.mats[j]))

    def find(self, x: Subspace) -> int:
        return int(self.index_of(x.matrix()[None])[0])


@lru_cache(maxsize=64)
def _level(n: int, k: int, q: int) -> Level:
    return Level(n, k, gf(q), cap=gauss_binomial(n, k, q))


def level(n: int, k: int, field: FieldTable | int, cap: int = DEFAULT_CAP) -> Level:
    q = field if isinstance(field, int) else field.q
    if gauss_binomial(n, k, q) > cap:
        raise CapExceeded(
            f"level L^{n}_{k} over GF({q}) has {gauss_binomial(n, k, q)} subspaces, cap is {cap}"
        )
    return _level(n, k, q)


def enumerate_subspaces(n: int, k: int, field: FieldTable, cap: int = DEFAULT_CAP) -> list[Subspace]:
    lev = level(n, k, field, cap)
    return [lev.subspace(j) for j in range(len(lev))]


def covers(x: Subspace, y: Subspace, field: FieldTable | None = None) -> bool:
    """True iff y is a hyperplane of x."""
    if x.n != y.n:
        raise ValueError("subspaces live in different ambient spaces")
    if y.k != x.k - 1:
        return False
    if y.k == 0:
        return True
    field = field or gf(x.q)
    return rank_gfq(field, np.vstack([x.matrix(), y.matrix()])) == x.k


def contained_indices(n: int, s: int, t: int, field: FieldTable, cap: int = DEFAULT_CAP) -> np.ndarray:
    """``(|L^n_t|, C(t,s)_q)`` array: row j lists the s-subspaces inside the j-th t-subspace.

    Uses that ``C @ X`` is already in RREF when both C and X are.
    """
    big = level(n, t, field, cap)
    small = level(n, s, field, cap)
    coeff = level(t, s, field, cap).mats  # (c, s, t)
    out = np.empty((len(big), len(coeff)), dtype=np.int64)
    for j, C in enumerate(coeff):
        Y = matmul(field, C[None], big.mats)
        out[:, j] = small.index_of(Y)
    return out


def incidence_matrix(n: int, s: int, t: int, field: FieldTable, p: int, cap: int = DEFAULT_CAP,
                     coefficient: int = 1) -> SparseMatModP:
    """``coefficient`` times the containment matrix, rows ``L^n_s`` and columns ``L^n_t``."""
    if s > t or s < 0 or t > n:
        rows = gauss_binomial(n, s, field.q) if 0 <= s <= n else 0
        cols = gauss_binomial(n, t, field.q) if 0 <= t <= n else 0
        return SparseMatModP.zeros(rows, cols, p)
    idx = contained_indices(n, s, t, field, cap)
    nrows = len(level(n, s, field, cap))
    ncols = idx.shape[0]
    cols = np.repeat(np.arange(ncols), idx.shape[1])
    data = np.full(idx.size, coefficient % p, dtype=np.int64)
    m = sp.csc_array((data, (idx.ravel(), cols)), shape=(nrows, ncols))
    return SparseMatModP.from_scipy(m, p)


def boundary_matrix(n: int, k: int, field: FieldTable, p: int, cap: int = DEFAULT_CAP) -> SparseMatModP:
    """Matrix of the incidence map ``M^n_k -> M^n_{k-1}``."""
    if not 1 <= k <= n:
        raise ValueError(f"boundary needs 1 <= k <= n, got k={k}, n={n}")
    return incidence_matrix(n, k - 1, k, field, p, cap)


def boundary_power(n: int, k: int, i: int, field: FieldTable, p: int, cap: int = DEFAULT_CAP) -> SparseMatModP:
    """``i``-fold composite of boundary maps starting at level k.

    Built as the product of consecutive boundary matrices; callers wanting
    the closed form use :func:`incidence_matrix` with ``coefficient=(i!)_q``.
    """
    if i < 0:
        raise ValueError("negative power")
    size = lambda j: gauss_binomial(n, j, field.q) if 0 <= j <= n else 0  # noqa: E731
    if i == 0:
        return SparseMatModP.identity(size(k), p)
    if k - i < 0 or k > n:
        return SparseMatModP.zeros(size(k - i), size(k), p)
    out = boundary_matrix(n, k, field, p, cap)
    for j in range(k - 1, k - i, -1):
        out = boundary_matrix(n, j, field, p, cap) @ out
    return out


def boundary_power_closed_form(n, k, i, field, p, cap=DEFAULT_CAP) -> SparseMatModP:
    return incidence_matrix(n, k - i, k, field, p, cap, coefficient=q_factorial(i, field.q))


def incidence_rank(n: int, s: int, t: int, field: FieldTable, p: int, cap: int = DEFAULT_CAP) -> int:
    """GF(p)-rank of the 0/1 containment matrix of s- versus t-subspaces."""
    from .linalg import rank_mod_p

    lo, hi = min(s, t), max(s, t)
    return rank_mod_p(incidence_matrix(n, lo, hi, field, p, cap))


# -- group action ---------------------------------------------------------------

def check_invertible(field: FieldTable, g) -> np.ndarray:
    g = np.asarray(g, dtype=np.int64)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("group element must be a square matrix")
    if rank_gfq(field, g) != g.shape[0]:
        raise ValueError("group element is singular")
    return g


def act(field: FieldTable, g, x: Subspace) -> Subspace:
    """Right action ``x -> RREF(x g)``."""
    g = check_invertible(field, g)
    if x.k == 0:
        return x
    return Subspace.from_matrix(field, matmul(field, x.matrix(), g))


def permutation(field: FieldTable, g, n: int, k: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    """``perm[j]`` is the index of ``x_j g`` in ``L^n_k``."""
    g = check_invertible(field, g)
    lev = level(n, k, field, cap)
    if k == 0:
        return np.zeros(1, dtype=np.int64)
    R, _ = rref_batch(field, matmul(field, lev.mats, g[None]))
    return lev.index_of(R)


def count_fixed_subspaces(field: FieldTable, g, k: int, cap: int = DEFAULT_CAP) -> int:
    g = np.asarray(g, dtype=np.int64)
    n = g.shape[0]
    if not 0 <= k <= n:
        return 0
    perm = permutation(field, g, n, k, cap)
    return int(np.count_nonzero(perm == np.arange(len(perm))))


def random_invertible(field: FieldTable, n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform invertible matrix by rejection sampling."""
    while True:
        g = rng.integers(0, field.q, size=(n, n))
        if n == 0 or rank_gfq(field, g) == n:
            return g.astype(np.int64)
