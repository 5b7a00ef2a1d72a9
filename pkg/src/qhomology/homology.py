"""Incidence homology H^n_{k,i} of P(n,q) over GF(p), computed from matrices.

:class:`ProjectiveSpace` owns the boundary operators for one ``(n, q, p)``
and memoizes ranks and coset bases, so sweeping a whole grid of ``(k, i)``
only eliminates each operator once.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .lattice import DEFAULT_CAP, boundary_matrix, check_invertible, count_fixed_subspaces, permutation
from .linalg import SparseMatModP, kernel_basis, rank_mod_p, reduce_rows, rref_mod_p
from .qcomb import IndexPair, gauss_binomial, is_middle_index, quantum_char
from .qfield import gf


@dataclass
class HomologyResult:
    """Dimension data for one H^n_{k,i}; ``basis`` holds coset representatives."""

    n: int
    k: int
    i: int
    p: int
    q: int
    m: int
    betti: int
    is_middle: bool
    kernel_dim: int
    image_dim: int
    basis: list[list[list[int]]] | None = None  # sparse: [[index, value], ...] per vector

    @property
    def pair(self) -> IndexPair:
        return IndexPair(self.n, self.k, self.i, self.p, self.q, self.m)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "HomologyResult":
        return cls(**d)


@dataclass
class Quotient:
    """Coset basis of K/I: image rows in RREF plus pivot-disjoint representatives."""

    image: np.ndarray
    image_pivots: np.ndarray
    reps: np.ndarray
    rep_pivots: np.ndarray
    p: int
    ambient: int = field(default=0)

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coordinates(self, V: np.ndarray) -> np.ndarray:
        """Coordinates of kernel vectors (rows of V) in the representative basis."""
        W = reduce_rows(V, self.image, self.image_pivots, self.p)
        return W[:, self.rep_pivots] % self.p


class ProjectiveSpace:
    """Homology engine for the subspace lattice of GF(q)^n with GF(p) coefficients."""

    def __init__(self, n: int, q: int, p: int, cap: int = DEFAULT_CAP, check_homological: bool = True,
                 cache=None):
        self.n, self.q, self.p, self.cap = n, q, p, cap
        self.cache = cache  # optional MatrixCache for the single-step boundaries
        self.m = quantum_char(p, q)  # raises when p | q
        self.field = gf(q)
        self.check_homological = check_homological
        self._ops: dict[tuple[int, int], SparseMatModP] = {}
        self._ranks: dict[tuple[int, int], int] = {}
        self._quotients: dict[tuple[int, int], Quotient] = {}
        self._perms: dict[tuple[bytes, int], np.ndarray] = {}

    def size(self, k: int) -> int:
        return gauss_binomial(self.n, k, self.q) if 0 <= k <= self.n else 0

    def op(self, k: int, t: int) -> SparseMatModP:
        """Matrix of ``d^t : M_k -> M_{k-t}`` (zero maps at the edges)."""
        key = (k, t)
        if key not in self._ops:
            if t == 0:
                self._ops[key] = SparseMatModP.identity(self.size(k), self.p)
            elif self.size(k) == 0 or self.size(k - t) == 0:
                self._ops[key] = SparseMatModP.zeros(self.size(k - t), self.size(k), self.p)
            elif t == 1:
                if self.cache is not None:
                    self._ops[key] = self.cache.boundary(self.n, k, self.q, self.p, self.cap)
                else:
                    self._ops[key] = boundary_matrix(self.n, k, self.field, self.p, self.cap)
            else:
                self._ops[key] = self.op(k - t + 1, 1) @ self.op(k, t - 1)
        return self._ops[key]

    def rank(self, k: int, t: int) -> int:
        key = (k, t)
        if key not in self._ranks:
            self._ranks[key] = rank_mod_p(self.op(k, t)) if self.size(k) and self.size(k - t) else 0
        return self._ranks[key]

    def _check(self, k: int, i: int) -> None:
        if not self.check_homological:
            return
        top = k + self.m - i
        if self.size(top) and self.size(k - i):
            if not (self.op(k, i) @ self.op(top, self.m - i)).is_zero():
                raise ArithmeticError(f"d^{i} d^{self.m - i} != 0 at level {top}")

    def homology_dim(self, k: int, i: int, basis: bool = False) -> HomologyResult:
        n, m = self.n, self.m
        if not 0 <= i <= m:
            raise ValueError(f"i={i} outside 0..{m}")
        if i in (0, m) or not 0 <= k <= n:
            # conventions K_{k,0} = I_{k,0} = 0 and K_{k,m} = I_{k,m} = M_k
            dim = 0 if i == 0 or not 0 <= k <= n else self.size(k)
            res = HomologyResult(n, k, i, self.p, self.q, m, 0, False, dim, dim)
            if basis:
                res.basis = []
            return res
        self._check(k, i)
        kernel_dim = self.size(k) - self.rank(k, i)
        image_dim = self.rank(k + m - i, m - i)
        res = HomologyResult(
            n, k, i, self.p, self.q, m,
            betti=kernel_dim - image_dim,
            is_middle=is_middle_index(IndexPair(n, k, i, self.p, self.q, m)),
            kernel_dim=kernel_dim,
            image_dim=image_dim,
        )
        if basis:
            res.basis = sparse_rows(self.quotient(k, i).reps)
        return res

    def quotient(self, k: int, i: int) -> Quotient:
        """Coset representatives for ``ker d^i / im d^(m-i)`` at level k."""
        key = (k, i)
        if key in self._quotients:
            return self._quotients[key]
        p, m, N = self.p, self.m, self.size(k)
        if i <= 0 or i >= m or N == 0:
            # zero homology: everything (or nothing) is image
            if i >= m and N:
                image = np.eye(N, dtype=np.int64)
                piv = np.arange(N)
            else:
                image = np.zeros((0, N), dtype=np.int64)
                piv = np.zeros(0, dtype=np.int64)
            Q = Quotient(image, piv, np.zeros((0, N), dtype=np.int64), np.zeros(0, dtype=np.int64), p, N)
            self._quotients[key] = Q
            return Q
        self._check(k, i)
        K = kernel_basis(self.op(k, i)) if self.size(k - i) else np.eye(N, dtype=np.int64)
        gens = self.op(k + m - i, m - i).toarray().T  # image generators as rows
        if gens.shape[0]:
            image, ipiv = rref_mod_p(gens, p)
        else:
            image, ipiv = np.zeros((0, N), dtype=np.int64), np.zeros(0, dtype=np.int64)
        V = reduce_rows(K, image, ipiv, p)
        reps, rpiv = rref_mod_p(V, p) if V.shape[0] else (V, np.zeros(0, dtype=np.int64))
        Q = Quotient(image, ipiv, reps, rpiv, p, N)
        self._quotients[key] = Q
        return Q

    def homology_basis(self, k: int, i: int) -> np.ndarray:
        return self.quotient(k, i).reps

    def induced_map(self, kind: str, k: int, i: int, t: int = 1) -> np.ndarray:
        """Matrix of the map induced on homology, columns indexed by source reps.

        ``kind='boundary'``: d^t : H_{k,i} -> H_{k-t,i-t}.
        ``kind='inclusion'``: inc^t : H_{k,i} -> H_{k,i+t}.
        """
        if t < 0:
            raise ValueError("negative power")
        src = self.quotient(k, i)
        if kind == "boundary":
            tk, ti = k - t, i - t
            images = self.op(k, t).apply(src.reps) if src.dim else np.zeros((0, self.size(tk)))
        elif kind == "inclusion":
            tk, ti = k, i + t
            images = src.reps
        else:
            raise ValueError(f"unknown induced map {kind!r}")
        if ti <= 0 or ti >= self.m or not 0 <= tk <= self.n:
            return np.zeros((0, src.dim), dtype=np.int64)
        dst = self.quotient(tk, ti)
        if src.dim == 0:
            return np.zeros((dst.dim, 0), dtype=np.int64)
        return dst.coordinates(images).T

    def permutation(self, g: np.ndarray, k: int) -> np.ndarray:
        key = (np.ascontiguousarray(g, dtype=np.int64).tobytes(), k)
        if key not in self._perms:
            self._perms[key] = permutation(self.field, g, self.n, k, self.cap)
        return self._perms[key]

    def action_matrix(self, g, k: int, i: int, reps: np.ndarray | None = None) -> np.ndarray:
        """Matrix of g on H_{k,i}; ``reps`` overrides the stored representatives."""
        g = check_invertible(self.field, g)
        Q = self.quotient(k, i)
        R = Q.reps if reps is None else np.asarray(reps, dtype=np.int64)
        if len(R) == 0:
            return np.zeros((0, 0), dtype=np.int64)
        perm = self.permutation(g, k)
        moved = np.zeros_like(R)
        moved[:, perm] = R  # basis vector x_j goes to x_j g
        return Q.coordinates(moved).T

    def trace(self, g, k: int, i: int, reps: np.ndarray | None = None) -> int:
        if not is_middle_index(IndexPair(self.n, k, i, self.p, self.q, self.m)):
            raise ValueError(f"(k,i)=({k},{i}) is not a middle index for n={self.n}")
        return int(np.trace(self.action_matrix(g, k, i, reps)) % self.p)

    def fixed_count(self, g, k: int) -> int:
        if not 0 <= k <= self.n:
            return 0
        return count_fixed_subspaces(self.field, g, k, self.cap)

    def lefschetz(self, g, k: int, i: int) -> int:
        """``sum_t pi_{k+tm}(g) - pi_{k-i+tm}(g)`` reduced mod p."""
        m, n = self.m, self.n
        total = sum(self.fixed_count(g, k + t * m) for t in range(-(k // m) - 1, (n - k) // m + 2))
        total -= sum(self.fixed_count(g, k - i + t * m) for t in range(-((k - i) // m) - 1, (n - k + i) // m + 2))
        return total % self.p

    def sequence_profile(self, k: int, i: int) -> list[tuple[int, int, int]]:
        """``(level, step, dim)`` for every nonzero module of the sequence through M_{k-i} <- M_k.

        Position at level ``k + tm`` carries H_{., i}; at ``k - i + tm`` it carries H_{., m-i}.
        """
        m, n = self.m, self.n
        out = []
        for start, step in ((k, i), (k - i, m - i)):
            base = start % m
            for lev in range(base, n + 1, m):
                out.append((lev, step, self.homology_dim(lev, step).betti))
        return sorted(out)


def sparse_rows(R: np.ndarray) -> list[list[list[int]]]:
    return [[[int(j), int(v[j])] for j in np.flatnonzero(v)] for v in np.atleast_2d(R)] if len(R) else []


_cache_dir: str | None = None


def set_cache_dir(path) -> None:
    """Route every engine built by :func:`space` through a matrix cache directory."""
    global _cache_dir
    _cache_dir = None if path is None else str(path)


def space(n: int, q: int, p: int, cap: int = DEFAULT_CAP) -> ProjectiveSpace:
    return _space(n, q, p, cap, _cache_dir)


def clear_engines() -> None:
    """Drop memoized engines so the next call rereads any matrix cache."""
    _space.cache_clear()


@lru_cache(maxsize=128)
def _space(n, q, p, cap, cache_dir) -> ProjectiveSpace:
    from .cache import MatrixCache

    return ProjectiveSpace(n, q, p, cap, cache=MatrixCache(cache_dir) if cache_dir else None)


def homology_dim(pair: IndexPair, cap: int = DEFAULT_CAP, basis: bool = False) -> HomologyResult:
    if pair.m != quantum_char(pair.p, pair.q):
        raise ValueError("projective homology uses m = m(p, q)")
    return space(pair.n, pair.q, pair.p, cap).homology_dim(pair.k, pair.i, basis=basis)


def homology_basis(pair: IndexPair, cap: int = DEFAULT_CAP) -> np.ndarray:
    return space(pair.n, pair.q, pair.p, cap).homology_basis(pair.k, pair.i)


def induced_map(kind: str, pair: IndexPair, t: int = 1, cap: int = DEFAULT_CAP) -> np.ndarray:
    return space(pair.n, pair.q, pair.p, cap).induced_map(kind, pair.k, pair.i, t)


def homology_trace(g, pair: IndexPair, cap: int = DEFAULT_CAP) -> int:
    return space(pair.n, pair.q, pair.p, cap).trace(g, pair.k, pair.i)


def sequence_profile(pair: IndexPair, cap: int = DEFAULT_CAP) -> list[tuple[int, int, int]]:
    return space(pair.n, pair.q, pair.p, cap).sequence_profile(pair.k, pair.i)


def alternating_fixed_sum(g, pair: IndexPair, cap: int = DEFAULT_CAP) -> int:
    return space(pair.n, pair.q, pair.p, cap).lefschetz(g, pair.k, pair.i)
