from __future__ import annotations

import numpy as np
import pytest
import scipy.sparse as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from qhomology.linalg import SparseMatModP, kernel_basis, rank_mod_p, reduce_rows, rref_mod_p, span_rank


def _rank_reference(A, p):
    A = [list(map(int, r)) for r in np.asarray(A) % p]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [x * inv % p for x in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


matrices = st.tuples(st.integers(1, 12), st.integers(1, 12), st.sampled_from([2, 3, 5, 7, 251]), st.integers(0, 2**32 - 1))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_matches_reference(args):
    r, c, p, seed = args
    rng = np.random.default_rng(seed)
    A = rng.integers(0, p, size=(r, c)) * (rng.random((r, c)) < 0.4)
    M = SparseMatModP.from_dense(A, p)
    assert rank_mod_p(M) == _rank_reference(A, p) == span_rank(A, p)


@settings(max_examples=100, deadline=None)
@given(matrices)
def test_kernel_basis(args):
    r, c, p, seed = args
    rng = np.random.default_rng(seed)
    A = rng.integers(0, p, size=(r, c))
    K = kernel_basis(SparseMatModP.from_dense(A, p))
    assert K.shape == (c - _rank_reference(A, p), c)
    assert ((A @ K.T) % p == 0).all()
    assert span_rank(K, p) == len(K)


def test_gf2_packed_rank_wide():
    rng = np.random.default_rng(1)
    A = (rng.random((70, 200)) < 0.05).astype(int)
    assert rank_mod_p(SparseMatModP.from_dense(A, 2)) == _rank_reference(A, 2)


def test_rref_and_reduce():
    R, piv = rref_mod_p([[2, 4, 1], [1, 2, 0]], 5)
    assert piv.tolist() == [0, 2]
    assert R.tolist() == [[1, 2, 0], [0, 0, 1]]
    assert reduce_rows([[3, 1, 4]], R, piv, 5).tolist() == [[0, 0, 0]]
    assert reduce_rows([[0, 1, 0]], R, piv, 5).tolist() == [[0, 1, 0]]


def test_sparse_container():
    M = SparseMatModP.from_entries(2, 3, [(0, 0, 4), (1, 2, 6)], 5)
    assert M.entries() == [(0, 0, 4), (1, 2, 1)]
    assert (M @ SparseMatModP.identity(3, 5)) == M
    assert M.T.shape == (3, 2)
    assert M.scale(5).is_zero()
    assert M.apply(np.array([[1, 1, 1]])).tolist() == [[4, 1]]
    with pytest.raises(ValueError):
        SparseMatModP.from_entries(2, 2, [(0, 0, 1), (0, 0, 2)], 5)
    with pytest.raises(ValueError):
        SparseMatModP.from_entries(2, 2, [(2, 0, 1)], 5)
    with pytest.raises(ValueError):
        SparseMatModP(sp.csc_array((2, 2)), 257)
    with pytest.raises(ValueError):
        M @ SparseMatModP.identity(3, 7)


def test_empty_shapes():
    assert rank_mod_p(SparseMatModP.zeros(0, 5, 3)) == 0
    assert kernel_basis(np.zeros((0, 4), dtype=int), 3).shape == (4, 4)
