from __future__ import annotations

import itertools

import numpy as np
import pytest
import scipy.sparse as sp

from qhomology.lattice import (
    CapExceeded,
    Subspace,
    act,
    boundary_matrix,
    boundary_power,
    boundary_power_closed_form,
    contained_indices,
    count_fixed_subspaces,
    covers,
    enumerate_subspaces,
    incidence_matrix,
    incidence_rank,
    level,
    matmul,
    permutation,
    random_invertible,
    rank_gfq,
)
from qhomology.linalg import rank_mod_p
from qhomology.qcomb import gauss_binomial, q_int
from qhomology.qfield import gf


def _brute_subspaces(n, k, q):
    F = gf(q)
    seen = set()
    for rows in itertools.product(itertools.product(range(q), repeat=n), repeat=k):
        M = np.array(rows, dtype=np.int64).reshape(k, n)
        if rank_gfq(F, M) == k:
            seen.add(Subspace.from_matrix(F, M))
    return seen


@pytest.mark.parametrize("n,k,q", [(2, 1, 3), (3, 1, 2), (3, 2, 2), (2, 1, 4), (3, 2, 3), (4, 2, 2)])
def test_enumeration_matches_brute_force(n, k, q):
    got = enumerate_subspaces(n, k, gf(q))
    assert len(got) == len(set(got)) == gauss_binomial(n, k, q)
    if q**(n * k) <= 70000:
        assert set(got) == _brute_subspaces(n, k, q)


def test_counts_and_order():
    F = gf(2)
    assert len(enumerate_subspaces(4, 2, F)) == 35
    assert len(enumerate_subspaces(5, 0, F)) == 1
    lines = enumerate_subspaces(2, 1, gf(3))
    # pivot set {0} first with free entry 0,1,2, then pivot set {1}
    assert [s.rows for s in lines] == [((1, 0),), ((1, 1),), ((1, 2),), ((0, 1),)]


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_index_lookup_roundtrip(n, q):
    for k in range(n + 1):
        lev = level(n, k, gf(q))
        assert (lev.index_of(lev.mats) == np.arange(len(lev))).all()
        for j in range(0, len(lev), max(1, len(lev) // 7)):
            assert lev.find(lev.subspace(j)) == j


def test_cap():
    with pytest.raises(CapExceeded, match="1395"):
        level(6, 3, gf(2), cap=1000)


@pytest.mark.parametrize("n,q", [(3, 2), (3, 3), (4, 2), (3, 4)])
def test_containment_against_covers(n, q):
    F = gf(q)
    for t in range(1, n + 1):
        big = enumerate_subspaces(n, t, F)
        small = enumerate_subspaces(n, t - 1, F)
        idx = contained_indices(n, t - 1, t, F)
        for j in range(0, len(big), max(1, len(big) // 10)):
            truth = {a for a, y in enumerate(small) if covers(big[j], y, F)}
            assert set(idx[j].tolist()) == truth
            assert len(truth) == q_int(t, q)


def test_boundary_examples():
    F3, F2 = gf(3), gf(2)
    assert boundary_matrix(2, 1, F3, 2).toarray().tolist() == [[1, 1, 1, 1]]
    B = boundary_matrix(4, 2, F2, 3).toarray()
    assert (B.sum(axis=0) == 3).all() and (B.sum(axis=1) == 7).all()
    assert boundary_power(4, 2, 2, F2, 3).is_zero()
    A = boundary_power(3, 2, 2, F2, 7)
    assert A == incidence_matrix(3, 0, 2, F2, 7, coefficient=3)
    assert boundary_power(3, 2, 0, F2, 7) == boundary_power(3, 2, 0, F2, 7).T
    assert incidence_rank(2, 0, 1, F3, 2) == 1
    assert incidence_rank(3, 1, 1, F2, 5) == 7


@pytest.mark.parametrize("q", [2, 3, 4])
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_operator_law(q, p):
    if q % p == 0:
        return
    F = gf(q)
    for n in range(1, 5 if q < 4 else 4):
        for k in range(n + 1):
            for i in range(1, k + 1):
                assert boundary_power(n, k, i, F, p) == boundary_power_closed_form(n, k, i, F, p)


def test_incidence_rank_nullity():
    F = gf(2)
    M = incidence_matrix(4, 1, 2, F, 3)
    from qhomology.linalg import kernel_basis

    assert incidence_rank(4, 1, 2, F, 3) + len(kernel_basis(M)) == M.shape[1]


def test_group_action():
    F = gf(3)
    g = np.diag([1, 2])
    assert count_fixed_subspaces(F, g, 1) == 2
    assert count_fixed_subspaces(F, 2 * np.eye(3, dtype=int), 1) == 13
    x = enumerate_subspaces(3, 1, F)[0]
    assert act(F, np.eye(3, dtype=int), x) == x
    with pytest.raises(ValueError):
        act(F, np.zeros((3, 3), dtype=int), x)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_permutations_compose_and_commute_with_boundary(q):
    F = gf(q)
    n = 3
    rng = np.random.default_rng(q)
    g, h = random_invertible(F, n, rng), random_invertible(F, n, rng)
    gh = matmul(F, g, h)
    for k in range(n + 1):
        pg, ph, pgh = permutation(F, g, n, k), permutation(F, h, n, k), permutation(F, gh, n, k)
        assert sorted(pg) == list(range(len(pg)))
        assert (pgh == ph[pg]).all()  # x (gh) = (x g) h

    def perm_matrix(k):
        pk = permutation(F, g, n, k)
        return sp.csc_array((np.ones(len(pk), dtype=np.int64), (pk, np.arange(len(pk)))))

    for k in range(1, n + 1):
        d = boundary_matrix(n, k, F, 5).astype_int()
        assert ((perm_matrix(k - 1) @ d - d @ perm_matrix(k)) != 0).nnz == 0


def test_act_preserves_covers():
    F = gf(2)
    rng = np.random.default_rng(7)
    g = random_invertible(F, 4, rng)
    planes = enumerate_subspaces(4, 2, F)
    lines = enumerate_subspaces(4, 1, F)
    for x in planes[::5]:
        for y in lines[::3]:
            assert covers(x, y, F) == covers(act(F, g, x), act(F, g, y), F)


def test_random_invertible_is_seeded():
    F = gf(5)
    a = random_invertible(F, 4, np.random.default_rng(3))
    b = random_invertible(F, 4, np.random.default_rng(3))
    assert (a == b).all() and rank_gfq(F, a) == 4
    assert rank_mod_p(boundary_matrix(2, 1, gf(3), 2)) == 1
