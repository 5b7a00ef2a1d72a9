from __future__ import annotations

import json

import numpy as np
import pytest

from qhomology.homology import HomologyResult, ProjectiveSpace, homology_dim, induced_map, space
from qhomology.linalg import span_rank
from qhomology.qcomb import IndexPair, betti_value, middle
from qhomology.qfield import gf


@pytest.mark.parametrize("n,k,i,p,q,betti,kernel,image", [
    (2, 1, 1, 2, 3, 2, 3, 1),
    (4, 2, 1, 3, 2, 7, None, None),
    (3, 1, 2, 7, 2, 0, None, None),
    (4, 2, 1, 7, 2, 19, 20, 1),
])
def test_reference_values(n, k, i, p, q, betti, kernel, image):
    res = homology_dim(IndexPair(n, k, i, p, q))
    assert res.betti == betti
    if kernel is not None:
        assert (res.kernel_dim, res.image_dim) == (kernel, image)


@pytest.mark.parametrize("q,p", [(2, 3), (2, 5), (2, 7), (3, 2), (3, 5), (4, 3), (4, 5), (5, 2), (5, 3)])
def test_engine_equals_closed_form(q, p):
    nmax = 4 if q <= 3 else 3
    for n in range(nmax + 1):
        S = space(n, q, p)
        for k in range(n + 1):
            for i in range(1, S.m):
                assert S.homology_dim(k, i).betti == betti_value(n, k, i, S.m, q)


def test_degenerate_conventions():
    S = space(3, 2, 7)
    assert S.homology_dim(1, 0).betti == 0
    assert S.homology_dim(1, 3).betti == 0
    assert S.homology_dim(5, 1).betti == 0
    assert S.homology_dim(-1, 1).betti == 0
    with pytest.raises(ValueError):
        S.homology_dim(1, 4)
    with pytest.raises(ValueError):
        ProjectiveSpace(2, 4, 2)


@pytest.mark.parametrize("n,q,p", [(2, 3, 2), (4, 2, 7), (4, 2, 5), (3, 3, 13)])
def test_basis_is_a_quotient_basis(n, q, p):
    S = space(n, q, p)
    for k in range(n + 1):
        for i in range(1, S.m):
            Q = S.quotient(k, i)
            assert Q.dim == S.homology_dim(k, i).betti
            if Q.dim == 0:
                continue
            assert S.op(k, i).apply(Q.reps).any() == False  # noqa: E712
            both = np.vstack([Q.image, Q.reps]) if len(Q.image) else Q.reps
            assert span_rank(both, p) == len(Q.image) + Q.dim
            # coordinates of the representatives are the identity
            assert (Q.coordinates(Q.reps) == np.eye(Q.dim, dtype=int)).all()


def test_basis_output_is_sparse():
    res = homology_dim(IndexPair(2, 1, 1, 2, 3), basis=True)
    assert len(res.basis) == 2
    vec = np.zeros(4, dtype=int)
    for j, v in res.basis[0]:
        vec[j] = v
    assert vec.sum() % 2 == 0
    assert homology_dim(IndexPair(2, 0, 1, 2, 3), basis=True).basis == []


def test_result_round_trip():
    res = homology_dim(IndexPair(4, 2, 1, 7, 2), basis=True)
    again = HomologyResult.from_dict(json.loads(json.dumps(res.to_dict())))
    assert again == res
    assert again.pair == IndexPair(4, 2, 1, 7, 2)


def test_induced_maps():
    pr = IndexPair(3, 2, 2, 7, 2)
    M = induced_map("boundary", pr, 1)
    assert M.shape == (5, 5) and span_rank(M, 7) == 5
    assert induced_map("inclusion", IndexPair(3, 1, 1, 7, 2), 1).shape == (0, 5)
    with pytest.raises(ValueError):
        induced_map("twist", pr)
    with pytest.raises(ValueError):
        induced_map("boundary", pr, -1)


def test_trace_examples():
    S = space(2, 3, 2)
    F = gf(3)
    g = np.diag([1, 2])
    assert S.trace(g, 1, 1) == S.lefschetz(g, 1, 1)
    assert S.trace(np.eye(2, dtype=int), 1, 1) == 2 % 2
    assert S.trace(2 * np.eye(2, dtype=int), 1, 1) == 0
    S7 = space(4, 2, 7)
    assert S7.trace(np.eye(4, dtype=int), 2, 1) == 19 % 7
    with pytest.raises(ValueError):
        S7.trace(np.eye(4, dtype=int), 1, 1)
    with pytest.raises(ValueError):
        S.trace(np.zeros((2, 2), dtype=int), 1, 1)
    assert F.q == 3


def test_sequence_profiles():
    S = space(4, 2, 7)
    prof = S.sequence_profile(2, 1)
    assert [d for *_, d in prof if d] == [19]
    for n in (1, 3, 5):
        T = space(n, 2, 3)
        for k in range(n + 1):
            assert all(d == 0 for *_, d in T.sequence_profile(k, 1))


def test_large_gf2_level():
    # 11011 x 33880 boundary over GF(2); packed elimination keeps this fast
    S = space(6, 3, 2)
    assert S.homology_dim(3, 1).betti == (3**5 - 1) * (3**3 - 1) * (3 - 1)


def test_cache_dir_routing(tmp_path):
    from qhomology.cache import MatrixCache

    S = ProjectiveSpace(3, 2, 7, cache=MatrixCache(tmp_path))
    assert S.homology_dim(2, 2).betti == 5
    assert sorted(f.name for f in tmp_path.iterdir())
    T = ProjectiveSpace(3, 2, 7, cache=MatrixCache(tmp_path))
    assert T.homology_dim(2, 2).betti == 5
    assert middle(3, 2, 2, 3)
