from __future__ import annotations

import pytest

from qhomology.cache import CacheIntegrityError, MatrixCache, dumps_matrix, loads_matrix, resolve_cache_dir
from qhomology.lattice import boundary_matrix
from qhomology.qfield import gf


def test_round_trip():
    M = boundary_matrix(3, 2, gf(2), 7)
    text = dumps_matrix(M, 2, 3, 2)
    lines = text.splitlines()
    assert lines[0] == "qhom-matrix v1"
    assert lines[1] == "2 3 2 7 7 7"
    assert lines[-1].startswith("end ") and len(lines) == 2 + M.nnz + 1
    header, N = loads_matrix(text)
    assert header == {"q": 2, "n": 3, "k": 2, "p": 7, "rows": 7, "cols": 7}
    assert N == M
    assert dumps_matrix(N, 2, 3, 2) == text


@pytest.mark.parametrize("mutate", [
    lambda t: t.replace("\n0 0 1\n", "\n0 0 2\n", 1),
    lambda t: t.replace("2 3 2 7", "2 3 2 5", 1),
    lambda t: t[: t.rfind("end")],
    lambda t: t.replace("qhom-matrix v1", "qhom-matrix v2"),
])
def test_corruption_detected(mutate):
    text = dumps_matrix(boundary_matrix(3, 2, gf(2), 7), 2, 3, 2)
    with pytest.raises(CacheIntegrityError):
        loads_matrix(mutate(text))


def test_directory_cache(tmp_path):
    c = MatrixCache(tmp_path)
    assert c.load(2, 3, 2, 7) is None
    M = c.boundary(3, 2, 2, 7)
    assert c.path(2, 3, 2, 7).exists()
    assert c.load(2, 3, 2, 7) == M
    # a file copied under the wrong key is rejected
    c.path(2, 3, 1, 7).write_text(c.path(2, 3, 2, 7).read_text())
    with pytest.raises(CacheIntegrityError):
        c.load(2, 3, 1, 7)


def test_resolve_dir(monkeypatch, tmp_path):
    monkeypatch.delenv("QHOM_CACHE", raising=False)
    assert resolve_cache_dir(None) is None
    monkeypatch.setenv("QHOM_CACHE", str(tmp_path / "env"))
    assert resolve_cache_dir(None) == tmp_path / "env"
    assert resolve_cache_dir(tmp_path / "flag") == tmp_path / "flag"
