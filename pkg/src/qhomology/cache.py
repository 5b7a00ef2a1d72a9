"""Text cache for boundary matrices.

File layout::

    qhom-matrix v1
    q n k p rows cols
    row col value          # one line per nonzero, 0-based, row-major order
    ...
    end <sha256>

The digest covers every byte before the ``end`` line, so any edit to the
header or the entries is caught on load.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .linalg import SparseMatModP

MAGIC = "qhom-matrix v1"
ENV_VAR = "QHOM_CACHE"


class CacheIntegrityError(ValueError):
    """A cache file is truncated, malformed or fails its checksum."""


def dumps_matrix(M: SparseMatModP, q: int, n: int, k: int) -> str:
    rows, cols = M.shape
    coo = M.mat.tocoo()
    order = np.lexsort((coo.col, coo.row))
    body = [MAGIC, f"{q} {n} {k} {M.p} {rows} {cols}"]
    body += [f"{coo.row[j]} {coo.col[j]} {coo.data[j]}" for j in order]
    text = "\n".join(body) + "\n"
    return text + f"end {hashlib.sha256(text.encode()).hexdigest()}\n"


def loads_matrix(text: str) -> tuple[dict, SparseMatModP]:
    """Parse and verify a cache file; returns ``(header, matrix)``.

    Raises:
        CacheIntegrityError: bad magic, missing ``end`` line, checksum
            mismatch, or entries outside the stated shape.
    """
    cut = text.rfind("end ")
    if cut < 0 or (cut > 0 and text[cut - 1] != "\n"):
        raise CacheIntegrityError("missing 'end' line")
    body, digest = text[:cut], text[cut + 4:].strip()
    if hashlib.sha256(body.encode()).hexdigest() != digest:
        raise CacheIntegrityError("checksum mismatch")
    lines = body.splitlines()
    if len(lines) < 2 or lines[0] != MAGIC:
        raise CacheIntegrityError("not a qhom-matrix v1 file")
    try:
        q, n, k, p, rows, cols = map(int, lines[1].split())
        ent = np.array([list(map(int, ln.split())) for ln in lines[2:]], dtype=np.int64).reshape(-1, 3)
    except ValueError as e:
        raise CacheIntegrityError(f"malformed content: {e}") from None
    r, c, v = ent.T
    if ((r < 0) | (r >= rows) | (c < 0) | (c >= cols)).any() or ((v <= 0) | (v >= p)).any():
        raise CacheIntegrityError("entry outside the declared shape or field")
    M = SparseMatModP(sp.csc_array((v, (r, c)), shape=(rows, cols)), p)
    return {"q": q, "n": n, "k": k, "p": p, "rows": rows, "cols": cols}, M


def resolve_cache_dir(flag: str | os.PathLike | None) -> Path | None:
    """Command-line flag first, then ``$QHOM_CACHE``, else no cache."""
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


class MatrixCache:
    """Directory of boundary matrices keyed by ``(q, n, k, p)``."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def path(self, q: int, n: int, k: int, p: int) -> Path:
        return self.root / f"boundary_q{q}_n{n}_k{k}_p{p}.qhm"

    def load(self, q: int, n: int, k: int, p: int) -> SparseMatModP | None:
        f = self.path(q, n, k, p)
        if not f.exists():
            return None
        header, M = loads_matrix(f.read_text())
        if (header["q"], header["n"], header["k"], header["p"]) != (q, n, k, p):
            raise CacheIntegrityError(f"{f.name}: header does not match its key")
        return M

    def store(self, M: SparseMatModP, q: int, n: int, k: int) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        f = self.path(q, n, k, M.p)
        tmp = f.with_suffix(".tmp")
        tmp.write_text(dumps_matrix(M, q, n, k))
        tmp.replace(f)
        return f

    def boundary(self, n: int, k: int, q: int, p: int, cap: int | None = None) -> SparseMatModP:
        """Load ``d : M_k -> M_{k-1}`` or build and store it."""
        from .lattice import DEFAULT_CAP, boundary_matrix
        from .qfield import gf

        M = self.load(q, n, k, p)
        if M is None:
            M = boundary_matrix(n, k, gf(q), p, cap or DEFAULT_CAP)
            self.store(M, q, n, k)
        return M
