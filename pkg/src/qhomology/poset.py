"""Incidence homology of an arbitrary finite ranked poset.

Text format (one directive per line, ``#`` starts a comment)::

    poset <name>
    elements <N>
    rank <elem-index> <rank>
    cover <upper-index> <lower-index>

Ranks are shifted on load so the minimum is 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from .linalg import SparseMatModP, kernel_basis, rank_mod_p, reduce_rows, rref_mod_p

BOOLEAN_CAP = 20


class PosetFormatError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


@dataclass
class RankedPoset:
    """Elements ``0..N-1`` with ranks and the cover relation (upper, lower)."""

    name: str
    rank: list[int]
    covers: list[tuple[int, int]]
    _levels: dict[int, list[int]] = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.rank:
            lo = min(self.rank)
            self.rank = [r - lo for r in self.rank]
        n = len(self.rank)
        for up, low in self.covers:
            if not (0 <= up < n and 0 <= low < n):
                raise PosetFormatError(f"cover ({up}, {low}) references a missing element")
            if self.rank[up] != self.rank[low] + 1:
                raise PosetFormatError(
                    f"cover ({up}, {low}) joins ranks {self.rank[up]} and {self.rank[low]}"
                )
        self.covers = sorted(set(self.covers))
        levels: dict[int, list[int]] = {}
        for x, r in enumerate(self.rank):
            levels.setdefault(r, []).append(x)
        self._levels = levels

    def __len__(self):
        return len(self.rank)

    @property
    def max_rank(self) -> int:
        return max(self.rank) if self.rank else -1

    def level(self, k: int) -> list[int]:
        return self._levels.get(k, [])

    def level_sizes(self) -> list[int]:
        return [len(self.level(k)) for k in range(self.max_rank + 1)]

    def dumps(self) -> str:
        lines = [f"poset {self.name}", f"elements {len(self)}"]
        lines += [f"rank {x} {r}" for x, r in enumerate(self.rank)]
        lines += [f"cover {u} {l}" for u, l in self.covers]
        return "\n".join(lines) + "\n"


def loads_poset(text: str) -> RankedPoset:
    """Parse the text format; raises :class:`PosetFormatError` with a line number."""
    name, count = None, None
    ranks: dict[int, int] = {}
    covers: list[tuple[int, int]] = []
    cover_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *args = line.split()
        try:
            if head == "poset":
                name = " ".join(args) or "unnamed"
            elif head == "elements":
                (count,) = map(int, args)
                if count < 0:
                    raise ValueError
            elif head == "rank":
                x, r = map(int, args)
                if count is not None and not 0 <= x < count:
                    raise PosetFormatError(f"element {x} out of range", lineno)
                ranks[x] = r
            elif head == "cover":
                u, l = map(int, args)
                if count is not None and not (0 <= u < count and 0 <= l < count):
                    raise PosetFormatError(f"cover ({u}, {l}) references a missing element", lineno)
                covers.append((u, l))
                cover_lines.append(lineno)
            else:
                raise PosetFormatError(f"unknown directive {head!r}", lineno)
        except PosetFormatError:
            raise
        except ValueError:
            raise PosetFormatError(f"malformed {head!r} line: {raw.strip()!r}", lineno) from None
    if count is None:
        raise PosetFormatError("missing 'elements' line (empty poset description?)")
    missing = [x for x in range(count) if x not in ranks]
    if missing:
        raise PosetFormatError(f"no rank given for elements {missing[:5]}")
    for (u, l), lineno in zip(covers, cover_lines):
        if not (0 <= u < count and 0 <= l < count):
            raise PosetFormatError(f"cover ({u}, {l}) references a missing element", lineno)
        if ranks[u] != ranks[l] + 1:
            raise PosetFormatError(f"cover ({u}, {l}) joins ranks {ranks[u]} and {ranks[l]}", lineno)
    return RankedPoset(name or "unnamed", [ranks[x] for x in range(count)], covers)


def load_poset(source: str | Path) -> RankedPoset:
    """Load from a path, or from the text itself if it contains a newline."""
    if isinstance(source, Path) or "\n" not in str(source):
        return loads_poset(Path(source).read_text())
    return loads_poset(str(source))


def boolean_lattice(n: int, cap: int = BOOLEAN_CAP) -> RankedPoset:
    """Subsets of ``{0..n-1}`` by inclusion; element index = bitmask."""
    if n < 0 or n > cap:
        raise ValueError(f"Boolean lattice size {n} outside 0..{cap}")
    rank = [bin(x).count("1") for x in range(1 << n)]
    covers = [(x, x & ~(1 << b)) for x in range(1 << n) for b in range(n) if x >> b & 1]
    return RankedPoset(f"B{n}", rank, covers)


def chain(length: int) -> RankedPoset:
    """Totally ordered set with ``length`` elements."""
    return RankedPoset(f"C{length}", list(range(length)), [(j + 1, j) for j in range(length - 1)])


def projective_poset(n: int, q: int, cap: int | None = None) -> RankedPoset:
    """All subspaces of GF(q)^n, indexed level by level in canonical order."""
    from .lattice import DEFAULT_CAP, contained_indices, level
    from .qfield import gf

    F = gf(q)
    cap = cap or DEFAULT_CAP
    offsets, rank = [], []
    for k in range(n + 1):
        offsets.append(len(rank))
        rank += [k] * len(level(n, k, F, cap))
    covers = []
    for k in range(1, n + 1):
        idx = contained_indices(n, k - 1, k, F, cap)
        for x, ys in enumerate(idx):
            covers += [(offsets[k] + x, offsets[k - 1] + int(y)) for y in ys]
    return RankedPoset(f"P({n},{q})", rank, covers)


class PosetHomology:
    """Boundary operators of a ranked poset over GF(p) and their homology."""

    def __init__(self, P: RankedPoset, p: int):
        self.P, self.p = P, p
        self._pos = {}
        for k in range(P.max_rank + 1):
            for j, x in enumerate(P.level(k)):
                self._pos[x] = j
        self._d: dict[int, SparseMatModP] = {}
        self._pow: dict[tuple[int, int], SparseMatModP] = {}
        self._rank: dict[tuple[int, int], int] = {}

    def size(self, k: int) -> int:
        return len(self.P.level(k))

    def boundary(self, k: int) -> SparseMatModP:
        """Matrix of ``M_k -> M_{k-1}`` in the poset's element order per level."""
        if k not in self._d:
            rows, cols = self.size(k - 1), self.size(k)
            r, c = [], []
            if rows and cols:
                for up, low in self.P.covers:
                    if self.P.rank[up] == k:
                        r.append(self._pos[low])
                        c.append(self._pos[up])
            m = sp.csc_array((np.ones(len(r), dtype=np.int64), (r, c)), shape=(rows, cols))
            self._d[k] = SparseMatModP(m, self.p)
        return self._d[k]

    def power(self, k: int, t: int) -> SparseMatModP:
        key = (k, t)
        if key not in self._pow:
            if t == 0:
                out = SparseMatModP.identity(self.size(k), self.p)
            elif self.size(k) == 0 or self.size(k - t) == 0:
                out = SparseMatModP.zeros(self.size(k - t), self.size(k), self.p)
            else:
                out = self.boundary(k - t + 1) @ self.power(k, t - 1)
            self._pow[key] = out
        return self._pow[key]

    def rank(self, k: int, t: int) -> int:
        if (k, t) not in self._rank:
            self._rank[(k, t)] = rank_mod_p(self.power(k, t))
        return self._rank[(k, t)]

    def nilpotency_exponent(self) -> int:
        """Least ``m > 1`` with ``d^m = 0`` on every level."""
        top = self.P.max_rank
        for m in range(2, top + 2):
            if all(self.power(k, m).is_zero() for k in range(m, top + 1)):
                return m
        return max(2, top + 1)

    def is_homological(self, m: int) -> bool:
        return all(self.power(k, m).is_zero() for k in range(m, self.P.max_rank + 1))

    def homology(self, k: int, i: int, m: int, basis: bool = False):
        """``(dim, reps)`` of ``ker d^i on M_k / d^(m-i) M_(k+m-i)``.

        Raises:
            ArithmeticError: if ``d^m != 0`` for the given m.
        """
        if not 0 < i < m:
            raise ValueError(f"need 0 < i < m, got i={i}, m={m}")
        if not self.is_homological(m):
            raise ArithmeticError(f"d^{m} is not zero: the sequence is not homological")
        N = self.size(k)
        if N == 0:
            return 0, (np.zeros((0, 0), dtype=np.int64) if basis else None)
        dim = N - self.rank(k, i) - self.rank(k + m - i, m - i)
        if not basis:
            return dim, None
        K = kernel_basis(self.power(k, i)) if self.size(k - i) else np.eye(N, dtype=np.int64)
        gens = self.power(k + m - i, m - i).toarray().T
        image, ipiv = rref_mod_p(gens, self.p) if gens.shape[0] else (
            np.zeros((0, N), dtype=np.int64), np.zeros(0, dtype=np.int64))
        V = reduce_rows(K, image, ipiv, self.p)
        reps, _ = rref_mod_p(V, self.p) if V.shape[0] else (V, None)
        assert len(reps) == dim
        return dim, reps

    def grid(self, m: int) -> dict[tuple[int, int], int]:
        return {
            (k, i): self.homology(k, i, m)[0]
            for k in range(self.P.max_rank + 1)
            for i in range(1, m)
        }


def poset_boundary(P: RankedPoset, k: int, p: int) -> SparseMatModP:
    return PosetHomology(P, p).boundary(k)


def nilpotency_exponent(P: RankedPoset, p: int) -> int:
    return PosetHomology(P, p).nilpotency_exponent()


def poset_homology(P: RankedPoset, k: int, i: int, m: int, p: int, basis: bool = False):
    return PosetHomology(P, p).homology(k, i, m, basis)
