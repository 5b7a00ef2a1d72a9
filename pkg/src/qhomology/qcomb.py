"""q-integers, Gaussian binomials and the index bookkeeping for H^n_{k,i}.

Everything here is exact integer arithmetic.  Values are reduced modulo p
only by callers that need them in GF(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .qfield import is_prime, prime_power


def q_int(i: int, q: int) -> int:
    """``[i]_q = 1 + q + ... + q^(i-1)``; ``[0]_q = 0``."""
    if i < 0:
        raise ValueError("q-integer of a negative number")
    return sum(q**j for j in range(i))


def q_factorial(i: int, q: int) -> int:
    out = 1
    for j in range(1, i + 1):
        out *= q_int(j, q)
    return out


@lru_cache(maxsize=None)
def gauss_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n (binomial at q = 1)."""
    if k < 0 or n < 0 or k > n:
        return 0
    if q == 1:
        return comb(n, k)
    num = den = 1
    for j in range(k):
        num *= q ** (n - j) - 1
        den *= q ** (j + 1) - 1
    return num // den


def quantum_char(p: int, q: int) -> int:
    """Least ``m > 1`` with ``[m]_q = 0`` in GF(p).

    Raises:
        ValueError: ``p`` not prime, or ``p`` divides ``q``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if q < 1:
        raise ValueError(f"bad q={q}")
    if q % p == 0:
        raise ValueError(f"p={p} divides q={q}")
    if (q - 1) % p == 0:
        return p
    m, power = 1, q % p
    while power != 1:
        power = power * q % p
        m += 1
    return m


@dataclass(frozen=True)
class IndexPair:
    """Parameters ``(n, k, i)`` of a homology H^n_{k,i} plus its context.

    ``m`` defaults to the quantum characteristic of ``(p, q)``; passing it
    explicitly is only meaningful for ``q = 1`` experiments.
    """

    n: int
    k: int
    i: int
    p: int
    q: int
    m: int = 0

    def __post_init__(self):
        if self.q % self.p == 0:
            raise ValueError(f"p={self.p} divides q={self.q}")
        if self.m == 0:
            object.__setattr__(self, "m", quantum_char(self.p, self.q))
        if self.m < 2:
            raise ValueError("m must be at least 2")
        if not 0 <= self.i <= self.m:
            raise ValueError(f"i={self.i} outside 0..m={self.m}")

    def with_(self, **kw) -> "IndexPair":
        d = dict(n=self.n, k=self.k, i=self.i, p=self.p, q=self.q, m=self.m)
        d.update(kw)
        return IndexPair(**d)


def middle(n: int, k: int, i: int, m: int) -> bool:
    """Middle-index predicate on raw integers."""
    return 0 <= k <= n and 0 < i < m and n < 2 * k + m - i < n + m


def is_middle_index(pair: IndexPair) -> bool:
    return middle(pair.n, pair.k, pair.i, pair.m)


def is_maximal_middle_index(pair: IndexPair) -> bool:
    return is_middle_index(pair) and 2 * pair.k - pair.i == pair.n - 1


def sequence_key(k: int, i: int, m: int) -> tuple[int, int]:
    """Canonical ``(b, b - a)`` naming the sequence through ``M_{k-i} <- M_k``.

    Levels of the sequence are ``k + tm`` and ``k - i + tm``; ``a`` and ``b``
    are those levels reduced mod m, with ``a < b``.
    """
    if not 0 < i < m:
        raise ValueError(f"i={i} not in (0, {m})")
    x, y = k % m, (k - i) % m
    a, b = min(x, y), max(x, y)
    return b, b - a


def dual_indices(pair: IndexPair) -> tuple[IndexPair, IndexPair]:
    """The two dual partners ``(n-k, m-i)`` and ``(k, 2k-n+m-i)``."""
    n, k, i, m = pair.n, pair.k, pair.i, pair.m
    first = _raw_pair(pair, n - k, m - i)
    second = _raw_pair(pair, k, 2 * k - n + m - i)
    return first, second


def _raw_pair(pair: IndexPair, k: int, i: int) -> IndexPair:
    # bypasses the 0 <= i <= m check: dual indices of non-middle pairs may leave it
    out = object.__new__(IndexPair)
    for name, val in dict(n=pair.n, k=k, i=i, p=pair.p, q=pair.q, m=pair.m).items():
        object.__setattr__(out, name, val)
    return out


@dataclass(frozen=True)
class TInterval:
    """The index set ``T_{k,i}``; ``vanishing`` lists members with ``n - t < 0``."""

    lo: int
    hi: int
    vanishing: tuple[int, ...]

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self):
        return max(0, self.hi - self.lo + 1)

    def as_set(self) -> set[int]:
        return set(self)


def t_interval(pair: IndexPair) -> TInterval:
    """Interval of t for which D^{(n-t,t)} occurs in H^n_{k,i}.

    Raises:
        ValueError: if ``pair`` is not a middle index.
    """
    if not is_middle_index(pair):
        raise ValueError(f"{pair} is not a middle index")
    n, k, i, m = pair.n, pair.k, pair.i, pair.m
    lo = k if 2 * k >= n else n - k
    # i <= (m - n)/2 + k, kept in integers
    hi = n - k + i - 1 if 2 * i <= m - n + 2 * k else k + m - i - 1
    return TInterval(lo, hi, tuple(t for t in range(lo, hi + 1) if n - t < 0))


def _t_window(n: int, k: int, m: int) -> range:
    """All t with ``0 <= k + tm <= n`` (floor/ceil division keeps it exact)."""
    return range(-((k) // m), (n - k) // m + 1)


def euler_sum(n: int, k: int, i: int, m: int, q: int) -> int:
    """``sum_t C(n, k+tm)_q - C(n, k-i+tm)_q`` over the finite support."""
    return sum(gauss_binomial(n, k + t * m, q) for t in _t_window(n, k, m)) - sum(
        gauss_binomial(n, k - i + t * m, q) for t in _t_window(n, k - i, m)
    )


def betti_closed_form(pair: IndexPair) -> int:
    """Betti number from the alternating Gaussian-binomial sum; 0 off middle indices."""
    if not is_middle_index(pair):
        return 0
    return euler_sum(pair.n, pair.k, pair.i, pair.m, pair.q)


def betti_value(n: int, k: int, i: int, m: int, q: int) -> int:
    """Closed form on raw integers, honouring the degenerate conventions."""
    return euler_sum(n, k, i, m, q) if middle(n, k, i, m) else 0


@lru_cache(maxsize=None)
def _betti_rec(n: int, k: int, i: int, m: int, q: int) -> int:
    if i <= 0 or i >= m or k < 0 or k > n:
        return 0
    if n <= 1:
        return betti_value(n, k, i, m, q)
    return (
        _betti_rec(n - 1, k, i + 1, m, q)
        + _betti_rec(n - 1, k - 1, i - 1, m, q)
        + _betti_rec(n - 2, k - 1, i, m, q) * (q ** (n - 1) - 1)
    )


def betti_recurrence(pair: IndexPair) -> int:
    """Betti number from the three-term branching recursion in n."""
    return _betti_rec(pair.n, pair.k, pair.i, pair.m, pair.q)


def betti_special(m: int, n: int, p: int, q: int) -> int:
    """The single nonzero Betti value of P(n,q) when ``m(p,q)`` is 2 or 3.

    For m = 2 this is ``(q^{n-1}-1)(q^{n-3}-1)...(q-1)`` for even n and 0 for
    odd n; for m = 3 it is ``b_n = b_{n-1} + b_{n-2}(q^{n-1}-1)``,
    ``b_0 = b_1 = 1``.
    """
    if quantum_char(p, q) != m or m not in (2, 3):
        raise ValueError(f"betti_special needs m(p,q) in {{2,3}}, got m={quantum_char(p, q)}")
    if m == 2:
        if n % 2:
            return 0
        out = 1
        for e in range(n - 1, 0, -2):
            out *= q**e - 1
        return out
    b = [1, 1]
    for j in range(2, n + 1):
        b.append(b[j - 1] + b[j - 2] * (q ** (j - 1) - 1))
    return b[n]


def leading_product(n: int, q: int) -> tuple[int, int]:
    """``(prod, D)``: ``(q^{n-1}-1)(q^{n-3}-1)...(q^eps-1)`` and its degree."""
    eps = 2 if n % 2 else 1
    prod, deg = 1, 0
    for e in range(n - 1, eps - 1, -2):
        prod *= q**e - 1
        deg += e
    return prod, deg


def leading_term_check(pair: IndexPair) -> bool:
    """Numeric shadow of the leading-term statement at the concrete q.

    Checks ``prod - q^D <= beta < prod + q^D``.  This is only a heuristic:
    a lower-degree remainder with large coefficients can break it at small q
    (e.g. n=2, m=10, q=2, (k,i)=(1,5) gives beta=3, prod=1).
    """
    if not is_middle_index(pair):
        return False
    beta = betti_closed_form(pair)
    prod, deg = leading_product(pair.n, pair.q)
    bound = pair.q**deg
    return prod - bound <= beta < prod + bound


def maximal_middle_for(n: int, t: int, m: int) -> tuple[int, int] | None:
    """The maximal middle index ``(t, 2t-n+1)`` for n, if it is valid."""
    k, i = t, 2 * t - n + 1
    if middle(n, k, i, m):
        return k, i
    return None


def middle_indices(n: int, m: int) -> list[tuple[int, int]]:
    return [(k, i) for k in range(n + 1) for i in range(1, m) if middle(n, k, i, m)]


def parse_q(q: int) -> tuple[int, int]:
    """``(q0, e)`` for a prime power q; q = 1 is returned as ``(1, 0)``."""
    return (1, 0) if q == 1 else prime_power(q)
