"""Table-driven arithmetic for small finite fields GF(q0^e).

Elements are the integers ``0 .. q-1``; the base-``q0`` digits of an element
are the coefficients of a polynomial in the generator ``x`` (least significant
digit = constant term).  Prime fields are the special case ``e = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

FIELD_CAP = 2**16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q`` into ``(q0, e)`` with ``q0`` prime and ``q = q0**e``.

    Raises:
        ValueError: if ``q`` is not a prime power.
    """
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for q0 in range(2, q + 1):
        if q % q0 == 0:
            break
    e, r = 0, q
    while r % q0 == 0:
        r //= q0
        e += 1
    if r != 1:
        raise ValueError(f"{q} is not a prime power")
    return q0, e


# -- polynomials over GF(q0), coefficient lists with constant term first ----

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: list[int], q0: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _poly_trim([c % q0 for c in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for j, mj in enumerate(m):
            a[shift + j] = (a[shift + j] - c * mj) % q0
        _poly_trim(a)
    return a


def _is_irreducible(m: list[int], q0: int) -> bool:
    """True iff the monic polynomial ``m`` is irreducible over GF(q0).

    Brute force: no monic factor of degree ``1 .. deg/2`` divides ``m``.
    """
    e = len(m) - 1
    for d in range(1, e // 2 + 1):
        for low in product(range(q0), repeat=d):
            if not _poly_mod(m, list(low) + [1], q0):
                return False
    return True


def first_irreducible(q0: int, e: int) -> list[int]:
    """First monic irreducible of degree ``e`` over GF(q0).

    Candidates are ordered by their coefficient vector ``(c0, ..., c_{e-1})``
    ascending lexicographically, constant term first.  Returns the full
    coefficient list (constant first, leading 1 last).
    """
    for low in product(range(q0), repeat=e):
        m = list(low) + [1]
        if e == 1 or (m[0] != 0 and _is_irreducible(m, q0)):
            return m
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class FieldTable:
    """Log/antilog tables for GF(q0^e).

    ``add`` and ``mul`` accept ints or integer arrays and broadcast.  Prime
    fields skip the tables and use modular arithmetic directly.

    Attributes:
        q0: the characteristic.
        e: the extension degree.
        modulus: defining polynomial (constant term first), ``None`` if e == 1.
        generator: a primitive element.
        exp_table: ``exp_table[j] = generator**j`` for ``0 <= j < 2(q-1)``.
        log_table: discrete logarithm; ``log_table[0]`` is unused.
    """

    q0: int
    e: int
    modulus: tuple[int, ...] | None
    generator: int
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.q0**self.e

    @property
    def is_prime_field(self) -> bool:
        return self.e == 1

    def __eq__(self, other):
        return isinstance(other, FieldTable) and (self.q0, self.e) == (other.q0, other.e)

    def __hash__(self):
        return hash((self.q0, self.e))

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.q0
        if self.q0 == 2:
            return a ^ b
        out = 0
        w = 1
        for _ in range(self.e):
            out = out + (((a // w) % self.q0 + (b // w) % self.q0) % self.q0) * w
            w *= self.q0
        return out

    def mul(self, a, b):
        if self.e == 1:
            return (a * b) % self.q0
        a = np.asarray(a)
        b = np.asarray(b)
        r = self.exp_table[self.log_table[a] + self.log_table[b]]
        r = np.where((a == 0) | (b == 0), 0, r)
        return int(r) if r.ndim == 0 else r

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.q0
        out = 0
        w = 1
        for _ in range(self.e):
            out = out + ((-(a // w)) % self.q0) * w
            w *= self.q0
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in GF(%d)" % self.q)
        if self.e == 1:
            return pow(a, -1, self.q0)
        return int(self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)])

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * k) % (self.q - 1)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def op(self, name: str, a: int, b: int | None = None) -> int:
        """Dispatch ``add | mul | neg | inv | pow`` by name."""
        if not 0 <= a < self.q:
            raise ValueError(f"{a} is not an element of GF({self.q})")
        if name in ("add", "mul"):
            if b is None or not 0 <= b < self.q:
                raise ValueError(f"{b} is not an element of GF({self.q})")
            return int(getattr(self, name)(a, b))
        if name == "neg":
            return int(self.neg(a))
        if name == "inv":
            return self.inv(a)
        if name == "pow":
            if b is None:
                raise ValueError("pow needs an exponent")
            return self.pow(a, b)
        raise ValueError(f"unknown field operation {name!r}")

    def elements(self) -> range:
        return range(self.q)


def _mul_elements(a: int, b: int, modulus: tuple[int, ...], q0: int, e: int) -> int:
    """Product of two encoded elements of GF(q0^e), e > 1."""
    if q0 == 2:
        mod_bits = sum(c << j for j, c in enumerate(modulus))
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a >> e & 1:
                a ^= mod_bits
        return r
    da = [(a // q0**j) % q0 for j in range(e)]
    db = [(b // q0**j) % q0 for j in range(e)]
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] += x * y
    r = _poly_mod(prod, list(modulus), q0)
    return sum(c * q0**j for j, c in enumerate(r))


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def field_new(q0: int, e: int = 1, cap: int = FIELD_CAP) -> FieldTable:
    """Build the arithmetic tables of GF(q0^e).

    Raises:
        ValueError: ``q0`` not prime, ``e < 1`` or ``q0**e`` above ``cap``.
    """
    if not is_prime(q0):
        raise ValueError(f"characteristic {q0} is not prime")
    if e < 1:
        raise ValueError(f"extension degree must be >= 1, got {e}")
    q = q0**e
    if q > cap:
        raise ValueError(f"field order {q} exceeds cap {cap}")

    if e == 1:
        modulus = None
        mul = lambda a, b: (a * b) % q0  # noqa: E731
    else:
        modulus = tuple(first_irreducible(q0, e))
        mul = lambda a, b: _mul_elements(a, b, modulus, q0, e)  # noqa: E731

    def power(a, k):
        r = 1
        while k:
            if k & 1:
                r = mul(r, a)
            a = mul(a, a)
            k >>= 1
        return r

    cofactors = [(q - 1) // r for r in _prime_factors(q - 1)]
    g = next(g for g in range(1, q) if all(power(g, c) != 1 for c in cofactors))
    exp = np.empty(2 * (q - 1), dtype=np.int64)
    a = 1
    for j in range(q - 1):
        exp[j] = a
        a = mul(a, g)
    exp[q - 1:] = exp[: q - 1]
    log = np.zeros(q, dtype=np.int64)
    log[exp[: q - 1]] = np.arange(q - 1)
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldTable(q0, e, modulus, g, exp, log)


@lru_cache(maxsize=None)
def gf(q: int) -> FieldTable:
    """Shorthand: ``gf(9)`` is ``field_new(3, 2)``."""
    q0, e = prime_power(q)
    return field_new(q0, e)
