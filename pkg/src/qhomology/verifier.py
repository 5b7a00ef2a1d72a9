"""Desk-scale checks of the dimension-level identities for H^n_{k,i}.

Every ``verify_*`` function returns a :class:`VerificationReport`: a plain
record of instances with expected and computed values.  Nothing is printed;
the CLI decides how to render reports.

Example:
    >>> rep = verify_closed_form(3, p=7, q=2)
    >>> rep.passed, rep.summary["failed"]
    (True, 0)
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .homology import space
from .lattice import (
    DEFAULT_CAP,
    boundary_power,
    boundary_power_closed_form,
    random_invertible,
)
from .linalg import span_rank
from .poset import PosetHomology, boolean_lattice
from .qcomb import (
    IndexPair,
    betti_recurrence,
    betti_special,
    betti_value,
    gauss_binomial,
    middle,
    quantum_char,
    t_interval,
)
from .qfield import gf, is_prime


@dataclass
class Instance:
    params: dict
    expected: object
    computed: object
    passed: bool
    note: str = ""


@dataclass
class VerificationReport:
    """Outcome of one identity over a parameter grid."""

    theorem: str
    grid: dict
    instances: list[Instance] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    def add(self, params: dict, expected, computed, passed: bool | None = None, note: str = ""):
        ok = expected == computed if passed is None else bool(passed)
        self.instances.append(Instance(dict(params), expected, computed, ok, note))

    @property
    def failures(self) -> list[Instance]:
        return [x for x in self.instances if not x.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def summary(self) -> dict:
        bad = len(self.failures)
        return {
            "theorem": self.theorem,
            "checked": len(self.instances),
            "failed": bad,
            "skipped": len(self.skipped),
            "status": "pass" if bad == 0 else "fail",
        }

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.instances += other.instances
        self.skipped += other.skipped
        return self

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "grid": self.grid,
            "summary": self.summary,
            "failures": [asdict(x) for x in self.failures],
            "skipped": list(self.skipped),
        }


@dataclass
class IrreducibleDimTable:
    """``dims[t] = dim D^{(n-t,t)}`` with the index pair each value came from."""

    n: int
    p: int
    q: int
    dims: dict[int, int] = field(default_factory=dict)
    provenance: dict[int, str] = field(default_factory=dict)
    gaps: list[int] = field(default_factory=list)

    def get(self, t: int) -> int | None:
        if self.n - t < 0:
            return 0
        return self.dims.get(t)


def primes_up_to(bound: int) -> list[int]:
    return [x for x in range(2, bound + 1) if is_prime(x)]


def default_grid() -> list[tuple[int, int, int, int]]:
    """``(q, p, n_min, n_max)`` blocks: q in {2,3}, p <= 13 with p not dividing q, n <= 5,
    plus n = 6 for q = 2 and p in {3, 7}."""
    out = [(q, p, 0, 5) for q in (2, 3) for p in primes_up_to(13) if q % p]
    out += [(2, 3, 6, 6), (2, 7, 6, 6)]
    return out


def _grid(n_min, n_max, p, q, cap):
    return {"q": q, "p": p, "n_min": n_min, "n_max": n_max, "m": quantum_char(p, q), "cap": cap}


def _levels_fit(n: int, q: int, cap: int) -> bool:
    return max(gauss_binomial(n, k, q) for k in range(n + 1)) <= cap


def _spaces(report, n_min, n_max, p, q, cap):
    for n in range(n_min, n_max + 1):
        if not _levels_fit(n, q, cap):
            report.skipped.append(f"n={n}, q={q}: level size above cap {cap}")
            continue
        yield n, space(n, q, p, cap)


def _beta(S, k: int, i: int) -> int:
    return S.homology_dim(k, i).betti


# -- individual identities -----------------------------------------------------

def verify_middle_index(n_max: int, p: int, q: int, cap: int = DEFAULT_CAP, n_min: int = 0) -> VerificationReport:
    """Nonzero homology exactly at middle indices."""
    rep = VerificationReport("middle-index", _grid(n_min, n_max, p, q, cap))
    for n, S in _spaces(rep, n_min, n_max, p, q, cap):
        for k in range(n + 1):
            for i in range(1, S.m):
                want = middle(n, k, i, S.m)
                rep.add({"n": n, "k": k, "i": i}, want, _beta(S, k, i) > 0)
    return rep


def verify_almost_exact(n_max: int, p: int, q: int, cap: int = DEFAULT_CAP, n_min: int = 0) -> VerificationReport:
    """Each sequence through ``M_{k-i} <- M_k`` has at most one nonzero homology."""
    rep = VerificationReport("almost-exact", _grid(n_min, n_max, p, q, cap))
    for n, S in _spaces(rep, n_min, n_max, p, q, cap):
        for k in range(n + 1):
            for i in range(1, S.m):
                prof = S.sequence_profile(k, i)
                nonzero = [(lev, step) for lev, step, d in prof if d]
                rep.add({"n": n, "k": k, "i": i}, "<= 1 nonzero", nonzero, len(nonzero) <= 1)
    return rep


def verify_closed_form(n_max: int, p: int, q: int, cap: int = DEFAULT_CAP, n_min: int = 0) -> VerificationReport:
    """Matrix homology equals the alternating Gaussian-binomial sum (0 off middle)."""
    rep = VerificationReport("closed-form", _grid(n_min, n_max, p, q, cap))
    for n, S in _spaces(rep, n_min, n_max, p, q, cap):
        for k in range(n + 1):
            for i in range(1, S.m):
                rep.add({"n": n, "k": k, "i": i}, betti_value(n, k, i, S.m, q), _beta(S, k, i))
    return rep


def verify_branching(n_max: int, p: int, q: int, cap: int = DEFAULT_CAP, n_min: int = 0) -> VerificationReport:
    """Three-term branching rule on engine values, plus the recursion helper."""
    rep = VerificationReport("branching", _grid(n_min, n_max, p, q, cap))
    m = quantum_char(p, q)
    lo = max(n_min, 2)
    for n in range(lo, n_max + 1):
        if not _levels_fit(n, q, cap):
            rep.skipped.append(f"n={n}, q={q}: level size above cap {cap}")
            continue
        S, S1, S2 = space(n, q, p, cap), space(n - 1, q, p, cap), space(n - 2, q, p, cap)
        for k in range(n + 1):
            for i in range(1, m):
                rhs = _beta(S1, k, i + 1) + _beta(S1, k - 1, i - 1) + _beta(S2, k - 1, i) * (q ** (n - 1) - 1)
                lhs = _beta(S, k, i)
                rep.add({"n": n, "k": k, "i": i}, rhs, lhs)
                rec = betti_recurrence(IndexPair(n, k, i, p, q))
                rep.add({"n": n, "k": k, "i": i, "form": "recursion"}, rec, lhs)
    return rep


def verify_duality(n_max: int, p: int, q: int, cap: int = DEFAULT_CAP, n_min: int = 0) -> VerificationReport:
    """Equal Betti numbers across ``{(k,i), (n-k,m-i), (k,j), (n-k,m-j)}``, ``j = 2k-n+m-i``."""
    rep = VerificationReport("duality", _grid(n_min, n_max, p, q, cap))
    for n, S in _spaces(rep, n_min, n_max, p, q, cap):
        m = S.m
        for k in range(n + 1):
            for i in range(1, m):
                b = _beta(S, k, i)
                rep.add({"n": n, "k": k, "i": i, "partner": (n - k, m - i)}, b, _beta(S, n - k, m - i))
                j = 2 * k - n + m - i
                if 0 < j < m:
                    rep.add({"n": n, "k": k, "i": i, "partner": (k, j)}, b, _beta(S, k, j))
                    rep.add({"n": n, "k": k, "i": i, "partner": (n - k, m - j)}, b, _beta(S, n - k, m - j))
    return rep


def verify_injectivity(n_max: int, p: int, q: int, cap: int = DEFAULT_CAP, n_min: int = 0) -> VerificationReport:
    """Induced boundary and inclusion maps have full column rank where predicted.

    Boundary ``d^t : H_{k,i} -> H_{k-t,i-t}`` for ``1 <= t < i < m``, ``2k - t >= n``;
    inclusion ``H_{k,i} -> H_{k,j}`` for ``0 < i < j < m``, ``2k + m - i - j >= n``.
    """
    rep = VerificationReport("injectivity", _grid(n_min, n_max, p, q, cap))
    for n, S in _spaces(rep, n_min, n_max, p, q, cap):
        m = S.m
        for k in range(n + 1):
            for i in range(1, m):
                src = _beta(S, k, i)
                for t in range(1, i):
                    if 2 * k - t >= n:
                        M = S.induced_map("boundary", k, i, t)
                        r = _rank(M, p)
                        rep.add({"n": n, "k": k, "i": i, "map": f"boundary^{t}"}, src, r)
                for j in range(i + 1, m):
                    if 2 * k + m - i - j >= n:
                        M = S.induced_map("inclusion", k, i, j - i)
                        r = _rank(M, p)
                        rep.add({"n": n, "k": k, "i": i, "map": f"inclusion->{j}"}, src, r)
    return rep


def _rank(M: np.ndarray, p: int) -> int:
    return span_rank(M, p) if M.size else 0


def verify_trace_formula(
    n_max: int,
    p: int,
    q: int,
    sample_elements: int = 20,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    n_min: int = 0,
    perturbations: int = 10,
) -> VerificationReport:
    """Trace of g on homology versus the alternating fixed-subspace count, mod p.

    Elements: identity, a nontrivial scalar (when q > 2), a coordinate
    permutation and ``sample_elements`` seeded random invertible matrices.
    Each case also checks that shifting representatives by image vectors
    leaves the trace unchanged.
    """
    rep = VerificationReport("trace", _grid(n_min, n_max, p, q, cap) | {"samples": sample_elements, "seed": seed})
    F = gf(q)
    rng = np.random.default_rng(seed)
    for n, S in _spaces(rep, max(n_min, 1), n_max, p, q, cap):
        elements = [("identity", np.eye(n, dtype=np.int64))]
        if q > 2:
            elements.append(("scalar", F.exp_table[1] * np.eye(n, dtype=np.int64)))
        if n > 1:
            elements.append(("cycle", np.roll(np.eye(n, dtype=np.int64), 1, axis=0)))
        elements += [(f"random{j}", random_invertible(F, n, rng)) for j in range(sample_elements)]
        mids = [(k, i) for k in range(n + 1) for i in range(1, S.m) if middle(n, k, i, S.m)]
        for name, g in elements:
            for k, i in mids:
                lhs, rhs = S.trace(g, k, i), S.lefschetz(g, k, i)
                rep.add({"n": n, "k": k, "i": i, "g": name}, rhs, lhs)
        # representative changes by image vectors
        g = elements[-1][1]
        for k, i in mids:
            Q = S.quotient(k, i)
            base = S.trace(g, k, i)
            for trial in range(perturbations if len(Q.image) else 0):
                coef = rng.integers(0, p, size=(Q.dim, len(Q.image)))
                reps = (Q.reps + coef @ Q.image) % p
                rep.add({"n": n, "k": k, "i": i, "perturbation": trial}, base, S.trace(g, k, i, reps))
    return rep


def derive_irreducible_dims(n: int, p: int, q: int, cap: int = DEFAULT_CAP) -> IrreducibleDimTable:
    """Dimensions of ``D^{(n-t,t)}`` read off maximal middle indices ``(t, 2t-n+1)``."""
    m = quantum_char(p, q)
    table = IrreducibleDimTable(n, p, q)
    S = space(n, q, p, cap)
    table.dims[0], table.provenance[0] = 1, "trivial module"
    for t in range(1, (n + m - 2) // 2 + 1):
        if n - t < 0:
            table.dims[t], table.provenance[t] = 0, "n - t < 0"
            continue
        i = 2 * t - n + 1
        if middle(n, t, i, m):
            table.dims[t] = _beta(S, t, i)
            table.provenance[t] = f"H^{n}_{{{t},{i}}}"
        else:
            table.gaps.append(t)
    return table


def verify_composition(n: int, p: int, q: int, cap: int = DEFAULT_CAP) -> VerificationReport:
    """Betti numbers as sums of irreducible dimensions over ``T_{k,i}``, and the
    sum rule ``beta_{k,j} = beta_{k,i} + beta_{k+1,j+1}`` at maximal middle indices."""
    m = quantum_char(p, q)
    rep = VerificationReport("composition", _grid(n, n, p, q, cap))
    if not _levels_fit(n, q, cap):
        rep.skipped.append(f"n={n}, q={q}: level size above cap {cap}")
        return rep
    S = space(n, q, p, cap)
    table = derive_irreducible_dims(n, p, q, cap)
    if 0 in table.dims and middle(n, 0, 1 - n, m):
        rep.add({"n": n, "t": 0, "check": "trivial"}, 1, _beta(S, 0, 1 - n))
    for k in range(n + 1):
        for i in range(1, m):
            if not middle(n, k, i, m):
                continue
            T = t_interval(IndexPair(n, k, i, p, q, m))
            parts = [table.get(t) for t in T]
            if any(x is None for x in parts):
                rep.skipped.append(f"n={n} (k,i)=({k},{i}): no maximal index for some t in {list(T)}")
                continue
            rep.add({"n": n, "k": k, "i": i, "T": (T.lo, T.hi)}, sum(parts), _beta(S, k, i))
            if 2 * k - i == n - 1:
                for j in range(i + 1, m):
                    if 2 * j <= m + 2 * k - n:
                        rhs = _beta(S, k, i) + _beta(S, k + 1, j + 1)
                        rep.add({"n": n, "k": k, "i": i, "j": j, "check": "sum rule"}, rhs, _beta(S, k, j))
    return rep


def verify_q1_limit(n_max: int, p: int, cap: int = 20) -> VerificationReport:
    """Boolean lattices with ``m = p``: homology vanishes off middle indices and
    equals the binomial closed form on them; duality and the two-term branching
    rule hold for the computed values."""
    rep = VerificationReport("q1-limit", {"q": 1, "p": p, "n_max": n_max, "m": p})
    m = p
    betti: dict[tuple[int, int, int], int] = {}

    def b(n, k, i):
        if n < 0 or not 0 <= k <= n or not 0 < i < m:
            return 0
        return betti[(n, k, i)]

    for n in range(n_max + 1):
        H = PosetHomology(boolean_lattice(n, cap), p)
        for k in range(n + 1):
            for i in range(1, m):
                betti[(n, k, i)] = H.homology(k, i, m)[0]
        for k in range(n + 1):
            for i in range(1, m):
                d, mid = b(n, k, i), middle(n, k, i, m)
                ps = {"n": n, "k": k, "i": i}
                rep.add(ps | {"check": "closed form"}, betti_value(n, k, i, m, 1), d)
                rep.add(ps | {"check": "support"}, "zero off middle", d, mid or d == 0)
                rep.add(ps | {"check": "dual (n-k, m-i)"}, d, b(n, n - k, m - i))
                j = 2 * k - n + m - i
                if 0 < j < m:
                    rep.add(ps | {"check": f"dual (k, {j})"}, d, b(n, k, j))
                if n >= 1:
                    rep.add(ps | {"check": "branching"}, b(n - 1, k, i + 1) + b(n - 1, k - 1, i - 1), d)
    return rep


def verify_operator_law(n_max: int, p: int, q: int, cap: int = DEFAULT_CAP, n_min: int = 0) -> VerificationReport:
    """``d^i`` equals ``(i!)_q`` times containment, entrywise mod p, and ``d^m = 0``."""
    rep = VerificationReport("operator-law", _grid(n_min, n_max, p, q, cap))
    F, m = gf(q), quantum_char(p, q)
    for n in range(n_min, n_max + 1):
        for k in range(n + 1):
            for i in range(1, k + 1):
                A = boundary_power(n, k, i, F, p, cap)
                B = boundary_power_closed_form(n, k, i, F, p, cap)
                rep.add({"n": n, "k": k, "i": i}, B.entries(), A.entries())
            if k >= m:
                D = boundary_power(n, k, m, F, p, cap)
                rep.add({"n": n, "k": k, "check": "d^m"}, 0, D.nnz)
    return rep


def verify_special_cases(n_max: int, p: int, q: int, cap: int = DEFAULT_CAP, n_min: int = 0) -> VerificationReport:
    """For ``m(p,q)`` in {2,3}: the single nonzero Betti value of each n."""
    m = quantum_char(p, q)
    rep = VerificationReport("special", _grid(n_min, n_max, p, q, cap))
    if m not in (2, 3):
        rep.skipped.append(f"m={m} has no special formula")
        return rep
    for n, S in _spaces(rep, n_min, n_max, p, q, cap):
        want = betti_special(m, n, p, q)
        for k in range(n + 1):
            for i in range(1, m):
                d = _beta(S, k, i)
                rep.add({"n": n, "k": k, "i": i}, want if middle(n, k, i, m) else 0, d)
    return rep


# -- registry --------------------------------------------------------------------

THEOREMS = {
    "middle-index": verify_middle_index,
    "almost-exact": verify_almost_exact,
    "closed-form": verify_closed_form,
    "branching": verify_branching,
    "duality": verify_duality,
    "injectivity": verify_injectivity,
    "trace": verify_trace_formula,
    "composition": None,
    "q1-limit": None,
    "operator-law": verify_operator_law,
    "special": verify_special_cases,
}


def run(theorem: str, q: int, p: int, n_max: int, n_min: int = 0, cap: int = DEFAULT_CAP,
        seed: int = 0) -> VerificationReport:
    """Dispatch one named check over ``n_min..n_max``."""
    if theorem not in THEOREMS:
        raise KeyError(f"unknown theorem {theorem!r}; choose from {sorted(THEOREMS)}")
    if theorem == "composition":
        rep = VerificationReport("composition", _grid(n_min, n_max, p, q, cap))
        for n in range(n_min, n_max + 1):
            rep.merge(verify_composition(n, p, q, cap))
        return rep
    if theorem == "q1-limit":
        return verify_q1_limit(n_max, p)
    if theorem == "trace":
        return verify_trace_formula(n_max, p, q, seed=seed, cap=cap, n_min=n_min)
    return THEOREMS[theorem](n_max, p, q, cap=cap, n_min=n_min)


__all__ = [
    "Instance",
    "IrreducibleDimTable",
    "VerificationReport",
    "THEOREMS",
    "default_grid",
    "derive_irreducible_dims",
    "primes_up_to",
    "run",
    "verify_almost_exact",
    "verify_branching",
    "verify_closed_form",
    "verify_composition",
    "verify_duality",
    "verify_injectivity",
    "verify_middle_index",
    "verify_operator_law",
    "verify_q1_limit",
    "verify_special_cases",
    "verify_trace_formula",
]
