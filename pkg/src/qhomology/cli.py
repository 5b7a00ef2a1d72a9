"""Command-line entry point ``qhomology``.

Exit status: 0 success, 1 a verification or cross-check failed, 2 I/O or
cache integrity error, 3 invalid parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import homology as hom
from . import verifier
from .cache import CacheIntegrityError, MatrixCache, resolve_cache_dir
from .lattice import DEFAULT_CAP, CapExceeded, check_invertible, incidence_rank, random_invertible
from .poset import PosetFormatError, PosetHomology, boolean_lattice, chain, load_poset
from .qcomb import betti_value, gauss_binomial, middle, quantum_char
from .qfield import gf, is_prime

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_PARAM = 0, 1, 2, 3


class ParamError(ValueError):
    pass


@dataclass
class RunConfig:
    q: int | None = None
    p: int | None = None
    n: int | None = None
    k: int | None = None
    i: int | None = None
    cap: int = DEFAULT_CAP
    cache_dir: str | None = None
    output: str = "table"
    seed: int = 0

    def validate(self, need=("q", "p", "n")) -> "RunConfig":
        for name in need:
            if getattr(self, name) is None:
                raise ParamError(f"missing -{name}" if len(name) == 1 else f"missing --{name}")
        if self.cap <= 0:
            raise ParamError("--cap must be positive")
        if self.p is not None and not is_prime(self.p):
            raise ParamError(f"p={self.p} is not prime")
        if self.q is not None:
            if self.q < 2:
                raise ParamError(f"q={self.q} must be a prime power >= 2")
            gf(self.q)  # raises for non prime powers
            if self.p is not None and self.q % self.p == 0:
                raise ParamError(f"p={self.p} divides q={self.q}")
        if self.n is not None and self.n < 0:
            raise ParamError("n must be >= 0")
        return self

    @property
    def m(self) -> int:
        return quantum_char(self.p, self.q)


def _config(args) -> RunConfig:
    out = "json" if getattr(args, "json", False) else "csv" if getattr(args, "csv", False) else "table"
    return RunConfig(
        q=getattr(args, "q", None), p=getattr(args, "p", None), n=getattr(args, "n", None),
        k=getattr(args, "k", None), i=getattr(args, "i", None), cap=args.cap,
        cache_dir=args.cache, output=out, seed=args.seed,
    )


def _check_cap(cfg: RunConfig, n: int) -> None:
    big = max(gauss_binomial(n, k, cfg.q) for k in range(n + 1))
    if big > cfg.cap:
        raise CapExceeded(f"level size {big} exceeds cap {cfg.cap}; raise --cap")


def _emit(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


def _table(rows: dict[tuple[int, int], int], n_cols: int, m: int, mark=None, label="i\\k") -> str:
    """Rows i = 1..m-1, columns k = 0..n_cols-1; ``*`` marks ``mark(k, i)``."""
    cells = {key: f"{v}{'*' if mark and mark(*key) else ''}" for key, v in rows.items()}
    width = max([len(c) for c in cells.values()] + [len(str(n_cols)), len(label)]) + 1
    lines = [label.rjust(width) + "".join(str(k).rjust(width) for k in range(n_cols))]
    for i in range(1, m):
        lines.append(str(i).rjust(width) + "".join(cells.get((k, i), "0").rjust(width) for k in range(n_cols)))
    return "\n".join(lines)


def _csv(records: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(records[0]) if records else ["n", "k", "i", "betti"],
                       lineterminator="\n")
    w.writeheader()
    w.writerows(records)
    return buf.getvalue()


# -- commands ------------------------------------------------------------------

def cmd_betti(args) -> int:
    cfg = _config(args).validate()
    n, q, p, m = cfg.n, cfg.q, cfg.p, cfg.m
    closed = {(k, i): betti_value(n, k, i, m, q) for k in range(n + 1) for i in range(1, m)}
    status = EXIT_OK
    engine = None
    if args.engine:
        _check_cap(cfg, n)
        S = hom.space(n, q, p, cfg.cap)
        engine = {key: S.homology_dim(*key).betti for key in closed}
        if engine != closed:
            status = EXIT_FAIL
    if cfg.output == "json":
        recs = [{"n": n, "k": k, "i": i, "betti": v, "middle": middle(n, k, i, m)}
                | ({"engine": engine[(k, i)]} if engine else {}) for (k, i), v in sorted(closed.items())]
        print(_emit({"q": q, "p": p, "n": n, "m": m, "entries": recs}))
    elif cfg.output == "csv":
        recs = [{"n": n, "k": k, "i": i, "betti": v, "middle": int(middle(n, k, i, m))}
                for (k, i), v in sorted(closed.items())]
        print(_csv(recs), end="")
    else:
        print(f"Betti numbers of P({n},{q}) over GF({p}), m = {m}   (* = middle index)")
        print(_table(closed, n + 1, m, mark=lambda k, i: middle(n, k, i, m)))
        if engine is not None:
            bad = [key for key in closed if engine[key] != closed[key]]
            print("engine cross-check: " + ("agrees" if not bad else f"MISMATCH at {bad}"))
    return status


def cmd_homology(args) -> int:
    cfg = _config(args).validate(("q", "p", "n", "k", "i"))
    m = cfg.m
    if not 0 <= cfg.i <= m:
        raise ParamError(f"i={cfg.i} outside 0..{m}")
    _check_cap(cfg, cfg.n)
    res = hom.space(cfg.n, cfg.q, cfg.p, cfg.cap).homology_dim(cfg.k, cfg.i, basis=args.basis)
    if cfg.output == "json":
        print(_emit(res.to_dict()))
        return EXIT_OK
    print(f"H^{res.n}_{{{res.k},{res.i}}} over GF({res.p}), q={res.q}, m={res.m}")
    print(f"  betti      {res.betti}")
    print(f"  middle     {res.is_middle}")
    print(f"  kernel     {res.kernel_dim}")
    print(f"  image      {res.image_dim}")
    if res.basis is not None:
        print(f"  basis      {len(res.basis)} vector(s) as index:value")
        for j, vec in enumerate(res.basis):
            print(f"    v{j}: " + " ".join(f"{a}:{b}" for a, b in vec))
    return EXIT_OK


def parse_grid(text: str) -> list[tuple[int, int, int, int]]:
    """``"q=2,3;p=3,7;n=0..4"`` -> ``(q, p, n_min, n_max)`` blocks (p | q pairs dropped)."""
    parts = {}
    for chunk in filter(None, re.split(r"[;\s]+", text.strip())):
        key, _, val = chunk.partition("=")
        if key not in ("q", "p", "n") or not val:
            raise ParamError(f"bad --grid component {chunk!r}")
        parts[key] = val
    try:
        qs = [int(x) for x in parts.get("q", "2,3").split(",")]
        ps = [int(x) for x in parts.get("p", "2,3,5,7,11,13").split(",")]
        lo, _, hi = parts.get("n", "0..5").partition("..")
        n_min, n_max = int(lo), int(hi or lo)
    except ValueError:
        raise ParamError(f"bad --grid {text!r}") from None
    for p in ps:
        if not is_prime(p):
            raise ParamError(f"p={p} is not prime")
    return [(q, p, n_min, n_max) for q in qs for p in ps if q % p]


def _blocks(args, cfg: RunConfig) -> list[tuple[int, int, int, int]]:
    if args.grid:
        return parse_grid(args.grid)
    if cfg.q is not None or cfg.p is not None:
        cfg.validate(("q", "p"))
        return [(cfg.q, cfg.p, 0, args.nmax if args.nmax is not None else 5)]
    if args.nmax is not None:
        return [(q, p, 0, args.nmax) for q, p, lo, _ in verifier.default_grid() if lo == 0]
    return verifier.default_grid()


def cmd_verify(args) -> int:
    cfg = _config(args)
    cfg.validate(need=())
    names = sorted(verifier.THEOREMS) if args.theorem == "all" else [args.theorem]
    for name in names:
        if name not in verifier.THEOREMS:
            raise ParamError(f"unknown theorem {name!r}; choose from all, {', '.join(sorted(verifier.THEOREMS))}")
    blocks = sorted(_blocks(args, cfg))
    reports = []
    for name in names:
        if name == "q1-limit":
            ps = sorted({p for _, p, _, _ in blocks}) if (args.grid or cfg.p) else [2, 3, 5]
            nq = args.nmax if args.nmax is not None else 8
            reports += [verifier.verify_q1_limit(nq, p) for p in ps]
            continue
        for q, p, lo, hi in blocks:
            if name == "trace":
                hi = min(hi, args.nmax if args.nmax is not None else 4)
                if lo > hi:
                    continue
            reports.append(verifier.run(name, q, p, hi, lo, cap=cfg.cap, seed=cfg.seed))
    ok = all(r.passed for r in reports)
    if cfg.output == "json":
        print(_emit({"status": "pass" if ok else "fail", "reports": [r.to_dict() for r in reports]}))
    else:
        for r in reports:
            g = r.grid
            where = f"q={g.get('q')} p={g.get('p')} n={g.get('n_min', 0)}..{g.get('n_max')}"
            s = r.summary
            print(f"{s['status'].upper():4}  {r.theorem:13} {where:22} checked={s['checked']} "
                  f"failed={s['failed']} skipped={s['skipped']}")
            for f in r.failures[:10]:
                print(f"      {f.params}: expected {f.expected}, computed {f.computed}")
        print("all checks passed" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_poset(args) -> int:
    cfg = _config(args)
    if cfg.p is None or not is_prime(cfg.p):
        raise ParamError("poset needs a prime -p")
    sources = sum(x is not None for x in (args.file, args.boolean, args.chain))
    if sources != 1:
        raise ParamError("give exactly one of FILE, --boolean N, --chain N")
    if args.boolean is not None:
        P = boolean_lattice(args.boolean)
    elif args.chain is not None:
        P = chain(args.chain)
    else:
        P = load_poset(Path(args.file))
    H = PosetHomology(P, cfg.p)
    nil = H.nilpotency_exponent()
    m = args.m or nil
    if m < 2:
        raise ParamError("m must be at least 2")
    if not H.is_homological(m):
        raise ParamError(f"d^{m} is not zero on {P.name}; nilpotency exponent is {nil}")
    grid = H.grid(m)
    top = P.max_rank
    if cfg.output == "json":
        print(_emit({"name": P.name, "p": cfg.p, "m": m, "nilpotency": nil,
                     "level_sizes": P.level_sizes(),
                     "entries": [{"k": k, "i": i, "dim": d} for (k, i), d in sorted(grid.items())]}))
    elif cfg.output == "csv":
        print(_csv([{"k": k, "i": i, "dim": d} for (k, i), d in sorted(grid.items())]), end="")
    else:
        print(f"poset {P.name}: levels {P.level_sizes()}, nilpotency exponent {nil}, using m = {m}")
        print(_table(grid, top + 1, m))
    return EXIT_OK


def parse_matrix(text: str, n: int) -> np.ndarray:
    """``"1 0; 0 2"`` -> n x n integer matrix (entries are GF(q) element codes)."""
    try:
        rows = [[int(x) for x in r.replace(",", " ").split()] for r in text.split(";")]
        g = np.array(rows, dtype=np.int64)
    except ValueError:
        raise ParamError(f"cannot parse matrix {text!r}") from None
    if g.shape != (n, n):
        raise ParamError(f"matrix must be {n}x{n}, got shape {g.shape}")
    return g


def cmd_character(args) -> int:
    cfg = _config(args).validate(("q", "p", "n", "k", "i"))
    _check_cap(cfg, cfg.n)
    F = gf(cfg.q)
    if args.matrix:
        g = parse_matrix(args.matrix, cfg.n)
        try:
            g = check_invertible(F, g)
        except ValueError as e:
            raise ParamError(str(e)) from None
    else:
        g = random_invertible(F, cfg.n, np.random.default_rng(cfg.seed))
    S = hom.space(cfg.n, cfg.q, cfg.p, cfg.cap)
    if not middle(cfg.n, cfg.k, cfg.i, S.m):
        raise ParamError(f"(k,i)=({cfg.k},{cfg.i}) is not a middle index for n={cfg.n}, m={S.m}")
    trace = S.trace(g, cfg.k, cfg.i)
    fixed = {k: S.fixed_count(g, k) for k in range(cfg.n + 1)}
    alt = S.lefschetz(g, cfg.k, cfg.i)
    out = {"g": g.tolist(), "trace": trace, "alternating_fixed_sum": alt, "fixed_counts": fixed,
           "agree": trace == alt, "n": cfg.n, "k": cfg.k, "i": cfg.i, "p": cfg.p, "q": cfg.q, "m": S.m}
    if cfg.output == "json":
        print(_emit(out))
    else:
        print(f"g = {g.tolist()}")
        print(f"fixed subspaces per dimension: {fixed}")
        print(f"trace on H^{cfg.n}_{{{cfg.k},{cfg.i}}} mod {cfg.p}: {trace}")
        print(f"alternating fixed-point sum mod {cfg.p}: {alt}")
        print("agree" if trace == alt else "MISMATCH")
    return EXIT_OK if trace == alt else EXIT_FAIL


def cmd_rank(args) -> int:
    cfg = _config(args).validate(("q", "p", "n", "k"))
    lower = args.lower if args.lower is not None else cfg.k - 1
    if not (0 <= lower <= cfg.k <= cfg.n):
        raise ParamError("need 0 <= lower <= k <= n")
    r = incidence_rank(cfg.n, lower, cfg.k, gf(cfg.q), cfg.p, cfg.cap)
    shape = (gauss_binomial(cfg.n, lower, cfg.q), gauss_binomial(cfg.n, cfg.k, cfg.q))
    if cfg.output == "json":
        print(_emit({"n": cfg.n, "q": cfg.q, "p": cfg.p, "lower": lower, "upper": cfg.k,
                     "shape": shape, "rank": r}))
    else:
        print(f"rank of {lower}- vs {cfg.k}-subspace incidence in GF({cfg.q})^{cfg.n} "
              f"over GF({cfg.p}): {r}  (matrix {shape[0]} x {shape[1]})")
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest level size to enumerate")
    common.add_argument("--cache", default=None, help="matrix cache directory (overrides $QHOM_CACHE)")
    common.add_argument("--seed", type=int, default=0)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    def params(sp, *names):
        for nm in names:
            sp.add_argument(f"-{nm}", type=int, default=None)

    ap = argparse.ArgumentParser(prog="qhomology", description="Incidence homology of finite projective spaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("betti", parents=[common], help="table of Betti numbers")
    params(b, "q", "p", "n")
    b.add_argument("--engine", action="store_true", help="recompute from matrices and cross-check")
    b.set_defaults(func=cmd_betti)

    h = sub.add_parser("homology", parents=[common], help="one homology group")
    params(h, "q", "p", "n", "k", "i")
    h.add_argument("--basis", action="store_true", help="emit coset representatives")
    h.set_defaults(func=cmd_homology)

    v = sub.add_parser("verify", parents=[common], help="check identities over a grid")
    v.add_argument("theorem", help="all or one of: " + ", ".join(sorted(verifier.THEOREMS)))
    params(v, "q", "p")
    v.add_argument("--nmax", type=int, default=None)
    v.add_argument("--grid", default=None, help='e.g. "q=2,3;p=3,7;n=0..4"')
    v.set_defaults(func=cmd_verify)

    po = sub.add_parser("poset", parents=[common], help="homology of a ranked poset")
    po.add_argument("file", nargs="?", default=None)
    po.add_argument("--boolean", type=int, default=None, metavar="N")
    po.add_argument("--chain", type=int, default=None, metavar="N")
    params(po, "p", "m")
    po.set_defaults(func=cmd_poset)

    c = sub.add_parser("character", parents=[common], help="trace of g on homology vs fixed points")
    params(c, "q", "p", "n", "k", "i")
    c.add_argument("--matrix", default=None, help='rows separated by ";", e.g. "1 0; 0 2"')
    c.set_defaults(func=cmd_character)

    r = sub.add_parser("rank", parents=[common], help="GF(p)-rank of a subspace incidence matrix")
    params(r, "q", "p", "n", "k")
    r.add_argument("--lower", type=int, default=None, help="dimension of the smaller subspaces (default k-1)")
    r.set_defaults(func=cmd_rank)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_PARAM
    cache_dir = resolve_cache_dir(args.cache)
    if cache_dir is not None:
        hom.clear_engines()
    hom.set_cache_dir(cache_dir)
    try:
        if cache_dir is not None:
            MatrixCache(cache_dir).root.mkdir(parents=True, exist_ok=True)
        return args.func(args)
    except CacheIntegrityError as e:
        print(f"error: cache integrity: {e}", file=sys.stderr)
        return EXIT_IO
    except PosetFormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ZeroDivisionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARAM
    finally:
        hom.set_cache_dir(None)


if __name__ == "__main__":
    sys.exit(main())
