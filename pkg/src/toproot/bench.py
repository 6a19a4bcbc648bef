"""Benchmark harness: query counts of classic vs accelerated iterations.

Instance families are seeded and fully deterministic; ground truth always
comes from the construction (known roots, or the closed-form K_n spectrum),
never from a second numeric solver.  Query counts and query bit sizes come
from the oracle layer's own accounting.  Everything stays in exact rational
arithmetic, including the optional power-iteration comparator, which defers
normalization to a power-of-two rescale per step.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from typing import List, Optional, Sequence

from gmpy2 import mpq

from .accel import accel_root, choose_k
from .detpoly import SymmetricMatrix
from .eigen import top_eigenvalue
from .newton import classic_newton
from .oracle import PolynomialOracle, expand_from_roots, explicit_oracle, from_roots, with_counter
from .scalar import format_rational

POLY_FAMILIES = ("random-roots", "clustered-top-roots", "point-mass")
MATRIX_FAMILIES = ("kn-adjacency",)


@dataclass(frozen=True)
class BenchRecord:
    method: str  # "classic", "accel", or "power"
    family: str
    n: int
    k: Optional[int]
    eps: Optional[mpq]
    seed: int
    queries: int
    iterations: int
    max_query_bits: int
    final_gap: Optional[mpq]


def _mix(seed: int, *parts: int) -> int:
    h = seed & 0xFFFFFFFFFFFFFFFF
    for p in parts:
        h = (h * 6364136223846793005 + p + 1442695040888963407) & 0xFFFFFFFFFFFFFFFF
    return h


def random_roots(n: int, seed: int, denom_bits: int = 12) -> list:
    """n seeded dyadic roots in [0, 1/2]."""
    rng = random.Random(_mix(seed, n, 1))
    scale = 1 << (denom_bits + 1)
    return [mpq(rng.randrange(0, (1 << denom_bits) + 1), scale) for _ in range(n)]


def clustered_top_roots(n: int, seed: int) -> list:
    """Roots with the top two within 2^-20 of each other (top root exactly 1/2)."""
    rng = random.Random(_mix(seed, n, 2))
    top = mpq(1, 2)
    second = top - mpq(rng.randrange(1, 1 << 10), 1 << 30)  # gap in (0, 2^-20)
    rest = [mpq(rng.randrange(0, (1 << 12) + 1), 1 << 14) for _ in range(n - 2)]
    return [top, second] + rest if n >= 2 else [top]


def point_mass_coefficients(n: int, seed: int) -> tuple:
    """Explicit coefficients of x^a (x - 1/2)^b with a + b = n, b seeded.

    The expansion is closed-form (binomials over powers of two), so the
    coefficient bit sizes stay O(n) even at degree 4096 and exact Horner
    evaluation remains cheap.  Returns (coefficients highest-first, top root).
    """
    rng = random.Random(_mix(seed, n, 3))
    b = rng.randrange(max(1, n // 3), max(2, 2 * n // 3))
    b = min(b, n)
    coeffs = [mpq((-1) ** i * math.comb(b, i), 1 << i) for i in range(b + 1)]
    coeffs += [mpq(0)] * (n - b)
    return coeffs, mpq(1, 2)


def kn_adjacency(n: int) -> SymmetricMatrix:
    """Adjacency matrix of the complete graph K_n; spectrum {n-1, -1, ...}."""
    return SymmetricMatrix([[mpq(0 if i == j else 1) for j in range(n)]
                            for i in range(n)])


def _poly_instance(family: str, n: int, seed: int, oracle_kind: str):
    """Build (oracle, top_root) for a polynomial family."""
    if family == "point-mass":
        coeffs, top = point_mass_coefficients(n, seed)
        return explicit_oracle(coeffs), top
    if family == "random-roots":
        roots = random_roots(n, seed)
    elif family == "clustered-top-roots":
        roots = clustered_top_roots(n, seed)
    else:
        raise ValueError("unknown polynomial family %r" % family)
    if oracle_kind == "explicit":
        return explicit_oracle(expand_from_roots(roots)), max(roots)
    return from_roots(roots), max(roots)


def run_sweep(family: str, ns: Sequence[int], eps_values: Sequence,
              ks: Sequence = ("auto",), seed: int = 0,
              methods: Sequence[str] = ("accel",),
              oracle_kind: str = "roots",
              power_iterations: int = 50) -> List[BenchRecord]:
    """Run every (n, eps, method[, k]) cell and return one record per run.

    Deterministic given ``seed``: instances, iteration paths, and records
    reproduce byte-for-byte.
    """
    if family not in POLY_FAMILIES + MATRIX_FAMILIES:
        raise ValueError("unknown family %r" % family)
    if not ns:
        raise ValueError("need at least one degree n")
    records: List[BenchRecord] = []
    for n in ns:
        if family in MATRIX_FAMILIES:
            A = kn_adjacency(n)
            truth = mpq(n - 1)
            for eps in eps_values:
                eps = mpq(eps)
                for method in methods:
                    if method == "accel":
                        for k_spec in ks:
                            k = choose_k(n) if k_spec == "auto" else int(k_spec)
                            res = top_eigenvalue(A, eps, k=k, record_steps=False)
                            records.append(BenchRecord(
                                method="accel", family=family, n=n, k=k, eps=eps,
                                seed=seed, queries=res.queries,
                                iterations=res.trace.iterations,
                                max_query_bits=res.trace.query_log.max_query_bits,
                                final_gap=res.lambda_max - truth))
                    elif method == "power":
                        rq = power_iteration(A, power_iterations, seed)
                        records.append(BenchRecord(
                            method="power", family=family, n=n, k=None, eps=eps,
                            seed=seed, queries=power_iterations,
                            iterations=power_iterations, max_query_bits=0,
                            final_gap=rq - truth))
                    else:
                        raise ValueError("method %r not available for matrix "
                                         "families" % method)
            continue
        oracle, truth = _poly_instance(family, n, seed, oracle_kind)
        for eps in eps_values:
            eps = mpq(eps)
            for method in methods:
                if method == "classic":
                    counted, log = with_counter(oracle)
                    res = classic_newton(counted, eps)
                    records.append(BenchRecord(
                        method="classic", family=family, n=n, k=None, eps=eps,
                        seed=seed, queries=res.queries, iterations=res.iterations,
                        max_query_bits=log.max_query_bits,
                        final_gap=res.root_estimate - truth))
                elif method == "accel":
                    for k_spec in ks:
                        k = choose_k(n) if k_spec == "auto" else int(k_spec)
                        lam, trace = accel_root(oracle, eps, k,
                                                record_steps=False,
                                                record_updates=False)
                        records.append(BenchRecord(
                            method="accel", family=family, n=n, k=k, eps=eps,
                            seed=seed, queries=trace.query_log.count,
                            iterations=trace.iterations,
                            max_query_bits=trace.query_log.max_query_bits,
                            final_gap=lam - truth))
                else:
                    raise ValueError("method %r not available for polynomial "
                                     "families" % method)
    return records


def power_iteration(A: SymmetricMatrix, iterations: int, seed: int,
                    start: Optional[Sequence] = None) -> mpq:
    """Rayleigh quotient after power-iteration steps, in exact arithmetic.

    Normalization is deferred: each iterate is rescaled by a nearby power of
    two, which keeps entries exact and bit sizes linear in the step count.
    Comparator only; no accuracy guarantee.
    """
    n = A.n
    if all(v == 0 for row in A.rows for v in row):
        raise ValueError("power iteration requires a nonzero matrix")
    if start is not None:
        x = [mpq(v) for v in start]
        if len(x) != n:
            raise ValueError("start vector length %d != %d" % (len(x), n))
    else:
        rng = random.Random(_mix(seed, n, 4))
        x = [mpq(rng.randrange(-(1 << 16), (1 << 16) + 1), 1 << 16)
             for _ in range(n)]
        if all(v == 0 for v in x):  # reseed once, then give up
            rng = random.Random(_mix(seed, n, 5))
            x = [mpq(rng.randrange(-(1 << 16), (1 << 16) + 1), 1 << 16)
                 for _ in range(n)]
            if all(v == 0 for v in x):
                raise ValueError("could not seed a nonzero start vector")

    for _ in range(iterations):
        y = [sum(A.rows[i][j] * x[j] for j in range(n)) for i in range(n)]
        top = max(abs(v) for v in y)
        if top == 0:
            raise ValueError("power iteration hit the null space")
        shift = top.numerator.bit_length() - top.denominator.bit_length()
        x = [v / mpq(2) ** shift for v in y]

    ax = [sum(A.rows[i][j] * x[j] for j in range(n)) for i in range(n)]
    num = sum(x[i] * ax[i] for i in range(n))
    den = sum(v * v for v in x)
    return num / den


_CSV_FIELDS = ("method", "family", "n", "k", "eps", "seed",
               "queries", "iterations", "max_query_bits", "final_gap")


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    """Render records as CSV text (deterministic for deterministic records)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_CSV_FIELDS)
    for r in records:
        writer.writerow([
            r.method, r.family, r.n,
            "" if r.k is None else r.k,
            "" if r.eps is None else format_rational(r.eps),
            r.seed, r.queries, r.iterations, r.max_query_bits,
            "" if r.final_gap is None else format_rational(r.final_gap),
        ])
    return buf.getvalue()


def summarize(records: Sequence[BenchRecord]) -> dict:
    """JSON-ready aggregate: total queries per method and per (method, n)."""
    by_method: dict = {}
    for r in records:
        m = by_method.setdefault(r.method, {"records": 0, "total_queries": 0,
                                            "queries_by_n": {}})
        m["records"] += 1
        m["total_queries"] += r.queries
        key = str(r.n)
        m["queries_by_n"][key] = m["queries_by_n"].get(key, 0) + r.queries
    return {"records": len(records), "by_method": by_method}
