"""Black-box polynomial oracles: exact evaluation plus query accounting.

An oracle is a degree plus an exact evaluation function; the iteration layers
never see coefficients.  Query counting lives in a separate mutable handle so
the oracles themselves stay pure.  Oracles may expose an unreduced fast path
(:meth:`PolynomialOracle.eval_pair`) returning an integer numerator/denominator
pair; callers that batch evaluations at points sharing a denominator use it to
avoid canonicalizing multi-megabit rationals.
"""

from __future__ import annotations

import threading
from typing import Callable, Iterable, Optional, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .scalar import bit_size, parse_rational


class DegenerateOracleError(RuntimeError):
    """The oracle returned values no real-rooted monic polynomial can produce."""


def _product(factors: Sequence) -> mpz:
    """Product of a list of integers via pairwise (balanced) multiplication."""
    vals = [mpz(f) for f in factors]
    if not vals:
        return mpz(1)
    while len(vals) > 1:
        nxt = [vals[i] * vals[i + 1] for i in range(0, len(vals) - 1, 2)]
        if len(vals) % 2:
            nxt.append(vals[-1])
        vals = nxt
    return vals[0]


class PolynomialOracle:
    """Handle to a monic real-rooted polynomial of known degree.

    ``evaluate`` returns the exact rational value at a rational point.
    ``top_root`` carries ground truth for instances built from known roots;
    it is test/bench metadata, never consulted by the algorithms.
    """

    def __init__(self, degree: int, eval_fn: Callable[[mpq], mpq],
                 pair_fn: Optional[Callable[[mpz, mpz], tuple]] = None,
                 top_root: Optional[mpq] = None):
        if degree < 1:
            raise ValueError("oracle degree must be at least 1, got %d" % degree)
        self.degree = int(degree)
        self._eval_fn = eval_fn
        self._pair_fn = pair_fn
        self.top_root = top_root

    def evaluate(self, x) -> mpq:
        """Exact value of the polynomial at the rational point ``x``."""
        return self._eval_fn(mpq(x))

    def eval_pair(self, num, den) -> tuple:
        """Value at num/den as a (numerator, denominator) integer pair.

        The pair need not be reduced; den > 0.  Falls back to :meth:`evaluate`.
        """
        if self._pair_fn is not None:
            return self._pair_fn(mpz(num), mpz(den))
        val = self._eval_fn(mpq(num, den))
        return val.numerator, val.denominator


class QueryLog:
    """Mutable accounting attached to a counted oracle.

    ``count`` is the exact number of evaluations since creation and
    ``max_query_bits`` the largest bit size (numerator plus denominator of the
    canonical form) over all queried points.  Updates are lock-protected so
    a benchmark harness may evaluate concurrently.
    """

    def __init__(self, record_points: bool = False):
        self.count = 0
        self.max_query_bits = 0
        self.points: Optional[list] = [] if record_points else None
        self._lock = threading.Lock()

    def record(self, point: mpq) -> None:
        bits = bit_size(point)
        with self._lock:
            self.count += 1
            if bits > self.max_query_bits:
                self.max_query_bits = bits
            if self.points is not None:
                self.points.append(point)

    def snapshot(self) -> "QueryLog":
        copy = QueryLog(record_points=False)
        copy.count = self.count
        copy.max_query_bits = self.max_query_bits
        if self.points is not None:
            copy.points = list(self.points)
        return copy


def with_counter(oracle: PolynomialOracle,
                 record_points: bool = False) -> tuple:
    """Wrap an oracle so every evaluation updates a fresh :class:`QueryLog`."""
    log = QueryLog(record_points=record_points)

    def counted_eval(x: mpq) -> mpq:
        log.record(x)
        return oracle.evaluate(x)

    def counted_pair(num: mpz, den: mpz) -> tuple:
        log.record(mpq(num, den))
        return oracle.eval_pair(num, den)

    wrapped = PolynomialOracle(oracle.degree, counted_eval,
                               pair_fn=counted_pair, top_root=oracle.top_root)
    return wrapped, log


def explicit_oracle(coefficients: Iterable) -> PolynomialOracle:
    """Oracle for an explicitly given monic polynomial (Horner evaluation).

    ``coefficients`` lists the n+1 rational coefficients highest-degree first;
    the leading coefficient must be exactly 1.
    """
    coeffs = [mpq(c) for c in coefficients]
    if len(coeffs) < 2:
        raise ValueError("need a polynomial of degree at least 1")
    if coeffs[0] != 1:
        raise ValueError("oracle polynomial must be monic, leading coefficient %s"
                         % coeffs[0])
    n = len(coeffs) - 1
    common = mpz(1)
    for c in coeffs:
        common = gmpy2.lcm(common, c.denominator)
    ints = [mpz(c * common) for c in coeffs]

    # Horner over integers: value = sum(e_i u^(n-i) v^i) / (common * v^n).
    # The v-power table depends only on the query denominator, which repeats
    # across a run (iterates live on a fixed grid), so it is memoized.
    cache: dict = {}

    def tables_for(v: mpz) -> tuple:
        hit = cache.get(v)
        if hit is not None:
            return hit
        weighted = []  # i-th entry is e_i * v^i, highest-degree coefficient first
        vpow = mpz(1)
        for e in ints:
            weighted.append(e * vpow)
            vpow *= v
        entry = (weighted, common * vpow // v)  # denominator: common * v^n
        if len(cache) > 8:
            cache.clear()
        cache[v] = entry
        return entry

    def pair_fn(u: mpz, v: mpz) -> tuple:
        weighted, den = tables_for(v)
        acc = weighted[0]
        for w in weighted[1:]:
            acc = acc * u + w
        return acc, den

    def eval_fn(x: mpq) -> mpq:
        num, den = pair_fn(x.numerator, x.denominator)
        return mpq(num, den)

    return PolynomialOracle(n, eval_fn, pair_fn=pair_fn)


def from_roots(roots: Iterable) -> PolynomialOracle:
    """Oracle evaluating prod(x - root_i) exactly; remembers max(roots).

    Ground-truth instances for tests and benchmarks: the stored ``top_root``
    lets harnesses measure the exact final gap.
    """
    rts = [mpq(r) for r in roots]
    if not rts:
        raise ValueError("need at least one root")
    n = len(rts)
    common = mpz(1)
    for r in rts:
        common = gmpy2.lcm(common, r.denominator)
    scaled = [mpz(r * common) for r in rts]

    def pair_fn(u: mpz, v: mpz) -> tuple:
        cu = common * u
        num = _product([cu - r * v for r in scaled])
        return num, (common * v) ** n

    def eval_fn(x: mpq) -> mpq:
        num, den = pair_fn(x.numerator, x.denominator)
        return mpq(num, den)

    return PolynomialOracle(n, eval_fn, pair_fn=pair_fn, top_root=max(rts))


def expand_from_roots(roots: Iterable) -> list:
    """Expand prod(x - root_i) to an explicit coefficient list (highest first).

    Plain convolution; intended for small degrees (tests, bench instances).
    """
    coeffs = [mpq(1)]
    for r in roots:
        r = mpq(r)
        coeffs.append(mpq(0))
        for j in range(len(coeffs) - 1, 0, -1):
            coeffs[j] -= r * coeffs[j - 1]
    return coeffs


def read_coefficients(path) -> list:
    """Read a polynomial file: one rational per line, highest-degree first.

    Blank lines and '#' comments are ignored.
    """
    coeffs = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                coeffs.append(parse_rational(line))
            except ValueError:
                raise ValueError("%s:%d: malformed rational %r" % (path, lineno, raw.strip()))
    if not coeffs:
        raise ValueError("%s: no coefficients found" % path)
    return coeffs
