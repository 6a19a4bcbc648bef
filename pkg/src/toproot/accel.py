"""Higher-order Newton iteration driven by finite-difference moment estimates.

For a monic real-rooted p with roots in [0, 1/2], the k-th order update moves
x by roughly mom_{k-1}(x)/mom_k(x) where mom_m(x) = sum_i 1/(x - lambda_i)^m,
shrinking the gap to the top root by a (1 - 1/n^(1/k)) factor per step instead
of Newton's (1 - 1/n).  The moments are never available directly; they are
estimated from oracle values alone:

    g1(x)     = (p(x + alpha) - p(x)) / (alpha p(x))
    g_{m+1}(x) = ((-1)^m / (m! delta^m)) * sum_{i=0}^{m} (-1)^i C(m,i) g1(x + (m-i) delta)

with the step sizes alpha << delta chosen so each estimate is within a factor
1/4 of the true moment whenever x - lambda_1 >= eps'.  The update is rounded
down to the grid eps'/n, which pins the bit size of every iterate, and the
iteration stops as soon as the update falls to eps' or below.

Everything is exact rational arithmetic.  The iteration core works on shared-
denominator integer pairs: all k estimate points x + j*delta share one
denominator (and the alpha-shifted points another), so the two difference sums
reduce to integer combinations whose common denominator cancels in the update
ratio.  This avoids reducing multi-megabit rationals, which dominates the cost
at large degree; the public ``g1_tilde``/``gk_tilde`` operations compute the
identical values on plain rationals.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .oracle import DegenerateOracleError, PolynomialOracle, QueryLog, with_counter
from .scalar import (ceil_log2, format_rational, nth_root_upper_bound,
                     round_down_to_grid, two_e_upper_bound)


class ExactRootSignal(Exception):
    """Raised when the oracle returns exactly zero: the queried point is a root."""

    def __init__(self, point: mpq):
        super().__init__("oracle value is zero at %s" % point)
        self.point = mpq(point)


@dataclass(frozen=True)
class AccelConfig:
    """Derived parameter bundle for one run of the accelerated iteration.

    Invariants: eps_prime = eps/(8 nroot_k); delta = eps_prime/(16 (136/25)^k k);
    delta_prime = delta^(k+1); alpha = delta_prime eps_prime^2 / (2 n^2);
    0 < alpha < delta_prime < delta < eps_prime < eps <= 1/2.
    """

    n: int
    k: int
    eps: mpq
    eps_prime: mpq
    delta: mpq
    delta_prime: mpq
    alpha: mpq
    nroot_k: mpq
    max_iters: int

    @property
    def grid(self) -> mpq:
        """Rounding grid for the update: eps_prime / n."""
        return self.eps_prime / self.n


def make_config(n: int, eps, k: int) -> AccelConfig:
    """Derive the iteration parameters for degree n, accuracy eps, depth k.

    Substitutions for irrational constants are one-sided: n^(1/k) is rounded
    up (update shrinks, one-sidedness preserved) and 2e is replaced by 136/25
    (delta shrinks, estimate error bounds tighten).
    """
    eps = mpq(eps)
    if not 0 < eps <= mpq(1, 2):
        raise ValueError("eps must be in (0, 1/2], got %s" % eps)
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n, got k=%s for n=%s" % (k, n))
    nroot_k = nth_root_upper_bound(n, k)
    eps_prime = eps / (8 * nroot_k)
    delta = eps_prime / (16 * two_e_upper_bound() ** k * k)
    delta_prime = delta ** (k + 1)
    alpha = delta_prime * eps_prime * eps_prime / (2 * n * n)
    iters = 16 * nroot_k * ceil_log2(1 / eps)
    max_iters = int(-((-iters.numerator) // iters.denominator))
    cfg = AccelConfig(n=n, k=k, eps=eps, eps_prime=eps_prime, delta=delta,
                      delta_prime=delta_prime, alpha=alpha, nroot_k=nroot_k,
                      max_iters=max_iters)
    assert 0 < cfg.alpha < cfg.delta_prime < cfg.delta < cfg.eps_prime < cfg.eps
    return cfg


def choose_k(n: int) -> int:
    """Iteration depth for degree n: max(1, ceil(log2 n))."""
    if n < 1:
        raise ValueError("degree must be positive")
    return max(1, int(n - 1).bit_length())


def g1_tilde(p: PolynomialOracle, x, alpha) -> mpq:
    """First moment estimate (p(x+alpha) - p(x)) / (alpha p(x)); 2 oracle queries.

    Raises :class:`ExactRootSignal` if p(x) = 0.
    """
    x = mpq(x)
    alpha = mpq(alpha)
    px = p.evaluate(x)
    if px == 0:
        raise ExactRootSignal(x)
    pxa = p.evaluate(x + alpha)
    return (pxa - px) / (alpha * px)


def gk_tilde(p: PolynomialOracle, x, m: int, delta, alpha) -> mpq:
    """Moment estimate g_{m+1} from the m-th finite difference of g1.

    m = 0 returns g1 itself; m = -1 returns the exact zeroth moment, the
    degree n, at no oracle cost.  Costs 2(m+1) queries for m >= 0.
    """
    if m < -1:
        raise ValueError("difference order must be at least -1, got %d" % m)
    if m == -1:
        return mpq(p.degree)
    x = mpq(x)
    delta = mpq(delta)
    if m == 0:
        return g1_tilde(p, x, alpha)
    values = [g1_tilde(p, x + j * delta, alpha) for j in range(m + 1)]
    total = mpq(0)
    for i in range(m + 1):
        term = math.comb(m, i) * values[m - i]
        total = total - term if i % 2 else total + term
    sign = -1 if m % 2 else 1
    return sign * total / (math.factorial(m) * delta ** m)


def mom_exact(roots: Sequence, x, m: int) -> mpq:
    """Exact inverse-power sum sum_i 1/(x - root_i)^m; test oracle only."""
    if m < 0:
        raise ValueError("moment order must be nonnegative")
    x = mpq(x)
    rts = [mpq(r) for r in roots]
    if any(x <= r for r in rts):
        raise ValueError("x must be strictly greater than every root")
    if m == 0:
        return mpq(len(rts))
    return sum((1 / (x - r)) ** m for r in rts)


def sj_sum(k: int, j: int) -> int:
    """The alternating sum sum_{i=0}^{k} (-1)^i C(k,i) i^j (exact integer).

    Equals 0 for j < k and (-1)^k k! for j = k.
    """
    total = 0
    for i in range(k + 1):
        term = math.comb(k, i) * i ** j
        total = total - term if i % 2 else total + term
    return total


@dataclass(frozen=True)
class IterationStep:
    t: int
    x: mpq
    u: Optional[mpq]          # raw update; None when not recorded
    u_rounded: Optional[mpq]  # grid-rounded update; None on the stop step
    stopped_early: bool
    queries_cumulative: int
    max_query_bits: int


@dataclass
class IterationTrace:
    steps: List[IterationStep] = field(default_factory=list)
    final: mpq = mpq(0)
    query_log: Optional[QueryLog] = None
    iterations: int = 0
    stopped_early: bool = False
    exact_root_hit: bool = False
    config: Optional[AccelConfig] = None


def _align(pairs):
    """Bring (num, den) pairs to one denominator; no-op when they already share it."""
    first_den = pairs[0][1]
    if all(d == first_den for _, d in pairs):
        return [n for n, _ in pairs], first_den
    common = mpz(1)
    for _, d in pairs:
        common = gmpy2.lcm(common, d)
    return [n * (common // d) for n, d in pairs], common


def accel_root(p: PolynomialOracle, eps, k: int, *,
               record_steps: bool = True,
               record_updates: bool = True,
               on_step: Optional[Callable] = None) -> tuple:
    """Largest root of an oracle with roots in [0, 1/2], to within eps from above.

    Returns (estimate, IterationTrace).  The oracle must be monic real-rooted
    with all roots in [0, 1/2] (see :mod:`toproot.normalize`); eps in (0, 1/2].
    Queries per iteration: 2k (the two difference sums share their g1 points),
    at most 2(k+1) * max_iters in total.

    ``on_step(t, x, u_pair, u_rounded)`` is invoked once per iteration with the
    raw update as an unreduced (numerator, denominator) pair, denominator
    positive, so per-step invariant checks can cross-multiply instead of
    normalizing large rationals; u_rounded is None on the stopping step.
    """
    cfg = make_config(p.degree, eps, k)
    counted, log = with_counter(p)
    n = cfg.n
    grid = cfg.grid
    gn, gd = grid.numerator, grid.denominator
    en, ed = cfg.eps_prime.numerator, cfg.eps_prime.denominator
    dn, dd = cfg.delta.numerator, cfg.delta.denominator
    an, ad = cfg.alpha.numerator, cfg.alpha.denominator
    rn, rd = cfg.nroot_k.numerator, cfg.nroot_k.denominator

    trace = IterationTrace(config=cfg)
    x = mpq(1)

    def finish(final_x, iterations, stopped, exact_hit=False):
        trace.final = final_x
        trace.iterations = iterations
        trace.stopped_early = stopped
        trace.exact_root_hit = exact_hit
        trace.query_log = log.snapshot()
        return final_x, trace

    for t in range(cfg.max_iters):
        xd = x.denominator
        base_den = gmpy2.lcm(xd, dd)
        xs = x.numerator * (base_den // xd)
        ds = dn * (base_den // dd)
        shift_den = gmpy2.lcm(base_den, ad)
        gmul = shift_den // base_den
        ashift = an * (shift_den // ad)

        plain = []
        shifted = []
        hit_zero = False
        for j in range(k):
            num_j = xs + j * ds
            pn, pd = counted.eval_pair(num_j, base_den)
            if pn == 0:
                # A zero at x + j*delta with j > 0 would contradict real-
                # rootedness (the point exceeds x >= lambda_1); at j = 0 the
                # iterate itself is the top root.  Either way x is the answer.
                hit_zero = True
                break
            sn_, sd_ = counted.eval_pair(num_j * gmul + ashift, shift_den)
            if sn_ == 0:
                hit_zero = True
                break
            plain.append((pn, pd))
            shifted.append((sn_, sd_))
        if hit_zero:
            if record_steps:
                trace.steps.append(IterationStep(
                    t=t, x=x, u=None, u_rounded=None, stopped_early=True,
                    queries_cumulative=log.count, max_query_bits=log.max_query_bits))
            return finish(x, t + 1, stopped=True, exact_hit=True)

        nums, p0 = _align(plain)
        snums, p1 = _align(shifted)
        # g1(y_j) = ad * V_j / (an * p1 * N_j), shared factors cancel in u.
        vs = [snums[j] * p0 - nums[j] * p1 for j in range(k)]

        if k == 1:
            unum = n * rd * an * p1 * nums[0]
            uden = 4 * rn * ad * vs[0]
        else:
            pref = [mpz(1)] * (k + 1)
            for idx in range(k):
                pref[idx + 1] = pref[idx] * nums[idx]
            suf = [mpz(1)] * (k + 1)
            for idx in range(k - 1, -1, -1):
                suf[idx] = suf[idx + 1] * nums[idx]
            ws = [vs[j] * (pref[j] * suf[j + 1]) for j in range(k)]

            def diff_sum(m: int) -> mpz:
                total = mpz(0)
                for j in range(m + 1):
                    term = math.comb(m, j) * ws[j]
                    total = total - term if (m - j) % 2 else total + term
                return total

            unum = -(k - 1) * dn * rd * diff_sum(k - 2)
            uden = 4 * rn * dd * diff_sum(k - 1)

        if uden == 0:
            raise DegenerateOracleError(
                "zero k-th order estimate at x=%s; oracle violates the "
                "real-rooted [0, 1/2] contract" % x)
        if uden < 0:
            unum, uden = -unum, -uden

        stopping = unum * ed <= en * uden  # u <= eps'
        u_value = mpq(unum, uden) if record_updates else None
        if stopping:
            if record_steps:
                trace.steps.append(IterationStep(
                    t=t, x=x, u=u_value, u_rounded=None, stopped_early=True,
                    queries_cumulative=log.count, max_query_bits=log.max_query_bits))
            if on_step is not None:
                on_step(t, x, (unum, uden), None)
            return finish(x, t + 1, stopped=True)

        u_rounded = ((unum * gd) // (uden * gn)) * grid
        if record_steps:
            trace.steps.append(IterationStep(
                t=t, x=x, u=u_value, u_rounded=u_rounded, stopped_early=False,
                queries_cumulative=log.count, max_query_bits=log.max_query_bits))
        if on_step is not None:
            on_step(t, x, (unum, uden), u_rounded)
        x = x - u_rounded

    return finish(x, cfg.max_iters, stopped=False)


def write_trace_csv(trace: IterationTrace, path) -> None:
    """Export a trace as CSV: t, x, u, u_rounded, queries_cumulative, max_query_bits."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "x", "u", "u_rounded",
                         "queries_cumulative", "max_query_bits"])
        for step in trace.steps:
            writer.writerow([
                step.t,
                format_rational(step.x),
                "" if step.u is None else format_rational(step.u),
                "" if step.u_rounded is None else format_rational(step.u_rounded),
                step.queries_cumulative,
                step.max_query_bits,
            ])
