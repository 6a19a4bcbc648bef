"""Classic Newton iteration with a forward-difference derivative estimate.

The baseline the accelerated method is measured against: two oracle queries
per iteration, one-sided convergence to the largest root from above.  The
update replaces p'(x) by (p(x + delta) - p(x))/delta with delta = eps^2 and
halves the resulting step for safety; since all derivatives of a monic
real-rooted polynomial are positive to the right of the top root, the forward
difference over-estimates p' there and the step never overshoots.

Steps are rounded down to the grid eps/(8n) so iterate bit sizes stay bounded
over the O(n log(1/eps)) iterations; the early stop fires once a step drops
below eps/(4n), which guarantees rounding keeps at least half of every step
taken.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import gmpy2
from gmpy2 import mpq

from .oracle import DegenerateOracleError, PolynomialOracle
from .scalar import ceil_log2, round_down_to_grid


@dataclass(frozen=True)
class NewtonResult:
    root_estimate: mpq
    iterations: int
    queries: int
    iterates: tuple  # x^0 .. x^T, for contraction checking


def iteration_cap(n: int, eps) -> int:
    """Iteration budget: 2n * bitlength(ceil(1/eps)) + ceil(log2(1/eps)).

    bitlength(ceil(1/eps)) is an exactly computable upper bound on ln(1/eps);
    the additive log2 term covers the initial gap of at most 1.
    """
    eps = mpq(eps)
    inv = 1 / eps
    m = -((-inv.numerator) // inv.denominator)  # ceil(1/eps)
    return 2 * n * int(m - 1).bit_length() + ceil_log2(inv) + 2


def classic_newton(p: PolynomialOracle, eps) -> NewtonResult:
    """Largest root of an oracle with roots in [0, 1/2], to within eps from above.

    eps must lie in (0, 1/2].  Exactly two queries per iteration.
    """
    eps = mpq(eps)
    if not 0 < eps <= mpq(1, 2):
        raise ValueError("eps must be in (0, 1/2], got %s" % eps)
    n = p.degree
    delta = eps * eps
    dn, dd = delta.numerator, delta.denominator
    grid = eps / (8 * n)
    stop_below = eps / (4 * n)
    cap = iteration_cap(n, eps)

    x = mpq(1)
    iterates = [x]
    queries = 0
    for t in range(cap):
        xd = x.denominator
        common = gmpy2.lcm(xd, dd)
        num_x = x.numerator * (common // xd)
        num_d = num_x + dn * (common // dd)
        px_n, px_d = p.eval_pair(num_x, common)
        queries += 1
        if px_n == 0:
            return NewtonResult(x, t, queries, tuple(iterates))
        pxd_n, pxd_d = p.eval_pair(num_d, common)
        queries += 1
        # Oracles may return distinct denominators; align before differencing.
        if px_d == pxd_d:
            diff_n, diff_d = pxd_n - px_n, px_d
        else:
            diff_n = pxd_n * px_d - px_n * pxd_d
            diff_d = px_d * pxd_d
            px_n, px_d = px_n * pxd_d, diff_d
        if diff_n == 0:
            raise DegenerateOracleError(
                "flat forward difference at x=%s; oracle is not a monic "
                "real-rooted polynomial with roots below this point" % x)
        step = mpq(dn * px_n * diff_d, 2 * dd * px_d * diff_n)
        if step <= 0:
            raise DegenerateOracleError("nonpositive Newton step at x=%s" % x)
        if step < stop_below:
            return NewtonResult(x, t + 1, queries, tuple(iterates))
        x = x - round_down_to_grid(step, grid)
        iterates.append(x)
    return NewtonResult(x, cap, queries, tuple(iterates))


def contraction_check(iterates: Sequence, lam1, n: int) -> bool:
    """True iff every update contracts the gap by (1 - 1/(4n)) and stays above lam1."""
    lam1 = mpq(lam1)
    factor = 1 - mpq(1, 4 * n)
    xs = [mpq(v) for v in iterates]
    for prev, cur in zip(xs, xs[1:]):
        if cur < lam1:
            return False
        if cur - lam1 > factor * (prev - lam1):
            return False
    return True
