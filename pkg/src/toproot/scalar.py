"""Exact rational scalars, grid rounding, and rational bounds for irrational constants.

Every quantity the algorithms manipulate is an exact rational, represented by
``gmpy2.mpq`` (GMP-backed, canonical gcd-reduced form after every operation).
This module adds the few primitives the iteration schedules need on top of
plain arithmetic: floor-to-grid rounding, one-sided rational enclosures of
k-th roots and square roots, and the fixed upper bound for 2e.  All bounds are
rounded in the conservative direction for the caller (roots up, so derived
step sizes shrink).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import gmpy2
from gmpy2 import mpq, mpz

Rational = mpq

RationalLike = Union[mpq, int, str, Fraction]

#: Default number of extra bits of accuracy for irrational-constant enclosures.
DEFAULT_SLACK = 20


def rational(value: RationalLike, den: RationalLike = 1) -> mpq:
    """Coerce ints, strings ("p/q"), Fractions, or mpq values to mpq."""
    if den == 1:
        return mpq(value)
    return mpq(value) / mpq(den)


def bit_size(q) -> int:
    """Total bit size of a rational: bit length of numerator plus denominator."""
    q = mpq(q)
    return q.numerator.bit_length() + q.denominator.bit_length()


def round_down_to_grid(x: RationalLike, grid: RationalLike) -> mpq:
    """Largest integer multiple of ``grid`` that is <= ``x`` (floor semantics).

    Raises ValueError if ``grid`` is not positive.
    """
    x = mpq(x)
    grid = mpq(grid)
    if grid <= 0:
        raise ValueError("grid must be positive, got %s" % grid)
    ratio = x / grid
    return (ratio.numerator // ratio.denominator) * grid


def nth_root_upper_bound(n: int, k: int, slack: int = DEFAULT_SLACK) -> mpq:
    """Rational r with n^(1/k) <= r <= n^(1/k) * (1 + 2**-slack).

    Exact integer roots are returned exactly; otherwise r is the next dyadic
    above the true root on a 2**-slack grid.  Deterministic.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive integers")
    if slack < 1:
        raise ValueError("slack must be at least 1 bit")
    root, exact = gmpy2.iroot(mpz(n), k)
    if exact:
        return mpq(root)
    # t = floor(n^(1/k) * 2^slack); (t+1)/2^slack overshoots by < 2^-slack,
    # which is <= n^(1/k) * 2^-slack since n >= 1.
    t, _ = gmpy2.iroot(mpz(n) << (k * slack), k)
    return mpq(t + 1, mpz(1) << slack)


def sqrt_upper_bound(x: RationalLike, slack: int = DEFAULT_SLACK) -> mpq:
    """Rational s with sqrt(x) <= s <= sqrt(x) * (1 + 2**-slack), for x > 0."""
    x = mpq(x)
    if x <= 0:
        raise ValueError("x must be positive, got %s" % x)
    p, q = x.numerator, x.denominator
    # sqrt(p/q) = sqrt(p*q)/q; scale so the integer sqrt carries enough bits.
    t = gmpy2.isqrt(p * q << (2 * slack))
    if t * t == p * q << (2 * slack):
        return mpq(t, q << slack)
    return mpq(t + 1, q << slack)


def two_e_upper_bound() -> mpq:
    """The fixed rational 136/25 = 5.44, an upper bound on 2e ~ 5.43656."""
    return mpq(136, 25)


def ceil_log2(x: RationalLike) -> int:
    """Smallest integer L with 2**L >= x, for rational x >= 1."""
    x = mpq(x)
    if x < 1:
        raise ValueError("ceil_log2 requires x >= 1, got %s" % x)
    m = -((-x.numerator) // x.denominator)  # ceil(x) as an integer
    return int(m - 1).bit_length()


def format_rational(q) -> str:
    """Serialize a rational as base-10 "p/q" text, "p" when the denominator is 1."""
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%s/%s" % (q.numerator, q.denominator)


def parse_rational(text: str) -> mpq:
    """Parse the "p/q" text form produced by :func:`format_rational`.

    Raises ValueError on malformed input (including a zero denominator).
    """
    s = text.strip()
    if not s:
        raise ValueError("empty rational literal")
    try:
        if "/" in s:
            num_text, den_text = s.split("/", 1)
            num = int(num_text.strip())
            den = int(den_text.strip())
            if den == 0:
                raise ValueError
            return mpq(num, den)
        return mpq(int(s))
    except (ValueError, ZeroDivisionError):
        raise ValueError("malformed rational literal: %r" % text) from None
