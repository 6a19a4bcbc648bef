"""Domain reductions mapping roots (or spectra) into [0, 1/2], and their inverses.

Given a bound a on the absolute value of all roots, the substitution
q(x) = p(4a(x - 1/4)) / (4a)^n sends a root lambda of p to lambda/(4a) + 1/4,
so q is monic with all roots in [0, 1/2].  For a symmetric matrix A with
||A||_F <= s, the matrix B = I/4 + A/(4s) has its spectrum in [0, 1/2].  Both
maps share the same affine inverse, recorded in :class:`AffineRootMap`.

An additive error eps on a normalized root becomes exactly scale * eps after
denormalization, so callers must request eps/scale accuracy on the normalized
problem (the CLI and eigenvalue layers do this).
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq, mpz

from .detpoly import SymmetricMatrix
from .oracle import PolynomialOracle


@dataclass(frozen=True)
class AffineRootMap:
    """Inverse of the normalization: original root = scale * mu - scale/4."""

    scale: mpq  # the 4a factor (4s for matrices); positive
    degree: int


def normalize_poly(p: PolynomialOracle, root_bound) -> tuple:
    """Map an oracle whose roots lie in [-a, a] to one with roots in [0, 1/2].

    Each evaluation of the returned oracle costs exactly one evaluation of
    ``p``.  Returns (normalized oracle, AffineRootMap).
    """
    a = mpq(root_bound)
    if a <= 0:
        raise ValueError("root bound must be positive, got %s" % a)
    n = p.degree
    scale = 4 * a
    sn, sd = scale.numerator, scale.denominator
    monic = scale ** n  # leading coefficient of p(4a(x - 1/4))
    mn, md = monic.numerator, monic.denominator

    def pair_fn(u: mpz, v: mpz) -> tuple:
        # inner point: scale * (u/v - 1/4) = sn*(4u - v) / (4*sd*v)
        num, den = p.eval_pair(sn * (4 * u - v), 4 * sd * v)
        return num * md, den * mn

    def eval_fn(x: mpq) -> mpq:
        num, den = pair_fn(x.numerator, x.denominator)
        return mpq(num, den)

    top = None if p.top_root is None else p.top_root / scale + mpq(1, 4)
    q = PolynomialOracle(n, eval_fn, pair_fn=pair_fn, top_root=top)
    return q, AffineRootMap(scale=scale, degree=n)


def denormalize_root(mu, root_map: AffineRootMap) -> mpq:
    """Map a normalized root estimate back to original coordinates."""
    mu = mpq(mu)
    return root_map.scale * mu - root_map.scale / 4


def normalize_matrix(A: SymmetricMatrix, s) -> tuple:
    """Shift-scale a symmetric matrix so its spectrum lies in [0, 1/2].

    ``s`` must be a positive rational upper bound on ||A||_F.  Returns
    (B, AffineRootMap) with B = I/4 + A/(4s) and eigenvalue back-map
    lambda_A = 4s (lambda_B - 1/4).
    """
    s = mpq(s)
    if s <= 0:
        raise ValueError("norm bound must be positive, got %s" % s)
    quarter = mpq(1, 4)
    inv = 1 / (4 * s)
    rows = [[A.rows[i][j] * inv + (quarter if i == j else 0) for j in range(A.n)]
            for i in range(A.n)]
    return SymmetricMatrix(rows), AffineRootMap(scale=4 * s, degree=A.n)
