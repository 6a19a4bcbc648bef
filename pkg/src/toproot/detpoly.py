"""Exact determinants of rational matrices and the characteristic-polynomial oracle.

The determinant is fraction-free (Bareiss) single-step elimination run on the
integer matrix obtained by clearing each column's denominators, with the result
rescaled.  Deterministic, exact, O(n^3) arithmetic operations; intermediate
entries grow no faster than Hadamard-type bounds.  The characteristic
polynomial det(xI - A) is exposed as a :class:`~toproot.oracle.PolynomialOracle`
so the root-finding layers can treat eigenvalue problems as black boxes.
"""

from __future__ import annotations

from typing import Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .oracle import PolynomialOracle
from .scalar import DEFAULT_SLACK, parse_rational, sqrt_upper_bound


class SymmetricMatrix:
    """Dense symmetric matrix of exact rationals; symmetry is validated."""

    def __init__(self, rows: Sequence[Sequence]):
        data = tuple(tuple(mpq(v) for v in row) for row in rows)
        n = len(data)
        if n < 1:
            raise ValueError("matrix must have at least one row")
        for row in data:
            if len(row) != n:
                raise ValueError("matrix must be square, got row of length %d "
                                 "in a %d-row matrix" % (len(row), n))
        for i in range(n):
            for j in range(i + 1, n):
                if data[i][j] != data[j][i]:
                    raise ValueError("matrix is not symmetric at (%d, %d)" % (i, j))
        self.n = n
        self.rows = data

    def __getitem__(self, idx: int):
        return self.rows[idx]

    def __neg__(self) -> "SymmetricMatrix":
        return SymmetricMatrix([[-v for v in row] for row in self.rows])

    def __eq__(self, other) -> bool:
        return isinstance(other, SymmetricMatrix) and self.rows == other.rows

    def __repr__(self) -> str:
        return "SymmetricMatrix(n=%d)" % self.n

    @staticmethod
    def identity(n: int) -> "SymmetricMatrix":
        return SymmetricMatrix([[mpq(1 if i == j else 0) for j in range(n)]
                                for i in range(n)])

    @staticmethod
    def diagonal(values: Sequence) -> "SymmetricMatrix":
        vals = [mpq(v) for v in values]
        n = len(vals)
        return SymmetricMatrix([[vals[i] if i == j else mpq(0) for j in range(n)]
                                for i in range(n)])

    def shifted(self, c) -> "SymmetricMatrix":
        """A + c*I."""
        c = mpq(c)
        return SymmetricMatrix([
            [self.rows[i][j] + (c if i == j else 0) for j in range(self.n)]
            for i in range(self.n)])


def bareiss_det(matrix) -> mpq:
    """Exact determinant of a square rational matrix.

    Accepts a :class:`SymmetricMatrix` or any sequence of rows of rationals.
    Singular matrices return 0.
    """
    rows = matrix.rows if isinstance(matrix, SymmetricMatrix) else matrix
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("determinant requires a nonempty square matrix")
    work = [[mpq(v) for v in row] for row in rows]

    # Clear denominators column by column; det scales by the product of LCMs.
    scale = mpz(1)
    m = []
    for i in range(n):
        m.append([mpz(0)] * n)
    for j in range(n):
        col_lcm = mpz(1)
        for i in range(n):
            col_lcm = gmpy2.lcm(col_lcm, work[i][j].denominator)
        scale *= col_lcm
        for i in range(n):
            m[i][j] = mpz(work[i][j] * col_lcm)

    sign = 1
    prev = mpz(1)
    for r in range(n - 1):
        if m[r][r] == 0:
            for i in range(r + 1, n):
                if m[i][r] != 0:
                    m[r], m[i] = m[i], m[r]
                    sign = -sign
                    break
            else:
                return mpq(0)
        pivot = m[r][r]
        for i in range(r + 1, n):
            mir = m[i][r]
            row_i = m[i]
            row_r = m[r]
            for j in range(r + 1, n):
                row_i[j] = (row_i[j] * pivot - mir * row_r[j]) // prev
            row_i[r] = mpz(0)
        prev = pivot
    return mpq(sign * m[n - 1][n - 1], scale)


def charpoly_oracle(A: SymmetricMatrix) -> PolynomialOracle:
    """Oracle for det(xI - A): monic, degree n, real-rooted for symmetric A."""
    n = A.n

    def eval_fn(x: mpq) -> mpq:
        shifted = [[(x if i == j else mpq(0)) - A.rows[i][j] for j in range(n)]
                   for i in range(n)]
        return bareiss_det(shifted)

    return PolynomialOracle(n, eval_fn)


def frobenius_upper_bound(A: SymmetricMatrix, slack: int = DEFAULT_SLACK) -> mpq:
    """Rational s with ||A||_F <= s <= ||A||_F * (1 + 2**-slack); s = 1 for A = 0."""
    total = mpq(0)
    for row in A.rows:
        for v in row:
            total += v * v
    if total == 0:
        return mpq(1)
    return sqrt_upper_bound(total, slack)


def load_matrix(path) -> SymmetricMatrix:
    """Read a matrix file: first line n, then n rows of n whitespace-separated rationals."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("%s: empty matrix file" % path)
    try:
        n = int(lines[0])
    except ValueError:
        raise ValueError("%s: first line must be the dimension" % path) from None
    if n < 1 or len(lines) != n + 1:
        raise ValueError("%s: expected %s rows after the dimension line" % (path, n))
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != n:
            raise ValueError("%s: expected %d entries per row" % (path, n))
        rows.append([parse_rational(p) for p in parts])
    return SymmetricMatrix(rows)
