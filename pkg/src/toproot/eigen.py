"""Top eigenvalue of a symmetric rational matrix, and the approximate-PSD check.

Pipeline: bound the spectrum by a rational s >= ||A||_F, shift-scale the matrix
so its spectrum lies in [0, 1/2], run the accelerated iteration against the
exact characteristic-polynomial oracle det(xI - B) with depth k = ceil(log2 n),
and map the root estimate back.  The returned value x satisfies
lambda_1 <= x <= lambda_1 + eps; every oracle query is one exact determinant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from gmpy2 import mpq

from .accel import IterationTrace, accel_root, choose_k
from .detpoly import SymmetricMatrix, charpoly_oracle, frobenius_upper_bound
from .normalize import denormalize_root, normalize_matrix
from .scalar import DEFAULT_SLACK


@dataclass(frozen=True)
class EigResult:
    lambda_max: mpq
    queries: int  # number of determinant evaluations
    trace: IterationTrace


def top_eigenvalue(A: SymmetricMatrix, eps, *, k: Optional[int] = None,
                   slack: int = DEFAULT_SLACK,
                   record_steps: bool = True) -> EigResult:
    """Rational x with lambda_1(A) <= x <= lambda_1(A) + eps, for any eps > 0."""
    eps = mpq(eps)
    if eps <= 0:
        raise ValueError("eps must be positive, got %s" % eps)
    s = frobenius_upper_bound(A, slack)
    B, root_map = normalize_matrix(A, s)
    oracle = charpoly_oracle(B)
    # The back-map multiplies errors by 4s; clamping to 1/2 only adds accuracy.
    eps_scaled = min(mpq(1, 2), eps / (4 * s))
    depth = choose_k(A.n) if k is None else k
    mu, trace = accel_root(oracle, eps_scaled, depth, record_steps=record_steps)
    return EigResult(lambda_max=denormalize_root(mu, root_map),
                     queries=trace.query_log.count, trace=trace)


def is_approx_psd(A: SymmetricMatrix, eps) -> bool:
    """Decide A >= -eps*I as a promise problem with gap eps/2.

    True implies lambda_max(-A) <= eps, i.e. A >= -eps*I; False implies
    lambda_max(-A) > eps/2, i.e. A is not >= -(eps/2)*I.  Inputs whose
    lambda_max(-A) falls inside (eps/2, eps] may get either answer.
    """
    eps = mpq(eps)
    if eps <= 0:
        raise ValueError("eps must be positive, got %s" % eps)
    mu = top_eigenvalue(-A, eps / 2, record_steps=False).lambda_max
    return mu <= eps
