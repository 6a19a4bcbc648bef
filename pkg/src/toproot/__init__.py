"""toproot: largest roots of real-rooted polynomials from black-box evaluations.

The library computes the largest root of a monic real-rooted polynomial to any
additive accuracy using only exact oracle evaluations, at O(log n log(1/eps))
queries via a higher-order Newton iteration, and applies it to the top
eigenvalue / approximate-PSD status of symmetric rational matrices through an
exact characteristic-polynomial (determinant) oracle.  All arithmetic is exact
rational end to end.
"""

from .accel import (AccelConfig, ExactRootSignal, IterationStep, IterationTrace,
                    accel_root, choose_k, g1_tilde, gk_tilde, make_config,
                    mom_exact, sj_sum, write_trace_csv)
from .bench import (BenchRecord, clustered_top_roots, kn_adjacency,
                    point_mass_coefficients, power_iteration, random_roots,
                    records_to_csv, run_sweep, summarize)
from .detpoly import (SymmetricMatrix, bareiss_det, charpoly_oracle,
                      frobenius_upper_bound, load_matrix)
from .eigen import EigResult, is_approx_psd, top_eigenvalue
from .newton import NewtonResult, classic_newton, contraction_check
from .normalize import (AffineRootMap, denormalize_root, normalize_matrix,
                        normalize_poly)
from .oracle import (DegenerateOracleError, PolynomialOracle, QueryLog,
                     expand_from_roots, explicit_oracle, from_roots,
                     read_coefficients, with_counter)
from .scalar import (Rational, bit_size, ceil_log2, format_rational,
                     nth_root_upper_bound, parse_rational, rational,
                     round_down_to_grid, sqrt_upper_bound, two_e_upper_bound)

__all__ = [
    "AccelConfig", "AffineRootMap", "BenchRecord", "DegenerateOracleError",
    "EigResult", "ExactRootSignal", "IterationStep", "IterationTrace",
    "NewtonResult", "PolynomialOracle", "QueryLog", "Rational",
    "SymmetricMatrix", "accel_root", "bareiss_det", "bit_size", "ceil_log2",
    "charpoly_oracle", "choose_k", "classic_newton", "clustered_top_roots",
    "contraction_check", "denormalize_root", "expand_from_roots",
    "explicit_oracle", "format_rational", "frobenius_upper_bound", "from_roots",
    "g1_tilde", "gk_tilde", "is_approx_psd", "kn_adjacency", "load_matrix",
    "make_config", "mom_exact", "normalize_matrix", "normalize_poly",
    "nth_root_upper_bound", "parse_rational", "point_mass_coefficients",
    "power_iteration", "random_roots", "rational", "read_coefficients",
    "records_to_csv", "round_down_to_grid", "run_sweep", "sj_sum",
    "sqrt_upper_bound", "summarize", "top_eigenvalue", "two_e_upper_bound",
    "with_counter", "write_trace_csv",
]

__version__ = "0.1.0"
