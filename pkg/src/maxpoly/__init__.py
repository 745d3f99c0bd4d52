"""Maximal growth of polynomials bounded on arbitrary node sets.

Node generation for modified Jacobi weights, exchange algorithms for the
maximal polynomial B(M, N), closed-form growth bounds, mock-Chebyshev
subsets, and stability certificates for discrete least squares.
"""

from .bounds import (
    BoundReport,
    bound_report,
    find_K,
    impossibility_certificate,
    log_Q,
    witness_polynomial,
    zeta,
    zeta_upper_bound_B,
)
from .leastsq import condition_number_inf, fit, stable_degree
from .mockcheb import mock_chebyshev_subset
from .polycore import (
    BaryPoly,
    ChebPoly,
    alternating_poly,
    chebyshev_second_kind_points,
    chebyshev_zeros,
    lebesgue_constant,
    lebesgue_function,
)
from .remez import (
    MaximalResult,
    compute_B,
    compute_B_point,
    smallest_M_for_bounded_B,
    solve_subinterval,
)
from .weights import NodeSet, WeightSpec, cdf, generate_nodes, preset

__version__ = "0.1.0"
