"""Exact total variation distance between Bernoulli product measures.

Thin wrapper over the compiled extension: exact TV by atom enumeration,
Hamming-slice discrepancies, Poisson-binomial helpers, Bhattacharyya
bounds, and the seeded verification harness.
"""

try:
    from ._core import *  # noqa: F401,F403  (wheel layout)
    from ._core import Error  # noqa: F401
except ImportError:  # pragma: no cover - development tree layout
    from _core import *  # noqa: F401,F403
    from _core import Error  # noqa: F401

__all__ = [
    "Error",
    "atom_mass",
    "bhattacharyya_coefficient",
    "binomial_coefficient",
    "bk_sequence",
    "classify_regime",
    "default_enumeration_limit",
    "delta1_closed_form",
    "delta2_auxiliary_identity",
    "delta2_coefficient",
    "elementary_symmetric",
    "evaluate_bounds",
    "full_slice_report",
    "k_of_n",
    "l1_distance",
    "l2_distance",
    "odds",
    "one_d_identity_residual",
    "pmf",
    "pmf_coordinate_derivative",
    "pmf_extremal_bound",
    "pmf_is_nonincreasing",
    "quasi_symmetry",
    "run_verification",
    "slice_delta",
    "slice_discrepancy",
    "theorems",
    "tv_bc_bound",
    "tv_exact",
]
