"""Swap distance minimization on the permutohedron.

Exact average swap distance, its random and minimum baselines, the
optimality score, structural signatures, ensemble tests and the quadratic
assignment problems that contain the minimization as a special case.
"""

from ._errors import (
    CapacityError,
    ConsistencyError,
    IngestionError,
    InvalidArgumentError,
    SwapOptError,
    Undefined,
    UnsupportedError,
    is_undefined,
)
from .distribution import (
    OrderDistribution,
    arrange,
    dominance,
    from_count_vector,
    from_counts,
    from_probs,
    nonzero_support,
    ranked,
    simpson,
)
from .optimality import (
    SwapReport,
    analyze,
    average_swap_distance,
    bounds,
    distance_mass,
    expected_die_roll,
    expected_random_shuffle,
    local_average_swap_distance,
    local_bounds,
    max_average_swap_distance,
    max_bruteforce,
    min_bruteforce,
    min_by_sorted_assignment,
    min_closed_form_n3,
    omega,
    omega_min_m2,
    shuffle_space,
)
from .estimator import SwapOptimality, check_order_matrix
from .io import Dataset, fmt_number, hasse_dot, ingest_csv, permutohedron_dot, rational_from_json
from .permutohedron import Permutohedron, build_permutohedron, count_inversions, swap_distance
from .qap import (
    CodingInstance,
    GraphInstance,
    QapInstance,
    compression_min,
    compression_random,
    mla_min,
    mla_random,
    qap_min,
    rearrangement_bounds,
)
from .stats import (
    contiguity_ensemble_p,
    p_contiguous_given_m,
    p_optimal_given_m,
    pi_optimal_numeric,
    poisson_binomial_right_tail,
    run_ensemble,
    trial_from_distribution,
    wilcoxon_signed_rank,
)
from .structure import (
    detect_adjacency_top2,
    detect_contiguity,
    detect_radiation,
    detect_slash,
    detect_wedge,
    hasse,
    predicted_rankings,
    structure_flags,
)

__version__ = "0.1.0"
