"""Sharp continuity bound for the von Neumann entropy.

``|S(rho) - S(sigma)| <= T log2(d - 1) + H((T, 1 - T))`` for ``d``-dimensional
states at trace distance ``T``, together with Fannes' original bounds, the
states that attain it, numerical checks of the classical reduction, and the
random-pair scatter experiments.
"""

from .bounds import (
    FANNES_T_MAX,
    BoundReport,
    bound_report,
    extremal_pair,
    fannes_bound,
    fannes_weak_bound,
    sharp_bound,
    sharp_bound_curve,
)
from .classical import (
    OracleResult,
    StagedMinimum,
    brute_force_max_diff,
    hs1_objective,
    mirsky_bracket_check,
    optimal_s1,
    permutation_extremes,
    rank1_delta_check,
    staged_minimum,
)
from .entropy import (
    SignedDecomposition,
    binary_entropy,
    h_scalar,
    shannon_entropy,
    signed_decompose,
    trace_distance,
    tv_distance,
    von_neumann_entropy,
)
from .errors import *  # noqa: F401,F403
from .experiments import ScatterRecord, emit_bound_table, run_scatter, run_verify
from .linalg import EigenResult, check_density_matrix, check_unitary, conjugate_by_unitary, eig_hermitian
from .sampling import Measure, SamplerConfig, sample_density, sample_unitary

__version__ = "0.1.0"
