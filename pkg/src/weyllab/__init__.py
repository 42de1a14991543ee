"""weyllab: a desk-scale laboratory for smooth Weyl sums, circle-method
arc dissections, exact multiplicative inequalities, and moment experiments.
"""

from .arcs import (
    EnvelopeParams,
    IntervalSet,
    ReducedFraction,
    arc_measure_formula,
    classify,
    classify_brute,
    envelope_general,
    envelope_small_q,
    major_arcs,
    minor_arcs,
    narrow_arcs,
    upsilon,
)
from .arithmetic import (
    Factorization,
    KFullDecomposition,
    euler_phi,
    factorize,
    kappa,
    kappa_squared,
    kappa_weighted_series,
    kappa_weighted_series_closed,
    kfull_decompose,
    omega,
    psi,
    sigma_kappa,
    verify_kappa_divisor_bound,
    verify_kappa_submult,
    vw_sum,
)
from .errors import ConfigError, ConsistencyError, ResourceBudgetError
from .expsums import (
    complete_sum_S,
    exponential_sum,
    reduced_sum_W,
    script_S,
    weyl_sum,
)
from .harness import ExperimentConfig, fit_loglog, run_sweep, run_verify
from .moments import (
    FShape,
    MomentResult,
    dyadic_envelope_ratio,
    exact_even_moment,
    exact_even_moment_exhaustive,
    lattice_count_leq,
    oscillatory_integral,
    quad_moment,
    representation_count,
    representation_counts_upto,
    verify_reciprocal_sum_bound,
    weighted_arc_mean_value,
)
from .reports import CheckResult, ExperimentReport
from .smooth import SmoothSet, sieve_smooth, truncate

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
