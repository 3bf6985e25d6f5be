"""Clustered device-to-device caching: throughput-outage simulation and bounds."""

from ._d2dcache import (
    CacheDistribution,
    ConfigError,
    DomainError,
    NumericalError,
    achievable_curve,
    feasible_cluster_sizes,
    harmonic_bounds,
    harmonic_sum,
    hit_probability,
    optimal_cache_distribution,
    outer_bound_curve,
    paley_zygmund_lower_bound,
    reuse_factor,
    rho_star,
    run_cli,
    simulate,
    solve_fixed_point,
    sweep,
    achievable_constants,
    verify_schedules,
    zipf_pmf,
)

CSV_COLUMNS = (
    "gamma", "m", "n", "M", "delta", "K", "g_c", "p_out_sim", "t_min_norm", "t_mean_norm",
    "std_err_p", "std_err_t", "p_out_theory", "t_theory_norm", "realizations", "seed",
)

__all__ = [
    "CSV_COLUMNS",
    "CacheDistribution",
    "ConfigError",
    "DomainError",
    "NumericalError",
    "achievable_curve",
    "feasible_cluster_sizes",
    "harmonic_bounds",
    "harmonic_sum",
    "hit_probability",
    "optimal_cache_distribution",
    "outer_bound_curve",
    "paley_zygmund_lower_bound",
    "reuse_factor",
    "rho_star",
    "run_cli",
    "simulate",
    "solve_fixed_point",
    "sweep",
    "achievable_constants",
    "verify_schedules",
    "zipf_pmf",
]
