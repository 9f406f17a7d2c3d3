"""Fractional SIS epidemic models: mixed-order Caputo (L1 scheme) and Caputo-Fabrizio."""

from ._core import (
    AssumptionError,
    CaputoOrders,
    CFConstants,
    CFOrder,
    DomainError,
    EpidemicParams,
    EquilibriumReport,
    GridSpec,
    InvarianceBox,
    ScenarioError,
    SolverError,
    Trajectory,
    cf_constants,
    cf_equilibria,
    cf_invariant,
    cf_limit_total,
    existence_horizon,
    g_alpha,
    g_bound,
    gamma_function,
    integrate_scalar,
    invariance_box,
    invert_alpha,
    l1_weights,
    min_admissible_alpha,
    picard_approximant,
    run_scenario_json,
    sis_field,
    solve_caputo,
    solve_cf,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
