"""Day-ahead load forecasting and demand-response scheduling."""

from ._core import (
    DeConfig,
    DrProblem,
    DrpsoError,
    Model,
    OptimizationResult,
    ProblemOptions,
    PsoConfig,
    build_problem,
    compare_algorithms,
    cost_reduction,
    day_profiles,
    evaluate,
    grid_search,
    optimize_de,
    optimize_pso,
    peak_reduction,
    relative_gap,
    standard_weight_grid,
    synthetic_csv,
    synthetic_day,
    train_model,
    weight_sweep,
)

__version__ = "0.1.0"
