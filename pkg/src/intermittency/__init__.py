"""Intermittent-demand forecasting with obsolescence handling.

Croston-style streaming forecasters (including the linearly decaying LES
variant), error measures for intermittent series, closed-form obsolescence
error limits, and a seeded Monte-Carlo benchmark harness with a CLI.
"""

from .asymptotics import (
    DecayTrace,
    ObsolescenceSetup,
    asymptotic_cfe,
    asymptotic_cse,
    exact_les_sums,
    hes_truncated_cfe,
    simulate_decay,
)
from .demand import (
    DemandScenario,
    LogarithmicDist,
    ScenarioKind,
    demand_probability_at,
    derive_run_rng,
    generate_series,
)
from .forecasters import ForecasterKind, ForecasterState, SmoothingParams, forecaster_init
from .harness import (
    CellResult,
    ExperimentConfig,
    ResultTable,
    TraceResult,
    emit_csv,
    run_cell,
    run_experiment,
    table_filename,
    trace_forecasts,
    winner_summary,
)
from .metrics import (
    MetricsAccumulator,
    cumulative_forecast_error,
    cumulative_squared_error,
    number_of_shortages,
    percent_best,
    periods_in_stock,
    scalar_errors,
)

__version__ = "0.1.0"

__all__ = [
    "DecayTrace",
    "ObsolescenceSetup",
    "asymptotic_cfe",
    "asymptotic_cse",
    "exact_les_sums",
    "hes_truncated_cfe",
    "simulate_decay",
    "DemandScenario",
    "LogarithmicDist",
    "ScenarioKind",
    "demand_probability_at",
    "derive_run_rng",
    "generate_series",
    "ForecasterKind",
    "ForecasterState",
    "SmoothingParams",
    "forecaster_init",
    "CellResult",
    "ExperimentConfig",
    "ResultTable",
    "TraceResult",
    "emit_csv",
    "run_cell",
    "run_experiment",
    "table_filename",
    "trace_forecasts",
    "winner_summary",
    "MetricsAccumulator",
    "cumulative_forecast_error",
    "cumulative_squared_error",
    "number_of_shortages",
    "percent_best",
    "periods_in_stock",
    "scalar_errors",
]
