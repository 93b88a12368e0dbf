"""Seeded Monte-Carlo experiment harness.

Sweeps a (method x alpha x beta) grid over synthetic demand scenarios,
averaging per-run ME/MAE/RMSE across runs, and writes one CSV table per
(scenario, ell, p0).  Also produces per-period forecast traces.

Determinism contract: every output is a pure function of the config
including the seed.  Each run draws from its own stream derived from
(seed, run index), and within a table all grid cells and methods consume
the identical demand series per run (common random numbers).
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .demand import DemandScenario, LogarithmicDist, ScenarioKind, derive_run_rng, generate_series
from .engine import batch_run_metrics
from .forecasters import ForecasterKind, SmoothingParams, forecaster_init

__all__ = [
    "ExperimentConfig",
    "CellResult",
    "CellAggregate",
    "ResultTable",
    "TraceResult",
    "demand_matrix",
    "run_cell",
    "run_experiment",
    "trace_forecasts",
    "emit_csv",
    "table_filename",
    "winner_summary",
    "parse_config_file",
]

DEFAULT_SCENARIOS = (
    ScenarioKind.STATIONARY,
    ScenarioKind.LINEAR_DECREASE,
    ScenarioKind.SUDDEN_OBSOLESCENCE,
)
DEFAULT_P0 = (0.2, 0.5)
DEFAULT_ELL = (0.001, 0.9)
DEFAULT_ALPHA = (0.1, 0.2, 0.3)
DEFAULT_BETA = (0.01, 0.02, 0.03, 0.04, 0.05, 0.1, 0.2, 0.3)
DEFAULT_METHODS = (ForecasterKind.TSB, ForecasterKind.HES, ForecasterKind.LES)


@dataclass(frozen=True)
class ExperimentConfig:
    scenarios: tuple = DEFAULT_SCENARIOS
    p0_values: tuple = DEFAULT_P0
    ell_values: tuple = DEFAULT_ELL
    alpha_grid: tuple = DEFAULT_ALPHA
    beta_grid: tuple = DEFAULT_BETA
    methods: tuple = DEFAULT_METHODS
    runs: int = 1000
    init_len: int = 1000
    eval_len: int = 1000
    seed: int = 1

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.init_len < 0 or self.eval_len < 1:
            raise ValueError("need init_len >= 0 and eval_len >= 1")
        if not (0 <= self.seed < 2 ** 64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        for name in ("scenarios", "p0_values", "ell_values", "alpha_grid", "beta_grid", "methods"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")
        for a in self.alpha_grid:
            if not 0.0 < a < 1.0:
                raise ValueError(f"alpha {a} outside (0, 1)")
        for b in self.beta_grid:
            if not 0.0 < b < 1.0:
                raise ValueError(f"beta {b} outside (0, 1)")
        for p in self.p0_values:
            if not 0.0 < p <= 1.0:
                raise ValueError(f"p0 {p} outside (0, 1]")
        for ell in self.ell_values:
            if not 0.0 < ell < 1.0:
                raise ValueError(f"ell {ell} outside (0, 1)")

    def scenario_for(self, kind: ScenarioKind, ell: float, p0: float) -> DemandScenario:
        return DemandScenario(
            kind=kind,
            p0=p0,
            sizes=LogarithmicDist(ell),
            init_len=self.init_len,
            eval_len=self.eval_len,
        )


@dataclass(frozen=True)
class CellResult:
    me: float
    mae: float
    rmse: float


@dataclass
class CellAggregate:
    """Associative, commutative reduction of per-run metric values."""

    runs: int = 0
    me_sum: float = 0.0
    mae_sum: float = 0.0
    rmse_sum: float = 0.0

    @classmethod
    def from_arrays(cls, me, mae, rmse) -> "CellAggregate":
        return cls(len(me), float(np.sum(me)), float(np.sum(mae)), float(np.sum(rmse)))

    def merge(self, other: "CellAggregate") -> "CellAggregate":
        return CellAggregate(
            self.runs + other.runs,
            self.me_sum + other.me_sum,
            self.mae_sum + other.mae_sum,
            self.rmse_sum + other.rmse_sum,
        )

    def result(self) -> CellResult:
        if self.runs == 0:
            raise ValueError("no runs aggregated")
        return CellResult(self.me_sum / self.runs, self.mae_sum / self.runs, self.rmse_sum / self.runs)


@dataclass
class ResultTable:
    """Grid results for one (scenario, ell, p0)."""

    scenario: ScenarioKind
    ell: float
    p0: float
    methods: tuple
    alpha_grid: tuple
    beta_grid: tuple
    cells: dict  # (alpha, beta, ForecasterKind) -> CellResult

    def rows(self):
        """(alpha, beta, method, CellResult) in ascending alpha then beta."""
        for a in sorted(self.alpha_grid):
            for b in sorted(self.beta_grid):
                for m in self.methods:
                    yield a, b, m, self.cells[(a, b, m)]


def demand_matrix(scenario: DemandScenario, seed: int, runs: int) -> np.ndarray:
    """(runs, periods) int64 demand matrix; row r comes from stream (seed, r)."""
    return np.stack([generate_series(scenario, derive_run_rng(seed, r)) for r in range(runs)])


def _cell_from_matrix(matrix, alpha, beta, method, init_len) -> CellResult:
    me, mae, rmse = batch_run_metrics(method, SmoothingParams(alpha, beta), matrix, init_len)
    return CellAggregate.from_arrays(me, mae, rmse).result()


def run_cell(
    config: ExperimentConfig,
    alpha: float,
    beta: float,
    method: ForecasterKind,
    scenario: DemandScenario,
) -> CellResult:
    """Evaluate one grid cell: per-run metrics averaged over config.runs."""
    matrix = demand_matrix(scenario, config.seed, config.runs)
    return _cell_from_matrix(matrix, alpha, beta, method, scenario.init_len)


def _build_table(config: ExperimentConfig, kind: ScenarioKind, ell: float, p0: float) -> ResultTable:
    scenario = config.scenario_for(kind, ell, p0)
    matrix = demand_matrix(scenario, config.seed, config.runs)
    cells = {}
    for a in config.alpha_grid:
        for b in config.beta_grid:
            for m in config.methods:
                cells[(a, b, m)] = _cell_from_matrix(matrix, a, b, m, scenario.init_len)
    return ResultTable(kind, ell, p0, tuple(config.methods), tuple(config.alpha_grid),
                       tuple(config.beta_grid), cells)


def _table_task(args):
    return _build_table(*args)


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> list[ResultTable]:
    """Full sweep: one ResultTable per (scenario, ell, p0).

    Tables are independent work units; with jobs > 1 they are computed in a
    process pool.  Output order and content do not depend on jobs.
    """
    tasks = [
        (config, kind, ell, p0)
        for kind in config.scenarios
        for ell in config.ell_values
        for p0 in config.p0_values
    ]
    if jobs <= 1 or len(tasks) == 1:
        return [_table_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(_table_task, tasks))


@dataclass
class TraceResult:
    """Per-period demand and forecasts, one column per method."""

    demand: np.ndarray
    methods: tuple
    forecasts: dict  # ForecasterKind -> float array

    @property
    def periods(self) -> int:
        return len(self.demand)


def trace_forecasts(
    scenario: DemandScenario,
    methods,
    params: SmoothingParams,
    seed: int,
    horizon: int | None = None,
    tsb_beta: float | None = None,
    fixed_size: int | None = None,
) -> TraceResult:
    """Step every method through one generated series, recording forecasts.

    Row t holds the forecast issued after observing the demand of period t.
    ``tsb_beta`` substitutes a smaller probability-smoothing weight for TSB
    only.  With ``fixed_size`` every occurrence has that constant size
    instead of a logarithmic draw.
    """
    horizon = scenario.length if horizon is None else horizon
    if not 1 <= horizon <= scenario.length:
        raise ValueError(f"horizon {horizon} outside 1..{scenario.length}")
    rng = derive_run_rng(seed, 0)
    if fixed_size is None:
        demand = generate_series(scenario, rng)[:horizon]
    else:
        if fixed_size < 1:
            raise ValueError(f"fixed_size must be >= 1, got {fixed_size}")
        demand = np.zeros(horizon, dtype=np.int64)
        for t in range(horizon):
            if rng.random() < scenario.probability_at(t):
                demand[t] = fixed_size

    methods = tuple(methods)
    states = {}
    for m in methods:
        p = params
        if m is ForecasterKind.TSB and tsb_beta is not None:
            p = SmoothingParams(params.alpha, tsb_beta)
        states[m] = forecaster_init(m, p)
    forecasts = {m: np.empty(horizon, dtype=np.float64) for m in methods}
    for t in range(horizon):
        y = int(demand[t])
        for m in methods:
            forecasts[m][t] = states[m].step(y)
    return TraceResult(demand, methods, forecasts)


def _fmt_param(x: float) -> str:
    return format(x, "g")


def table_filename(table: ResultTable) -> str:
    return f"{table.scenario.value}_l{_fmt_param(table.ell)}_p{_fmt_param(table.p0)}.csv"


def _write_table(table: ResultTable, fh) -> None:
    fh.write("alpha,beta,method,ME,MAE,RMSE\n")
    for a, b, m, cell in table.rows():
        fh.write(
            f"{_fmt_param(a)},{_fmt_param(b)},{m.value.upper()},"
            f"{cell.me:.4f},{cell.mae:.4f},{cell.rmse:.4f}\n"
        )


def _write_trace(trace: TraceResult, fh) -> None:
    names = ",".join(m.value.upper() for m in trace.methods)
    fh.write(f"t,demand,{names}\n")
    for t in range(trace.periods):
        vals = ",".join(f"{trace.forecasts[m][t]:.17g}" for m in trace.methods)
        fh.write(f"{t},{trace.demand[t]},{vals}\n")


def emit_csv(obj, destination) -> Path:
    """Write a ResultTable or TraceResult as UTF-8 CSV; returns the path.

    Table cells carry 4 decimal places; trace forecasts full precision.
    """
    path = Path(destination)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if isinstance(obj, ResultTable):
                _write_table(obj, fh)
            elif isinstance(obj, TraceResult):
                _write_trace(obj, fh)
            else:
                raise TypeError(f"cannot emit {type(obj).__name__} as csv")
    except OSError as exc:
        raise OSError(f"cannot write csv to {path}: {exc}") from exc
    return path


def winner_summary(tables) -> dict:
    """Best method per (scenario, measure), judged by each method's best
    grid value across the scenario's tables.  Diagnostic only; the
    comparison is stochastic.
    """
    by_scenario = {}
    for table in tables:
        best = by_scenario.setdefault(table.scenario, {})
        for a, b, m, cell in table.rows():
            for measure, value in (("ME", abs(cell.me)), ("MAE", cell.mae), ("RMSE", cell.rmse)):
                cur = best.setdefault(measure, {})
                if m not in cur or value < cur[m]:
                    cur[m] = value
    return {
        kind: {measure: min(per_method, key=per_method.get) for measure, per_method in best.items()}
        for kind, best in by_scenario.items()
    }


def parse_config_file(path) -> dict:
    """Flat key=value config; '#' starts a comment, lists are comma-separated."""
    raw = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        raw[key.strip()] = value.strip()
    return raw
