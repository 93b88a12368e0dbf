"""Forecast error measures.

Scalar summaries (ME, MAE, RMSE), cumulative measures (CFE, CSE), the
comparative Percent Best, and the inventory-oriented Number of Shortages and
Periods in Stock.  Errors are e_t = y_t - f_t where f_t is the one-step-ahead
forecast in force at period t.
"""

import math
from typing import Mapping, Sequence

import numpy as np

__all__ = [
    "scalar_errors",
    "cumulative_forecast_error",
    "cumulative_squared_error",
    "percent_best",
    "number_of_shortages",
    "periods_in_stock",
    "MetricsAccumulator",
]


def scalar_errors(errors) -> tuple[float, float, float]:
    """(ME, MAE, RMSE) of an error series; rejects empty input."""
    e = np.asarray(errors, dtype=float)
    if e.size == 0:
        raise ValueError("error series is empty")
    me = float(e.mean())
    mae = float(np.abs(e).mean())
    rmse = math.sqrt(float(np.mean(e * e)))
    return me, mae, rmse


def cumulative_forecast_error(errors) -> float:
    """Signed sum of all errors; 0 for an empty series."""
    return float(np.sum(np.asarray(errors, dtype=float)))


def cumulative_squared_error(errors) -> float:
    """Sum of squared errors; 0 for an empty series."""
    e = np.asarray(errors, dtype=float)
    return float(np.sum(e * e))


def percent_best(abs_errors: Mapping[str, Sequence[float]]) -> dict[str, float]:
    """Percentage of periods each method attains the smallest absolute error.

    Ties credit every minimizer, so columns may sum above 100%.
    """
    if not abs_errors:
        raise ValueError("no methods given")
    names = list(abs_errors)
    arrays = [np.asarray(abs_errors[n], dtype=float) for n in names]
    n = arrays[0].size
    if n == 0:
        raise ValueError("error series are empty")
    if any(a.size != n for a in arrays):
        raise ValueError("error series lengths differ")
    mat = np.vstack(arrays)
    best = mat.min(axis=0)
    credit = mat == best
    return {name: float(credit[i].mean() * 100.0) for i, name in enumerate(names)}


def number_of_shortages(demands, errors) -> int:
    """Count of periods with running CFE > 0 and nonzero demand."""
    d = np.asarray(demands, dtype=float)
    e = np.asarray(errors, dtype=float)
    if d.size != e.size:
        raise ValueError("demands and errors lengths differ")
    cfe = np.cumsum(e)
    return int(np.count_nonzero((cfe > 0.0) & (d > 0.0)))


def periods_in_stock(demands, forecasts, t: int) -> float:
    """Weighted overstock sum_{i=1..t} (f_i - y_i) * (t + 1 - i)."""
    d = np.asarray(demands, dtype=float)
    f = np.asarray(forecasts, dtype=float)
    if d.size != f.size:
        raise ValueError("demands and forecasts lengths differ")
    if not 0 <= t <= d.size:
        raise ValueError(f"t={t} outside series of length {d.size}")
    w = t - np.arange(t)
    return float(np.sum((f[:t] - d[:t]) * w))


class MetricsAccumulator:
    """Streaming accumulation of (demand, forecast) pairs into all measures.

    One accumulator per (run, method); feed pairs in period order.
    """

    def __init__(self):
        self.n = 0
        self.sum_e = 0.0
        self.sum_abs_e = 0.0
        self.sum_sq_e = 0.0
        self.nos = 0
        self._overstock = 0.0  # running sum of (forecast - demand)
        self._pis = 0.0

    def update(self, demand: float, forecast: float) -> None:
        e = demand - forecast
        self.n += 1
        self.sum_e += e
        self.sum_abs_e += abs(e)
        self.sum_sq_e += e * e
        if self.sum_e > 0.0 and demand > 0.0:
            self.nos += 1
        self._overstock -= e
        self._pis += self._overstock

    @property
    def me(self) -> float:
        self._require_data()
        return self.sum_e / self.n

    @property
    def mae(self) -> float:
        self._require_data()
        return self.sum_abs_e / self.n

    @property
    def rmse(self) -> float:
        self._require_data()
        return math.sqrt(self.sum_sq_e / self.n)

    @property
    def cfe(self) -> float:
        return self.sum_e

    @property
    def cse(self) -> float:
        return self.sum_sq_e

    @property
    def pis(self) -> float:
        """Periods in Stock at the current period count."""
        return self._pis

    def _require_data(self):
        if self.n == 0:
            raise ValueError("no observations accumulated")
