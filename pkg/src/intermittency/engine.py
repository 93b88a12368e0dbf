"""Vectorised stepping of one forecaster across many demand series at once.

Used by the experiment harness to evaluate Monte-Carlo grids quickly.  Each
update mirrors the scalar expressions in ``forecasters`` operation for
operation, so per-run results are bit-identical to stepping a
ForecasterState through the same series (covered by tests).
"""

import numpy as np

from .forecasters import ForecasterKind, SmoothingParams, initial_forecast

__all__ = ["batch_run_metrics"]


def batch_run_metrics(
    kind: ForecasterKind,
    params: SmoothingParams,
    demand: np.ndarray,
    init_len: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-run (ME, MAE, RMSE) arrays over the evaluation window.

    ``demand`` has shape (runs, periods); the first ``init_len`` periods
    warm the state up and are excluded from the error sums.  Errors follow
    the one-step-ahead convention: the error at period t uses the forecast
    issued after period t-1.
    """
    d = np.asarray(demand, dtype=np.float64)
    if d.ndim != 2:
        raise ValueError(f"demand must be 2-d (runs, periods), got shape {d.shape}")
    runs, periods = d.shape
    eval_len = periods - init_len
    if eval_len < 1:
        raise ValueError(f"need at least one evaluation period, got {eval_len}")

    a, b = params.alpha, params.beta
    yh = np.ones(runs)
    th = np.ones(runs)
    tau = np.ones(runs)
    ph = np.ones(runs)
    f = np.full(runs, initial_forecast(kind, params))
    se = np.zeros(runs)
    sae = np.zeros(runs)
    sse = np.zeros(runs)

    step = _STEPPERS[kind]
    cols = np.ascontiguousarray(d.T)
    for t in range(periods):
        y = cols[t]
        if t >= init_len:
            e = y - f
            se += e
            sae += np.abs(e)
            sse += e * e
        f = step(y, a, b, yh, th, tau, ph, f)

    return se / eval_len, sae / eval_len, np.sqrt(sse / eval_len)


def _vstep_ses(y, a, b, yh, th, tau, ph, f):
    yh[:] = a * y + (1.0 - a) * yh
    return yh.copy()


def _vstep_cr(y, a, b, yh, th, tau, ph, f):
    m = y > 0.0
    yh[:] = np.where(m, a * y + (1.0 - a) * yh, yh)
    th[:] = np.where(m, b * tau + (1.0 - b) * th, th)
    f = np.where(m, yh / th, f)
    tau[:] = np.where(m, 1.0, tau + 1.0)
    return f


def _vstep_sba(y, a, b, yh, th, tau, ph, f):
    m = y > 0.0
    yh[:] = np.where(m, a * y + (1.0 - a) * yh, yh)
    th[:] = np.where(m, b * tau + (1.0 - b) * th, th)
    f = np.where(m, (1.0 - b / 2.0) * yh / th, f)
    tau[:] = np.where(m, 1.0, tau + 1.0)
    return f


def _vstep_sy(y, a, b, yh, th, tau, ph, f):
    m = y > 0.0
    yh[:] = np.where(m, a * y + (1.0 - a) * yh, yh)
    th[:] = np.where(m, b * tau + (1.0 - b) * th, th)
    f = np.where(m, (1.0 - b / 2.0) * yh / (th - b / 2.0), f)
    tau[:] = np.where(m, 1.0, tau + 1.0)
    return f


def _vstep_levseg(y, a, b, yh, th, tau, ph, f):
    m = y > 0.0
    f = np.where(m, a * (y / tau) + (1.0 - a) * f, f)
    tau[:] = np.where(m, 1.0, tau + 1.0)
    return f


def _vstep_tsb(y, a, b, yh, th, tau, ph, f):
    m = y > 0.0
    d = m.astype(np.float64)
    ph[:] = b * d + (1.0 - b) * ph
    yh[:] = np.where(m, a * y + (1.0 - a) * yh, yh)
    return ph * yh


def _vstep_hes(y, a, b, yh, th, tau, ph, f):
    m = y > 0.0
    yh[:] = np.where(m, a * y + (1.0 - a) * yh, yh)
    th[:] = np.where(m, b * tau + (1.0 - b) * th, th)
    f = np.where(m, yh / th, yh / (th + b * tau / 2.0))
    tau[:] = np.where(m, 1.0, tau + 1.0)
    return f


def _vstep_les(y, a, b, yh, th, tau, ph, f):
    m = y != 0.0
    yh[:] = np.where(m, a * y + (1.0 - a) * yh, yh)
    th[:] = np.where(m, b * tau + (1.0 - b) * th, th)
    f = np.where(m, yh / th, (yh / th) * np.maximum(0.0, 1.0 - b * tau / (2.0 * th)))
    tau[:] = np.where(m, 1.0, tau + 1.0)
    return f


_STEPPERS = {
    ForecasterKind.SES: _vstep_ses,
    ForecasterKind.CR: _vstep_cr,
    ForecasterKind.SBA: _vstep_sba,
    ForecasterKind.SY: _vstep_sy,
    ForecasterKind.LEVSEG: _vstep_levseg,
    ForecasterKind.TSB: _vstep_tsb,
    ForecasterKind.HES: _vstep_hes,
    ForecasterKind.LES: _vstep_les,
}
