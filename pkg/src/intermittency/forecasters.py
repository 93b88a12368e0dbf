"""Streaming one-step-ahead forecasters for intermittent demand.

Eight methods behind a single stepping interface:

* SES      -- single exponential smoothing of the raw demand.
* CR       -- Croston: smooth demand size and inter-demand interval
              separately, forecast y_hat / tau_hat.
* SBA      -- Croston with the (1 - beta/2) bias correction.
* SY       -- bias correction that also stays unbiased on non-intermittent
              demand: (1 - beta/2) * y_hat / (tau_hat - beta/2).
* LEVSEG   -- exponential smoothing of the size/interval ratio.
* TSB      -- smooths a demand probability every period instead of the
              interval; forecast p_hat * y_hat.
* HES      -- hyperbolic decay between demands:
              y_hat / (tau_hat + beta*tau/2) on zero periods.
* LES      -- linear decay between demands:
              (y_hat/tau_hat) * max(0, 1 - beta*tau/(2*tau_hat)) on zero
              periods, reaching exactly zero in finite time.

``step(y)`` consumes the demand observed in the current period and returns
the forecast the method then holds, used as the prediction for the next
period (the error at period t+1 is y_{t+1} - f_t).
"""

from dataclasses import dataclass, field
from enum import Enum

__all__ = ["ForecasterKind", "SmoothingParams", "ForecasterState", "forecaster_init"]


class ForecasterKind(Enum):
    SES = "ses"
    CR = "cr"
    SBA = "sba"
    SY = "sy"
    LEVSEG = "levseg"
    TSB = "tsb"
    HES = "hes"
    LES = "les"


@dataclass(frozen=True)
class SmoothingParams:
    """Smoothing weights: alpha for demand size, beta for the interval
    (or the demand probability, for TSB)."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")


@dataclass
class ForecasterState:
    """Mutable per-method state; plain value, safe to copy or move.

    tau counts periods since the last nonzero demand and is reset to 1 when
    demand occurs.  p_hat is only used by TSB, tau_hat/tau only by the
    Croston-style kinds.
    """

    kind: ForecasterKind
    params: SmoothingParams
    y_hat: float = 1.0
    tau_hat: float = 1.0
    tau: int = 1
    p_hat: float = 1.0
    f: float = 1.0

    def step(self, y) -> float:
        """Advance one period on observed demand ``y``; return the forecast."""
        if y < 0:
            raise ValueError(f"demand must be non-negative, got {y}")
        return _STEPPERS[self.kind](self, float(y), self.params.alpha, self.params.beta)


def forecaster_init(kind: ForecasterKind, params: SmoothingParams) -> ForecasterState:
    """Fresh state: y_hat = tau = tau_hat = p_hat = 1, forecast from the
    kind's formula applied to that state."""
    return ForecasterState(kind=kind, params=params, f=initial_forecast(kind, params))


def initial_forecast(kind: ForecasterKind, params: SmoothingParams) -> float:
    # All formulas evaluate to 1 at the unit initial state except SBA's.
    if kind is ForecasterKind.SBA:
        return 1.0 - params.beta / 2.0
    return 1.0


def _step_ses(st, y, a, b):
    st.y_hat = a * y + (1.0 - a) * st.y_hat
    st.f = st.y_hat
    return st.f


def _step_cr(st, y, a, b):
    if y > 0.0:
        st.y_hat = a * y + (1.0 - a) * st.y_hat
        st.tau_hat = b * st.tau + (1.0 - b) * st.tau_hat
        st.f = st.y_hat / st.tau_hat
        st.tau = 1
    else:
        st.tau += 1
    return st.f


def _step_sba(st, y, a, b):
    if y > 0.0:
        st.y_hat = a * y + (1.0 - a) * st.y_hat
        st.tau_hat = b * st.tau + (1.0 - b) * st.tau_hat
        st.f = (1.0 - b / 2.0) * st.y_hat / st.tau_hat
        st.tau = 1
    else:
        st.tau += 1
    return st.f


def _step_sy(st, y, a, b):
    if y > 0.0:
        st.y_hat = a * y + (1.0 - a) * st.y_hat
        st.tau_hat = b * st.tau + (1.0 - b) * st.tau_hat
        # tau_hat >= 1 and beta < 1 keep the denominator positive.
        assert st.tau_hat - b / 2.0 > 0.0
        st.f = (1.0 - b / 2.0) * st.y_hat / (st.tau_hat - b / 2.0)
        st.tau = 1
    else:
        st.tau += 1
    return st.f


def _step_levseg(st, y, a, b):
    if y > 0.0:
        st.f = a * (y / st.tau) + (1.0 - a) * st.f
        st.tau = 1
    else:
        st.tau += 1
    return st.f


def _step_tsb(st, y, a, b):
    d = 1.0 if y > 0.0 else 0.0
    st.p_hat = b * d + (1.0 - b) * st.p_hat
    if y > 0.0:
        st.y_hat = a * y + (1.0 - a) * st.y_hat
    st.f = st.p_hat * st.y_hat
    return st.f


def _step_hes(st, y, a, b):
    if y > 0.0:
        st.y_hat = a * y + (1.0 - a) * st.y_hat
        st.tau_hat = b * st.tau + (1.0 - b) * st.tau_hat
        st.f = st.y_hat / st.tau_hat
        st.tau = 1
    else:
        # Forecast uses the current tau, then tau advances.
        st.f = st.y_hat / (st.tau_hat + b * st.tau / 2.0)
        st.tau += 1
    return st.f


def _step_les(st, y, a, b):
    if y != 0.0:
        st.y_hat = a * y + (1.0 - a) * st.y_hat
        st.tau_hat = b * st.tau + (1.0 - b) * st.tau_hat
        st.f = st.y_hat / st.tau_hat
        st.tau = 1
    else:
        # Exact max(0, .): the forecast reaches zero in finite time and
        # stays there until the next nonzero demand.
        st.f = (st.y_hat / st.tau_hat) * max(0.0, 1.0 - b * st.tau / (2.0 * st.tau_hat))
        st.tau += 1
    return st.f


_STEPPERS = {
    ForecasterKind.SES: _step_ses,
    ForecasterKind.CR: _step_cr,
    ForecasterKind.SBA: _step_sba,
    ForecasterKind.SY: _step_sy,
    ForecasterKind.LEVSEG: _step_levseg,
    ForecasterKind.TSB: _step_tsb,
    ForecasterKind.HES: _step_hes,
    ForecasterKind.LES: _step_les,
}
