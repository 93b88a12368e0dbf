"""Asymptotic obsolescence errors for the decaying forecasters.

After demand ceases permanently, TSB forecasts decay exponentially, HES
hyperbolically and LES linearly to an exact zero.  This module provides the
closed-form limits of the cumulative error measures over an infinite
zero-demand horizon, the exact finite sums available for LES, and a decay
simulator that reproduces the truncated sums by stepping the forecasters.

All three forecasters are assumed frozen at the same forecast f0 when
obsolescence occurs, with smoothed interval tau_hat0 where applicable; on
zero demand none of them updates y_hat or tau_hat (TSB's p_hat update is the
decay itself).  The quantity ell = 2*tau_hat0/beta is the number of periods
LES needs to reach zero.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import digamma

from .forecasters import ForecasterKind, ForecasterState, SmoothingParams

__all__ = [
    "ObsolescenceSetup",
    "DecayTrace",
    "asymptotic_cfe",
    "asymptotic_cse",
    "exact_les_sums",
    "simulate_decay",
    "frozen_state",
    "hes_truncated_cfe",
]

DIVERGENT = math.inf

_DECAY_KINDS = (ForecasterKind.TSB, ForecasterKind.HES, ForecasterKind.LES)


@dataclass(frozen=True)
class ObsolescenceSetup:
    """Forecaster frozen at forecast f0 when demand ceases.

    tau_hat0 may be any positive real so that ell = 2*tau_hat0/beta can take
    any positive value; states reached by actual stepping always have
    tau_hat0 >= 1.
    """

    kind: ForecasterKind
    f0: float
    beta: float
    tau_hat0: float = 1.0

    def __post_init__(self):
        if self.kind not in _DECAY_KINDS:
            raise ValueError(f"no obsolescence asymptotics for {self.kind}")
        if self.f0 <= 0.0:
            raise ValueError(f"f0 must be positive, got {self.f0}")
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        if self.tau_hat0 <= 0.0:
            raise ValueError(f"tau_hat0 must be positive, got {self.tau_hat0}")

    @property
    def ell(self) -> float:
        return 2.0 * self.tau_hat0 / self.beta


def asymptotic_cfe(setup: ObsolescenceSetup) -> float:
    """Limit of the cumulative forecast error magnitude; inf for HES."""
    if setup.kind is ForecasterKind.TSB:
        return setup.f0 / setup.beta
    if setup.kind is ForecasterKind.HES:
        return DIVERGENT  # harmonic tail
    return setup.f0 * setup.tau_hat0 / setup.beta


def asymptotic_cse(setup: ObsolescenceSetup) -> float:
    """Limit of the cumulative squared error."""
    if setup.kind is ForecasterKind.TSB:
        return (setup.f0 / setup.beta) ** 2
    if setup.kind is ForecasterKind.HES:
        return 2.0 * setup.f0 ** 2 * setup.tau_hat0 / setup.beta
    return 2.0 * setup.f0 ** 2 * setup.tau_hat0 / (3.0 * setup.beta)


def exact_les_sums(setup: ObsolescenceSetup, round_ell: bool = False) -> tuple[float, float]:
    """Exact finite LES decay sums, valid when ell is an integer.

    Returns (f0*(ell+1)/2, (f0/ell)^2 * (ell^3/3 + ell^2/2 + ell/6)).  With
    ``round_ell`` the nearest integer is used; otherwise a non-integer ell
    is rejected.
    """
    if setup.kind is not ForecasterKind.LES:
        raise ValueError(f"exact decay sums only exist for LES, got {setup.kind}")
    ell_real = setup.ell
    ell = round(ell_real)
    if ell < 1:
        raise ValueError(f"ell = 2*tau_hat0/beta rounds to {ell}, must be >= 1")
    if not round_ell and abs(ell_real - ell) > 1e-6 * max(1.0, ell):
        raise ValueError(f"ell = {ell_real} is not an integer; pass round_ell=True")
    f0 = setup.f0
    cfe = f0 * (ell + 1) / 2.0
    cse = (f0 / ell) ** 2 * (ell ** 3 / 3.0 + ell ** 2 / 2.0 + ell / 6.0)
    return cfe, cse


@dataclass(frozen=True)
class DecayTrace:
    """Standing forecast per zero-demand period, plus truncated sums.

    forecasts[0] is f0 itself (the forecast in force when the first
    post-obsolescence period arrives); forecasts[t] is the forecast after t
    zero demands have been absorbed.  Demand is zero throughout, so the
    error at each period is -forecasts[t] and cfe/cse sum the forecasts and
    their squares.
    """

    forecasts: np.ndarray
    cfe: float
    cse: float


def frozen_state(setup: ObsolescenceSetup) -> ForecasterState:
    """ForecasterState pinned at the setup's (f0, tau_hat0)."""
    params = SmoothingParams(alpha=0.1, beta=setup.beta)  # alpha unused on zero demand
    if setup.kind is ForecasterKind.TSB:
        return ForecasterState(setup.kind, params, y_hat=setup.f0, p_hat=1.0, f=setup.f0)
    return ForecasterState(
        setup.kind,
        params,
        y_hat=setup.f0 * setup.tau_hat0,
        tau_hat=setup.tau_hat0,
        tau=1,
        f=setup.f0,
    )


def simulate_decay(setup: ObsolescenceSetup, horizon: int) -> DecayTrace:
    """Feed ``horizon`` zero demands to the frozen forecaster.

    During a pure zero run the state evolution is a fixed recurrence (tau
    increments, p_hat shrinks by 1-beta), so the per-period updates are
    evaluated vectorised; the result is identical to stepping a
    ForecasterState one period at a time.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    f0, b, th0 = setup.f0, setup.beta, setup.tau_hat0
    tr = np.empty(horizon, dtype=np.float64)
    tr[0] = f0
    if setup.kind is ForecasterKind.TSB:
        if horizon > 1:
            tr[1:] = f0 * np.cumprod(np.full(horizon - 1, 1.0 - b))
    else:
        yh = f0 * th0
        tau = np.arange(1, horizon, dtype=np.float64)
        if setup.kind is ForecasterKind.HES:
            tr[1:] = yh / (th0 + b * tau / 2.0)
        else:
            tr[1:] = (yh / th0) * np.maximum(0.0, 1.0 - b * tau / (2.0 * th0))
    return DecayTrace(tr, float(tr.sum()), float(np.sum(tr * tr)))


def hes_truncated_cfe(setup: ObsolescenceSetup, horizon: int) -> float:
    """HES cumulative error over a finite horizon, via the partial harmonic
    sum f0 * ell * (psi(ell + horizon) - psi(ell)).

    Grows without bound as the horizon does; usable at horizons far beyond
    what streaming simulation can reach.
    """
    if setup.kind is not ForecasterKind.HES:
        raise ValueError(f"partial harmonic sum applies to HES, got {setup.kind}")
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    ell = setup.ell
    return setup.f0 * ell * float(digamma(ell + horizon) - digamma(ell))
