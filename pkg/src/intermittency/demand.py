"""Synthetic stochastic intermittent demand.

Demand in each period is a Bernoulli occurrence whose size, when it occurs,
is drawn from a logarithmic (log-series) distribution.  The occurrence
probability follows one of three schedules: constant, linearly declining to
zero over the evaluation window, or cut to zero halfway through it.
"""

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

__all__ = [
    "LogarithmicDist",
    "ScenarioKind",
    "DemandScenario",
    "demand_probability_at",
    "generate_series",
    "derive_run_rng",
]

# Sampling truncates the support where the remaining tail mass drops below
# this; draws landing in the tail return the cap index.
_CDF_TAIL = 1e-12
_MAX_SUPPORT = 1_000_000


@dataclass(frozen=True)
class LogarithmicDist:
    """Log-series distribution on k >= 1: Pr[X=k] = -ell^k / (k ln(1-ell))."""

    ell: float

    def __post_init__(self):
        if not 0.0 < self.ell < 1.0:
            raise ValueError(f"ell must lie in (0, 1), got {self.ell}")

    def pmf(self, k: int) -> float:
        """Probability of drawing exactly k units."""
        if k < 1:
            raise ValueError(f"logarithmic support starts at 1, got k={k}")
        return -(self.ell ** k) / (k * math.log(1.0 - self.ell))

    def mean(self) -> float:
        """Analytic mean -ell / ((1-ell) ln(1-ell))."""
        return -self.ell / ((1.0 - self.ell) * math.log(1.0 - self.ell))

    @cached_property
    def _cdf(self) -> list[float]:
        # Cumulative masses, truncated once the tail is below _CDF_TAIL.
        log1m = math.log(1.0 - self.ell)
        pk = -self.ell / log1m
        cum = 0.0
        out = []
        k = 1
        while cum < 1.0 - _CDF_TAIL:
            cum += pk
            out.append(cum)
            pk *= self.ell * k / (k + 1)
            k += 1
            if k > _MAX_SUPPORT:
                raise ValueError(f"ell={self.ell} too close to 1 for cdf table")
        return out

    def sample(self, rng: np.random.Generator) -> int:
        """Draw one value by inverse-CDF search; consumes one uniform."""
        u = rng.random()
        for k, c in enumerate(self._cdf, start=1):
            if u < c:
                return k
        return len(self._cdf)


class ScenarioKind(Enum):
    STATIONARY = "stationary"
    LINEAR_DECREASE = "decreasing"
    SUDDEN_OBSOLESCENCE = "sudden"


@dataclass(frozen=True)
class DemandScenario:
    """Occurrence-probability schedule plus size distribution.

    The schedule is stationary at ``p0`` over the first ``init_len`` periods
    for every kind; the decline and cut apply to the ``eval_len`` evaluation
    periods that follow.
    """

    kind: ScenarioKind
    p0: float
    sizes: LogarithmicDist
    init_len: int = 1000
    eval_len: int = 1000

    def __post_init__(self):
        if not 0.0 < self.p0 <= 1.0:
            raise ValueError(f"p0 must lie in (0, 1], got {self.p0}")
        if self.init_len < 0:
            raise ValueError(f"init_len must be >= 0, got {self.init_len}")
        if self.eval_len < 1:
            raise ValueError(f"eval_len must be >= 1, got {self.eval_len}")

    @property
    def length(self) -> int:
        return self.init_len + self.eval_len

    def probability_at(self, t: int) -> float:
        return demand_probability_at(self, t)

    def probabilities(self) -> np.ndarray:
        """Occurrence probability for every period, as an array."""
        return np.array([demand_probability_at(self, t) for t in range(self.length)])


def demand_probability_at(scenario: DemandScenario, t: int) -> float:
    """Occurrence probability at period ``t`` (0-based over the full series)."""
    if not 0 <= t < scenario.length:
        raise ValueError(f"period {t} outside series of length {scenario.length}")
    if t < scenario.init_len or scenario.kind is ScenarioKind.STATIONARY:
        return scenario.p0
    i = t - scenario.init_len
    n = scenario.eval_len
    if scenario.kind is ScenarioKind.LINEAR_DECREASE:
        # Ramp from p0 at the first evaluation period to 0 at the last one.
        if n == 1:
            return 0.0
        return scenario.p0 * (1.0 - i / (n - 1))
    # Sudden obsolescence: cut at the midpoint of the evaluation window.
    return scenario.p0 if i < n // 2 else 0.0


def generate_series(scenario: DemandScenario, rng: np.random.Generator) -> np.ndarray:
    """Generate one demand series (int64, length init_len + eval_len).

    Per period, one occurrence uniform is always consumed; a size draw is
    consumed only when demand occurs, so the output is a pure function of
    (scenario, rng seed).
    """
    probs = [demand_probability_at(scenario, t) for t in range(scenario.length)]
    sizes = scenario.sizes
    random = rng.random
    out = np.zeros(scenario.length, dtype=np.int64)
    for t, p in enumerate(probs):
        if random() < p:
            out[t] = sizes.sample(rng)
    return out


def derive_run_rng(seed: int, run: int) -> np.random.Generator:
    """Per-run stream derived as seed XOR run index, so runs are order-free."""
    return np.random.default_rng((seed ^ run) & 0xFFFFFFFFFFFFFFFF)
