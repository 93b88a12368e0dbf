"""Figure rendering for traces, result tables and decay reports.

Figures are written next to the CSV outputs; the CSV files remain the
primary, machine-readable artifacts.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["plot_trace", "plot_table", "plot_decay"]

_MEASURES = ("ME", "MAE", "RMSE")


def plot_trace(trace, path) -> None:
    """Demand impulses with one forecast line per method."""
    fig, ax = plt.subplots(figsize=(9, 4.5))
    t = np.arange(trace.periods)
    nz = trace.demand > 0
    if nz.any():
        ax.vlines(t[nz], 0, trace.demand[nz], color="0.75", lw=1, label="demand")
    for m in trace.methods:
        ax.plot(t, trace.forecasts[m], lw=1.4, label=m.value.upper())
    ax.set_xlabel("period")
    ax.set_ylabel("demand / forecast")
    ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_table(table, path) -> None:
    """ME/MAE/RMSE against beta, one line per method, one panel per alpha."""
    alphas = sorted(table.alpha_grid)
    betas = sorted(table.beta_grid)
    fig, axes = plt.subplots(
        len(alphas), 3, figsize=(11, 2.6 * len(alphas)), squeeze=False, sharex=True
    )
    for i, a in enumerate(alphas):
        for j, measure in enumerate(_MEASURES):
            ax = axes[i][j]
            for m in table.methods:
                vals = [getattr(table.cells[(a, b, m)], measure.lower()) for b in betas]
                ax.plot(betas, vals, marker="o", ms=3, lw=1.2, label=m.value.upper())
            ax.set_xscale("log")
            if i == len(alphas) - 1:
                ax.set_xlabel("beta")
            ax.set_ylabel(f"{measure} (alpha={a:g})", fontsize=8)
            ax.tick_params(labelsize=8)
    axes[0][0].legend(fontsize=8)
    fig.suptitle(f"{table.scenario.value}  ell={table.ell:g}  p0={table.p0:g}", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_decay(setup, trace, path) -> None:
    """Forecast decay after obsolescence for a single method."""
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(np.arange(len(trace.forecasts)), trace.forecasts, lw=1.4,
            label=setup.kind.value.upper())
    ax.set_xlabel("periods since obsolescence")
    ax.set_ylabel("forecast")
    ax.set_title(f"f0={setup.f0:g}  tau_hat0={setup.tau_hat0:g}  beta={setup.beta:g}", fontsize=9)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
