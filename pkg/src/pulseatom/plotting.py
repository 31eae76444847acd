"""Figure rendering for the CLI report path.

Each helper writes one PNG next to the delimited data file.  Figures are
quick-look summaries, not publication output; the CSV/JSON files remain
the primary record.
"""

from __future__ import annotations

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .dynamics import Trajectory
from .optimize import OptimumReport
from .pulses import PulseShape, evaluate

_DPI = 150


def plot_trajectory(trajectory: Trajectory, shape: PulseShape, path, title=None):
    """Excitation probability over time, pulse intensity shaded behind."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    env = evaluate(shape, trajectory.times) ** 2
    if env.max() > 0:
        ax.fill_between(
            trajectory.times,
            env / env.max() * max(trajectory.pe.max(), 1e-12),
            color="0.85",
            label=r"$|\xi(t)|^2$ (scaled)",
        )
    ax.plot(trajectory.times, trajectory.pe, color="k", lw=1.5, label=r"$P_e(t)$")
    ax.plot([trajectory.t_max], [trajectory.pe_max], "o", color="tab:red", ms=4)
    ax.set_xlabel(r"$t$  [$1/\Gamma$]")
    ax.set_ylabel(r"$P_e$")
    ax.set_ylim(bottom=0)
    if title:
        ax.set_title(title)
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def plot_bandwidth_scan(report: OptimumReport, path, title=None):
    """Probed pe_max values against bandwidth, optimum marked."""
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if report.evaluations:
        om, pe = zip(*report.evaluations)
        ax.semilogx(om, pe, ".-", color="0.4", lw=0.8, ms=4)
    ax.axvline(report.omega_opt, color="tab:red", lw=0.8, ls="--")
    ax.semilogx([report.omega_opt], [report.pe_max], "o", color="tab:red", ms=5)
    ax.set_xlabel(r"$\Omega$  [$\Gamma$]")
    ax.set_ylabel(r"$P_e^{\mathrm{max}}$")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def plot_sweep(pairs, path, title=None):
    """Peak excitation probability against mean photon number."""
    n, pe = zip(*pairs)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if min(n) > 0:
        ax.semilogx(n, pe, "o-", color="k", ms=4)
    else:
        ax.plot(n, pe, "o-", color="k", ms=4)
    ax.set_xlabel(r"mean photon number $N$")
    ax.set_ylabel(r"$P_e^{\mathrm{max}}$")
    ax.set_ylim(0, 1)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def plot_table(reports, path, title=None):
    """Grouped bars of pe_max per shape and field state, optima annotated."""
    kinds = []
    for r in reports:
        if r.kind not in kinds:
            kinds.append(r.kind)
    groups = {}
    for r in reports:
        label = "fock" if type(r.field).__name__ == "FockOne" else "coherent"
        groups.setdefault(label, {})[r.kind] = r

    fig, ax = plt.subplots(figsize=(7.5, 4.2))
    x = np.arange(len(kinds))
    width = 0.8 / max(len(groups), 1)
    for j, (label, by_kind) in enumerate(sorted(groups.items(), reverse=True)):
        vals = [by_kind[k].pe_max if k in by_kind else 0.0 for k in kinds]
        pos = x + (j - (len(groups) - 1) / 2) * width
        bars = ax.bar(pos, vals, width, label=label)
        for k, bar in zip(kinds, bars):
            if k in by_kind:
                ax.annotate(
                    f"$\\Omega$={by_kind[k].omega_opt:.2f}",
                    (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                    ha="center",
                    va="bottom",
                    fontsize=7,
                    rotation=45,
                )
    ax.set_xticks(x)
    ax.set_xticklabels([k.value for k in kinds], rotation=20)
    ax.set_ylabel(r"$P_e^{\mathrm{max}}$")
    ax.set_ylim(0, 1.12)
    ax.legend(frameon=False, loc="upper left")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path
