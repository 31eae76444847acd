"""Peak-excitation searches: over time, over bandwidth, over photon number."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    DEFAULT_TOLERANCE,
    Coherent,
    FieldState,
    FockOne,
    SimInput,
    Trajectory,
    integrate,
)
from .geometry import CouplingBudget
from .pulses import PulseShape, ShapeKind

DEFAULT_BRACKET = (0.1, 10.0)
COARSE_POINTS = 25
OMEGA_WIDTH_TOL = 0.02   # golden-section termination width, units of Gamma
TIE_TOL = 1e-4           # probability plateau: report the smallest bandwidth

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class OptimumReport:
    """Result of a bandwidth optimization for one (shape, field) pair."""

    kind: ShapeKind
    field: FieldState
    lambda_fraction: float
    omega_opt: float
    pe_max: float
    t_max: float
    boundary: bool                      # optimum pinned to the search bracket
    evaluations: tuple[tuple[float, float], ...] = ()  # (omega, pe_max) probes


def max_over_time(trajectory: Trajectory) -> tuple[float, float]:
    """Peak excitation probability and its time.

    The grid maximum is already interpolation-refined when the trajectory
    is built (see Trajectory.from_samples), so this simply reads it off.
    """
    return trajectory.pe_max, trajectory.t_max


def _pe_max_at(kind, omega, field, budget, tolerance) -> tuple[float, float]:
    sim = SimInput.default(PulseShape(kind, omega), field, budget, tolerance)
    return max_over_time(integrate(sim))


def optimize_bandwidth(
    kind,
    field: FieldState,
    budget: CouplingBudget,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    tolerance: float = DEFAULT_TOLERANCE,
) -> OptimumReport:
    """Bandwidth maximizing the peak excitation probability.

    A log-spaced coarse scan over the bracket picks the starting lobe
    (assumed unimodal from there on), then golden-section search narrows
    the bandwidth to within OMEGA_WIDTH_TOL.  On a plateau the smallest
    bandwidth within TIE_TOL of the best probability wins.  An optimum on
    the bracket edge is reported with ``boundary=True``.
    """
    lo, hi = bracket
    if not 0.0 < lo < hi:
        raise ValueError(f"need 0 < lo < hi, got bracket {bracket!r}")
    kind = ShapeKind(kind)

    probes: list[tuple[float, float]] = []

    def f(omega: float) -> float:
        pe, _ = _pe_max_at(kind, omega, field, budget, tolerance)
        probes.append((omega, pe))
        return pe

    omegas = np.geomspace(lo, hi, COARSE_POINTS)
    values = np.array([f(om) for om in omegas])
    best = float(values.max())
    i0 = int(np.nonzero(values >= best - TIE_TOL)[0][0])
    boundary = i0 in (0, len(omegas) - 1)

    a = float(omegas[max(i0 - 1, 0)])
    b = float(omegas[min(i0 + 1, len(omegas) - 1)])
    h = b - a
    if h > OMEGA_WIDTH_TOL:
        n = int(math.ceil(math.log(OMEGA_WIDTH_TOL / h) / math.log(_INV_PHI)))
        c = a + _INV_PHI2 * h
        d = a + _INV_PHI * h
        yc, yd = f(c), f(d)
        for _ in range(n - 1):
            h *= _INV_PHI
            if yc > yd:
                b, d, yd = d, c, yc
                c = a + _INV_PHI2 * h
                yc = f(c)
            else:
                a, c, yc = c, d, yd
                d = a + _INV_PHI * h
                yd = f(d)
        a, b = (a, d) if yc > yd else (c, b)

    omega_opt = (a + b) / 2.0
    sim = SimInput.default(PulseShape(kind, omega_opt), field, budget, tolerance)
    pe_max, t_max = max_over_time(integrate(sim))
    probes.append((omega_opt, pe_max))

    return OptimumReport(
        kind=kind,
        field=field,
        lambda_fraction=budget.lambda_fraction,
        omega_opt=omega_opt,
        pe_max=pe_max,
        t_max=t_max,
        boundary=boundary,
        evaluations=tuple(sorted(set(probes))),
    )


def sweep_photon_number(
    kind,
    omega: float,
    budget: CouplingBudget,
    n_values,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[tuple[float, float]]:
    """Peak excitation probability of a coherent pulse per mean photon number."""
    n_values = list(n_values)
    if not n_values:
        raise ValueError("need at least one mean photon number")
    out = []
    for n in n_values:
        pe, _ = _pe_max_at(ShapeKind(kind), omega, Coherent(float(n)), budget, tolerance)
        out.append((float(n), pe))
    return out


def table_two(
    budget: CouplingBudget,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[OptimumReport]:
    """Optimum bandwidth and peak probability for all 12 (shape, state) rows.

    Rows are ordered by shape (declaration order of ShapeKind), with the
    single-photon Fock row before the coherent N = 1 row for each shape.
    """
    rows = []
    for kind in ShapeKind:
        for field in (FockOne(), Coherent(1.0)):
            rows.append(optimize_bandwidth(kind, field, budget, bracket, tolerance))
    return rows
