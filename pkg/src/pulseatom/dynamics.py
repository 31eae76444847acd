"""Excitation dynamics of a ground-state two-level atom hit by a pulse.

The expectation values s = (s1, s2, s3) obey a linear system
ds/dt = M s + b whose entries depend on the quantum state of the pulse.
s1 = <sigma_z> and P_e = (s1 + 1) / 2; s2 and s3 are the sigma_+/sigma_-
entries (cross photon-number sector matrix elements for a Fock pulse,
plain expectation values for a coherent pulse).  With the effective
coupling g(t) = sqrt(Gamma_p) xi(t) (times sqrt(N) for a coherent pulse):

single-photon Fock state
    ds1 = -Gamma s1 - 2 g s2 - 2 conj(g) s3 - Gamma
    ds2 = -(Gamma/2) s2 - conj(g)
    ds3 = -(Gamma/2) s3 - g

coherent state
    ds1 = -Gamma s1 - 2 g s2 - 2 conj(g) s3 - Gamma
    ds2 = conj(g) s1 - (Gamma/2) s2
    ds3 = g s1 - (Gamma/2) s3

both with initial condition s(t0) = (-1, 0, 0).

Internally the solver propagates (P_e, s2, s3) rather than (s1, s2, s3):
P_e = (s1 + 1) / 2 removes the cancellation against s1 ~ -1 that would
otherwise destroy relative accuracy once the excitation has decayed.
The public ``rhs_fock``/``rhs_coherent`` keep the s-vector form above.

The drive is active only on the pulse's support window (mass outside is
below the truncation tolerance); past the support the system is free and
is propagated by its exact solution, so the post-pulse tail is a clean
exponential decay at machine accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import solve_ivp

from .geometry import CouplingBudget
from .pulses import PulseShape, TimeWindow, breakpoints, evaluate, support_window

SAMPLES_PER_UNIT_RATE = 40   # grid points per 1/(fastest rate) of the problem
DEFAULT_TOLERANCE = 1e-9     # relative; absolute is 1e-3 times smaller
DEFAULT_TAIL = 10.0          # free-decay tail appended after the pulse, in 1/Gamma


class IntegrationError(RuntimeError):
    """Raised when the ODE integration fails or produces non-finite state."""


@dataclass(frozen=True)
class FockOne:
    """Single-photon Fock state in the pulse mode."""


@dataclass(frozen=True)
class Coherent:
    """Coherent state with mean photon number ``n_mean`` = |alpha|^2."""

    n_mean: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.n_mean) and self.n_mean >= 0):
            raise ValueError(f"mean photon number must be >= 0, got {self.n_mean!r}")


FieldState = Union[FockOne, Coherent]


def drive(shape: PulseShape, field: FieldState, budget: CouplingBudget, t):
    """Effective coupling g(t) = sqrt(Gamma_p) xi(t), times sqrt(N) if coherent.

    The coherent amplitude alpha = sqrt(N) is taken real and non-negative;
    a global phase of alpha only rotates s2, s3 and leaves P_e unchanged.
    """
    return _drive_amplitude(field, budget) * evaluate(shape, t)


def _drive_amplitude(field: FieldState, budget: CouplingBudget) -> float:
    amp = math.sqrt(budget.gamma_p)
    if isinstance(field, Coherent):
        amp *= math.sqrt(field.n_mean)
    elif not isinstance(field, FockOne):
        raise TypeError(f"not a field state: {field!r}")
    return amp


def rhs_fock(s, g, gamma: float = 1.0):
    """Derivative M s + b of the Fock-state system at coupling value g."""
    s1, s2, s3 = s
    gc = np.conj(g)
    return np.array(
        [
            -gamma * s1 - 2.0 * g * s2 - 2.0 * gc * s3 - gamma,
            -0.5 * gamma * s2 - gc,
            -0.5 * gamma * s3 - g,
        ],
        dtype=complex,
    )


def rhs_coherent(s, g, gamma: float = 1.0):
    """Derivative M s + b of the coherent-state system at coupling value g."""
    s1, s2, s3 = s
    gc = np.conj(g)
    return np.array(
        [
            -gamma * s1 - 2.0 * g * s2 - 2.0 * gc * s3 - gamma,
            gc * s1 - 0.5 * gamma * s2,
            g * s1 - 0.5 * gamma * s3,
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class SimInput:
    """Everything one integration needs.

    ``window`` must span the pulse support (at this input's truncation
    tolerance ``eps_trunc``) plus a free-decay tail of at least 10/Gamma.
    ``tolerance`` is the relative local-error bound of the integrator;
    the absolute bound is tolerance * 1e-3.
    """

    shape: PulseShape
    field: FieldState
    budget: CouplingBudget
    window: TimeWindow
    tolerance: float = DEFAULT_TOLERANCE
    eps_trunc: float = 1e-8

    def __post_init__(self) -> None:
        if not (math.isfinite(self.tolerance) and self.tolerance > 0):
            raise ValueError(f"tolerance must be positive, got {self.tolerance!r}")
        sup = support_window(self.shape, self.eps_trunc)
        tail = DEFAULT_TAIL / self.budget.gamma
        slack = 1e-9
        if self.window.t_start > sup.t_start + slack:
            raise ValueError(
                f"window starts at {self.window.t_start} but the pulse support "
                f"starts at {sup.t_start}"
            )
        if self.window.t_end < sup.t_end + tail - slack:
            raise ValueError(
                f"window must reach {sup.t_end + tail} (pulse support plus a "
                f"{DEFAULT_TAIL}/Gamma decay tail), ends at {self.window.t_end}"
            )

    @classmethod
    def default(
        cls,
        shape: PulseShape,
        field: FieldState,
        budget: CouplingBudget,
        tolerance: float = DEFAULT_TOLERANCE,
        eps_trunc: float = 1e-8,
    ) -> "SimInput":
        """Support window of the shape plus a 10/Gamma decay tail."""
        sup = support_window(shape, eps_trunc)
        window = TimeWindow(sup.t_start, sup.t_end + DEFAULT_TAIL / budget.gamma)
        return cls(shape, field, budget, window, tolerance, eps_trunc)


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled solution: times, s-vectors, P_e, and the refined peak."""

    times: np.ndarray
    states: np.ndarray          # (n, 3) complex, columns s1, s2, s3
    pe: np.ndarray
    pe_max: float
    t_max: float

    @classmethod
    def from_samples(cls, times, states, pe, exact_times=()) -> "Trajectory":
        """Build a trajectory, locating the peak of pe.

        The discrete maximum is sharpened by parabolic interpolation
        unless it falls on one of ``exact_times`` (window edges and
        envelope breakpoints), where the curve may have a kink and the
        sampled value is already exact.
        """
        pe_max, t_max = _peak(np.asarray(times), np.asarray(pe), exact_times)
        return cls(np.asarray(times), np.asarray(states), np.asarray(pe), pe_max, t_max)


def _peak(times, pe, exact_times):
    i = int(np.argmax(pe))
    pe_i, t_i = float(pe[i]), float(times[i])
    if i == 0 or i == len(pe) - 1:
        return pe_i, t_i
    if any(abs(t_i - b) <= 1e-12 for b in exact_times):
        return pe_i, t_i
    left, right = float(pe[i - 1]), float(pe[i + 1])
    denom = left - 2.0 * pe_i + right
    if denom >= 0.0:  # flat or non-concave triple: nothing to refine
        return pe_i, t_i
    shift = 0.5 * (left - right) / denom
    h = float(times[i + 1] - times[i - 1]) / 2.0
    refined = pe_i - 0.25 * (left - right) * shift
    return min(max(refined, pe_i), 1.0), t_i + shift * h


def integrate(sim: SimInput) -> Trajectory:
    """Integrate the matching system over the window and sample P_e(t).

    Adaptive embedded Runge-Kutta (DOP853) on the driven part, split at
    the envelope's discontinuities; the undriven head and tail segments
    use the exact free solution.  Raises IntegrationError if the solver
    breaks down or the state leaves the physical range.
    """
    gamma = sim.budget.gamma
    amp = _drive_amplitude(sim.field, sim.budget)
    coherent = isinstance(sim.field, Coherent)
    shape = sim.shape

    sup = support_window(shape, sim.eps_trunc)
    t_a, t_b = sim.window.t_start, sim.window.t_end
    drive_start = max(sup.t_start, t_a)
    drive_end = min(sup.t_end, t_b)

    # sampling rate follows the fastest scale in the problem
    peak_g = amp * evaluate(shape, 0.0)
    rate = max(gamma, shape.bandwidth, 2.0 * peak_g)
    dt = 1.0 / (SAMPLES_PER_UNIT_RATE * rate)

    if amp * amp <= 1e-250 * gamma:
        # No coupling, or one too weak to matter: Cauchy-Schwarz on the
        # excitation integral bounds pe by amp^2/gamma, here < 1e-250,
        # far below any stated tolerance.  Driving the stepper with such
        # a rhs underflows its error estimates, so return the stationary
        # ground state exactly.
        n = max(int(math.ceil((t_b - t_a) / dt)) + 1, 9)
        times = np.linspace(t_a, t_b, n)
        states = np.tile([-1.0 + 0.0j, 0.0j, 0.0j], (n, 1))
        return Trajectory.from_samples(times, states, np.zeros(n))

    cuts = sorted(
        {drive_start, drive_end}
        | {b for b in breakpoints(shape) if drive_start < b < drive_end}
    )

    # P_e-based right-hand sides, y = (pe, s2, s3); see module docstring
    def rhs_fock_p(t, y):
        g = amp * evaluate(shape, t)
        pe, s2, s3 = y
        return [
            -gamma * pe - g * s2 - g * s3,
            -0.5 * gamma * s2 - g,
            -0.5 * gamma * s3 - g,
        ]

    def rhs_coherent_p(t, y):
        g = amp * evaluate(shape, t)
        pe, s2, s3 = y
        return [
            -gamma * pe - g * s2 - g * s3,
            g * (2.0 * pe - 1.0) - 0.5 * gamma * s2,
            g * (2.0 * pe - 1.0) - 0.5 * gamma * s3,
        ]

    rhs = rhs_coherent_p if coherent else rhs_fock_p

    def grid(a, b):
        n = max(int(math.ceil((b - a) / dt)) + 1, 9)
        return np.linspace(a, b, n)

    def free_decay(y0, ts):
        # g = 0: pe decays at Gamma, s2/s3 at Gamma/2, exactly
        tau = ts - ts[0]
        out = np.empty((3, len(ts)), dtype=complex)
        out[0] = y0[0] * np.exp(-gamma * tau)
        out[1] = y0[1] * np.exp(-0.5 * gamma * tau)
        out[2] = y0[2] * np.exp(-0.5 * gamma * tau)
        return out

    times_parts: list[np.ndarray] = []
    y_parts: list[np.ndarray] = []
    y0 = np.zeros(3, dtype=complex)

    if drive_start > t_a:          # undriven head: state stays zero
        ts = grid(t_a, drive_start)
        times_parts.append(ts)
        y_parts.append(np.zeros((3, len(ts)), dtype=complex))

    for a, b in zip(cuts[:-1], cuts[1:]):
        sol = solve_ivp(
            rhs,
            (a, b),
            y0,
            method="DOP853",
            rtol=sim.tolerance,
            atol=sim.tolerance * 1e-3,
            dense_output=True,
        )
        if not sol.success:
            raise IntegrationError(
                f"integration failed at t = {sol.t[-1]:.6g}: {sol.message}"
            )
        ts = grid(a, b)
        ys = sol.sol(ts)
        if not np.all(np.isfinite(ys)):
            bad = ts[np.argmax(~np.isfinite(ys).all(axis=0))]
            raise IntegrationError(f"non-finite state at t = {bad:.6g}")
        times_parts.append(ts)
        y_parts.append(ys)
        y0 = sol.y[:, -1]

    if t_b > drive_end:            # free-decay tail, exact
        ts = grid(drive_end, t_b)
        times_parts.append(ts)
        y_parts.append(free_decay(y0, ts))

    # merge, dropping the duplicated first point of each later part
    times = np.concatenate(
        [times_parts[0]] + [p[1:] for p in times_parts[1:]]
    )
    ys = np.concatenate([y_parts[0]] + [p[:, 1:] for p in y_parts[1:]], axis=1)

    pe_raw = ys[0].real
    slack = max(1e-6, 10.0 * sim.tolerance)
    if pe_raw.min() < -slack or pe_raw.max() > 1.0 + slack:
        bad = times[int(np.argmax(np.abs(pe_raw - 0.5)))]
        raise IntegrationError(
            f"excitation probability left [0, 1] near t = {bad:.6g}"
        )
    pe = np.clip(pe_raw, 0.0, 1.0)

    states = np.column_stack([2.0 * pe - 1.0 + 0.0j, ys[1], ys[2]])
    exact = [t_a, t_b, *cuts]
    return Trajectory.from_samples(times, states, pe, exact_times=exact)


def fock_oracle(
    shape: PulseShape,
    budget: CouplingBudget,
    t,
    field: FieldState = FockOne(),
    t_start: float | None = None,
    t_stop: float | None = None,
):
    """Closed-form P_e(t) for the single-photon Fock case, by quadrature.

    Eliminating s2, s3 from the Fock system (first-order linear equations)
    and substituting back gives

        P_e(t) = Gamma_p exp(-Gamma t) | I(t) |^2,
        I(t) = integral from t0 to t of xi(t') exp(Gamma t' / 2) dt',

    independent of the time integration path.  The integral is evaluated
    by composite Gauss-Legendre quadrature on subintervals short against
    every rate in the problem, split at envelope breakpoints.

    ``t_start`` is the lower limit t0 (default: the 1e-14 support edge,
    i.e. effectively -infinity); ``t_stop``, when given, truncates the
    envelope there so results match an integration whose drive stops at
    the support edge.  Scalar or array ``t`` accepted.
    """
    if not isinstance(field, FockOne):
        raise ValueError("fock_oracle applies to the single-photon Fock state only")

    gamma, gp = budget.gamma, budget.gamma_p
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    if t_start is None:
        t_start = support_window(shape, 1e-14).t_start

    # envelope active on [t_start, t_stop): clamp the upper limits
    upper = np.clip(ts, t_start, t_stop if t_stop is not None else np.inf)
    edges = np.unique(
        np.concatenate(
            [
                [t_start],
                upper,
                [b for b in breakpoints(shape) if t_start < b < upper.max()]
                if upper.max() > t_start
                else [],
            ]
        )
    )
    integral_at_edge = dict(
        zip(edges, _cumulative_coupling_integral(shape, gamma, edges))
    )
    big_i = np.array([integral_at_edge[u] for u in upper])
    pe = gp * np.exp(-gamma * ts) * big_i**2
    if np.ndim(t) == 0:
        return float(pe[0])
    return pe


_GL_NODES, _GL_WEIGHTS = leggauss(12)


def _cumulative_coupling_integral(shape, gamma, edges):
    """integral of xi(t) exp(gamma t / 2) from edges[0] to each edge."""
    if len(edges) == 1:
        return np.zeros(1)
    rate = max(gamma, shape.bandwidth)
    h_max = 0.2 / rate

    lefts, rights, owner = [], [], []
    for k, (a, b) in enumerate(zip(edges[:-1], edges[1:])):
        m = max(1, int(math.ceil((b - a) / h_max)))
        sub = np.linspace(a, b, m + 1)
        lefts.append(sub[:-1])
        rights.append(sub[1:])
        owner.append(np.full(m, k))
    a = np.concatenate(lefts)
    b = np.concatenate(rights)
    owner = np.concatenate(owner)

    half = (b - a) / 2.0
    x = (a + b)[:, None] / 2.0 + half[:, None] * _GL_NODES[None, :]
    f = evaluate(shape, x) * np.exp(gamma * x / 2.0)
    per_sub = (f @ _GL_WEIGHTS) * half

    per_interval = np.bincount(owner, weights=per_sub, minlength=len(edges) - 1)
    return np.concatenate([[0.0], np.cumsum(per_interval)])
