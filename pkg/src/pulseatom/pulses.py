"""Normalized temporal pulse envelopes and their effective time supports.

Six standard envelope families, each parametrized by a single rate-type
bandwidth parameter ``bandwidth`` (written Omega below).  All rates are in
units of the atomic decay rate Gamma, which fixes the time unit to 1/Gamma.

Definitions (xi is real and non-negative everywhere):

    gaussian     xi(t) = (Omega^2 / 2 pi)^(1/4) exp(-Omega^2 t^2 / 4)
    sech         xi(t) = sqrt(Omega / 2) sech(Omega t)
    rect         xi(t) = sqrt(Omega / 2)            for 0 <= t <= 2/Omega
    sym-exp      xi(t) = sqrt(Omega) exp(-Omega |t|)
    decay-exp    xi(t) = sqrt(Omega) exp(-Omega t / 2)   for t >= 0
    rising-exp   xi(t) = sqrt(Omega) exp(+Omega t / 2)   for t <= 0

Each is unit-normalized, integral |xi(t)|^2 dt = 1, and obeys the scaling
law xi_Omega(t) = sqrt(Omega) xi_1(Omega t).  The time origins above are
part of the definitions (symmetric shapes centered at 0, one-sided shapes
anchored at 0) and must not be re-centered: optimum-bandwidth results are
quoted with these conventions.

Note: ``bandwidth`` is the rate parameter of the formulas above, not a
FWHM.  FWHM conversions differ per family and are deliberately omitted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import erfcinv


class ShapeKind(str, enum.Enum):
    """The supported envelope families (values match the CLI spelling)."""

    GAUSSIAN = "gaussian"
    SECH = "sech"
    RECTANGULAR = "rect"
    SYMMETRIC_EXP = "sym-exp"
    DECAYING_EXP = "decay-exp"
    RISING_EXP = "rising-exp"


@dataclass(frozen=True)
class PulseShape:
    """An envelope family plus its bandwidth Omega (units of Gamma).

    Parameters
    ----------
    kind : ShapeKind or str
        One of the six envelope families.
    bandwidth : float
        Rate parameter Omega of the envelope, > 0.
    """

    kind: ShapeKind
    bandwidth: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ShapeKind(self.kind))
        if not (math.isfinite(self.bandwidth) and self.bandwidth > 0):
            raise ValueError(
                f"bandwidth must be positive and finite, got {self.bandwidth!r}"
            )


@dataclass(frozen=True)
class TimeWindow:
    """A finite time interval [t_start, t_end], units of 1/Gamma."""

    t_start: float
    t_end: float

    def __post_init__(self) -> None:
        if not self.t_start < self.t_end:
            raise ValueError(
                f"need t_start < t_end, got [{self.t_start}, {self.t_end}]"
            )

    @property
    def width(self) -> float:
        return self.t_end - self.t_start


def evaluate(shape: PulseShape, t):
    """Evaluate the envelope xi(t).

    Accepts a scalar or an ndarray of times; returns the same shape.
    One-sided envelopes include their boundary point (xi(0) = sqrt(Omega)
    for both exponential ramps); the choice is measure-zero and does not
    affect any integral.
    """
    arr = np.asarray(t, dtype=float)
    om = shape.bandwidth
    kind = shape.kind

    if kind is ShapeKind.GAUSSIAN:
        out = (om**2 / (2.0 * np.pi)) ** 0.25 * np.exp(-((om * arr) ** 2) / 4.0)
    elif kind is ShapeKind.SECH:
        # sech via exponentials of negative argument only (no overflow)
        x = np.abs(om * arr)
        enx = np.exp(-x)
        out = math.sqrt(om / 2.0) * 2.0 * enx / (1.0 + enx * enx)
    elif kind is ShapeKind.RECTANGULAR:
        out = np.where((arr >= 0.0) & (arr <= 2.0 / om), math.sqrt(om / 2.0), 0.0)
    elif kind is ShapeKind.SYMMETRIC_EXP:
        out = math.sqrt(om) * np.exp(-om * np.abs(arr))
    elif kind is ShapeKind.DECAYING_EXP:
        out = np.zeros_like(arr)
        m = arr >= 0.0
        out[m] = math.sqrt(om) * np.exp(-om * arr[m] / 2.0)
    else:  # rising exponential
        out = np.zeros_like(arr)
        m = arr <= 0.0
        out[m] = math.sqrt(om) * np.exp(om * arr[m] / 2.0)

    if np.ndim(t) == 0:
        return float(out)
    return out


def support_window(shape: PulseShape, eps_trunc: float = 1e-8) -> TimeWindow:
    """Window holding at least 1 - eps_trunc of the squared-norm mass.

    Hard boundaries of compactly-supported and one-sided shapes are exact;
    infinite tails are cut where the discarded |xi|^2 mass equals
    eps_trunc (split evenly between the two tails of symmetric shapes).
    """
    if not 0.0 < eps_trunc < 1.0:
        raise ValueError(f"eps_trunc must lie in (0, 1), got {eps_trunc!r}")
    om = shape.bandwidth
    kind = shape.kind

    if kind is ShapeKind.RECTANGULAR:
        return TimeWindow(0.0, 2.0 / om)
    if kind is ShapeKind.DECAYING_EXP:
        # tail mass of Omega exp(-Omega t) beyond T is exp(-Omega T)
        return TimeWindow(0.0, -math.log(eps_trunc) / om)
    if kind is ShapeKind.RISING_EXP:
        return TimeWindow(math.log(eps_trunc) / om, 0.0)
    if kind is ShapeKind.GAUSSIAN:
        # |xi|^2 is the normal density with sigma = 1/Omega; two-sided
        # tail mass beyond T is erfc(T Omega / sqrt(2))
        half = math.sqrt(2.0) * float(erfcinv(eps_trunc)) / om
    elif kind is ShapeKind.SECH:
        # cumulative mass is (1 + tanh(Omega t)) / 2
        half = 0.5 * math.log((2.0 - eps_trunc) / eps_trunc) / om
    else:  # symmetric exponential
        half = -math.log(eps_trunc) / (2.0 * om)
    return TimeWindow(-half, half)


def breakpoints(shape: PulseShape) -> tuple[float, ...]:
    """Times where xi or its derivative is discontinuous.

    Integrators and quadratures should not step across these.
    """
    kind = shape.kind
    if kind is ShapeKind.RECTANGULAR:
        return (0.0, 2.0 / shape.bandwidth)
    if kind in (ShapeKind.DECAYING_EXP, ShapeKind.RISING_EXP, ShapeKind.SYMMETRIC_EXP):
        return (0.0,)
    return ()


def norm(shape: PulseShape) -> float:
    """Numerical quadrature of integral |xi|^2 over the effective support.

    All six families are unit-normalized analytically; this check exists
    for tests.
    """
    window = support_window(shape, 1e-14)
    pts = [t for t in breakpoints(shape) if window.t_start < t < window.t_end]
    total, _ = quad(
        lambda t: evaluate(shape, t) ** 2,
        window.t_start,
        window.t_end,
        points=pts or None,
        limit=200,
        epsabs=1e-12,
        epsrel=1e-12,
    )
    return total
