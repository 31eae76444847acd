"""Dipole-weighted solid angle and the pulse-mode share of the decay rate.

How much of the atomic dipole emission pattern the incoming pulse covers
is captured by a single weighted solid angle Lambda in [0, 8 pi / 3].
The spontaneous decay rate Gamma splits as Gamma = Gamma' + Gamma_p with

    Gamma_p = Gamma * Lambda / (8 pi / 3),

the decay into the pulse mode.  Full 4-pi dipole-matched coverage gives
Lambda = 8 pi / 3 and hence Gamma_p = Gamma.

For a circular aperture of half-opening angle theta0 (dipole on the cone
axis, linear dipole pattern sin^2 theta):

    Lambda(theta0) = 2 pi (2/3 - cos theta0 + cos^3 theta0 / 3)
                   = (8 pi / 3) * (2 - 3 c + c^3) / 4,   c = cos theta0.

The second form is used so that theta0 = pi yields exactly 8 pi / 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

LAMBDA_MAX = 8.0 * math.pi / 3.0


@dataclass(frozen=True)
class FullSolidAngle:
    """Pulse mode covering the whole dipole pattern (Lambda = 8 pi / 3)."""


@dataclass(frozen=True)
class Cone:
    """Aperture cone of half-opening angle ``half_angle`` (radians).

    The dipole sits on the cone axis; the angular weight is sin^2 theta.
    """

    half_angle: float

    def __post_init__(self) -> None:
        if not 0.0 < self.half_angle <= math.pi:
            raise ValueError(
                f"cone half-angle must lie in (0, pi], got {self.half_angle!r}"
            )

    @classmethod
    def from_degrees(cls, degrees: float) -> "Cone":
        return cls(math.radians(degrees))


@dataclass(frozen=True)
class ExplicitLambda:
    """A weighted solid angle given directly, e.g. quoted for a lens setup."""

    value: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.value <= LAMBDA_MAX:
            raise ValueError(
                f"Lambda must lie in [0, 8 pi / 3 = {LAMBDA_MAX:.6f}], "
                f"got {self.value!r}"
            )


FocusingGeometry = Union[FullSolidAngle, Cone, ExplicitLambda]


def lambda_of(geometry: FocusingGeometry) -> float:
    """Weighted solid angle Lambda of a focusing geometry."""
    if isinstance(geometry, FullSolidAngle):
        return LAMBDA_MAX
    if isinstance(geometry, Cone):
        c = math.cos(geometry.half_angle)
        return LAMBDA_MAX * (2.0 - 3.0 * c + c**3) / 4.0
    if isinstance(geometry, ExplicitLambda):
        return geometry.value
    raise TypeError(f"not a focusing geometry: {geometry!r}")


def gamma_p(gamma: float, lam: float) -> float:
    """Pulse-mode decay rate Gamma_p = Gamma * Lambda / (8 pi / 3)."""
    if not gamma > 0:
        raise ValueError(f"Gamma must be positive, got {gamma!r}")
    if not 0.0 <= lam <= LAMBDA_MAX * (1.0 + 1e-12):
        raise ValueError(
            f"Lambda must lie in [0, 8 pi / 3 = {LAMBDA_MAX:.6f}], got {lam!r}"
        )
    # fraction first: keeps gamma_p <= gamma exactly, even at lam == LAMBDA_MAX
    return gamma * (min(lam, LAMBDA_MAX) / LAMBDA_MAX)


@dataclass(frozen=True)
class CouplingBudget:
    """Total decay rate Gamma and the weighted solid angle Lambda.

    Gamma serves as the unit of rate (default 1).  The derived pulse-mode
    decay ``gamma_p`` always satisfies 0 <= gamma_p <= gamma.
    """

    gamma: float = 1.0
    lam: float = LAMBDA_MAX

    def __post_init__(self) -> None:
        gamma_p(self.gamma, self.lam)  # validates both fields

    @property
    def gamma_p(self) -> float:
        return gamma_p(self.gamma, self.lam)

    @property
    def lambda_fraction(self) -> float:
        """Lambda as a fraction of its maximum 8 pi / 3."""
        return self.lam / LAMBDA_MAX

    @classmethod
    def from_geometry(
        cls, geometry: FocusingGeometry, gamma: float = 1.0
    ) -> "CouplingBudget":
        return cls(gamma=gamma, lam=lambda_of(geometry))

    @classmethod
    def from_fraction(cls, fraction: float, gamma: float = 1.0) -> "CouplingBudget":
        """Budget from Lambda quoted as a fraction of 8 pi / 3."""
        if not 0.0 <= fraction <= 1.0:
            raise ValueError(f"Lambda fraction must lie in [0, 1], got {fraction!r}")
        return cls(gamma=gamma, lam=fraction * LAMBDA_MAX)
