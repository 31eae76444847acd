"""Excitation of a two-level atom by a quantized propagating pulse.

Simulates the excitation probability P_e(t) for single-photon Fock and
coherent pulses of six standard temporal envelopes, resolves how much of
the dipole pattern a focusing geometry covers, and searches bandwidths
and photon numbers for the strongest excitation.
"""

from .pulses import (
    PulseShape,
    ShapeKind,
    TimeWindow,
    breakpoints,
    evaluate,
    norm,
    support_window,
)
from .geometry import (
    LAMBDA_MAX,
    Cone,
    CouplingBudget,
    ExplicitLambda,
    FocusingGeometry,
    FullSolidAngle,
    gamma_p,
    lambda_of,
)
from .dynamics import (
    Coherent,
    FieldState,
    FockOne,
    IntegrationError,
    SimInput,
    Trajectory,
    drive,
    fock_oracle,
    integrate,
    rhs_coherent,
    rhs_fock,
)
from .optimize import (
    OptimumReport,
    max_over_time,
    optimize_bandwidth,
    sweep_photon_number,
    table_two,
)

__version__ = "0.1.0"

__all__ = [
    "PulseShape",
    "ShapeKind",
    "TimeWindow",
    "breakpoints",
    "evaluate",
    "norm",
    "support_window",
    "LAMBDA_MAX",
    "Cone",
    "CouplingBudget",
    "ExplicitLambda",
    "FocusingGeometry",
    "FullSolidAngle",
    "gamma_p",
    "lambda_of",
    "Coherent",
    "FieldState",
    "FockOne",
    "IntegrationError",
    "SimInput",
    "Trajectory",
    "drive",
    "fock_oracle",
    "integrate",
    "rhs_coherent",
    "rhs_fock",
    "OptimumReport",
    "max_over_time",
    "optimize_bandwidth",
    "sweep_photon_number",
    "table_two",
]
