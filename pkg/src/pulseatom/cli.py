"""Command-line front end.

Subcommands
-----------
simulate   integrate one pulse and dump the P_e(t) trajectory
optimize   find the bandwidth maximizing P_e for one shape/state
table2     optimum bandwidth and peak P_e for all 12 shape/state rows
sweep      peak P_e of a coherent pulse across mean photon numbers
lambda     weighted solid angle and pulse-mode decay of a geometry

All rates are in units of the decay rate Gamma, times in 1/Gamma.
Results go to stdout or, with --out, to a CSV file (plus a PNG figure
rendered next to it; --no-plot suppresses the figure).  --json switches
the data format to a single JSON document.

Exit codes: 0 success, 2 usage error, 1 numerical failure.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import click

from .dynamics import Coherent, FieldState, FockOne, IntegrationError, SimInput, integrate
from .geometry import Cone, CouplingBudget, FullSolidAngle
from .optimize import (
    DEFAULT_BRACKET,
    OptimumReport,
    optimize_bandwidth,
    sweep_photon_number,
    table_two,
)
from .pulses import PulseShape, ShapeKind

SHAPE_CHOICES = [k.value for k in ShapeKind]


@dataclass(frozen=True)
class RunConfig:
    """One parsed invocation: what to run and where to put it."""

    command: str
    budget: CouplingBudget
    lambda_label: str
    tolerance: float | None   # None for commands that never integrate
    out: Path | None
    as_json: bool
    plot: bool
    extras: dict


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _resolve_budget(lambda_full, lambda_frac, cone_deg) -> tuple[CouplingBudget, str]:
    given = [x for x in (lambda_full, lambda_frac, cone_deg) if x is not None]
    if len(given) > 1:
        raise click.UsageError(
            "give at most one of --lambda full, --lambda-frac, --cone-deg"
        )
    if cone_deg is not None:
        if not 0.0 < cone_deg <= 180.0:
            raise click.BadParameter(
                "cone half-angle must lie in (0, 180] degrees", param_hint="--cone-deg"
            )
        return (
            CouplingBudget.from_geometry(Cone.from_degrees(cone_deg)),
            f"cone-deg={_fmt(cone_deg)}",
        )
    if lambda_frac is not None:
        if not 0.0 <= lambda_frac <= 1.0:
            raise click.BadParameter(
                "Lambda fraction must lie in [0, 1]", param_hint="--lambda-frac"
            )
        return (
            CouplingBudget.from_fraction(lambda_frac),
            f"lambda-frac={_fmt(lambda_frac)}",
        )
    return CouplingBudget.from_geometry(FullSolidAngle()), "lambda=full"


def _resolve_field(state, n) -> FieldState:
    if state == "fock":
        if n is not None:
            raise click.UsageError("--n applies to --state coherent only")
        return FockOne()
    n = 1.0 if n is None else n
    if n < 0:
        raise click.BadParameter("mean photon number must be >= 0", param_hint="--n")
    return Coherent(n)


def _field_label(field: FieldState) -> str:
    return "fock" if isinstance(field, FockOne) else "coherent"


def _emit(config: RunConfig, columns, rows, render=None) -> None:
    """Write the report: CSV or JSON to --out or stdout, figure beside it."""
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    parts = [config.lambda_label]
    if config.tolerance is not None:
        parts.append(f"tol={_fmt(config.tolerance)}")
    parts += [f"{k}={_fmt(v)}" for k, v in sorted(config.extras.items())]
    cfg_str = " ".join(parts)

    if config.as_json:
        doc = {
            "tool": "pulseatom",
            "command": config.command,
            "generated": stamp,
            "units": {"time": "1/Gamma", "rates": "Gamma"},
            "config": {
                "lambda": config.lambda_label,
                **(
                    {"tolerance": config.tolerance}
                    if config.tolerance is not None
                    else {}
                ),
                **config.extras,
            },
            "columns": list(columns),
            "rows": [list(r) for r in rows],
        }
        text = json.dumps(doc, indent=2, default=_fmt) + "\n"
    else:
        lines = [
            f"# pulseatom {config.command}",
            f"# generated: {stamp}",
            f"# config: {cfg_str}",
            "# units: time in 1/Gamma; rates in units of Gamma",
            ",".join(columns),
        ]
        lines += [",".join(_fmt(v) for v in row) for row in rows]
        text = "\n".join(lines) + "\n"

    if config.out is None:
        click.echo(text, nl=False)
        return
    config.out.write_text(text)
    click.echo(f"wrote {config.out}")
    if render is not None and config.plot:
        fig_path = config.out.with_suffix(".png")
        render(fig_path)
        click.echo(f"wrote {fig_path}")


def _run(command_body) -> None:
    try:
        command_body()
    except IntegrationError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(1)


def _common_options(f):
    f = click.option(
        "--lambda",
        "lambda_full",
        type=click.Choice(["full"]),
        default=None,
        help="Pulse covers the whole dipole pattern (Lambda = 8 pi/3).",
    )(f)
    f = click.option(
        "--lambda-frac",
        type=float,
        default=None,
        help="Weighted solid angle as a fraction of 8 pi/3, in [0, 1].",
    )(f)
    f = click.option(
        "--cone-deg",
        type=float,
        default=None,
        help="Aperture cone half-angle in degrees, in (0, 180].",
    )(f)
    f = click.option(
        "--tol", type=float, default=1e-9, show_default=True,
        help="Relative integration tolerance.",
    )(f)
    f = click.option(
        "--out", type=click.Path(path_type=Path), default=None,
        help="Output file (default: stdout).",
    )(f)
    f = click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of CSV.")(f)
    f = click.option("--no-plot", is_flag=True, help="Skip the PNG figure next to --out.")(f)
    return f


def _check_tol(tol) -> float:
    if not tol > 0:
        raise click.BadParameter("tolerance must be positive", param_hint="--tol")
    return tol


@click.group()
@click.version_option(package_name="pulseatom")
def cli() -> None:
    """Excitation of a two-level atom by quantized propagating pulses."""


@cli.command()
@click.option("--shape", type=click.Choice(SHAPE_CHOICES), required=True)
@click.option("--bandwidth", type=float, required=True, help="Omega in units of Gamma.")
@click.option("--state", type=click.Choice(["fock", "coherent"]), default="fock",
              show_default=True)
@click.option("--n", type=float, default=None,
              help="Mean photon number (coherent state only; default 1).")
@_common_options
def simulate(shape, bandwidth, state, n, lambda_full, lambda_frac, cone_deg,
             tol, out, as_json, no_plot) -> None:
    """Integrate one pulse and write the P_e(t) trajectory."""
    if bandwidth <= 0:
        raise click.BadParameter("bandwidth must be positive", param_hint="--bandwidth")
    tol = _check_tol(tol)
    budget, lam_label = _resolve_budget(lambda_full, lambda_frac, cone_deg)
    field = _resolve_field(state, n)
    pulse = PulseShape(shape, bandwidth)

    def body():
        trajectory = integrate(SimInput.default(pulse, field, budget, tol))
        config = RunConfig(
            "simulate", budget, lam_label, tol, out, as_json, not no_plot,
            extras={
                "shape": shape,
                "bandwidth": bandwidth,
                "state": _field_label(field),
                **({"n": field.n_mean} if isinstance(field, Coherent) else {}),
            },
        )
        columns = ("t", "pe", "re_s1", "re_s2", "re_s3", "im_s2", "im_s3")
        rows = [
            (
                float(t), float(p),
                float(s[0].real), float(s[1].real), float(s[2].real),
                float(s[1].imag), float(s[2].imag),
            )
            for t, p, s in zip(trajectory.times, trajectory.pe, trajectory.states)
        ]
        _emit(config, columns, rows,
              render=lambda p: _plot_trajectory(trajectory, pulse, p, config))

    _run(body)


def _plot_trajectory(trajectory, pulse, path, config):
    from . import plotting

    title = (f"{pulse.kind.value}  Omega={pulse.bandwidth:g}  "
             f"{config.extras['state']}  {config.lambda_label}")
    plotting.plot_trajectory(trajectory, pulse, path, title=title)


@cli.command()
@click.option("--shape", type=click.Choice(SHAPE_CHOICES), required=True)
@click.option("--state", type=click.Choice(["fock", "coherent"]), default="fock",
              show_default=True)
@click.option("--n", type=float, default=None,
              help="Mean photon number (coherent state only; default 1).")
@_common_options
def optimize(shape, state, n, lambda_full, lambda_frac, cone_deg,
             tol, out, as_json, no_plot) -> None:
    """Find the bandwidth maximizing the peak excitation probability."""
    tol = _check_tol(tol)
    budget, lam_label = _resolve_budget(lambda_full, lambda_frac, cone_deg)
    field = _resolve_field(state, n)

    def body():
        report = optimize_bandwidth(shape, field, budget, DEFAULT_BRACKET, tol)
        config = RunConfig(
            "optimize", budget, lam_label, tol, out, as_json, not no_plot,
            extras={"shape": shape, "state": _field_label(field),
                    **({"n": field.n_mean} if isinstance(field, Coherent) else {})},
        )
        _emit(config, _REPORT_COLUMNS, [_report_row(report)],
              render=lambda p: _plot_scan(report, p))

    _run(body)


_REPORT_COLUMNS = ("shape", "state", "n", "lambda_frac", "omega_opt",
                   "pe_max", "t_max", "boundary")


def _report_row(r: OptimumReport):
    n = r.field.n_mean if isinstance(r.field, Coherent) else 1.0
    return (r.kind.value, _field_label(r.field), n, r.lambda_fraction,
            r.omega_opt, r.pe_max, r.t_max, r.boundary)


def _plot_scan(report, path):
    from . import plotting

    plotting.plot_bandwidth_scan(
        report, path,
        title=f"{report.kind.value}  {_field_label(report.field)}  "
              f"Lambda/(8pi/3)={report.lambda_fraction:g}",
    )


@cli.command()
@_common_options
def table2(lambda_full, lambda_frac, cone_deg, tol, out, as_json, no_plot) -> None:
    """Optimum bandwidth and peak probability for all 12 shape/state rows."""
    tol = _check_tol(tol)
    budget, lam_label = _resolve_budget(lambda_full, lambda_frac, cone_deg)

    def body():
        reports = table_two(budget, tolerance=tol)
        config = RunConfig("table2", budget, lam_label, tol, out, as_json,
                           not no_plot, extras={})
        _emit(config, _REPORT_COLUMNS, [_report_row(r) for r in reports],
              render=lambda p: _plot_table(reports, p, lam_label))

    _run(body)


def _plot_table(reports, path, lam_label):
    from . import plotting

    plotting.plot_table(reports, path, title=f"optimum excitation ({lam_label})")


@cli.command()
@click.option("--shape", type=click.Choice(SHAPE_CHOICES), required=True)
@click.option("--bandwidth", type=float, required=True, help="Omega in units of Gamma.")
@click.option("--n", "n_values", type=float, multiple=True, required=True,
              help="Mean photon number; repeat for several.")
@_common_options
def sweep(shape, bandwidth, n_values, lambda_full, lambda_frac, cone_deg,
          tol, out, as_json, no_plot) -> None:
    """Peak probability of coherent pulses across mean photon numbers."""
    if bandwidth <= 0:
        raise click.BadParameter("bandwidth must be positive", param_hint="--bandwidth")
    if any(n < 0 for n in n_values):
        raise click.BadParameter("mean photon numbers must be >= 0", param_hint="--n")
    tol = _check_tol(tol)
    budget, lam_label = _resolve_budget(lambda_full, lambda_frac, cone_deg)

    def body():
        pairs = sweep_photon_number(shape, bandwidth, budget, n_values, tol)
        config = RunConfig(
            "sweep", budget, lam_label, tol, out, as_json, not no_plot,
            extras={"shape": shape, "bandwidth": bandwidth},
        )
        _emit(config, ("n", "pe_max"), pairs, render=lambda p: _plot_sweep(pairs, p))

    _run(body)


def _plot_sweep(pairs, path):
    from . import plotting

    plotting.plot_sweep(pairs, path, title="coherent-state saturation")


@cli.command(name="lambda")
@click.option("--full", "use_full", is_flag=True,
              help="Whole dipole pattern (Lambda = 8 pi/3).")
@click.option("--lambda-frac", type=float, default=None,
              help="Weighted solid angle as a fraction of 8 pi/3, in [0, 1].")
@click.option("--cone-deg", type=float, default=None,
              help="Aperture cone half-angle in degrees, in (0, 180].")
@click.option("--out", type=click.Path(path_type=Path), default=None,
              help="Output file (default: stdout).")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of CSV.")
def lambda_cmd(use_full, lambda_frac, cone_deg, out, as_json) -> None:
    """Weighted solid angle and pulse-mode decay of a focusing geometry."""
    budget, lam_label = _resolve_budget("full" if use_full else None,
                                        lambda_frac, cone_deg)
    config = RunConfig("lambda", budget, lam_label, None, out, as_json, False,
                       extras={})
    _emit(config, ("lambda", "lambda_frac", "gamma_p"),
          [(budget.lam, budget.lambda_fraction, budget.gamma_p)])


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
