import logging
import typing

import click
import orjson

from apps.zeno.parameters import reduce
from apps.zeno.schemas import Reduction, ZenoMethod, ZenoResult
from apps.oracle.schemas import FockConfig
from core.exception_handling import captured
from helpers import commands
from .comparison import compare_with_oracle
from .exceptions import ConfigError, OracleDisagreement
from .grids import evaluate_values, find_crossovers, run_sweep
from .io import JSON_OPTIONS, dump_spec, load_spec, render_result, spec_schema, write_output
from .presets import DESK_LENGTH, PresetName, desk_coupler_spec, desk_fock, figure_preset
from .schemas import AxisName, OracleComparison, OutputFormat, SweepSpec, ZenoMode


logger = logging.getLogger(__name__)

METHOD_CHOICES = [method.value for method in ZenoMethod]
REDUCTION_CHOICES = [variant.value for variant in Reduction]


def _method(ctx, param, value) -> typing.Optional[ZenoMethod]:
    """Convert a method name to ZenoMethod, ignoring case"""
    if value is None:
        return None
    return next(m for m in ZenoMethod if m.value.lower() == value.lower())


def _with_overrides(spec: SweepSpec, **updates: typing.Any) -> SweepSpec:
    """Re-validated copy of `spec` with the non-empty `updates` applied"""
    updates = {key: value for key, value in updates.items() if value is not None}
    if not updates:
        return spec
    return SweepSpec.model_validate({**spec.model_dump(), **updates})


def _spec_source(
    config: typing.Optional[str], preset: typing.Optional[str]
) -> SweepSpec:
    if (config is None) == (preset is None):
        raise ConfigError("Exactly one of --config and --preset is required", field="config")
    if config is not None:
        return load_spec(config)
    return figure_preset(typing.cast(str, preset))


def _echo_result(result: ZenoResult, fmt: str) -> None:
    if fmt == "json":
        click.echo(orjson.dumps(result.model_dump(mode="json"), option=JSON_OPTIONS), nl=False)
        click.echo()
        return
    for mode in ("b", "c", "d"):
        value = getattr(result, f"z_{mode}")
        klass = getattr(result, f"class_{mode}")
        click.echo(f"Z_{mode}={value!r} class_{mode}={klass.value}")
    click.echo(f"method={result.method.value}")
    if result.flags:
        click.echo(click.style(f"flags={';'.join(result.flags)}", fg="yellow"))


@commands.register("eval")
@click.option("--config", "-c", "config", type=click.Path(dir_okay=False), help="Sweep configuration file")
@click.option(
    "--preset",
    "-p",
    type=click.Choice([p.value for p in PresetName], case_sensitive=False),
    help="Figure preset used as the base configuration",
)
@click.option("--z", "z", type=float, help="Propagation length")
@click.option("--theta1", type=float, help="Anti-Stokes phase mismatch (radians)")
@click.option("--theta2", type=float, help="Stokes phase mismatch (radians)")
@click.option("--ds", "dS", type=float, help="Stokes detuning")
@click.option("--da", "dA", type=float, help="Anti-Stokes detuning")
@click.option("--dd", "dD", type=float, help="Monitor detuning")
@click.option(
    "--method",
    "-m",
    type=click.Choice(METHOD_CHOICES, case_sensitive=False),
    callback=_method,
    help="Evaluation method, defaults to the configuration's",
)
@click.option("--cutoff", type=click.IntRange(min=1), help="Uniform Fock cutoff for the Oracle method")
@click.option(
    "--reduction",
    type=click.Choice(REDUCTION_CHOICES, case_sensitive=False),
    help="Evaluate a special case of the coupler",
)
@click.option(
    "--format", "-f", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True
)
@captured
def evaluate(
    config: typing.Optional[str],
    preset: typing.Optional[str],
    z: typing.Optional[float],
    theta1: typing.Optional[float],
    theta2: typing.Optional[float],
    dS: typing.Optional[float],
    dA: typing.Optional[float],
    dD: typing.Optional[float],
    method: typing.Optional[ZenoMethod],
    cutoff: typing.Optional[int],
    reduction: typing.Optional[str],
    fmt: str,
):
    """Evaluate the three Zeno parameters and classes at a single point."""
    spec = _spec_source(config, preset)
    fock = FockConfig.uniform(cutoff).model_dump() if cutoff else None
    spec = _with_overrides(spec, method=method, fock=fock)

    base = spec.base.to_config()
    if reduction is not None:
        variant = next(r for r in Reduction if r.value.lower() == reduction.lower())
        base = reduce(base, variant)

    overrides = {
        AxisName.Z: z,
        AxisName.THETA1: theta1,
        AxisName.THETA2: theta2,
        AxisName.DS: dS,
        AxisName.DA: dA,
        AxisName.DD: dD,
    }
    values = {name: value for name, value in overrides.items() if value is not None}
    result = evaluate_values(spec, values, base)
    _echo_result(result, fmt)


@commands.register("sweep")
@click.option("--config", "-c", "config", required=True, type=click.Path(dir_okay=False))
@click.option("--out", "-o", "out", type=click.Path(dir_okay=False), help="Output file")
@click.option("--format", "-f", "fmt", type=click.Choice([f.value for f in OutputFormat]))
@click.option(
    "--method",
    "-m",
    type=click.Choice(METHOD_CHOICES, case_sensitive=False),
    callback=_method,
)
@click.option("--threads", "-t", type=click.IntRange(min=1), help="Worker threads")
@click.option("--seed", type=int, help="Reserved; sweeps have no stochastic components")
@captured
def sweep(
    config: str,
    out: typing.Optional[str],
    fmt: typing.Optional[str],
    method: typing.Optional[ZenoMethod],
    threads: typing.Optional[int],
    seed: typing.Optional[int],
):
    """Evaluate every grid point of a sweep configuration."""
    spec = _with_overrides(load_spec(config), method=method)
    if seed is not None:
        logger.debug(f"Ignoring --seed {seed}")

    result = run_sweep(spec, threads=threads)
    output_format = OutputFormat(fmt) if fmt else spec.output.format
    write_output(render_result(result, output_format), out or spec.output.path)

    failed = sum(row.error is not None for row in result.rows)
    if out or spec.output.path:
        click.echo(
            click.style(f"Wrote {len(result.rows)} rows ({failed} failed)", fg="green"),
            err=True,
        )


@commands.register("crossover")
@click.option("--config", "-c", "config", type=click.Path(dir_okay=False))
@click.option(
    "--preset",
    "-p",
    type=click.Choice([p.value for p in PresetName], case_sensitive=False),
)
@click.option(
    "--mode",
    type=click.Choice([m.value for m in ZenoMode]),
    default=ZenoMode.STOKES.value,
    show_default=True,
)
@click.option("--tol-axis", type=click.FloatRange(min=0, min_open=True), default=1e-6, show_default=True)
@click.option("--threads", "-t", type=click.IntRange(min=1))
@click.option("--out", "-o", "out", type=click.Path(dir_okay=False))
@captured
def crossover(
    config: typing.Optional[str],
    preset: typing.Optional[str],
    mode: str,
    tol_axis: float,
    threads: typing.Optional[int],
    out: typing.Optional[str],
):
    """Locate QZE/QAZE crossovers along the innermost sweep axis."""
    spec = _spec_source(config, preset)
    result = run_sweep(spec, threads=threads)
    points = find_crossovers(spec, mode, tol_axis=tol_axis, result=result)
    document = [point.model_dump(mode="json") for point in points]
    write_output(orjson.dumps(document, option=JSON_OPTIONS) + b"\n", out)


@commands.register("preset")
@click.argument("name", type=click.Choice([p.value for p in PresetName], case_sensitive=False))
@click.option("--out", "-o", "out", type=click.Path(dir_okay=False))
@captured
def preset(name: str, out: typing.Optional[str]):
    """Emit a figure preset as a sweep configuration file."""
    write_output(dump_spec(figure_preset(name.lower())), out)
    if out:
        click.echo(click.style(f"Preset {name} written to {out}", fg="green"), err=True)


def _echo_comparison(report: OracleComparison) -> None:
    click.echo(
        click.style(
            f"z={report.z!r} cutoffs={list(report.cutoffs)} "
            f"norm_deficit={report.norm_deficit:.3e} leakage={report.leakage:.3e}",
            bold=True,
        )
    )
    for quantity in report.quantities:
        colour = "green" if quantity.agrees else "red"
        click.echo(
            click.style(
                f"{quantity.name:<4} perturbative={quantity.perturbative!r} "
                f"oracle={quantity.oracle!r} difference={quantity.difference:.3e} "
                f"bound={quantity.bound:.3e}",
                fg=colour,
            )
        )
    verdict = "agree" if report.agrees else "disagree"
    click.echo(click.style(f"Perturbative and exact results {verdict}", bold=True))


@commands.register("oracle-compare")
@click.option("--config", "-c", "config", type=click.Path(dir_okay=False), help="Sweep configuration with a 'fock' section")
@click.option("--z", "z", type=float, help="Propagation length")
@click.option("--cutoff", type=click.IntRange(min=1), help="Uniform Fock cutoff")
@click.option(
    "--format", "-f", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True
)
@captured
def oracle_compare(
    config: typing.Optional[str],
    z: typing.Optional[float],
    cutoff: typing.Optional[int],
    fmt: str,
):
    """Compare perturbative and exact truncated-Fock results, by default on the desk configuration."""
    if config is not None:
        spec = load_spec(config)
        coupler = spec.base.to_config()
        length = spec.z if z is None else z
        fock = spec.fock or desk_fock()
    else:
        coupler = desk_coupler_spec().to_config()
        length = DESK_LENGTH if z is None else z
        fock = desk_fock()
    if cutoff is not None:
        fock = fock.model_copy(update={"cutoffs": (cutoff,) * 6})

    report = compare_with_oracle(coupler, fock, length)
    if fmt == "json":
        click.echo(orjson.dumps(report.model_dump(mode="json"), option=JSON_OPTIONS), nl=False)
        click.echo()
    else:
        _echo_comparison(report)

    if not report.agrees:
        failing = ", ".join(q.name for q in report.quantities if not q.agrees)
        raise OracleDisagreement(f"Oracle disagreement for {failing}", field="quantities")


@commands.register("schema")
@captured
def schema():
    """Print the JSON schema of sweep configuration files."""
    write_output(spec_schema(), None)


__all__ = ["evaluate", "sweep", "crossover", "preset", "oracle_compare", "schema"]
