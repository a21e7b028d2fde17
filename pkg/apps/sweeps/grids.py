import itertools
import logging
import typing

import anyio
import anyio.to_thread

from apps.coupler.algebra import retune, with_phase_mismatch
from apps.coupler.schemas import CouplerConfig
from apps.oracle.propagation import oracle_zeno
from apps.zeno.parameters import classify, zeno
from apps.zeno.schemas import ZenoClass, ZenoMethod, ZenoResult
from helpers.config import settings
from helpers.exceptions import CouplerError
from helpers.utils import generate_uid, utcnow
from .exceptions import ConfigError, SweepBudgetExceeded
from .schemas import (
    AxisName,
    CrossoverPoint,
    RunManifest,
    SweepResult,
    SweepRow,
    SweepSpec,
    ZenoMode,
)


logger = logging.getLogger(__name__)

Coordinates = typing.Dict[str, float]


def grid_points(spec: SweepSpec) -> typing.Iterator[Coordinates]:
    """Grid coordinates keyed by axis label, outermost axis slowest, ascending"""
    labels = [axis.label for axis in spec.axes]
    for values in itertools.product(*(axis.values() for axis in spec.axes)):
        yield {label: float(value) for label, value in zip(labels, values)}


def point_values(spec: SweepSpec, coordinates: Coordinates) -> typing.Dict[AxisName, float]:
    """Expand linked axis labels into one value per swept quantity"""
    values = {}
    for axis in spec.axes:
        for name in axis.names:
            values[name] = coordinates[axis.label]
    return values


def apply_point(
    base: CouplerConfig, z: float, values: typing.Mapping[AxisName, float]
) -> typing.Tuple[CouplerConfig, float]:
    """
    Configuration and length of one grid point.

    Detunings are realized by retuning the Stokes, anti-Stokes and monitor
    frequencies; phase mismatches by rotating the Stokes and anti-Stokes phases.
    """
    config = base
    detunings = {
        key: values[name]
        for key, name in (("dS", AxisName.DS), ("dA", AxisName.DA), ("dD", AxisName.DD))
        if name in values
    }
    if detunings:
        config = config.model_copy(
            update={"frequencies": retune(config.frequencies, **detunings)}
        )
    if AxisName.THETA1 in values or AxisName.THETA2 in values:
        amplitudes = with_phase_mismatch(
            config.amplitudes,
            theta1=values.get(AxisName.THETA1),
            theta2=values.get(AxisName.THETA2),
        )
        config = config.model_copy(update={"amplitudes": amplitudes})
    return config, values.get(AxisName.Z, z)


def evaluate_values(
    spec: SweepSpec,
    values: typing.Mapping[AxisName, float],
    base: typing.Optional[CouplerConfig] = None,
) -> ZenoResult:
    """Zeno parameters of the sweep's base configuration moved to `values`"""
    base = base or spec.base.to_config()
    config, z = apply_point(base, spec.z, values)
    if spec.method is ZenoMethod.ORACLE:
        if spec.fock is None:
            raise ConfigError("The Oracle method requires a 'fock' section", field="fock")
        return oracle_zeno(config, spec.fock, z, spec.tol_class)
    return zeno(config, z, spec.method, spec.tol_class)


def evaluate_point(
    spec: SweepSpec,
    coordinates: Coordinates,
    base: typing.Optional[CouplerConfig] = None,
) -> ZenoResult:
    """Zeno parameters at one grid point, with the sweep's method"""
    return evaluate_values(spec, point_values(spec, coordinates), base)


def _evaluate_row(
    spec: SweepSpec, base: CouplerConfig, index: int, coordinates: Coordinates
) -> SweepRow:
    try:
        result = evaluate_point(spec, coordinates, base)
    except (CouplerError, ValueError) as exc:
        code = getattr(exc, "code", type(exc).__name__)
        logger.debug(f"Row {index} at {coordinates} failed: {exc}")
        return SweepRow(index=index, coordinates=coordinates, error=f"{code}: {exc}")
    return SweepRow(index=index, coordinates=coordinates, result=result)


def check_sweep_budget(spec: SweepSpec) -> None:
    """
    :raises SweepBudgetExceeded: for oracle sweeps beyond `settings.SWEEP_ORACLE_BUDGET`
    """
    budget = settings.SWEEP_ORACLE_BUDGET
    if spec.method is ZenoMethod.ORACLE and spec.grid_size > budget:
        raise SweepBudgetExceeded(
            f"Oracle sweep of {spec.grid_size} points exceeds the budget of {budget}",
            field="axes",
        )


async def _run_rows(
    spec: SweepSpec, base: CouplerConfig, threads: int
) -> typing.List[SweepRow]:
    points = list(grid_points(spec))
    rows: typing.List[typing.Optional[SweepRow]] = [None] * len(points)
    limiter = anyio.CapacityLimiter(threads)

    async def worker(index: int, coordinates: Coordinates) -> None:
        rows[index] = await anyio.to_thread.run_sync(
            _evaluate_row, spec, base, index, coordinates, limiter=limiter
        )

    async with anyio.create_task_group() as task_group:
        for index, coordinates in enumerate(points):
            task_group.start_soon(worker, index, coordinates)
    return typing.cast(typing.List[SweepRow], rows)


def run_sweep(spec: SweepSpec, threads: typing.Optional[int] = None) -> SweepResult:
    """
    Evaluate every grid point of a sweep.

    Rows are computed concurrently on worker threads and merged in grid order.
    Per-point failures are recorded in the row's error instead of aborting.

    :param threads: worker threads, default `settings.SWEEP_DEFAULT_THREADS`
    """
    check_sweep_budget(spec)
    threads = threads or settings.SWEEP_DEFAULT_THREADS
    run_id = generate_uid()
    started_at = utcnow()
    logger.info(
        f"Sweep {run_id}: {spec.grid_size} points, method {spec.method.value}, "
        f"{threads} threads"
    )

    rows = anyio.run(_run_rows, spec, spec.base.to_config(), threads)

    failed = sum(row.error is not None for row in rows)
    logger.info(f"Sweep {run_id} finished: {len(rows)} rows, {failed} failed")
    manifest = RunManifest(
        run_id=run_id,
        application=settings.APPLICATION_NAME,
        version=settings.APPLICATION_VERSION,
        started_at=started_at,
        finished_at=utcnow(),
        config=spec.model_dump(mode="json"),
    )
    return SweepResult(spec=spec, rows=rows, manifest=manifest)


def mode_value(result: ZenoResult, mode: ZenoMode) -> float:
    return getattr(result, f"z_{mode.value}")


def _bisect(
    evaluate: typing.Callable[[float], float],
    lower: float,
    upper: float,
    lower_value: float,
    tol_axis: float,
) -> typing.Tuple[float, float]:
    lower_sign = lower_value > 0
    while abs(upper - lower) > tol_axis:
        middle = 0.5 * (lower + upper)
        if middle in (lower, upper):
            break
        if (evaluate(middle) > 0) == lower_sign:
            lower = middle
        else:
            upper = middle
    return lower, upper


def find_crossovers(
    spec: SweepSpec,
    mode: typing.Union[ZenoMode, str],
    tol_axis: float = 1e-6,
    result: typing.Optional[SweepResult] = None,
) -> typing.List[CrossoverPoint]:
    """
    Locate sign changes of one Zeno parameter along the innermost axis, for
    every point of the outer axes.

    Grid values inside the Neither dead-band are skipped, so only QZE/QAZE
    transitions are reported. Each bracket is refined by bisection until it is
    no wider than `tol_axis`.

    :param result: previously computed sweep of `spec`, evaluated when omitted
    :return: crossovers in grid order; empty when the sign never changes
    """
    mode = ZenoMode(mode)
    result = result or run_sweep(spec)
    base = spec.base.to_config()
    inner = spec.axes[-1]
    inner_count = inner.count
    crossovers: typing.List[CrossoverPoint] = []

    for start in range(0, len(result.rows), inner_count):
        line = result.rows[start : start + inner_count]
        outer = {k: v for k, v in line[0].coordinates.items() if k != inner.label}

        def evaluate(value: float) -> float:
            point = evaluate_point(spec, {**outer, inner.label: value}, base)
            return mode_value(point, mode)

        previous: typing.Optional[typing.Tuple[float, float]] = None
        for row in line:
            if row.result is None:
                previous = None
                continue
            value = mode_value(row.result, mode)
            if classify(value, row.result.tol_class) is ZenoClass.NEITHER:
                continue
            position = row.coordinates[inner.label]
            if previous is not None and (previous[1] > 0) != (value > 0):
                lower, upper = _bisect(evaluate, previous[0], position, previous[1], tol_axis)
                crossovers.append(
                    CrossoverPoint(
                        coordinates={**outer, inner.label: 0.5 * (lower + upper)},
                        axis=inner.label,
                        mode=mode,
                        lower=lower,
                        upper=upper,
                        bracket_width=abs(upper - lower),
                    )
                )
            previous = (position, value)

    if not crossovers:
        logger.info(f"No sign change of Z_{mode.value} along {inner.label}")
    return crossovers


__all__ = [
    "grid_points",
    "point_values",
    "apply_point",
    "evaluate_values",
    "evaluate_point",
    "check_sweep_budget",
    "run_sweep",
    "mode_value",
    "find_crossovers",
]
