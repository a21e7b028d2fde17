import csv
import io
import logging
import typing
from pathlib import Path

import click
import orjson

from .exceptions import ConfigError
from .schemas import OutputFormat, SweepResult, SweepSpec


logger = logging.getLogger(__name__)

RESULT_COLUMNS = [
    "Z_b",
    "Z_c",
    "Z_d",
    "class_b",
    "class_c",
    "class_d",
    "method",
    "flags",
    "error",
]
JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SERIALIZE_NUMPY


def load_spec(path: typing.Union[str, Path]) -> SweepSpec:
    """
    Read and validate a sweep configuration file.

    :raises ConfigError: if the file is unreadable or not JSON
    :raises pydantic.ValidationError: if the document violates the schema
    """
    path = Path(path)
    try:
        document = orjson.loads(path.read_bytes())
    except OSError as exc:
        raise ConfigError(f"Cannot read configuration {path}: {exc}", field="config") from exc
    except orjson.JSONDecodeError as exc:
        raise ConfigError(f"Configuration {path} is not valid JSON: {exc}", field="config") from exc
    return SweepSpec.model_validate(document)


def dump_spec(spec: SweepSpec) -> bytes:
    return orjson.dumps(spec.model_dump(mode="json"), option=JSON_OPTIONS) + b"\n"


def spec_schema() -> bytes:
    """JSON schema of sweep configuration files"""
    return orjson.dumps(SweepSpec.model_json_schema(), option=JSON_OPTIONS) + b"\n"


def _number(value: typing.Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def result_rows(result: SweepResult) -> typing.Iterator[typing.Dict[str, typing.Any]]:
    """
    Flat rows: axis values, then Zeno values and classes of the requested modes,
    method, flags and error. Modes not requested are left empty.
    """
    modes = {mode.value for mode in result.spec.modes}
    for row in result.rows:
        record: typing.Dict[str, typing.Any] = dict(row.coordinates)
        zeno = row.result
        for mode in ("b", "c", "d"):
            requested = zeno is not None and mode in modes
            record[f"Z_{mode}"] = getattr(zeno, f"z_{mode}") if requested else None
            record[f"class_{mode}"] = (
                getattr(zeno, f"class_{mode}").value if requested else None
            )
        record["method"] = (zeno.method if zeno else result.spec.method).value
        record["flags"] = list(zeno.flags) if zeno else []
        record["error"] = row.error
        yield record


def format_csv(result: SweepResult) -> str:
    """CSV with shortest round-trip float formatting and grid row order"""
    labels = [axis.label for axis in result.spec.axes]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(labels + RESULT_COLUMNS)
    for record in result_rows(result):
        writer.writerow(
            [_number(record[label]) for label in labels]
            + [_number(record[f"Z_{mode}"]) for mode in ("b", "c", "d")]
            + [record[f"class_{mode}"] or "" for mode in ("b", "c", "d")]
            + [record["method"], ";".join(record["flags"]), record["error"] or ""]
        )
    return buffer.getvalue()


def format_json(result: SweepResult) -> bytes:
    """Rows as an array of objects under a run manifest"""
    document = {
        "manifest": result.manifest.model_dump(mode="json"),
        "rows": list(result_rows(result)),
    }
    return orjson.dumps(document, option=JSON_OPTIONS) + b"\n"


def render_result(result: SweepResult, fmt: OutputFormat) -> bytes:
    if fmt is OutputFormat.JSON:
        return format_json(result)
    return format_csv(result).encode("utf-8")


def write_output(data: bytes, path: typing.Optional[typing.Union[str, Path]]) -> None:
    """Write to `path`, or to standard output when no path is given"""
    if path is None:
        click.echo(data, nl=False)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    logger.info(f"Wrote {len(data)} bytes to {path}")


__all__ = [
    "RESULT_COLUMNS",
    "load_spec",
    "dump_spec",
    "spec_schema",
    "result_rows",
    "format_csv",
    "format_json",
    "render_result",
    "write_output",
]
