import datetime
import enum
import math
import typing

import numpy as np
import pydantic

from apps.coupler.schemas import CoherentAmplitudes, CouplerConfig, Couplings, Frequencies
from apps.oracle.schemas import FockConfig
from apps.zeno.schemas import ZenoMethod, ZenoResult


class AxisName(enum.Enum):
    """Swept quantities"""

    THETA1 = "theta1"
    THETA2 = "theta2"
    DS = "dS"
    DA = "dA"
    DD = "dD"
    Z = "z"


class ZenoMode(enum.Enum):
    STOKES = "b"
    PHONON = "c"
    ANTISTOKES = "d"


class OutputFormat(enum.Enum):
    CSV = "csv"
    JSON = "json"


class PolarAmplitude(pydantic.BaseModel):
    """Complex amplitude as magnitude and phase in radians"""

    mag: float = pydantic.Field(0.0, ge=0, allow_inf_nan=False)
    phase: float = pydantic.Field(0.0, allow_inf_nan=False)

    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    @property
    def value(self) -> complex:
        return complex(self.mag * np.exp(1j * self.phase))


class AmplitudesSpec(pydantic.BaseModel):
    alpha: PolarAmplitude = PolarAmplitude()
    alpha1: PolarAmplitude = PolarAmplitude()
    alpha2: PolarAmplitude = PolarAmplitude()
    beta: PolarAmplitude = PolarAmplitude()
    gamma: PolarAmplitude = PolarAmplitude()
    delta: PolarAmplitude = PolarAmplitude()

    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    def to_amplitudes(self) -> CoherentAmplitudes:
        return CoherentAmplitudes(**{name: polar.value for name, polar in self})


class CouplerSpec(pydantic.BaseModel):
    """Coupler configuration as written in configuration files"""

    frequencies: Frequencies
    couplings: Couplings
    amplitudes: AmplitudesSpec = AmplitudesSpec()

    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    def to_config(self) -> CouplerConfig:
        return CouplerConfig(
            frequencies=self.frequencies,
            couplings=self.couplings,
            amplitudes=self.amplitudes.to_amplitudes(),
        )


class Axis(pydantic.BaseModel):
    """
    Inclusive linear grid over one quantity, or over several linked quantities
    taking the same value (e.g. dA = dS).
    """

    names: typing.List[AxisName] = pydantic.Field(..., min_length=1)
    min: float = pydantic.Field(..., allow_inf_nan=False)
    max: float = pydantic.Field(..., allow_inf_nan=False)
    count: int = pydantic.Field(..., ge=2)

    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    @pydantic.field_validator("names")
    @classmethod
    def _distinct_names(cls, names: typing.List[AxisName]) -> typing.List[AxisName]:
        if len(set(names)) != len(names):
            raise ValueError("Linked axis names must be distinct")
        return names

    @property
    def label(self) -> str:
        return "=".join(name.value for name in self.names)

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.count)


class OutputSpec(pydantic.BaseModel):
    path: typing.Optional[str] = pydantic.Field(
        None, description="Output file; standard output when omitted"
    )
    format: OutputFormat = OutputFormat.CSV

    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")


class SweepSpec(pydantic.BaseModel):
    """Versioned sweep configuration document"""

    schema_version: typing.Literal[1] = 1
    base: CouplerSpec
    z: float = pydantic.Field(
        0.1, ge=0, allow_inf_nan=False, description="Length used when z is not swept"
    )
    axes: typing.List[Axis] = pydantic.Field(..., min_length=1, max_length=3)
    modes: typing.List[ZenoMode] = pydantic.Field(
        default_factory=lambda: list(ZenoMode), min_length=1
    )
    method: ZenoMethod = ZenoMethod.CLOSED_FORM
    fock: typing.Optional[FockConfig] = None
    tol_class: typing.Optional[float] = pydantic.Field(None, gt=0)
    output: OutputSpec = OutputSpec()
    notes: typing.List[str] = pydantic.Field(default_factory=list)

    model_config = pydantic.ConfigDict(frozen=True, extra="forbid")

    @pydantic.model_validator(mode="after")
    def _check_consistency(self) -> "SweepSpec":
        names = [name for axis in self.axes for name in axis.names]
        if len(set(names)) != len(names):
            raise ValueError("A quantity may appear on only one axis")
        if self.method is ZenoMethod.ORACLE and self.fock is None:
            raise ValueError("The Oracle method requires a 'fock' section")
        for axis in self.axes:
            if AxisName.Z in axis.names and min(axis.min, axis.max) < 0:
                raise ValueError("Propagation length axis must be non-negative")
        return self

    @property
    def grid_size(self) -> int:
        return math.prod(axis.count for axis in self.axes)


class SweepRow(pydantic.BaseModel):
    index: int
    coordinates: typing.Dict[str, float]
    result: typing.Optional[ZenoResult] = None
    error: typing.Optional[str] = None

    model_config = pydantic.ConfigDict(frozen=True)


class RunManifest(pydantic.BaseModel):
    run_id: str
    application: str
    version: str
    started_at: datetime.datetime
    finished_at: datetime.datetime
    config: typing.Dict[str, typing.Any] = pydantic.Field(
        ..., description="Echo of the sweep configuration"
    )


class SweepResult(pydantic.BaseModel):
    spec: SweepSpec
    rows: typing.List[SweepRow]
    manifest: RunManifest


class QuantityComparison(pydantic.BaseModel):
    name: str
    perturbative: float
    oracle: float
    difference: float
    bound: float
    agrees: bool

    model_config = pydantic.ConfigDict(frozen=True)


class OracleComparison(pydantic.BaseModel):
    """Side-by-side perturbative and exact values at one length"""

    z: float
    cutoffs: typing.Tuple[int, ...]
    norm_deficit: float
    leakage: float
    quantities: typing.List[QuantityComparison]
    agrees: bool

    model_config = pydantic.ConfigDict(frozen=True)


class CrossoverPoint(pydantic.BaseModel):
    """Sign change of a Zeno parameter along the innermost axis"""

    coordinates: typing.Dict[str, float] = pydantic.Field(
        ..., description="Outer axis values and the bracket midpoint on the crossing axis"
    )
    axis: str
    mode: ZenoMode
    lower: float
    upper: float
    bracket_width: float

    model_config = pydantic.ConfigDict(frozen=True)


__all__ = [
    "AxisName",
    "ZenoMode",
    "OutputFormat",
    "PolarAmplitude",
    "AmplitudesSpec",
    "CouplerSpec",
    "Axis",
    "OutputSpec",
    "SweepSpec",
    "SweepRow",
    "RunManifest",
    "SweepResult",
    "CrossoverPoint",
    "QuantityComparison",
    "OracleComparison",
]
