"""
Sweep presets reproducing the published figure regimes, and the small desk
configuration used to compare against the Fock-space oracle.
"""

import enum
import math
import typing

from apps.coupler.algebra import retune
from apps.coupler.schemas import CouplerConfig, Couplings, Frequencies
from apps.oracle.schemas import FockConfig
from .exceptions import UnknownPreset
from .schemas import (
    AmplitudesSpec,
    Axis,
    AxisName,
    CouplerSpec,
    PolarAmplitude,
    SweepSpec,
    ZenoMode,
)


class PresetName(enum.Enum):
    FIG2A = "fig2a"
    FIG2B = "fig2b"
    FIG2C = "fig2c"
    FIG2D = "fig2d"
    FIG3A = "fig3a"
    FIG3B = "fig3b"
    FIG3C = "fig3c"
    FIG4A = "fig4a"
    FIG4B = "fig4b"
    FIG4C = "fig4c"
    FIG4D = "fig4d"


FIGURE_COUPLINGS = Couplings(g=1.0, chi=10.0, Gamma=100.0)
FIGURE_MAGNITUDES = {
    "alpha": 11.0,
    "alpha1": 10.0,
    "alpha2": 9.5,
    "beta": 8.0,
    "gamma": 0.01,
    "delta": 1.0,
}
# Resonant reference frequencies, large enough to stay positive over 50 g detunings
FIGURE_RESONANT_FREQUENCIES = Frequencies(
    omega_p=200.0,
    omega_a1=100.0,
    omega_a2=100.0,
    omega_b=190.0,
    omega_c=10.0,
    omega_d=210.0,
)
FIGURE_LENGTH = 0.1

LENGTH_AXIS = {"min": 1e-3, "max": FIGURE_LENGTH, "count": 50}
PHASE_AXIS = {"min": 0.0, "max": 2 * math.pi, "count": 73}
DETUNING_AXIS = {"min": 0.0, "max": 50.0, "count": 51}

_LENGTH_NOTE = "gz axis spans [1e-3, 0.1], anchored at the gz = 0.1 of the detuning figures"
_DETUNING_NOTE = "detuning axes span [0, 50] g"
_PHASE_NOTE = "phase mismatches are swept over one period [0, 2 pi]"


def figure_spec(dS: float, dA: float, dD: float) -> CouplerSpec:
    """Figure amplitudes and couplings at the given detunings, zero phases"""
    frequencies = retune(FIGURE_RESONANT_FREQUENCIES, dS=dS, dA=dA, dD=dD)
    amplitudes = AmplitudesSpec(
        **{name: PolarAmplitude(mag=mag) for name, mag in FIGURE_MAGNITUDES.items()}
    )
    return CouplerSpec(
        frequencies=frequencies, couplings=FIGURE_COUPLINGS, amplitudes=amplitudes
    )


def _axis(*names: AxisName, **grid: typing.Any) -> Axis:
    return Axis(names=list(names), **grid)


def _fig2(phase_axis: Axis, modes: typing.List[ZenoMode], *notes: str) -> SweepSpec:
    return SweepSpec(
        base=figure_spec(dS=1e-2, dA=1e-2, dD=1e-3),
        z=FIGURE_LENGTH,
        axes=[phase_axis, _axis(AxisName.Z, **LENGTH_AXIS)],
        modes=modes,
        notes=[_LENGTH_NOTE, _PHASE_NOTE, *notes],
    )


def _fig3(mode: ZenoMode) -> SweepSpec:
    return SweepSpec(
        base=figure_spec(dS=0.0, dA=0.0, dD=1e-3),
        z=FIGURE_LENGTH,
        axes=[
            _axis(AxisName.DA, AxisName.DS, **DETUNING_AXIS),
            _axis(AxisName.Z, **LENGTH_AXIS),
        ],
        modes=[mode],
        notes=[_LENGTH_NOTE, _DETUNING_NOTE, "theta1 = theta2 = 0, dD = 1e-3 g"],
    )


def _fig4(mode: ZenoMode) -> SweepSpec:
    return SweepSpec(
        base=figure_spec(dS=0.0, dA=0.0, dD=0.0),
        z=FIGURE_LENGTH,
        axes=[
            _axis(AxisName.DA, AxisName.DS, **DETUNING_AXIS),
            _axis(AxisName.DD, **DETUNING_AXIS),
        ],
        modes=[mode],
        notes=[_DETUNING_NOTE, "theta1 = theta2 = 0, gz = 0.1"],
    )


_PRESETS: typing.Dict[PresetName, typing.Callable[[], SweepSpec]] = {
    PresetName.FIG2A: lambda: _fig2(
        _axis(AxisName.THETA2, **PHASE_AXIS), [ZenoMode.STOKES], "theta1 = 0"
    ),
    PresetName.FIG2B: lambda: _fig2(
        _axis(AxisName.THETA1, **PHASE_AXIS), [ZenoMode.ANTISTOKES], "theta2 = 0"
    ),
    PresetName.FIG2C: lambda: _fig2(
        _axis(AxisName.THETA1, AxisName.THETA2, **PHASE_AXIS),
        [ZenoMode.PHONON],
        "theta1 = theta2 swept together",
    ),
    PresetName.FIG2D: lambda: SweepSpec(
        base=figure_spec(dS=1e-2, dA=1e-2, dD=1e-3),
        z=FIGURE_LENGTH,
        axes=[_axis(AxisName.THETA1, **PHASE_AXIS), _axis(AxisName.THETA2, **PHASE_AXIS)],
        modes=list(ZenoMode),
        notes=[_PHASE_NOTE, "theta1 x theta2 plane at gz = 0.1"],
    ),
    PresetName.FIG3A: lambda: _fig3(ZenoMode.STOKES),
    PresetName.FIG3B: lambda: _fig3(ZenoMode.PHONON),
    PresetName.FIG3C: lambda: _fig3(ZenoMode.ANTISTOKES),
    PresetName.FIG4A: lambda: _fig4(ZenoMode.STOKES),
    PresetName.FIG4B: lambda: _fig4(ZenoMode.PHONON),
    PresetName.FIG4C: lambda: _fig4(ZenoMode.ANTISTOKES),
    PresetName.FIG4D: lambda: SweepSpec(
        base=figure_spec(dS=0.0, dA=0.0, dD=1e-3),
        z=FIGURE_LENGTH,
        axes=[_axis(AxisName.DS, **DETUNING_AXIS), _axis(AxisName.DA, **DETUNING_AXIS)],
        modes=list(ZenoMode),
        notes=[_DETUNING_NOTE, "theta1 = theta2 = 0, gz = 0.1, dD = 1e-3 g"],
    ),
}


def figure_preset(name: typing.Union[PresetName, str]) -> SweepSpec:
    """
    Sweep configuration of a figure preset.

    :raises UnknownPreset: for names outside `PresetName`
    """
    try:
        preset = PresetName(name)
    except ValueError:
        known = ", ".join(p.value for p in PresetName)
        raise UnknownPreset(
            f"Unknown preset {name!r}; expected one of {known}", field="name"
        ) from None
    return _PRESETS[preset]()


DESK_LENGTH = 0.1
DESK_MAGNITUDES = (0.4, 0.4, 0.35, 0.3, 0.2, 0.2)
DESK_NAMES = ("alpha", "alpha1", "alpha2", "beta", "gamma", "delta")


def desk_coupler_spec(coupling: float = 0.25) -> CouplerSpec:
    """
    Small-amplitude resonant configuration within reach of the Fock-space oracle.

    :param coupling: common value of g, chi and Gamma
    """
    return CouplerSpec(
        frequencies=Frequencies(
            omega_p=2.0,
            omega_a1=1.0,
            omega_a2=1.0,
            omega_b=1.5,
            omega_c=0.5,
            omega_d=2.5,
        ),
        couplings=Couplings(g=coupling, chi=coupling, Gamma=coupling),
        amplitudes=AmplitudesSpec(
            **{name: PolarAmplitude(mag=mag) for name, mag in zip(DESK_NAMES, DESK_MAGNITUDES)}
        ),
    )


def desk_config(coupling: float = 0.25) -> CouplerConfig:
    return desk_coupler_spec(coupling).to_config()


def desk_fock(**kwargs: typing.Any) -> FockConfig:
    """Cutoff 4 in every mode (15625 basis states)"""
    kwargs.setdefault("leakage_tol", 1e-4)
    return FockConfig.uniform(4, **kwargs)


__all__ = [
    "PresetName",
    "FIGURE_COUPLINGS",
    "FIGURE_MAGNITUDES",
    "FIGURE_RESONANT_FREQUENCIES",
    "figure_spec",
    "figure_preset",
    "desk_coupler_spec",
    "desk_config",
    "desk_fock",
]
