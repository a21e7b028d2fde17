import enum
import typing

import numpy as np
import pydantic


Frequency = typing.Annotated[float, pydantic.Field(allow_inf_nan=False)]
Coupling = typing.Annotated[float, pydantic.Field(ge=0, allow_inf_nan=False)]


class Mode(enum.Enum):
    """Bosonic modes of the coupler, in basis order"""

    MONITOR = "p"
    PUMP1 = "a1"
    PUMP2 = "a2"
    STOKES = "b"
    PHONON = "c"
    ANTISTOKES = "d"

    @property
    def index(self) -> int:
        return list(Mode).index(self)


class StimulationRegime(enum.Enum):
    """Which of the Stokes, phonon and anti-Stokes modes start populated"""

    SPONTANEOUS = "Spontaneous"
    PARTIALLY_STIMULATED = "PartiallyStimulated"
    STIMULATED = "Stimulated"


class Frequencies(pydantic.BaseModel):
    """Mode frequencies in units of the reference coupling g"""

    omega_p: Frequency = pydantic.Field(..., description="Monitor frequency")
    omega_a1: Frequency = pydantic.Field(..., description="Pump 1 frequency")
    omega_a2: Frequency = pydantic.Field(..., description="Pump 2 frequency")
    omega_b: Frequency = pydantic.Field(..., description="Stokes frequency")
    omega_c: Frequency = pydantic.Field(..., description="Phonon frequency")
    omega_d: Frequency = pydantic.Field(..., description="Anti-Stokes frequency")

    model_config = pydantic.ConfigDict(frozen=True)

    def as_array(self) -> np.ndarray:
        """Frequencies in basis order (p, a1, a2, b, c, d)"""
        return np.array(
            [
                self.omega_p,
                self.omega_a1,
                self.omega_a2,
                self.omega_b,
                self.omega_c,
                self.omega_d,
            ]
        )


class Couplings(pydantic.BaseModel):
    """Real non-negative coupling constants in units of g"""

    g: Coupling = pydantic.Field(..., description="Stokes coupling")
    chi: Coupling = pydantic.Field(..., description="Anti-Stokes coupling")
    Gamma: Coupling = pydantic.Field(..., description="Monitor-system coupling")

    model_config = pydantic.ConfigDict(frozen=True)


class CoherentAmplitudes(pydantic.BaseModel):
    """Initial coherent amplitudes of the six modes"""

    alpha: complex = pydantic.Field(0j, description="Monitor amplitude")
    alpha1: complex = pydantic.Field(0j, description="Pump 1 amplitude")
    alpha2: complex = pydantic.Field(0j, description="Pump 2 amplitude")
    beta: complex = pydantic.Field(0j, description="Stokes amplitude")
    gamma: complex = pydantic.Field(0j, description="Phonon amplitude")
    delta: complex = pydantic.Field(0j, description="Anti-Stokes amplitude")

    model_config = pydantic.ConfigDict(frozen=True)

    @classmethod
    def from_polar(
        cls,
        magnitudes: typing.Mapping[str, float],
        phases: typing.Optional[typing.Mapping[str, float]] = None,
    ) -> "CoherentAmplitudes":
        """
        Build amplitudes from magnitude and phase maps keyed by field name.

        :param magnitudes: field name to magnitude; missing fields are zero
        :param phases: field name to phase in radians; missing phases are zero
        """
        phases = phases or {}
        values = {
            name: complex(magnitude * np.exp(1j * phases.get(name, 0.0)))
            for name, magnitude in magnitudes.items()
        }
        return cls(**values)

    def as_array(self) -> np.ndarray:
        """Amplitudes in basis order (p, a1, a2, b, c, d)"""
        return np.array(
            [self.alpha, self.alpha1, self.alpha2, self.beta, self.gamma, self.delta],
            dtype=complex,
        )


class CouplerConfig(pydantic.BaseModel):
    """Complete description of one coupler experiment"""

    frequencies: Frequencies
    couplings: Couplings
    amplitudes: CoherentAmplitudes

    model_config = pydantic.ConfigDict(frozen=True)


class Detunings(pydantic.BaseModel):
    """Frequency mismatches of the Stokes, anti-Stokes, monitor and composite processes"""

    dS: float
    dA: float
    dD: float
    d1: float
    d2: float
    d3: float
    d4: float

    model_config = pydantic.ConfigDict(frozen=True)


class PhaseMismatch(pydantic.BaseModel):
    """Phase mismatches in radians, wrapped to (-pi, pi]"""

    theta1: float = pydantic.Field(..., description="phi_d - phi_p - phi_c")
    theta2: float = pydantic.Field(..., description="phi_p - phi_b - phi_c")

    model_config = pydantic.ConfigDict(frozen=True)


__all__ = [
    "Mode",
    "StimulationRegime",
    "Frequencies",
    "Couplings",
    "CoherentAmplitudes",
    "CouplerConfig",
    "Detunings",
    "PhaseMismatch",
]
