import math
import typing

import numpy as np
import pydantic
from scipy import sparse

from apps.coupler.schemas import Couplings, Frequencies
from helpers.config import settings


Cutoff = typing.Annotated[int, pydantic.Field(ge=1)]
Cutoffs = typing.Tuple[Cutoff, Cutoff, Cutoff, Cutoff, Cutoff, Cutoff]


def _oracle_default(name: str) -> typing.Callable[[], typing.Any]:
    return lambda: settings.ORACLE[name]


class FockConfig(pydantic.BaseModel):
    """Truncation and propagation controls of the Fock-space oracle"""

    cutoffs: Cutoffs = pydantic.Field(
        ...,
        description="Maximum occupation per mode, in basis order (p, a1, a2, b, c, d)",
    )
    leakage_tol: float = pydantic.Field(
        default_factory=_oracle_default("LEAKAGE_TOLERANCE"),
        gt=0,
        description="Maximum admissible probability on any boundary Fock layer",
    )
    step_rtol: float = pydantic.Field(
        default_factory=_oracle_default("STEP_RTOL"),
        gt=0,
        description="Maximum norm drift of a single propagation step",
    )
    max_step: float = pydantic.Field(
        default_factory=_oracle_default("MAX_STEP"),
        gt=0,
        description="Longest propagation step",
    )
    max_dimension: int = pydantic.Field(
        default_factory=_oracle_default("MAX_DIMENSION"), ge=1
    )

    model_config = pydantic.ConfigDict(frozen=True)

    @property
    def dimension(self) -> int:
        return math.prod(c + 1 for c in self.cutoffs)

    @classmethod
    def uniform(cls, cutoff: int, **kwargs: typing.Any) -> "FockConfig":
        return cls(cutoffs=(cutoff,) * 6, **kwargs)


class TruncatedState(pydantic.BaseModel):
    """State vector over the product Fock basis, mode order (p, a1, a2, b, c, d)"""

    amplitudes: np.ndarray
    cutoffs: Cutoffs
    norm_deficit: float = pydantic.Field(
        0.0, description="1 - <psi|psi> of the truncated coherent state before renormalization"
    )
    leakage: float = pydantic.Field(
        0.0, description="Largest probability found on a boundary Fock layer"
    )

    model_config = pydantic.ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


class GeneratorMatrix(pydantic.BaseModel):
    """Momentum operator on the truncated basis"""

    matrix: sparse.csr_matrix
    frequencies: Frequencies
    couplings: Couplings
    cutoffs: Cutoffs

    model_config = pydantic.ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


class OracleNumbers(pydantic.BaseModel):
    """Exact mean numbers of all six modes after propagation"""

    n_p: float
    n_a1: float
    n_a2: float
    n_b: float
    n_c: float
    n_d: float
    norm: float
    leakage: float
    norm_deficit: float

    model_config = pydantic.ConfigDict(frozen=True)


class ConstantsOfMotion(pydantic.BaseModel):
    """Expectations of the conserved number combinations"""

    phonon_balance: float = pydantic.Field(..., description="<N_c + N_d - N_b>")
    monitor_pump: float = pydantic.Field(
        ..., description="<N_p + (N_a1 + N_a2)/2 + N_b + N_d>"
    )
    pump_imbalance: float = pydantic.Field(..., description="<N_a1 - N_a2>")

    model_config = pydantic.ConfigDict(frozen=True)


class ConvergenceReport(pydantic.BaseModel):
    """Stokes, phonon and anti-Stokes means over successively larger cutoffs"""

    cutoffs: typing.List[Cutoffs]
    means: typing.List[typing.Tuple[float, float, float]]
    changes: typing.List[float]
    converged: bool

    model_config = pydantic.ConfigDict(frozen=True)


__all__ = [
    "FockConfig",
    "TruncatedState",
    "GeneratorMatrix",
    "OracleNumbers",
    "ConstantsOfMotion",
    "ConvergenceReport",
]
