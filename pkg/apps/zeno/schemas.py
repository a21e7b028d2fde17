import enum
import typing

import pydantic


class ZenoClass(enum.Enum):
    """Sign class of a Zeno parameter"""

    QZE = "QZE"
    """Quantum Zeno effect, Z < 0"""
    QAZE = "QAZE"
    """Quantum anti-Zeno effect, Z > 0"""
    NEITHER = "Neither"


class ZenoMethod(enum.Enum):
    """How a Zeno parameter was obtained"""

    CLOSED_FORM = "ClosedForm"
    DIFFERENCE = "Difference"
    RESONANT = "Resonant"
    PHONON_EXCITATION = "PhononExcitation"
    ORACLE = "Oracle"


class Reduction(enum.Enum):
    """Special cases of the non-degenerate hyper-Raman process"""

    RAMAN = "Raman"
    DEGENERATE_HYPER_RAMAN = "DegenerateHyperRaman"


class ScalingCoefficients(pydantic.BaseModel):
    """Positive depth factors of the Stokes and anti-Stokes Zeno parameters"""

    c_b: float = pydantic.Field(..., ge=0, description="2 Gamma g P |alpha||beta||gamma|")
    c_d: float = pydantic.Field(..., ge=0, description="2 Gamma chi P |alpha||gamma||delta|")

    model_config = pydantic.ConfigDict(frozen=True)


class ZenoResult(pydantic.BaseModel):
    """Zeno parameters of the Stokes, phonon and anti-Stokes modes"""

    z_b: float
    z_c: float
    z_d: float
    class_b: ZenoClass
    class_c: ZenoClass
    class_d: ZenoClass
    method: ZenoMethod
    tol_class: float = pydantic.Field(..., gt=0)
    flags: typing.List[str] = pydantic.Field(default_factory=list)

    model_config = pydantic.ConfigDict(frozen=True)


__all__ = [
    "ZenoClass",
    "ZenoMethod",
    "Reduction",
    "ScalingCoefficients",
    "ZenoResult",
]
