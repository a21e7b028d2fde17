import typing

import pydantic


class NumberExpectations(pydantic.BaseModel):
    """Mean Stokes photon, phonon and anti-Stokes photon numbers at one length"""

    n_b: float = pydantic.Field(..., description="Mean Stokes photon number")
    n_c: float = pydantic.Field(..., description="Mean phonon number")
    n_d: float = pydantic.Field(..., description="Mean anti-Stokes photon number")
    imag_residual: float = pydantic.Field(
        0.0, description="Largest imaginary part discarded when taking real values"
    )
    flags: typing.List[str] = pydantic.Field(default_factory=list)

    model_config = pydantic.ConfigDict(frozen=True)


__all__ = ["NumberExpectations"]
