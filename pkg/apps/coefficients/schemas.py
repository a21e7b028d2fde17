import typing

import pydantic


class _CoefficientFamily(pydantic.BaseModel):
    model_config = pydantic.ConfigDict(frozen=True)

    def terms(self) -> typing.Dict[str, complex]:
        """Coefficients keyed by name, in index order"""
        return dict(self)


class StokesCoefficients(_CoefficientFamily):
    """
    Stokes coefficients j1..j10.

    j2 scales with g, j3..j5 with g chi, j6..j7 with g Gamma and j8..j10 with g^2.
    """

    j1: complex = pydantic.Field(..., description="Free evolution phase e^{iz omega_b}")
    j2: complex
    j3: complex
    j4: complex
    j5: complex
    j6: complex
    j7: complex
    j8: complex
    j9: complex
    j10: complex


class PhononCoefficients(_CoefficientFamily):
    """Phonon coefficients k1..k13"""

    k1: complex = pydantic.Field(..., description="Free evolution phase e^{iz omega_c}")
    k2: complex
    k3: complex
    k4: complex
    k5: complex
    k6: complex
    k7: complex
    k8: complex
    k9: complex
    k10: complex
    k11: complex
    k12: complex
    k13: complex


class AntiStokesCoefficients(_CoefficientFamily):
    """Anti-Stokes coefficients l1..l10"""

    l1: complex = pydantic.Field(..., description="Free evolution phase e^{iz omega_d}")
    l2: complex
    l3: complex
    l4: complex
    l5: complex
    l6: complex
    l7: complex
    l8: complex
    l9: complex
    l10: complex


class CoefficientSet(pydantic.BaseModel):
    """All three coefficient families at one propagation length"""

    z: float
    stokes: StokesCoefficients
    phonon: PhononCoefficients
    antistokes: AntiStokesCoefficients

    model_config = pydantic.ConfigDict(frozen=True)


__all__ = [
    "StokesCoefficients",
    "PhononCoefficients",
    "AntiStokesCoefficients",
    "CoefficientSet",
]
