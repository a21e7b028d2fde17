"""
Extended-precision reference evaluation of the coefficient formulas.

The expressions are transcribed directly, without any singularity handling, and
evaluated with mpmath at `DIGITS` significant digits. Meant for validating the
stable kernels away from exact coincidences, never for production sweeps.
"""

import typing

import mpmath

from apps.coupler.schemas import Couplings, Detunings
from .kernels import KernelSignature
from .schemas import AntiStokesCoefficients, PhononCoefficients, StokesCoefficients


DIGITS = 60

Number = typing.Union[float, "mpmath.mpf"]


def _mpf(value: float) -> "mpmath.mpf":
    return mpmath.mpf(value)


def _expi(value: Number) -> "mpmath.mpc":
    return mpmath.expj(value)


@mpmath.workdps(DIGITS)
def reference_K1(x: float, z: float) -> complex:
    x, z = _mpf(x), _mpf(z)
    return complex((1 - _expi(-x * z)) / x)


@mpmath.workdps(DIGITS)
def reference_K3(x: float, z: float, sign: int = 1) -> complex:
    x, z = _mpf(x), _mpf(z)
    return complex((1 - _expi(-sign * x * z) - 1j * sign * x * z) / x**2)


@mpmath.workdps(DIGITS)
def reference_K2(
    u: float, v: float, z: float, signature: KernelSignature
) -> complex:
    """Printed three-exponential pattern with its linear detuning relation"""
    u, v, z = _mpf(u), _mpf(v), _mpf(z)
    if signature is KernelSignature.J3:
        dS, dA = u, v
        d1 = dA - dS
        value = (dA - d1 * _expi(-z * dS) - dS * _expi(z * d1)) / (dA * d1 * dS)
    elif signature is KernelSignature.J4:
        dS, dA = u, v
        d2 = dA + dS
        value = (dA + dS * _expi(-z * d2) - d2 * _expi(-z * dS)) / (dA * dS * d2)
    elif signature is KernelSignature.J6:
        dS, dD = u, v
        d3 = dS + dD
        value = (dD + dS * _expi(-z * d3) - d3 * _expi(-z * dS)) / (dD * dS * d3)
    elif signature is KernelSignature.K6:
        dA, dD = u, v
        d4 = dA - dD
        value = (-dD + dA * _expi(-z * d4) - d4 * _expi(-z * dA)) / (dA * dD * d4)
    elif signature is KernelSignature.L3:
        dA, dS = u, v
        d2 = dA + dS
        value = (dS + dA * _expi(z * d2) - d2 * _expi(z * dA)) / (dS * dA * d2)
    elif signature is KernelSignature.L5:
        dA, dS = u, v
        d1 = dA - dS
        value = (dS + d1 * _expi(z * dA) - dA * _expi(z * d1)) / (dS * d1 * dA)
    else:
        dA, dD = u, v
        d4 = dA - dD
        value = (dD - dA * _expi(z * d4) + d4 * _expi(z * dA)) / (dD * dA * d4)
    return complex(value)


@mpmath.workdps(DIGITS)
def reference_stokes_kernel(dS: float, dD: float, z: float) -> complex:
    s, d, z = _mpf(dS), _mpf(dD), _mpf(z)
    return complex((d + s * _expi((s + d) * z) - (s + d) * _expi(s * z)) / (s * d * (s + d)))


@mpmath.workdps(DIGITS)
def reference_antistokes_kernel(dA: float, dD: float, z: float) -> complex:
    a, d, z = _mpf(dA), _mpf(dD), _mpf(z)
    return complex(
        1 / (a * (a - d))
        - _expi((d - a) * z) / (d * (a - d))
        + _expi(-a * z) / (d * a)
    )


@mpmath.workdps(DIGITS)
def reference_stokes_coeffs(
    c: Couplings, d: Detunings, omega_b: float, z: float
) -> StokesCoefficients:
    j1 = complex(_expi(_mpf(z) * _mpf(omega_b)))
    j4 = j1 * c.g * c.chi * reference_K2(d.dS, d.dA, z, KernelSignature.J4)
    j6 = j1 * c.g * c.Gamma * reference_K2(d.dS, d.dD, z, KernelSignature.J6)
    j8 = j1 * c.g**2 * reference_K3(d.dS, z, 1)
    return StokesCoefficients(
        j1=j1,
        j2=j1 * c.g * reference_K1(d.dS, z),
        j3=j1 * c.g * c.chi * reference_K2(d.dS, d.dA, z, KernelSignature.J3),
        j4=j4,
        j5=j4,
        j6=j6,
        j7=j6,
        j8=j8,
        j9=-j8,
        j10=-j8,
    )


@mpmath.workdps(DIGITS)
def reference_phonon_coeffs(
    c: Couplings, d: Detunings, omega_c: float, z: float
) -> PhononCoefficients:
    k1 = complex(_expi(_mpf(z) * _mpf(omega_c)))
    k4 = k1 * c.g * c.Gamma * reference_K2(d.dS, d.dD, z, KernelSignature.J6)
    k6 = k1 * c.Gamma * c.chi * reference_K2(d.dA, d.dD, z, KernelSignature.K6)
    k8 = -k1 * c.chi**2 * reference_K3(d.dA, z, 1)
    k9 = -k1 * c.g**2 * reference_K3(d.dS, z, -1)
    return PhononCoefficients(
        k1=k1,
        k2=k1 * c.g * reference_K1(d.dS, z),
        k3=k1 * c.chi * reference_K1(d.dA, z),
        k4=k4,
        k5=k4,
        k6=k6,
        k7=k6,
        k8=k8,
        k9=k9,
        k10=k9,
        k11=-k8,
        k12=-k8,
        k13=-k9,
    )


@mpmath.workdps(DIGITS)
def reference_antistokes_coeffs(
    c: Couplings, d: Detunings, omega_d: float, z: float
) -> AntiStokesCoefficients:
    l1 = complex(_expi(_mpf(z) * _mpf(omega_d)))
    dA, zz = _mpf(d.dA), _mpf(z)
    l2 = l1 * complex(-c.chi * (1 - _expi(zz * dA)) / dA)
    l3 = l1 * c.g * c.chi * reference_K2(d.dA, d.dS, z, KernelSignature.L3)
    l6 = l1 * c.Gamma * c.chi * reference_K2(d.dA, d.dD, z, KernelSignature.L6)
    l8 = -l1 * c.chi**2 * reference_K3(d.dA, z, 1)
    return AntiStokesCoefficients(
        l1=l1,
        l2=l2,
        l3=l3,
        l4=l3,
        l5=l1 * c.g * c.chi * reference_K2(d.dA, d.dS, z, KernelSignature.L5),
        l6=l6,
        l7=l6,
        l8=l8,
        l9=l8,
        l10=l8,
    )


__all__ = [
    "DIGITS",
    "reference_K1",
    "reference_K2",
    "reference_K3",
    "reference_stokes_kernel",
    "reference_antistokes_kernel",
    "reference_stokes_coeffs",
    "reference_phonon_coeffs",
    "reference_antistokes_coeffs",
]
