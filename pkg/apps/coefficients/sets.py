"""
Second-order coefficient sets of the Stokes, phonon and anti-Stokes modes.

Each coefficient is the free evolution phase times a coupling product times a
kernel. Coefficients stated equal share one kernel evaluation.
"""

import cmath

from apps.coupler.algebra import detunings
from apps.coupler.schemas import CouplerConfig, Couplings, Detunings
from .kernels import KernelSignature, kernel_K1, kernel_K2, kernel_K3
from .schemas import (
    AntiStokesCoefficients,
    CoefficientSet,
    PhononCoefficients,
    StokesCoefficients,
)


def stokes_coeffs(
    c: Couplings, d: Detunings, omega_b: float, z: float
) -> StokesCoefficients:
    """
    Evaluate j1..j10.

    :param c: couplings
    :param d: detunings
    :param omega_b: Stokes frequency
    :param z: propagation length
    """
    j1 = cmath.exp(1j * z * omega_b)
    j4 = j1 * (c.g * c.chi) * kernel_K2(d.dS, d.dA, z, KernelSignature.J4)
    j6 = j1 * (c.g * c.Gamma) * kernel_K2(d.dS, d.dD, z, KernelSignature.J6)
    j8 = j1 * c.g**2 * kernel_K3(d.dS, z, 1)
    return StokesCoefficients(
        j1=j1,
        j2=j1 * c.g * kernel_K1(d.dS, z),
        j3=j1 * (c.g * c.chi) * kernel_K2(d.dS, d.dA, z, KernelSignature.J3),
        j4=j4,
        j5=j4,
        j6=j6,
        j7=j6,
        j8=j8,
        j9=-j8,
        j10=-j8,
    )


def phonon_coeffs(
    c: Couplings, d: Detunings, omega_c: float, z: float
) -> PhononCoefficients:
    """
    Evaluate k1..k13.

    k9 keeps the printed e^{+iz dS} exponent with the matching linear term.
    """
    k1 = cmath.exp(1j * z * omega_c)
    k4 = k1 * (c.g * c.Gamma) * kernel_K2(d.dS, d.dD, z, KernelSignature.J6)
    k6 = k1 * (c.Gamma * c.chi) * kernel_K2(d.dA, d.dD, z, KernelSignature.K6)
    k8 = k1 * -(c.chi**2) * kernel_K3(d.dA, z, 1)
    k9 = k1 * -(c.g**2) * kernel_K3(d.dS, z, -1)
    return PhononCoefficients(
        k1=k1,
        k2=k1 * c.g * kernel_K1(d.dS, z),
        k3=k1 * c.chi * kernel_K1(d.dA, z),
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


def antistokes_coeffs(
    c: Couplings, d: Detunings, omega_d: float, z: float
) -> AntiStokesCoefficients:
    """
    Evaluate l1..l10.

    l8 keeps the printed e^{-iz dA} exponent with the matching linear term.
    """
    l1 = cmath.exp(1j * z * omega_d)
    # -chi (1 - e^{iz dA}) / dA
    l2 = l1 * c.chi * kernel_K1(-d.dA, z)
    l3 = l1 * (c.g * c.chi) * kernel_K2(d.dA, d.dS, z, KernelSignature.L3)
    l6 = l1 * (c.Gamma * c.chi) * kernel_K2(d.dA, d.dD, z, KernelSignature.L6)
    l8 = l1 * -(c.chi**2) * kernel_K3(d.dA, z, 1)
    return AntiStokesCoefficients(
        l1=l1,
        l2=l2,
        l3=l3,
        l4=l3,
        l5=l1 * (c.g * c.chi) * kernel_K2(d.dA, d.dS, z, KernelSignature.L5),
        l6=l6,
        l7=l6,
        l8=l8,
        l9=l8,
        l10=l8,
    )


def coefficient_sets(config: CouplerConfig, z: float) -> CoefficientSet:
    """Evaluate all three coefficient families of a configuration at length z"""
    d = detunings(config.frequencies)
    freqs = config.frequencies
    return CoefficientSet(
        z=z,
        stokes=stokes_coeffs(config.couplings, d, freqs.omega_b, z),
        phonon=phonon_coeffs(config.couplings, d, freqs.omega_c, z),
        antistokes=antistokes_coeffs(config.couplings, d, freqs.omega_d, z),
    )


__all__ = ["stokes_coeffs", "phonon_coeffs", "antistokes_coeffs", "coefficient_sets"]
