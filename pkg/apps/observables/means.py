"""
Mean photon and phonon numbers from the second-order coefficients.

Each mean is a labelled sum. The `*_terms` accessors return every summand with
its complex-conjugate partner written out alongside, so a mean can be compared
term by term and a mistranscribed partner shows up as an imaginary residual.
"""

import logging
import typing
import warnings

from apps.coefficients.schemas import (
    AntiStokesCoefficients,
    PhononCoefficients,
    StokesCoefficients,
)
from apps.coefficients.sets import coefficient_sets
from apps.coupler.algebra import diagnostics
from apps.coupler.schemas import CoherentAmplitudes, CouplerConfig
from .exceptions import PerturbationBreakdown
from .schemas import NumberExpectations


logger = logging.getLogger(__name__)

Terms = typing.Dict[str, complex]


class ModeTerms(typing.NamedTuple):
    """Labelled summands of the Stokes, phonon and anti-Stokes means"""

    n_b: Terms
    n_c: Terms
    n_d: Terms


def _magnitudes(amps: CoherentAmplitudes) -> typing.Tuple[float, ...]:
    return tuple(
        abs(v) ** 2
        for v in (amps.alpha1, amps.alpha2, amps.beta, amps.gamma, amps.delta)
    )


def _conjugates(amps: CoherentAmplitudes) -> typing.Tuple[complex, ...]:
    return tuple(
        v.conjugate()
        for v in (amps.alpha, amps.alpha1, amps.alpha2, amps.beta, amps.gamma, amps.delta)
    )


def stokes_terms(amps: CoherentAmplitudes, jc: StokesCoefficients) -> Terms:
    """Summands of the mean Stokes photon number"""
    a, a1, a2, b, c, d = (
        amps.alpha,
        amps.alpha1,
        amps.alpha2,
        amps.beta,
        amps.gamma,
        amps.delta,
    )
    ca, ca1, ca2, cb, cc, cd = _conjugates(amps)
    n1, n2, nb, nc, _ = _magnitudes(amps)
    j1, cj1 = jc.j1, jc.j1.conjugate()
    return {
        "seed": complex(nb),
        "j2_spontaneous": complex(abs(jc.j2) ** 2 * n1 * n2 * (nc + 1)),
        "j2": j1 * jc.j2.conjugate() * (ca1 * ca2) * b * c
        + cj1 * jc.j2 * (a1 * a2) * cb * cc,
        "j3": j1 * jc.j3.conjugate() * (ca1**2 * ca2**2) * b * d
        + cj1 * jc.j3 * (a1**2 * a2**2) * cb * cd,
        "j4": j1 * jc.j4.conjugate() * (n1 + 1) * b * c**2 * cd
        + cj1 * jc.j4 * (n1 + 1) * cb * cc**2 * d,
        "j5": j1 * jc.j5.conjugate() * n2 * b * c**2 * cd
        + cj1 * jc.j5 * n2 * cb * cc**2 * d,
        "j6": j1 * jc.j6.conjugate() * (n1 + 1) * ca * b * c
        + cj1 * jc.j6 * (n1 + 1) * a * cb * cc,
        "j7": j1 * jc.j7.conjugate() * n2 * ca * b * c
        + cj1 * jc.j7 * n2 * a * cb * cc,
        "j8": j1 * jc.j8.conjugate() * n1 * n2 * nb
        + cj1 * jc.j8 * n1 * n2 * nb,
        "j9": j1 * jc.j9.conjugate() * nb * (n1 + 1) * nc
        + cj1 * jc.j9 * nb * (n1 + 1) * nc,
        "j10": j1 * jc.j10.conjugate() * n2 * nb * nc
        + cj1 * jc.j10 * n2 * nb * nc,
    }


def phonon_terms(amps: CoherentAmplitudes, kc: PhononCoefficients) -> Terms:
    """Summands of the mean phonon number"""
    a, a1, a2, b, c, d = (
        amps.alpha,
        amps.alpha1,
        amps.alpha2,
        amps.beta,
        amps.gamma,
        amps.delta,
    )
    ca, ca1, ca2, cb, cc, cd = _conjugates(amps)
    n1, n2, nb, nc, nd = _magnitudes(amps)
    k1, ck1 = kc.k1, kc.k1.conjugate()
    return {
        "seed": complex(nc),
        "k2_spontaneous": complex(abs(kc.k2) ** 2 * n1 * n2 * (nb + 1)),
        "k3_spontaneous": complex(abs(kc.k3) ** 2 * (n1 + 1) * (n2 + 1) * nd),
        "k2": k1 * kc.k2.conjugate() * (ca1 * ca2) * b * c
        + ck1 * kc.k2 * (a1 * a2) * cb * cc,
        "k3": k1 * kc.k3.conjugate() * a1 * a2 * c * cd
        + ck1 * kc.k3 * ca1 * ca2 * cc * d,
        "k4": k1 * kc.k4.conjugate() * (n1 + 1) * ca * b * c
        + ck1 * kc.k4 * (n1 + 1) * a * cb * cc,
        "k5": k1 * kc.k5.conjugate() * n2 * ca * b * c
        + ck1 * kc.k5 * n2 * a * cb * cc,
        "k6": k1 * kc.k6.conjugate() * n1 * a * c * cd
        + ck1 * kc.k6 * n1 * ca * cc * d,
        "k7": k1 * kc.k7.conjugate() * (n2 + 1) * a * c * cd
        + ck1 * kc.k7 * (n2 + 1) * ca * cc * d,
        "k2k3": kc.k2 * kc.k3.conjugate() * (a1**2 * a2**2) * cb * cd
        + kc.k2.conjugate() * kc.k3 * (ca1**2 * ca2**2) * b * d,
        "k8": k1 * kc.k8.conjugate() * n1 * n2 * nc
        + ck1 * kc.k8 * n1 * n2 * nc,
        "k9": k1 * kc.k9.conjugate() * (n1 + 1) * nb * nc
        + ck1 * kc.k9 * (n1 + 1) * nb * nc,
        "k10": k1 * kc.k10.conjugate() * n2 * nb * nc
        + ck1 * kc.k10 * n2 * nb * nc,
        "k11": k1 * kc.k11.conjugate() * n1 * nc * nd
        + ck1 * kc.k11 * n1 * nc * nd,
        "k12": k1 * kc.k12.conjugate() * (n2 + 1) * nc * nd
        + ck1 * kc.k12 * (n2 + 1) * nc * nd,
        "k13": k1 * kc.k13.conjugate() * n1 * n2 * nc
        + ck1 * kc.k13 * n1 * n2 * nc,
    }


def antistokes_terms(amps: CoherentAmplitudes, lc: AntiStokesCoefficients) -> Terms:
    """Summands of the mean anti-Stokes photon number"""
    a, a1, a2, b, c, d = (
        amps.alpha,
        amps.alpha1,
        amps.alpha2,
        amps.beta,
        amps.gamma,
        amps.delta,
    )
    ca, ca1, ca2, cb, cc, cd = _conjugates(amps)
    n1, n2, _, nc, nd = _magnitudes(amps)
    l1, cl1 = lc.l1, lc.l1.conjugate()
    return {
        "seed": complex(nd),
        "l2_spontaneous": complex(abs(lc.l2) ** 2 * n1 * n2 * nc),
        "l2": l1 * lc.l2.conjugate() * (ca1 * ca2 * cc) * d
        + cl1 * lc.l2 * (a1 * a2 * c) * cd,
        "l3": l1 * lc.l3.conjugate() * (n1 + 1) * (cb * cc**2) * d
        + cl1 * lc.l3 * (n1 + 1) * (b * c**2) * cd,
        "l4": l1 * lc.l4.conjugate() * n2 * (cb * cc**2) * d
        + cl1 * lc.l4 * n2 * (b * c**2) * cd,
        "l5": l1 * lc.l5.conjugate() * (ca1**2 * ca2**2) * b * d
        + cl1 * lc.l5 * (a1**2 * a2**2) * cb * cd,
        "l6": l1 * lc.l6.conjugate() * (n1 + 1) * (ca * cc) * d
        + cl1 * lc.l6 * (n1 + 1) * (a * c) * cd,
        "l7": l1 * lc.l7.conjugate() * n2 * (ca * cc) * d
        + cl1 * lc.l7 * n2 * (a * c) * cd,
        "l8": l1 * lc.l8.conjugate() * (n1 + 1) * nc * nd
        + cl1 * lc.l8 * (n1 + 1) * nc * nd,
        "l9": l1 * lc.l9.conjugate() * n2 * nc * nd
        + cl1 * lc.l9 * n2 * nc * nd,
        "l10": l1 * lc.l10.conjugate() * (n1 + 1) * (n2 + 1) * nd
        + cl1 * lc.l10 * (n1 + 1) * (n2 + 1) * nd,
    }


def assemble(terms: Terms) -> typing.Tuple[float, float]:
    """
    Sum labelled terms into a mean.

    :return: the real part of the sum and the magnitude of its imaginary part
    """
    total = complex(sum(terms.values()))
    return total.real, abs(total.imag)


def difference_terms(terms: Terms, reference: Terms) -> Terms:
    """Label-matched differences of two term sets of the same mean"""
    return {label: value - reference[label] for label, value in terms.items()}


def number_terms(config: CouplerConfig, z: float) -> ModeTerms:
    """Labelled summands of all three means of a configuration at length z"""
    coeffs = coefficient_sets(config, z)
    amps = config.amplitudes
    return ModeTerms(
        n_b=stokes_terms(amps, coeffs.stokes),
        n_c=phonon_terms(amps, coeffs.phonon),
        n_d=antistokes_terms(amps, coeffs.antistokes),
    )


def mean_stokes(amps: CoherentAmplitudes, jc: StokesCoefficients) -> float:
    """
    Mean Stokes photon number.

    :param amps: initial coherent amplitudes
    :param jc: Stokes coefficients at the same configuration and length
    """
    return assemble(stokes_terms(amps, jc))[0]


def mean_phonon(amps: CoherentAmplitudes, kc: PhononCoefficients) -> float:
    """Mean phonon number"""
    return assemble(phonon_terms(amps, kc))[0]


def mean_antistokes(amps: CoherentAmplitudes, lc: AntiStokesCoefficients) -> float:
    """Mean anti-Stokes photon number"""
    return assemble(antistokes_terms(amps, lc))[0]


def expectations_from_terms(
    config: CouplerConfig, z: float, terms: ModeTerms
) -> NumberExpectations:
    """
    Assemble the three means from their terms.

    Negative means are returned unchanged, flagged and reported through a
    `PerturbationBreakdown` warning.
    """
    n_b, res_b = assemble(terms.n_b)
    n_c, res_c = assemble(terms.n_c)
    n_d, res_d = assemble(terms.n_d)

    flags = diagnostics(config)
    negative = [
        name for name, value in (("n_b", n_b), ("n_c", n_c), ("n_d", n_d)) if value < 0
    ]
    if negative:
        message = f"Negative mean numbers {negative} at z={z}"
        logger.warning(message)
        warnings.warn(message, PerturbationBreakdown, stacklevel=3)
        flags.append(PerturbationBreakdown.flag)

    residual = max(res_b, res_c, res_d)
    if residual > 1e-10 * max(1.0, abs(n_b), abs(n_c), abs(n_d)):
        logger.error(f"Imaginary residual {residual} in the assembled means at z={z}")

    return NumberExpectations(
        n_b=n_b,
        n_c=n_c,
        n_d=n_d,
        imag_residual=residual,
        flags=flags,
    )


def number_expectations(config: CouplerConfig, z: float) -> NumberExpectations:
    """Evaluate the three means of a configuration at length z"""
    return expectations_from_terms(config, z, number_terms(config, z))


__all__ = [
    "Terms",
    "ModeTerms",
    "stokes_terms",
    "phonon_terms",
    "antistokes_terms",
    "assemble",
    "difference_terms",
    "number_terms",
    "mean_stokes",
    "mean_phonon",
    "mean_antistokes",
    "expectations_from_terms",
    "number_expectations",
]
