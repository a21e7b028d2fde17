import logging
import math
import typing

from apps.coefficients.kernels import antistokes_zeno_kernel, stokes_zeno_kernel
from apps.coupler.algebra import (
    antistokes_phase_mismatch,
    detunings,
    stokes_phase_mismatch,
)
from apps.coupler.schemas import CoherentAmplitudes, CouplerConfig, Couplings
from apps.observables.means import (
    assemble,
    difference_terms,
    expectations_from_terms,
    number_terms,
)
from helpers.config import settings
from .schemas import (
    Reduction,
    ScalingCoefficients,
    ZenoClass,
    ZenoMethod,
    ZenoResult,
)


logger = logging.getLogger(__name__)


def scaling_coefficients(c: Couplings, amps: CoherentAmplitudes) -> ScalingCoefficients:
    """
    Depth factors C_b = 2 Gamma g P |alpha||beta||gamma| and
    C_d = 2 Gamma chi P |alpha||gamma||delta|, with P = |alpha1|^2 + |alpha2|^2 + 1.
    """
    pumps = abs(amps.alpha1) ** 2 + abs(amps.alpha2) ** 2 + 1
    common = 2 * c.Gamma * pumps * abs(amps.alpha) * abs(amps.gamma)
    return ScalingCoefficients(
        c_b=common * c.g * abs(amps.beta),
        c_d=common * c.chi * abs(amps.delta),
    )


def phonon_balance(c: Couplings, amps: CoherentAmplitudes) -> float:
    """
    g|beta| - chi|delta|.

    At resonance with equal phase mismatches theta, the phonon parameter is
    QAZE for cos(theta) > 0 when this is negative, and QZE when it is positive.
    """
    return c.g * abs(amps.beta) - c.chi * abs(amps.delta)


def default_tolerance(scaling: ScalingCoefficients, z: float) -> float:
    """Dead-band of the Neither class, relative to the largest depth C z^2"""
    relative = settings.CLASSIFICATION_RELATIVE_TOLERANCE
    return relative * max(1.0, scaling.c_b * z * z, scaling.c_d * z * z)


def classify(value: float, tol_class: float) -> ZenoClass:
    """
    Classify a Zeno parameter by its sign.

    :param value: Zeno parameter
    :param tol_class: positive dead-band; |value| <= tol_class is Neither
    """
    if not tol_class > 0:
        raise ValueError(f"tol_class must be positive, got {tol_class!r}")
    if value < -tol_class:
        return ZenoClass.QZE
    if value > tol_class:
        return ZenoClass.QAZE
    return ZenoClass.NEITHER


def build_result(
    z_b: float,
    z_c: float,
    z_d: float,
    method: ZenoMethod,
    tol_class: float,
    flags: typing.Optional[typing.List[str]] = None,
) -> ZenoResult:
    """Classify three Zeno parameters into a result"""
    return ZenoResult(
        z_b=z_b,
        z_c=z_c,
        z_d=z_d,
        class_b=classify(z_b, tol_class),
        class_c=classify(z_c, tol_class),
        class_d=classify(z_d, tol_class),
        method=method,
        tol_class=tol_class,
        flags=flags or [],
    )


def _tolerance(
    config: CouplerConfig, z: float, tol_class: typing.Optional[float]
) -> typing.Tuple[ScalingCoefficients, float]:
    scaling = scaling_coefficients(config.couplings, config.amplitudes)
    return scaling, tol_class if tol_class is not None else default_tolerance(scaling, z)


def zeno_closed(
    config: CouplerConfig, z: float, tol_class: typing.Optional[float] = None
) -> ZenoResult:
    """
    Zeno parameters from the closed forms
    Z_b = C_b Re[e^{-i theta2} F_b(dS, dD, z)] and Z_d = C_d Re[e^{i theta1} F_d(dA, dD, z)],
    with Z_c = Z_b - Z_d.

    Phases are only read for non-vanishing depth factors.
    """
    scaling, tol = _tolerance(config, z, tol_class)
    d = detunings(config.frequencies)
    amps = config.amplitudes

    z_b = 0.0
    if scaling.c_b > 0:
        theta2 = stokes_phase_mismatch(amps)
        kernel = stokes_zeno_kernel(d.dS, d.dD, z)
        z_b = scaling.c_b * (complex(math.cos(theta2), -math.sin(theta2)) * kernel).real
    z_d = 0.0
    if scaling.c_d > 0:
        theta1 = antistokes_phase_mismatch(amps)
        kernel = antistokes_zeno_kernel(d.dA, d.dD, z)
        z_d = scaling.c_d * (complex(math.cos(theta1), math.sin(theta1)) * kernel).real
    return build_result(z_b, z_b - z_d, z_d, ZenoMethod.CLOSED_FORM, tol)


def zeno_difference(
    config: CouplerConfig, z: float, tol_class: typing.Optional[float] = None
) -> ZenoResult:
    """
    Zeno parameters by definition: the mean numbers at length z minus the same
    means of an uncoupled monitor (Gamma = 0), both fully evaluated.

    The two evaluations are subtracted label by label before summing, so terms
    that do not depend on Gamma cancel exactly.
    """
    _, tol = _tolerance(config, z, tol_class)
    uncoupled = config.model_copy(
        update={"couplings": config.couplings.model_copy(update={"Gamma": 0.0})}
    )
    coupled_terms = number_terms(config, z)
    reference_terms = number_terms(uncoupled, z)
    flags = sorted(
        set(expectations_from_terms(config, z, coupled_terms).flags)
        | set(expectations_from_terms(uncoupled, z, reference_terms).flags)
    )
    z_b, z_c, z_d = (
        assemble(difference_terms(terms, reference))[0]
        for terms, reference in zip(coupled_terms, reference_terms)
    )
    return build_result(z_b, z_c, z_d, ZenoMethod.DIFFERENCE, tol, flags)


def _resonant_term(depth: float, z: float, phase: typing.Callable[[], float]) -> float:
    if depth == 0:
        return 0.0
    return -0.5 * depth * z * z * math.cos(phase())


def zeno_resonant(
    config: CouplerConfig, z: float, tol_class: typing.Optional[float] = None
) -> ZenoResult:
    """
    Resonant Zeno parameters, Z = -C z^2 cos(theta) / 2.

    Detunings of the configuration are ignored.
    """
    scaling, tol = _tolerance(config, z, tol_class)
    amps = config.amplitudes
    z_b = _resonant_term(scaling.c_b, z, lambda: stokes_phase_mismatch(amps))
    z_d = _resonant_term(scaling.c_d, z, lambda: antistokes_phase_mismatch(amps))
    return build_result(z_b, z_b - z_d, z_d, ZenoMethod.RESONANT, tol)


def zeno_phonon_excitation(
    config: CouplerConfig, z: float, tol_class: typing.Optional[float] = None
) -> ZenoResult:
    """
    Zeno parameters under the phonon-excitation condition dD = dS = -dA = Delta,
    with Delta read from the configuration's dD.

    Evaluates to Z_b = -C_b z^2 sinc^2(Delta z/2) cos(Delta z - theta2) / 2 and
    Z_d = -C_d z^2 sinc^2(Delta z/2) cos(Delta z + theta1) / 2.
    """
    scaling, tol = _tolerance(config, z, tol_class)
    delta = detunings(config.frequencies).dD
    amps = config.amplitudes

    z_b = 0.0
    if scaling.c_b > 0:
        kernel = stokes_zeno_kernel(delta, delta, z)
        theta2 = stokes_phase_mismatch(amps)
        z_b = scaling.c_b * (complex(math.cos(theta2), -math.sin(theta2)) * kernel).real
    z_d = 0.0
    if scaling.c_d > 0:
        kernel = antistokes_zeno_kernel(-delta, delta, z)
        theta1 = antistokes_phase_mismatch(amps)
        z_d = scaling.c_d * (complex(math.cos(theta1), math.sin(theta1)) * kernel).real
    return build_result(z_b, z_b - z_d, z_d, ZenoMethod.PHONON_EXCITATION, tol)


_EVALUATORS: typing.Dict[
    ZenoMethod,
    typing.Callable[[CouplerConfig, float, typing.Optional[float]], ZenoResult],
] = {
    ZenoMethod.CLOSED_FORM: zeno_closed,
    ZenoMethod.DIFFERENCE: zeno_difference,
    ZenoMethod.RESONANT: zeno_resonant,
    ZenoMethod.PHONON_EXCITATION: zeno_phonon_excitation,
}


def zeno(
    config: CouplerConfig,
    z: float,
    method: ZenoMethod = ZenoMethod.CLOSED_FORM,
    tol_class: typing.Optional[float] = None,
) -> ZenoResult:
    """
    Evaluate the Zeno parameters with a perturbative method.

    The oracle method lives in `apps.oracle.propagation.oracle_zeno`.
    """
    try:
        evaluator = _EVALUATORS[method]
    except KeyError:
        raise ValueError(f"{method.value} is not a perturbative method") from None
    return evaluator(config, z, tol_class)


def reduce(config: CouplerConfig, variant: Reduction) -> CouplerConfig:
    """
    Reduce the coupler to a special case.

    Raman drops the second pump (alpha2 = 0); degenerate hyper-Raman merges the
    pumps (alpha2 = alpha1).
    """
    amps = config.amplitudes
    if variant is Reduction.RAMAN:
        alpha2 = 0j
    else:
        alpha2 = amps.alpha1
    logger.debug(f"Reducing configuration to {variant.value}")
    return config.model_copy(
        update={"amplitudes": amps.model_copy(update={"alpha2": alpha2})}
    )


__all__ = [
    "scaling_coefficients",
    "phonon_balance",
    "default_tolerance",
    "classify",
    "build_result",
    "zeno_closed",
    "zeno_difference",
    "zeno_resonant",
    "zeno_phonon_excitation",
    "zeno",
    "reduce",
]
