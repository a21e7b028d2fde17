import logging
import typing

import numpy as np

from .exceptions import ZeroAmplitudePhase
from .schemas import (
    CoherentAmplitudes,
    CouplerConfig,
    Detunings,
    Frequencies,
    PhaseMismatch,
    StimulationRegime,
)


logger = logging.getLogger(__name__)

# U(1) charges commuting with the momentum operator, per mode (p, a1, a2, b, c, d)
CONSERVED_CHARGES = np.array(
    [
        [0.0, 0.0, 0.0, -1.0, 1.0, 1.0],
        [1.0, 0.5, 0.5, 1.0, 0.0, 1.0],
        [0.0, 1.0, -1.0, 0.0, 0.0, 0.0],
    ]
)


def wrap_phase(phase: float) -> float:
    """Wrap an angle to (-pi, pi]"""
    return float(np.pi - np.remainder(np.pi - phase, 2 * np.pi))


def detunings(freqs: Frequencies) -> Detunings:
    """
    Compute the seven frequency mismatches of the coupler.

    :param freqs: mode frequencies
    :return: detunings in units of g
    """
    pumps = freqs.omega_a1 + freqs.omega_a2
    return Detunings(
        dS=-freqs.omega_a1 - freqs.omega_a2 + freqs.omega_b + freqs.omega_c,
        dA=pumps + freqs.omega_c - freqs.omega_d,
        dD=pumps - freqs.omega_p,
        d1=2 * freqs.omega_a1 + 2 * freqs.omega_a2 - freqs.omega_b - freqs.omega_d,
        d2=freqs.omega_b + 2 * freqs.omega_c - freqs.omega_d,
        d3=freqs.omega_b + freqs.omega_c - freqs.omega_p,
        d4=freqs.omega_c - freqs.omega_d + freqs.omega_p,
    )


def retune(
    freqs: Frequencies,
    dS: typing.Optional[float] = None,
    dA: typing.Optional[float] = None,
    dD: typing.Optional[float] = None,
) -> Frequencies:
    """
    Return frequencies realizing the requested detunings.

    Pump and phonon frequencies are kept; the Stokes, anti-Stokes and monitor
    frequencies absorb the change. Detunings left as None are unchanged.
    """
    pumps = freqs.omega_a1 + freqs.omega_a2
    update: typing.Dict[str, float] = {}
    if dS is not None:
        update["omega_b"] = pumps - freqs.omega_c + dS
    if dA is not None:
        update["omega_d"] = pumps + freqs.omega_c - dA
    if dD is not None:
        update["omega_p"] = pumps - dD
    return freqs.model_copy(update=update)


def radiation_energy_balanced(freqs: Frequencies, atol: float = 1e-12) -> bool:
    """Whether 2(omega_a1 + omega_a2) = omega_b + omega_d, i.e. dA = dS"""
    pumps = freqs.omega_a1 + freqs.omega_a2
    return bool(abs(2 * pumps - freqs.omega_b - freqs.omega_d) <= atol)


def _phase(amplitude: complex, name: str) -> float:
    if amplitude == 0:
        raise ZeroAmplitudePhase(
            f"Phase of {name} is undefined for a zero amplitude", field=name
        )
    return float(np.angle(amplitude))


def antistokes_phase_mismatch(amps: CoherentAmplitudes) -> float:
    """Anti-Stokes phase mismatch phi_d - phi_p - phi_c"""
    return wrap_phase(
        _phase(amps.delta, "delta")
        - _phase(amps.alpha, "alpha")
        - _phase(amps.gamma, "gamma")
    )


def stokes_phase_mismatch(amps: CoherentAmplitudes) -> float:
    """Stokes phase mismatch phi_p - phi_b - phi_c"""
    return wrap_phase(
        _phase(amps.alpha, "alpha")
        - _phase(amps.beta, "beta")
        - _phase(amps.gamma, "gamma")
    )


def phase_mismatches(amps: CoherentAmplitudes) -> PhaseMismatch:
    """
    Compute both phase mismatches.

    :raises ZeroAmplitudePhase: if alpha, beta, gamma or delta vanishes
    """
    return PhaseMismatch(
        theta1=antistokes_phase_mismatch(amps),
        theta2=stokes_phase_mismatch(amps),
    )


def with_phase_mismatch(
    amps: CoherentAmplitudes,
    theta1: typing.Optional[float] = None,
    theta2: typing.Optional[float] = None,
) -> CoherentAmplitudes:
    """
    Rotate the anti-Stokes and Stokes phases so that the phase mismatches take
    the requested values. Magnitudes and the other four amplitudes are untouched.

    :param amps: amplitudes to adjust
    :param theta1: requested anti-Stokes mismatch, sets arg(delta)
    :param theta2: requested Stokes mismatch, sets arg(beta)
    :raises ZeroAmplitudePhase: when the amplitude to rotate vanishes
    """
    phi_p = float(np.angle(amps.alpha))
    phi_c = float(np.angle(amps.gamma))
    update: typing.Dict[str, complex] = {}
    if theta2 is not None:
        _phase(amps.beta, "beta")
        phi_b = wrap_phase(phi_p - phi_c - theta2)
        update["beta"] = complex(abs(amps.beta) * np.exp(1j * phi_b))
    if theta1 is not None:
        _phase(amps.delta, "delta")
        phi_d = wrap_phase(theta1 + phi_p + phi_c)
        update["delta"] = complex(abs(amps.delta) * np.exp(1j * phi_d))
    return amps.model_copy(update=update)


def rephase(
    amps: CoherentAmplitudes,
    phi1: float = 0.0,
    phi2: float = 0.0,
    phi3: float = 0.0,
) -> CoherentAmplitudes:
    """
    Apply the rephasing generated by the conserved charges
    N_c + N_d - N_b, N_p + (N_a1 + N_a2)/2 + N_b + N_d and N_a1 - N_a2.

    Number expectations are invariant under this map.
    """
    angles = np.array([phi1, phi2, phi3]) @ CONSERVED_CHARGES
    rotated = amps.as_array() * np.exp(1j * angles)
    names = ("alpha", "alpha1", "alpha2", "beta", "gamma", "delta")
    return CoherentAmplitudes(**{n: complex(v) for n, v in zip(names, rotated)})


def stimulation_regime(amps: CoherentAmplitudes) -> StimulationRegime:
    """Classify the initial state by the populated Stokes, phonon and anti-Stokes modes"""
    populated = [amps.beta != 0, amps.gamma != 0, amps.delta != 0]
    if not any(populated):
        return StimulationRegime.SPONTANEOUS
    if all(populated):
        return StimulationRegime.STIMULATED
    return StimulationRegime.PARTIALLY_STIMULATED


def diagnostics(config: CouplerConfig) -> typing.List[str]:
    """Flags describing non-physical inputs of a configuration"""
    flags = []
    for name, value in config.frequencies.model_dump().items():
        if value <= 0:
            flags.append(f"nonphysical_frequency:{name}")
    if flags:
        logger.warning(f"Non-physical frequencies in configuration: {flags}")
    return flags


__all__ = [
    "CONSERVED_CHARGES",
    "wrap_phase",
    "detunings",
    "retune",
    "radiation_energy_balanced",
    "antistokes_phase_mismatch",
    "stokes_phase_mismatch",
    "phase_mismatches",
    "with_phase_mismatch",
    "rephase",
    "stimulation_regime",
    "diagnostics",
]
