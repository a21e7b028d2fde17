from helpers.exceptions import CouplerError


class ZeroAmplitudePhase(CouplerError):
    """A phase was requested for an amplitude of zero magnitude"""

    code = "zero_amplitude_phase"


__all__ = ["ZeroAmplitudePhase"]
