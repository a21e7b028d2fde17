import pytest

from apps.coupler.algebra import retune
from apps.coupler.schemas import CoherentAmplitudes, CouplerConfig
from apps.sweeps.presets import (
    FIGURE_COUPLINGS,
    FIGURE_MAGNITUDES,
    FIGURE_RESONANT_FREQUENCIES,
    desk_config,
    desk_fock,
)
from helpers.config import settings


@pytest.fixture(scope="session", autouse=True)
def configured_settings():
    settings.configure("core.settings.development")
    return settings


@pytest.fixture
def figure_amplitudes() -> CoherentAmplitudes:
    """Published figure magnitudes, zero phases"""
    return CoherentAmplitudes.from_polar(FIGURE_MAGNITUDES)


@pytest.fixture
def figure_config(figure_amplitudes) -> CouplerConfig:
    """Figure amplitudes and couplings at full resonance"""
    return CouplerConfig(
        frequencies=FIGURE_RESONANT_FREQUENCIES,
        couplings=FIGURE_COUPLINGS,
        amplitudes=figure_amplitudes,
    )


@pytest.fixture
def detuned_figure_config(figure_config) -> CouplerConfig:
    """Figure configuration in the phase-sweep regime"""
    return figure_config.model_copy(
        update={
            "frequencies": retune(figure_config.frequencies, dS=1e-2, dA=1e-2, dD=1e-3)
        }
    )


@pytest.fixture
def desk() -> CouplerConfig:
    return desk_config()


@pytest.fixture
def fock():
    return desk_fock()
