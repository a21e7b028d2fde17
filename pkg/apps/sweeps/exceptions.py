from helpers.exceptions import CouplerError


class ConfigError(CouplerError):
    """Unreadable or inconsistent configuration file"""

    code = "config_error"
    exit_code = 2


class UnknownPreset(ConfigError):
    code = "unknown_preset"


class SweepBudgetExceeded(ConfigError):
    """Oracle sweep larger than the point budget"""

    code = "sweep_budget_exceeded"


class OracleDisagreement(CouplerError):
    """Perturbative and exact results differ beyond the agreement bound"""

    code = "oracle_disagreement"
    exit_code = 3


__all__ = ["ConfigError", "UnknownPreset", "SweepBudgetExceeded", "OracleDisagreement"]
