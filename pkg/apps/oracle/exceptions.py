from helpers.exceptions import CouplerError


class BudgetExceeded(CouplerError):
    """Truncated basis larger than the configured dimension budget"""

    code = "budget_exceeded"


class ExcessiveTruncation(CouplerError):
    """Coherent-state probability beyond the cutoffs exceeds the leakage tolerance"""

    code = "excessive_truncation"


class LeakageExceeded(CouplerError):
    """Evolution populated a boundary Fock layer beyond the leakage tolerance"""

    code = "leakage_exceeded"


class StepFailure(CouplerError):
    """A propagation step did not preserve the norm to the step tolerance"""

    code = "step_failure"


class DumpFormatError(CouplerError):
    """Malformed binary state dump"""

    code = "dump_format_error"


__all__ = [
    "BudgetExceeded",
    "ExcessiveTruncation",
    "LeakageExceeded",
    "StepFailure",
    "DumpFormatError",
]
