from helpers.exceptions import CouplerError


class InvalidSignature(CouplerError):
    """Numerator pattern not in the kernel catalog"""

    code = "invalid_signature"


__all__ = ["InvalidSignature"]
