import typing


class CouplerError(Exception):
    """Base class of errors raised by the project"""

    code: str = "coupler_error"
    exit_code: int = 1

    def __init__(self, message: str, *, field: typing.Optional[str] = None) -> None:
        super().__init__(message)
        self.message = message
        self.field = field

    def to_dict(self) -> typing.Dict[str, typing.Any]:
        return {"code": self.code, "message": self.message, "field": self.field}


__all__ = ["CouplerError"]
