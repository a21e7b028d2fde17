import datetime

import ulid


def generate_uid(prefix: str = "zeno_") -> str:
    """
    Generate a unique identifier using the ULID algorithm

    :param prefix: The prefix to prepend to the generated ULID
    :return: prefix + ulid
    """
    return prefix + ulid.ulid()


def utcnow() -> datetime.datetime:
    return datetime.datetime.now(datetime.timezone.utc)


__all__ = ["generate_uid", "utcnow"]
