"""
Binary debug dumps of truncated states.

Layout, little-endian: six uint32 mode cutoffs, one uint64 basis dimension,
then the complex128 amplitudes (interleaved real and imaginary float64) in
basis order.
"""

import logging
import math
import typing
from pathlib import Path

import numpy as np

from .exceptions import DumpFormatError
from .schemas import TruncatedState


logger = logging.getLogger(__name__)

CUTOFFS_DTYPE = np.dtype("<u4")
DIMENSION_DTYPE = np.dtype("<u8")
AMPLITUDE_DTYPE = np.dtype("<c16")
HEADER_SIZE = 6 * CUTOFFS_DTYPE.itemsize + DIMENSION_DTYPE.itemsize


def encode_state(state: TruncatedState) -> bytes:
    header = np.asarray(state.cutoffs, dtype=CUTOFFS_DTYPE).tobytes()
    header += np.asarray([state.amplitudes.size], dtype=DIMENSION_DTYPE).tobytes()
    return header + np.asarray(state.amplitudes, dtype=AMPLITUDE_DTYPE).tobytes()


def decode_state(data: bytes) -> TruncatedState:
    """
    :raises DumpFormatError: on a short header or a dimension that does not
        match the cutoffs or the payload
    """
    if len(data) < HEADER_SIZE:
        raise DumpFormatError(f"Dump of {len(data)} bytes is shorter than its header")
    cutoffs = tuple(int(c) for c in np.frombuffer(data, CUTOFFS_DTYPE, count=6))
    dimension = int(np.frombuffer(data, DIMENSION_DTYPE, count=1, offset=6 * 4)[0])
    if dimension != math.prod(c + 1 for c in cutoffs):
        raise DumpFormatError(
            f"Dimension {dimension} does not match cutoffs {cutoffs}", field="dimension"
        )
    payload = len(data) - HEADER_SIZE
    if payload != dimension * AMPLITUDE_DTYPE.itemsize:
        raise DumpFormatError(
            f"Expected {dimension} amplitudes, found {payload} payload bytes"
        )
    amplitudes = np.frombuffer(data, AMPLITUDE_DTYPE, offset=HEADER_SIZE).astype(complex)
    return TruncatedState(amplitudes=amplitudes, cutoffs=cutoffs)


def dump_state(state: TruncatedState, path: typing.Union[str, Path]) -> Path:
    """Write a state to `path`"""
    path = Path(path)
    path.write_bytes(encode_state(state))
    logger.debug(f"Dumped {state.amplitudes.size} amplitudes to {path}")
    return path


def load_state(path: typing.Union[str, Path]) -> TruncatedState:
    """Read a state written by `dump_state`"""
    return decode_state(Path(path).read_bytes())


__all__ = ["encode_state", "decode_state", "dump_state", "load_state"]
