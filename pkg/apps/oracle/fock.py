"""
Truncated product Fock basis of the six coupler modes.

Basis states are ordered lexicographically in (p, a1, a2, b, c, d) with the
anti-Stokes occupation running fastest, matching `numpy.ravel_multi_index`.
"""

import functools
import logging
import math
import threading
import typing

import cachetools
import numpy as np
from scipy import sparse, stats

from apps.coupler.schemas import CoherentAmplitudes, Couplings, Frequencies, Mode
from helpers.config import settings
from .exceptions import BudgetExceeded, ExcessiveTruncation
from .schemas import Cutoffs, FockConfig, GeneratorMatrix, TruncatedState


logger = logging.getLogger(__name__)


def basis_dimension(cutoffs: typing.Sequence[int]) -> int:
    return math.prod(c + 1 for c in cutoffs)


def check_budget(cutoffs: typing.Sequence[int], max_dimension: int) -> int:
    """
    :return: the basis dimension
    :raises BudgetExceeded: if it exceeds `max_dimension`
    """
    dimension = basis_dimension(cutoffs)
    if dimension > max_dimension:
        raise BudgetExceeded(
            f"Basis dimension {dimension} for cutoffs {tuple(cutoffs)} exceeds "
            f"the budget of {max_dimension}",
            field="cutoffs",
        )
    return dimension


@functools.lru_cache(maxsize=16)
def occupations(cutoffs: Cutoffs) -> np.ndarray:
    """
    Occupation numbers of every basis state.

    :return: integer array of shape (dimension, 6)
    """
    shape = tuple(c + 1 for c in cutoffs)
    table = np.indices(shape).reshape(len(shape), -1).T
    table.flags.writeable = False
    return table


def basis_index(cutoffs: Cutoffs, numbers: typing.Sequence[int]) -> int:
    """Index of the basis state with the given occupations"""
    return int(np.ravel_multi_index(tuple(numbers), tuple(c + 1 for c in cutoffs)))


def _lowering(cutoff: int) -> sparse.csr_matrix:
    return sparse.diags(np.sqrt(np.arange(1, cutoff + 1)), offsets=1, format="csr")


def _mode_operator(cutoffs: Cutoffs, mode: Mode, raising: bool = False) -> sparse.csr_matrix:
    """Truncated ladder operator of one mode embedded in the product basis"""
    factors = [sparse.identity(c + 1, format="csr") for c in cutoffs]
    lowering = _lowering(cutoffs[mode.index])
    factors[mode.index] = lowering.T.tocsr() if raising else lowering
    return functools.reduce(lambda a, b: sparse.kron(a, b, format="csr"), factors)


def _interaction(cutoffs: Cutoffs, *factors: typing.Tuple[Mode, bool]) -> sparse.csr_matrix:
    operators = [_mode_operator(cutoffs, mode, raising) for mode, raising in factors]
    return functools.reduce(lambda a, b: a @ b, operators)


@cachetools.cached(
    cache=cachetools.LRUCache(maxsize=settings.GENERATOR_CACHE_SIZE),
    lock=threading.RLock(),
)
def _assemble_generator(
    freqs: Frequencies, couplings: Couplings, cutoffs: Cutoffs
) -> GeneratorMatrix:
    dimension = basis_dimension(cutoffs)
    logger.debug(f"Assembling generator on {dimension} basis states, cutoffs {cutoffs}")

    diagonal = occupations(cutoffs) @ freqs.as_array()
    lower = sparse.csr_matrix((dimension, dimension))
    if couplings.g:
        # g a1 a2 b^dag c^dag
        lower = lower + couplings.g * _interaction(
            cutoffs,
            (Mode.PUMP1, False),
            (Mode.PUMP2, False),
            (Mode.STOKES, True),
            (Mode.PHONON, True),
        )
    if couplings.chi:
        # chi a1 a2 c d^dag
        lower = lower + couplings.chi * _interaction(
            cutoffs,
            (Mode.PUMP1, False),
            (Mode.PUMP2, False),
            (Mode.PHONON, False),
            (Mode.ANTISTOKES, True),
        )
    if couplings.Gamma:
        # Gamma a_p a1^dag a2^dag
        lower = lower + couplings.Gamma * _interaction(
            cutoffs,
            (Mode.MONITOR, False),
            (Mode.PUMP1, True),
            (Mode.PUMP2, True),
        )

    matrix = sparse.csr_matrix(sparse.diags(diagonal) + lower + lower.T)
    matrix.sum_duplicates()
    matrix.eliminate_zeros()
    return GeneratorMatrix(
        matrix=matrix, frequencies=freqs, couplings=couplings, cutoffs=cutoffs
    )


def build_generator(
    freqs: Frequencies,
    couplings: Couplings,
    cutoffs: typing.Sequence[int],
    max_dimension: typing.Optional[int] = None,
) -> GeneratorMatrix:
    """
    Build the momentum operator on the truncated basis.

    Interaction terms are products of truncated ladder operators, so transitions
    leaving the truncated space are dropped and the matrix stays exactly symmetric.
    Generators are cached per (frequencies, couplings, cutoffs).

    :raises BudgetExceeded: if the basis is larger than `max_dimension`
        (default `settings.ORACLE["MAX_DIMENSION"]`)
    """
    cutoffs = typing.cast(Cutoffs, tuple(int(c) for c in cutoffs))
    if max_dimension is None:
        max_dimension = settings.ORACLE["MAX_DIMENSION"]
    check_budget(cutoffs, max_dimension)
    return _assemble_generator(freqs, couplings, cutoffs)


def coherent_vector(amplitude: complex, cutoff: int) -> np.ndarray:
    """Unnormalized truncated coherent state e^{-|l|^2/2} l^n / sqrt(n!), n <= cutoff"""
    vector = np.empty(cutoff + 1, dtype=complex)
    vector[0] = np.exp(-0.5 * abs(amplitude) ** 2)
    for n in range(1, cutoff + 1):
        vector[n] = vector[n - 1] * amplitude / np.sqrt(n)
    return vector


def truncation_tail(amplitude: complex, cutoff: int) -> float:
    """Poisson probability of more than `cutoff` quanta in a coherent state"""
    return float(stats.poisson.sf(cutoff, abs(amplitude) ** 2))


def coherent_state_truncated(
    amps: CoherentAmplitudes, fock: FockConfig
) -> TruncatedState:
    """
    Product coherent state on the truncated basis, renormalized.

    :raises ExcessiveTruncation: if the probability lost to truncation exceeds
        the leakage tolerance
    """
    check_budget(fock.cutoffs, fock.max_dimension)
    values = amps.as_array()
    tails = np.array(
        [truncation_tail(value, cutoff) for value, cutoff in zip(values, fock.cutoffs)]
    )
    norm_deficit = float(-np.expm1(np.sum(np.log1p(-tails))))
    if norm_deficit > fock.leakage_tol:
        raise ExcessiveTruncation(
            f"Truncation drops probability {norm_deficit:.3e}, above the leakage "
            f"tolerance {fock.leakage_tol:.1e}",
            field="cutoffs",
        )

    vectors = [coherent_vector(value, cutoff) for value, cutoff in zip(values, fock.cutoffs)]
    state = functools.reduce(np.kron, vectors)
    state = state / np.linalg.norm(state)
    return TruncatedState(
        amplitudes=state,
        cutoffs=fock.cutoffs,
        norm_deficit=norm_deficit,
        leakage=boundary_leakage(state, fock.cutoffs),
    )


def basis_state(cutoffs: typing.Sequence[int], numbers: typing.Sequence[int]) -> TruncatedState:
    """Fock basis state with the given occupations"""
    cutoffs = typing.cast(Cutoffs, tuple(int(c) for c in cutoffs))
    amplitudes = np.zeros(basis_dimension(cutoffs), dtype=complex)
    amplitudes[basis_index(cutoffs, numbers)] = 1.0
    return TruncatedState(amplitudes=amplitudes, cutoffs=cutoffs)


def boundary_leakage(amplitudes: np.ndarray, cutoffs: Cutoffs) -> float:
    """Largest probability on a boundary layer n_m = cutoff_m over the modes"""
    probabilities = np.abs(amplitudes) ** 2
    table = occupations(cutoffs)
    return float(
        max(probabilities[table[:, m] == cutoff].sum() for m, cutoff in enumerate(cutoffs))
    )


def expectation_number(state: TruncatedState, mode: typing.Union[Mode, str]) -> float:
    """Mean occupation of one mode"""
    mode = Mode(mode)
    probabilities = np.abs(state.amplitudes) ** 2
    return float(probabilities @ occupations(state.cutoffs)[:, mode.index])


def expectation_generator(state: TruncatedState, generator: GeneratorMatrix) -> float:
    """<psi|G|psi>"""
    return float(np.vdot(state.amplitudes, generator.matrix @ state.amplitudes).real)


__all__ = [
    "basis_dimension",
    "check_budget",
    "occupations",
    "basis_index",
    "build_generator",
    "coherent_vector",
    "truncation_tail",
    "coherent_state_truncated",
    "basis_state",
    "boundary_leakage",
    "expectation_number",
    "expectation_generator",
]
