import logging
import math
import typing

import numpy as np
from scipy.sparse import linalg as sparse_linalg

from apps.coupler.schemas import CouplerConfig, Mode
from apps.zeno.parameters import build_result, default_tolerance, scaling_coefficients
from apps.zeno.schemas import ZenoMethod, ZenoResult
from .exceptions import LeakageExceeded, StepFailure
from .fock import (
    basis_dimension,
    boundary_leakage,
    build_generator,
    check_budget,
    coherent_state_truncated,
    expectation_number,
)
from .schemas import (
    ConstantsOfMotion,
    ConvergenceReport,
    FockConfig,
    GeneratorMatrix,
    OracleNumbers,
    TruncatedState,
)


logger = logging.getLogger(__name__)

DEFAULT_CONVERGENCE_INCREMENTS = 3


def evolve(
    state: TruncatedState,
    generator: GeneratorMatrix,
    z: float,
    fock: typing.Optional[FockConfig] = None,
) -> TruncatedState:
    """
    Propagate d|psi>/dz = +iG|psi> over length z.

    The propagator acts through `expm_multiply` in steps no longer than
    `fock.max_step`. Norm and boundary occupation are checked after every step.

    :raises StepFailure: if a step changes the norm by more than `fock.step_rtol`
    :raises LeakageExceeded: if a boundary Fock layer holds more than `fock.leakage_tol`
    """
    if fock is None:
        fock = FockConfig(cutoffs=state.cutoffs)
    if z < 0:
        raise ValueError(f"Propagation length must be non-negative, got {z!r}")
    if tuple(state.cutoffs) != tuple(generator.cutoffs):
        raise ValueError("State and generator are built on different cutoffs")

    steps = math.ceil(z / fock.max_step) if z > 0 else 0
    psi = np.asarray(state.amplitudes, dtype=complex)
    leakage = boundary_leakage(psi, state.cutoffs)
    if steps:
        step = z / steps
        propagator = (1j * step) * generator.matrix
        for index in range(steps):
            norm_before = np.vdot(psi, psi).real
            psi = sparse_linalg.expm_multiply(propagator, psi)
            drift = abs(np.vdot(psi, psi).real - norm_before) / norm_before
            if drift > fock.step_rtol:
                raise StepFailure(
                    f"Step {index + 1}/{steps} changed the norm by {drift:.3e}, "
                    f"above the step tolerance {fock.step_rtol:.1e}"
                )
            leakage = max(leakage, boundary_leakage(psi, state.cutoffs))
            if leakage > fock.leakage_tol:
                raise LeakageExceeded(
                    f"Boundary occupation {leakage:.3e} at z={(index + 1) * step:.6g} "
                    f"exceeds the leakage tolerance {fock.leakage_tol:.1e}",
                    field="cutoffs",
                )
        logger.debug(f"Propagated {generator.dimension} states over z={z} in {steps} steps")

    return TruncatedState(
        amplitudes=psi,
        cutoffs=state.cutoffs,
        norm_deficit=state.norm_deficit,
        leakage=leakage,
    )


def propagate(config: CouplerConfig, fock: FockConfig, z: float) -> TruncatedState:
    """Evolve the truncated initial coherent state of a configuration"""
    generator = build_generator(
        config.frequencies, config.couplings, fock.cutoffs, fock.max_dimension
    )
    initial = coherent_state_truncated(config.amplitudes, fock)
    return evolve(initial, generator, z, fock)


def _numbers(state: TruncatedState) -> typing.Dict[str, float]:
    return {f"n_{mode.value}": expectation_number(state, mode) for mode in Mode}


def oracle_numbers(config: CouplerConfig, fock: FockConfig, z: float) -> OracleNumbers:
    """Exact mean numbers of all six modes at length z"""
    state = propagate(config, fock, z)
    return OracleNumbers(
        **_numbers(state),
        norm=state.norm,
        leakage=state.leakage,
        norm_deficit=state.norm_deficit,
    )


def oracle_zeno(
    config: CouplerConfig,
    fock: FockConfig,
    z: float,
    tol_class: typing.Optional[float] = None,
) -> ZenoResult:
    """
    Zeno parameters from two exact evolutions, with Gamma as configured and
    with Gamma = 0.
    """
    coupled = oracle_numbers(config, fock, z)
    uncoupled = oracle_numbers(
        config.model_copy(
            update={"couplings": config.couplings.model_copy(update={"Gamma": 0.0})}
        ),
        fock,
        z,
    )
    if tol_class is None:
        tol_class = default_tolerance(
            scaling_coefficients(config.couplings, config.amplitudes), z
        )
    return build_result(
        coupled.n_b - uncoupled.n_b,
        coupled.n_c - uncoupled.n_c,
        coupled.n_d - uncoupled.n_d,
        ZenoMethod.ORACLE,
        tol_class,
    )


def constants_of_motion(state: TruncatedState) -> ConstantsOfMotion:
    """Expectations of the number combinations commuting with the momentum operator"""
    n = _numbers(state)
    return ConstantsOfMotion(
        phonon_balance=n["n_c"] + n["n_d"] - n["n_b"],
        monitor_pump=n["n_p"] + 0.5 * (n["n_a1"] + n["n_a2"]) + n["n_b"] + n["n_d"],
        pump_imbalance=n["n_a1"] - n["n_a2"],
    )


def affordable_increments(fock: FockConfig) -> int:
    """Number of uniform cutoff raises whose basis stays within `fock.max_dimension`"""
    increments = 0
    while basis_dimension([c + increments + 1 for c in fock.cutoffs]) <= fock.max_dimension:
        increments += 1
    return increments


def truncation_convergence(
    config: CouplerConfig,
    fock: FockConfig,
    z: float,
    increments: typing.Optional[int] = None,
) -> ConvergenceReport:
    """
    Certify cutoffs by raising every cutoff by one, `increments` times.

    Converged when each change of the Stokes, phonon and anti-Stokes means is
    smaller than the previous one. Without `increments`, as many raises as the
    dimension budget allows are made, at most `DEFAULT_CONVERGENCE_INCREMENTS`.

    :raises BudgetExceeded: before any propagation, if the largest cutoffs do
        not fit the budget
    """
    if increments is None:
        increments = max(1, min(DEFAULT_CONVERGENCE_INCREMENTS, affordable_increments(fock)))
    if increments < 1:
        raise ValueError(f"increments must be at least 1, got {increments!r}")
    check_budget([c + increments for c in fock.cutoffs], fock.max_dimension)

    cutoffs_list = []
    means = []
    for k in range(increments + 1):
        cutoffs = tuple(c + k for c in fock.cutoffs)
        numbers = oracle_numbers(config, fock.model_copy(update={"cutoffs": cutoffs}), z)
        cutoffs_list.append(cutoffs)
        means.append((numbers.n_b, numbers.n_c, numbers.n_d))

    changes = [
        float(np.max(np.abs(np.subtract(current, previous))))
        for previous, current in zip(means, means[1:])
    ]
    converged = all(later < earlier for earlier, later in zip(changes, changes[1:]))
    logger.info(f"Truncation convergence changes {changes}, converged={converged}")
    return ConvergenceReport(
        cutoffs=cutoffs_list, means=means, changes=changes, converged=converged
    )


__all__ = [
    "evolve",
    "propagate",
    "oracle_numbers",
    "oracle_zeno",
    "constants_of_motion",
    "affordable_increments",
    "truncation_convergence",
]
