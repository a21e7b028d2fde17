import logging

from apps.coupler.schemas import CouplerConfig
from apps.observables.means import number_expectations
from apps.oracle.propagation import oracle_numbers, oracle_zeno
from apps.oracle.schemas import FockConfig
from apps.zeno.parameters import zeno_closed
from .schemas import OracleComparison, QuantityComparison


logger = logging.getLogger(__name__)

RELATIVE_AGREEMENT = 0.05
ABSOLUTE_AGREEMENT = 1e-9


def _compare(name: str, perturbative: float, oracle: float) -> QuantityComparison:
    difference = abs(perturbative - oracle)
    bound = max(RELATIVE_AGREEMENT * abs(oracle), ABSOLUTE_AGREEMENT)
    return QuantityComparison(
        name=name,
        perturbative=perturbative,
        oracle=oracle,
        difference=difference,
        bound=bound,
        agrees=difference <= bound,
    )


def compare_with_oracle(
    config: CouplerConfig, fock: FockConfig, z: float
) -> OracleComparison:
    """
    Compare the second-order means and closed-form Zeno parameters with the
    exact truncated-Fock evolution.

    Each quantity agrees when |perturbative - oracle| <= max(5% |oracle|, 1e-9).
    """
    means = number_expectations(config, z)
    exact = oracle_numbers(config, fock, z)
    closed = zeno_closed(config, z)
    exact_zeno = oracle_zeno(config, fock, z)

    quantities = [
        _compare("n_b", means.n_b, exact.n_b),
        _compare("n_c", means.n_c, exact.n_c),
        _compare("n_d", means.n_d, exact.n_d),
        _compare("Z_b", closed.z_b, exact_zeno.z_b),
        _compare("Z_c", closed.z_c, exact_zeno.z_c),
        _compare("Z_d", closed.z_d, exact_zeno.z_d),
    ]
    agrees = all(q.agrees for q in quantities)
    if not agrees:
        failing = [q.name for q in quantities if not q.agrees]
        logger.warning(f"Oracle disagreement at z={z} for {failing}")
    return OracleComparison(
        z=z,
        cutoffs=tuple(fock.cutoffs),
        norm_deficit=exact.norm_deficit,
        leakage=exact.leakage,
        quantities=quantities,
        agrees=agrees,
    )


__all__ = ["compare_with_oracle"]
