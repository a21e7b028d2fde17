import numpy as np
import pytest
from scipy import sparse

from apps.coupler.algebra import retune
from apps.coupler.schemas import Couplings, Mode
from apps.oracle import propagation
from apps.oracle.dumps import decode_state, dump_state, encode_state, load_state
from apps.oracle.exceptions import (
    BudgetExceeded,
    DumpFormatError,
    ExcessiveTruncation,
    LeakageExceeded,
    StepFailure,
)
from apps.oracle.fock import (
    _mode_operator,
    basis_index,
    basis_state,
    build_generator,
    coherent_state_truncated,
    expectation_generator,
    expectation_number,
    occupations,
    truncation_tail,
)
from apps.oracle.propagation import (
    affordable_increments,
    constants_of_motion,
    evolve,
    oracle_numbers,
    oracle_zeno,
    propagate,
    truncation_convergence,
)
from apps.oracle.schemas import FockConfig
from apps.sweeps.comparison import compare_with_oracle
from apps.zeno.schemas import ZenoMethod


SMALL = (2, 2, 2, 2, 2, 2)


class TestBasis:
    def test_occupations_order(self):
        table = occupations((1, 1, 1, 1, 1, 1))
        assert table.shape == (64, 6)
        assert list(table[1]) == [0, 0, 0, 0, 0, 1]
        assert list(table[-1]) == [1, 1, 1, 1, 1, 1]

    def test_basis_index_matches_occupations(self):
        index = basis_index(SMALL, (1, 0, 2, 0, 1, 2))
        assert list(occupations(SMALL)[index]) == [1, 0, 2, 0, 1, 2]


class TestGenerator:
    def test_symmetric(self, desk):
        generator = build_generator(desk.frequencies, desk.couplings, SMALL)
        assert (generator.matrix - generator.matrix.T).count_nonzero() == 0
        assert generator.dimension == 3**6

    def test_uncoupled_generator_is_diagonal(self, desk):
        couplings = Couplings(g=0.0, chi=0.0, Gamma=0.0)
        matrix = build_generator(desk.frequencies, couplings, SMALL).matrix
        off_diagonal = matrix - sparse.diags(matrix.diagonal())
        assert off_diagonal.count_nonzero() == 0
        expected = occupations(SMALL) @ desk.frequencies.as_array()
        np.testing.assert_allclose(matrix.diagonal(), expected)

    def test_stokes_matrix_element(self, desk):
        cutoffs = (1,) * 6
        couplings = Couplings(g=0.7, chi=0.0, Gamma=0.0)
        matrix = build_generator(desk.frequencies, couplings, cutoffs).matrix
        pumps = basis_index(cutoffs, (0, 1, 1, 0, 0, 0))
        scattered = basis_index(cutoffs, (0, 0, 0, 1, 1, 0))
        assert matrix[scattered, pumps] == pytest.approx(0.7)
        assert matrix[pumps, scattered] == pytest.approx(0.7)

    def test_generators_are_cached(self, desk):
        first = build_generator(desk.frequencies, desk.couplings, SMALL)
        assert build_generator(desk.frequencies, desk.couplings, list(SMALL)) is first

    def test_budget(self, desk):
        with pytest.raises(BudgetExceeded) as excinfo:
            build_generator(desk.frequencies, desk.couplings, (10,) * 6)
        assert excinfo.value.field == "cutoffs"
        with pytest.raises(BudgetExceeded):
            build_generator(desk.frequencies, desk.couplings, SMALL, max_dimension=100)


class TestTruncatedStates:
    def test_norm_deficit_matches_poisson_tail(self, desk, fock):
        state = coherent_state_truncated(desk.amplitudes, fock)
        tails = [
            truncation_tail(value, cutoff)
            for value, cutoff in zip(desk.amplitudes.as_array(), fock.cutoffs)
        ]
        expected = 1 - np.prod([1 - tail for tail in tails])
        assert state.norm_deficit == pytest.approx(expected, rel=1e-9)
        assert state.norm == pytest.approx(1.0, abs=1e-12)

    def test_excessive_truncation(self, desk, fock):
        amplitudes = desk.amplitudes.model_copy(update={"beta": 3.0 + 0j})
        with pytest.raises(ExcessiveTruncation) as excinfo:
            coherent_state_truncated(amplitudes, fock)
        assert excinfo.value.code == "excessive_truncation"

    def test_budget(self, desk):
        with pytest.raises(BudgetExceeded):
            coherent_state_truncated(desk.amplitudes, FockConfig.uniform(10))

    def test_vacuum(self):
        state = basis_state(SMALL, (0,) * 6)
        assert all(expectation_number(state, mode) == 0 for mode in Mode)

    def test_basis_state_numbers(self):
        state = basis_state(SMALL, (0, 1, 2, 0, 0, 0))
        assert expectation_number(state, Mode.PUMP2) == 2
        assert expectation_number(state, "a1") == 1
        assert expectation_number(state, Mode.STOKES) == 0

    def test_generator_expectation_of_coherent_state(self, desk, fock):
        state = coherent_state_truncated(desk.amplitudes, fock)
        generator = build_generator(desk.frequencies, desk.couplings, fock.cutoffs)
        amps, c, w = desk.amplitudes, desk.couplings, desk.frequencies
        populations = np.abs(amps.as_array()) ** 2 @ w.as_array()
        interaction = (
            c.g * amps.alpha1 * amps.alpha2 * (amps.beta * amps.gamma).conjugate()
            + c.chi * amps.alpha1 * amps.alpha2 * amps.gamma * amps.delta.conjugate()
            + c.Gamma * amps.alpha * (amps.alpha1 * amps.alpha2).conjugate()
        )
        expected = populations + 2 * interaction.real
        assert expectation_generator(state, generator) == pytest.approx(expected, rel=1e-3)


class TestEvolution:
    def test_vacuum_is_stationary(self, desk):
        generator = build_generator(desk.frequencies, desk.couplings, SMALL)
        state = evolve(basis_state(SMALL, (0,) * 6), generator, 1.0)
        assert all(expectation_number(state, mode) == pytest.approx(0.0, abs=1e-14) for mode in Mode)

    def test_free_evolution_keeps_numbers(self, desk, fock):
        config = desk.model_copy(update={"couplings": Couplings(g=0.0, chi=0.0, Gamma=0.0)})
        initial = coherent_state_truncated(config.amplitudes, fock)
        final = propagate(config, fock, 0.5)
        for mode in Mode:
            assert expectation_number(final, mode) == pytest.approx(
                expectation_number(initial, mode), abs=1e-12
            )

    def test_norm_is_preserved(self, desk, fock):
        assert propagate(desk, fock, 0.3).norm == pytest.approx(1.0, abs=1e-10)

    def test_negative_length(self, desk, fock):
        generator = build_generator(desk.frequencies, desk.couplings, fock.cutoffs)
        state = coherent_state_truncated(desk.amplitudes, fock)
        with pytest.raises(ValueError):
            evolve(state, generator, -0.1, fock)

    def test_mismatched_cutoffs(self, desk, fock):
        generator = build_generator(desk.frequencies, desk.couplings, SMALL)
        state = coherent_state_truncated(desk.amplitudes, fock)
        with pytest.raises(ValueError):
            evolve(state, generator, 0.1, fock)

    def test_monitor_equation_of_motion(self, desk, fock):
        # d<a_p>/dz = i (omega_p <a_p> + Gamma <a1 a2>)
        generator = build_generator(desk.frequencies, desk.couplings, fock.cutoffs)
        state = coherent_state_truncated(desk.amplitudes, fock)
        lowering = _mode_operator(fock.cutoffs, Mode.MONITOR)
        pumps = _mode_operator(fock.cutoffs, Mode.PUMP1) @ _mode_operator(fock.cutoffs, Mode.PUMP2)

        def mean(operator, psi):
            return np.vdot(psi.amplitudes, operator @ psi.amplitudes)

        h = 1e-5
        forward = evolve(state, generator, h, fock)
        backward_generator = generator.model_copy(update={"matrix": -generator.matrix})
        backward = evolve(state, backward_generator, h, fock)
        derivative = (mean(lowering, forward) - mean(lowering, backward)) / (2 * h)
        expected = 1j * (
            desk.frequencies.omega_p * mean(lowering, state)
            + desk.couplings.Gamma * mean(pumps, state)
        )
        assert abs(derivative - expected) <= 1e-3 * abs(expected)

    def test_constants_of_motion(self, desk, fock):
        initial = constants_of_motion(coherent_state_truncated(desk.amplitudes, fock))
        final = constants_of_motion(propagate(desk, fock, 0.4))
        assert final.phonon_balance == pytest.approx(initial.phonon_balance, abs=1e-9)
        assert final.monitor_pump == pytest.approx(initial.monitor_pump, abs=1e-9)
        assert final.pump_imbalance == pytest.approx(initial.pump_imbalance, abs=1e-9)

    def test_step_failure(self, desk, fock, monkeypatch):
        monkeypatch.setattr(
            propagation.sparse_linalg, "expm_multiply", lambda operator, psi: 2 * psi
        )
        with pytest.raises(StepFailure) as excinfo:
            propagate(desk, fock, 0.1)
        assert excinfo.value.code == "step_failure"

    def test_leakage(self, desk):
        cutoffs = (1,) * 6
        fock = FockConfig.uniform(1, leakage_tol=0.5)
        generator = build_generator(desk.frequencies, desk.couplings, cutoffs)
        with pytest.raises(LeakageExceeded) as excinfo:
            evolve(basis_state(cutoffs, (0, 1, 1, 0, 0, 0)), generator, 0.1, fock)
        assert excinfo.value.field == "cutoffs"


class TestOracleZeno:
    def test_uncoupled_monitor_has_no_effect(self, desk, fock):
        config = desk.model_copy(
            update={"couplings": desk.couplings.model_copy(update={"Gamma": 0.0})}
        )
        result = oracle_zeno(config, fock, 0.1)
        assert (result.z_b, result.z_c, result.z_d) == (0.0, 0.0, 0.0)
        assert result.method is ZenoMethod.ORACLE

    def test_zero_length(self, desk, fock):
        result = oracle_zeno(desk, fock, 0.0)
        assert (result.z_b, result.z_c, result.z_d) == (0.0, 0.0, 0.0)

    def test_numbers_report_truncation(self, desk, fock):
        numbers = oracle_numbers(desk, fock, 0.1)
        assert 0 < numbers.norm_deficit < fock.leakage_tol
        assert numbers.leakage < fock.leakage_tol
        assert numbers.norm == pytest.approx(1.0, abs=1e-10)

    def test_agrees_with_perturbative_results(self, desk, fock):
        report = compare_with_oracle(desk, fock, 0.1)
        assert report.agrees, [q for q in report.quantities if not q.agrees]
        assert [q.name for q in report.quantities] == ["n_b", "n_c", "n_d", "Z_b", "Z_c", "Z_d"]

    @pytest.mark.parametrize("dS, dA, dD", [(0.3, -0.2, 0.5), (2.0, 1.0, -1.5)])
    @pytest.mark.parametrize("z", [0.1, 0.2])
    def test_agrees_off_resonance(self, desk, fock, dS, dA, dD, z):
        config = desk.model_copy(
            update={"frequencies": retune(desk.frequencies, dS=dS, dA=dA, dD=dD)}
        )
        report = compare_with_oracle(config, fock, z)
        assert report.agrees, [q for q in report.quantities if not q.agrees]


class TestTruncationConvergence:
    def test_raised_from_smaller_cutoffs(self, desk):
        fock = FockConfig.uniform(3, leakage_tol=1e-2)
        report = truncation_convergence(desk, fock, 0.1, increments=2)
        assert report.cutoffs == [(3,) * 6, (4,) * 6, (5,) * 6]
        assert len(report.changes) == 2
        assert report.converged

    def test_desk_cutoffs_fit_the_budget(self, desk, fock):
        assert affordable_increments(fock) == 2
        report = truncation_convergence(desk, fock, 0.1)
        assert report.cutoffs == [(4,) * 6, (5,) * 6, (6,) * 6]
        assert len(report.changes) == 2
        assert report.converged

    def test_budget_is_checked_before_propagating(self, desk, fock, monkeypatch):
        def unexpected(*args, **kwargs):
            raise AssertionError("propagated before the budget check")

        monkeypatch.setattr(propagation, "oracle_numbers", unexpected)
        with pytest.raises(BudgetExceeded) as excinfo:
            truncation_convergence(desk, fock, 0.1, increments=3)
        assert "(7, 7, 7, 7, 7, 7)" in str(excinfo.value)

    def test_no_room_to_raise(self, desk):
        fock = FockConfig.uniform(4, max_dimension=5**6)
        assert affordable_increments(fock) == 0
        with pytest.raises(BudgetExceeded):
            truncation_convergence(desk, fock, 0.1)

    def test_rejects_zero_increments(self, desk, fock):
        with pytest.raises(ValueError):
            truncation_convergence(desk, fock, 0.1, increments=0)


class TestDumps:
    def test_round_trip(self, desk, fock, tmp_path):
        state = propagate(desk, fock, 0.1)
        path = dump_state(state, tmp_path / "state.bin")
        loaded = load_state(path)
        assert loaded.cutoffs == state.cutoffs
        np.testing.assert_array_equal(loaded.amplitudes, state.amplitudes)

    def test_short_header(self):
        with pytest.raises(DumpFormatError):
            decode_state(b"\x01\x00")

    def test_dimension_mismatch(self):
        data = bytearray(encode_state(basis_state((1,) * 6, (0,) * 6)))
        data[24:32] = np.asarray([65], dtype="<u8").tobytes()
        with pytest.raises(DumpFormatError) as excinfo:
            decode_state(bytes(data))
        assert excinfo.value.field == "dimension"

    def test_truncated_payload(self):
        data = encode_state(basis_state((1,) * 6, (0,) * 6))
        with pytest.raises(DumpFormatError):
            decode_state(data[:-16])
