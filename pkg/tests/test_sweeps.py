import math

import orjson
import pydantic
import pytest

from apps.sweeps.exceptions import ConfigError, SweepBudgetExceeded, UnknownPreset
from apps.sweeps.grids import (
    apply_point,
    evaluate_values,
    find_crossovers,
    grid_points,
    point_values,
    run_sweep,
)
from apps.sweeps.io import (
    RESULT_COLUMNS,
    dump_spec,
    format_csv,
    format_json,
    load_spec,
    result_rows,
)
from apps.sweeps.presets import PresetName, desk_coupler_spec, desk_fock, figure_preset, figure_spec
from apps.sweeps.schemas import (
    AmplitudesSpec,
    Axis,
    AxisName,
    PolarAmplitude,
    SweepSpec,
    ZenoMode,
)
from apps.coupler.algebra import detunings, phase_mismatches
from apps.zeno.schemas import ZenoClass, ZenoMethod


def phase_sweep(**overrides):
    document = dict(
        base=figure_spec(dS=0.0, dA=0.0, dD=0.0),
        z=0.1,
        axes=[Axis(names=[AxisName.THETA2], min=0.0, max=2 * math.pi, count=73)],
        modes=[ZenoMode.STOKES],
    )
    document.update(overrides)
    return SweepSpec(**document)


class TestGrid:
    def test_outermost_axis_is_slowest(self):
        spec = phase_sweep(
            axes=[
                Axis(names=[AxisName.THETA1], min=0.0, max=1.0, count=2),
                Axis(names=[AxisName.Z], min=0.1, max=0.3, count=3),
            ]
        )
        points = list(grid_points(spec))
        assert spec.grid_size == 6
        assert [p["theta1"] for p in points] == [0.0, 0.0, 0.0, 1.0, 1.0, 1.0]
        assert [p["z"] for p in points[:3]] == pytest.approx([0.1, 0.2, 0.3])

    def test_linked_axis(self):
        spec = phase_sweep(
            axes=[Axis(names=[AxisName.DA, AxisName.DS], min=0.0, max=50.0, count=51)]
        )
        coordinates = list(grid_points(spec))[10]
        assert coordinates == {"dA=dS": 10.0}
        assert point_values(spec, coordinates) == {AxisName.DA: 10.0, AxisName.DS: 10.0}

    def test_apply_point(self, figure_config):
        config, z = apply_point(
            figure_config,
            0.1,
            {AxisName.DS: 2.0, AxisName.DD: 0.5, AxisName.THETA2: 1.0, AxisName.Z: 0.05},
        )
        d = detunings(config.frequencies)
        assert (d.dS, d.dA, d.dD) == pytest.approx((2.0, 0.0, 0.5))
        assert phase_mismatches(config.amplitudes).theta2 == pytest.approx(1.0)
        assert phase_mismatches(config.amplitudes).theta1 == pytest.approx(0.0)
        assert z == 0.05

    def test_axis_validation(self):
        with pytest.raises(pydantic.ValidationError):
            Axis(names=[AxisName.Z], min=0.0, max=1.0, count=1)
        with pytest.raises(pydantic.ValidationError):
            Axis(names=[AxisName.DS, AxisName.DS], min=0.0, max=1.0, count=3)
        with pytest.raises(pydantic.ValidationError):
            phase_sweep(
                axes=[
                    Axis(names=[AxisName.DS], min=0.0, max=1.0, count=3),
                    Axis(names=[AxisName.DS, AxisName.DA], min=0.0, max=1.0, count=3),
                ]
            )
        with pytest.raises(pydantic.ValidationError):
            phase_sweep(axes=[Axis(names=[AxisName.Z], min=-1.0, max=1.0, count=3)])

    def test_oracle_requires_fock(self):
        with pytest.raises(pydantic.ValidationError):
            phase_sweep(method=ZenoMethod.ORACLE)


class TestPresets:
    @pytest.mark.parametrize("name", list(PresetName))
    def test_presets_validate(self, name, tmp_path):
        spec = figure_preset(name)
        path = tmp_path / f"{name.value}.json"
        path.write_bytes(dump_spec(spec))
        assert load_spec(path) == spec

    def test_preset_sizes(self):
        assert figure_preset("fig2a").grid_size == 73 * 50
        assert figure_preset("fig4d").grid_size == 51 * 51

    def test_unknown_preset(self):
        with pytest.raises(UnknownPreset) as excinfo:
            figure_preset("fig9")
        assert excinfo.value.field == "name"
        assert excinfo.value.exit_code == 2


class TestRunSweep:
    def test_rows_in_grid_order(self):
        spec = phase_sweep()
        result = run_sweep(spec, threads=3)
        assert [row.index for row in result.rows] == list(range(73))
        assert result.manifest.config == spec.model_dump(mode="json")
        assert result.manifest.application == "zenocoupler"

    def test_rows_match_single_evaluations(self):
        spec = phase_sweep()
        result = run_sweep(spec, threads=2)
        for row in result.rows[::12]:
            single = evaluate_values(spec, {AxisName.THETA2: row.coordinates["theta2"]})
            assert row.result == single

    def test_resonant_values(self):
        result = run_sweep(phase_sweep(method=ZenoMethod.RESONANT))
        first = result.rows[0].result
        assert first.z_b == pytest.approx(-168.3, rel=1e-12)
        assert first.class_b is ZenoClass.QZE
        assert result.rows[36].result.z_b == pytest.approx(168.3, rel=1e-12)

    def test_failures_are_recorded(self):
        amplitudes = AmplitudesSpec(
            alpha=PolarAmplitude(mag=11.0),
            alpha1=PolarAmplitude(mag=10.0),
            alpha2=PolarAmplitude(mag=9.5),
            gamma=PolarAmplitude(mag=0.01),
            delta=PolarAmplitude(mag=1.0),
        )
        base = figure_spec(dS=0.0, dA=0.0, dD=0.0).model_copy(update={"amplitudes": amplitudes})
        result = run_sweep(phase_sweep(base=base))
        assert all(row.result is None for row in result.rows)
        assert result.rows[0].error.startswith("zero_amplitude_phase")

    def test_oracle_budget(self):
        spec = SweepSpec(
            base=desk_coupler_spec(),
            axes=[
                Axis(names=[AxisName.Z], min=0.0, max=0.1, count=50),
                Axis(names=[AxisName.THETA1], min=0.0, max=1.0, count=50),
            ],
            method=ZenoMethod.ORACLE,
            fock=desk_fock(),
        )
        with pytest.raises(SweepBudgetExceeded) as excinfo:
            run_sweep(spec)
        assert excinfo.value.code == "sweep_budget_exceeded"

    def test_small_oracle_sweep(self):
        spec = SweepSpec(
            base=desk_coupler_spec(),
            axes=[Axis(names=[AxisName.Z], min=0.0, max=0.1, count=2)],
            method=ZenoMethod.ORACLE,
            fock=desk_fock(),
        )
        result = run_sweep(spec, threads=1)
        assert [row.result.method for row in result.rows] == [ZenoMethod.ORACLE] * 2
        assert result.rows[0].result.z_b == 0.0


class TestCrossovers:
    def test_resonant_stokes_phase(self):
        spec = phase_sweep()
        crossovers = find_crossovers(spec, "b", tol_axis=1e-8)
        assert [c.coordinates["theta2"] for c in crossovers] == pytest.approx(
            [math.pi / 2, 3 * math.pi / 2], abs=1e-7
        )
        assert all(c.bracket_width <= 1e-8 for c in crossovers)
        assert all(c.axis == "theta2" and c.mode is ZenoMode.STOKES for c in crossovers)

    def test_phonon_excitation_detuning(self):
        spec = SweepSpec(
            base=figure_spec(dS=0.0, dA=0.0, dD=0.0),
            z=0.1,
            axes=[Axis(names=[AxisName.DD], min=0.0, max=20 * math.pi, count=40)],
            modes=[ZenoMode.STOKES],
            method=ZenoMethod.PHONON_EXCITATION,
        )
        crossovers = find_crossovers(spec, ZenoMode.STOKES)
        assert [c.coordinates["dD"] for c in crossovers] == pytest.approx(
            [5 * math.pi, 15 * math.pi], abs=1e-5
        )

    def test_one_line_per_outer_point(self):
        spec = phase_sweep(
            axes=[
                Axis(names=[AxisName.Z], min=0.05, max=0.1, count=2),
                Axis(names=[AxisName.THETA2], min=0.0, max=2 * math.pi, count=73),
            ]
        )
        crossovers = find_crossovers(spec, "b")
        assert len(crossovers) == 4
        assert [c.coordinates["z"] for c in crossovers] == [0.05, 0.05, 0.1, 0.1]

    def test_no_sign_change(self):
        spec = phase_sweep(axes=[Axis(names=[AxisName.THETA2], min=0.0, max=1.0, count=5)])
        assert find_crossovers(spec, "b") == []


class TestOutput:
    def test_csv(self):
        result = run_sweep(phase_sweep(), threads=4)
        text = format_csv(result)
        lines = text.splitlines()
        assert lines[0].split(",") == ["theta2"] + RESULT_COLUMNS
        assert len(lines) == 74
        assert lines[1].split(",")[-3:] == ["ClosedForm", "", ""]
        # requested mode only
        assert lines[1].split(",")[2:4] == ["", ""]
        assert format_csv(run_sweep(phase_sweep(), threads=1)) == text

    def test_json(self):
        result = run_sweep(phase_sweep())
        document = orjson.loads(format_json(result))
        assert document["manifest"]["run_id"] == result.manifest.run_id
        assert len(document["rows"]) == 73
        assert document["rows"][0]["class_b"] == "QZE"
        assert document["rows"][0]["Z_d"] is None

    def test_result_rows(self):
        result = run_sweep(phase_sweep())
        record = next(result_rows(result))
        assert record["theta2"] == 0.0
        assert record["method"] == "ClosedForm"


class TestLoadSpec:
    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as excinfo:
            load_spec(tmp_path / "missing.json")
        assert excinfo.value.field == "config"

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{ not json")
        with pytest.raises(ConfigError):
            load_spec(path)

    def test_schema_violation(self, tmp_path):
        document = orjson.loads(dump_spec(phase_sweep()))
        document["unknown"] = 1
        path = tmp_path / "extra.json"
        path.write_bytes(orjson.dumps(document))
        with pytest.raises(pydantic.ValidationError):
            load_spec(path)
