import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from apps.coefficients.exceptions import InvalidSignature
from apps.coefficients.kernels import (
    SINGULARITY_EPSILON,
    KernelSignature,
    antistokes_zeno_kernel,
    exponential_difference,
    first_divided_difference,
    kernel_K1,
    kernel_K2,
    kernel_K3,
    second_divided_difference,
    stokes_zeno_kernel,
)
from apps.coefficients.reference import (
    reference_antistokes_kernel,
    reference_K1,
    reference_K2,
    reference_K3,
    reference_stokes_kernel,
)


def assert_relative(actual: complex, expected: complex, rtol: float) -> None:
    assert abs(actual - expected) <= rtol * abs(expected), (actual, expected)


detuning = st.floats(-2.0, 2.0, allow_nan=False).filter(lambda x: abs(x) > 1e-2)
length = st.floats(0.05, 5.0, allow_nan=False)


class TestDividedDifferences:
    def test_first_difference_limit(self):
        assert first_divided_difference(0.0) == 1j

    @pytest.mark.parametrize("factor", [0.999, 1.001])
    def test_first_difference_continuous_at_switch(self, factor):
        h = SINGULARITY_EPSILON * factor
        expected = complex(np.expm1(1j * h) / h)
        assert_relative(first_divided_difference(h), expected, 1e-12)

    def test_second_difference_confluent_limit(self):
        # f''/2 of e^{iw} at 0
        assert second_divided_difference(0.0, 0.0, 0.0) == pytest.approx(-0.5)

    @given(
        t0=st.floats(-3, 3, allow_nan=False),
        t1=st.floats(-3, 3, allow_nan=False),
        t2=st.floats(-3, 3, allow_nan=False),
    )
    @settings(max_examples=200, deadline=None)
    def test_second_difference_is_symmetric(self, t0, t1, t2):
        value = second_divided_difference(t0, t1, t2)
        assert second_divided_difference(t2, t0, t1) == value
        assert abs(value) <= 0.5 + 1e-12

    @given(
        t0=st.floats(-3, 3, allow_nan=False),
        t1=st.floats(-3, 3, allow_nan=False),
        t2=st.floats(-3, 3, allow_nan=False),
    )
    @settings(max_examples=200, deadline=None)
    def test_mirrored_nodes_give_conjugates(self, t0, t1, t2):
        value = second_divided_difference(t0, t1, t2)
        assert second_divided_difference(-t0, -t1, -t2) == value.conjugate()

    @given(u=st.floats(-0.1, 0.1, allow_nan=False), v=st.floats(-0.1, 0.1, allow_nan=False), z=length)
    @settings(max_examples=200, deadline=None)
    def test_mirrored_patterns_are_exact(self, u, v, z):
        assert kernel_K2(u, v, z, KernelSignature.K6) == -kernel_K2(u, v, z, KernelSignature.L6).conjugate()
        assert kernel_K2(u, v, z, KernelSignature.J6) == stokes_zeno_kernel(u, v, z).conjugate()

    def test_exponential_difference_resonance(self):
        assert exponential_difference(0.0, 0.0, 0.1) == pytest.approx(-0.005)


class TestKernelK1:
    def test_resonance_limit(self):
        assert kernel_K1(0.0, 0.3) == pytest.approx(0.3j)

    def test_half_period(self):
        z = 0.7
        assert kernel_K1(math.pi / z, z) == pytest.approx(2 * z / math.pi, abs=1e-14)

    def test_tiny_detuning_against_extended_precision(self):
        assert_relative(kernel_K1(1e-8, 0.1), reference_K1(1e-8, 0.1), 1e-12)

    @given(x=detuning, z=length)
    @settings(max_examples=100, deadline=None)
    def test_matches_extended_precision(self, x, z):
        assert_relative(kernel_K1(x, z), reference_K1(x, z), 1e-12)

    @pytest.mark.parametrize("factor", [0.999, 1.001])
    def test_continuous_across_switch(self, factor):
        z = 2.0
        x = SINGULARITY_EPSILON * factor / z
        assert_relative(kernel_K1(x, z), reference_K1(x, z), 1e-12)


class TestKernelK2:
    @pytest.mark.parametrize("signature", list(KernelSignature))
    def test_vanishes_at_zero_length(self, signature):
        assert kernel_K2(0.3, -0.7, 0.0, signature) == 0

    @pytest.mark.parametrize(
        "signature, limit",
        [
            (KernelSignature.J3, 0.5),
            (KernelSignature.J4, -0.5),
            (KernelSignature.J6, -0.5),
            (KernelSignature.K6, 0.5),
            (KernelSignature.L3, -0.5),
            (KernelSignature.L5, -0.5),
            (KernelSignature.L6, -0.5),
        ],
    )
    def test_resonance_limits(self, signature, limit):
        z = 0.4
        assert kernel_K2(0.0, 0.0, z, signature) == pytest.approx(limit * z * z)
        near = kernel_K2(1e-9, 3e-9, z, signature)
        assert_relative(near, complex(limit * z * z), 1e-6)
        assert_relative(near, reference_K2(1e-9, 3e-9, z, signature), 1e-10)

    def test_j4_off_resonance_against_extended_precision(self):
        assert_relative(
            kernel_K2(0.01, 0.001, 10.0, KernelSignature.J4),
            reference_K2(0.01, 0.001, 10.0, KernelSignature.J4),
            1e-10,
        )

    @given(
        signature=st.sampled_from(list(KernelSignature)),
        u=detuning,
        v=detuning,
        z=length,
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_extended_precision(self, signature, u, v, z):
        # keep the third denominator factor away from zero as well
        for combination in (u + v, u - v):
            if abs(combination) < 1e-2:
                return
        assert_relative(
            kernel_K2(u, v, z, signature), reference_K2(u, v, z, signature), 1e-10
        )

    @pytest.mark.parametrize("signature", list(KernelSignature))
    @pytest.mark.parametrize("u, v", [(1e-6, 0.5), (0.5, 1e-6), (0.5, 0.5 + 1e-6), (0.5, -0.5 + 1e-6)])
    def test_near_single_singularities(self, signature, u, v):
        z = 1.5
        expected = reference_K2(u, v, z, signature)
        assert_relative(kernel_K2(u, v, z, signature), expected, 1e-8)

    def test_accepts_signature_value(self):
        assert kernel_K2(0.2, 0.1, 1.0, "l5") == kernel_K2(0.2, 0.1, 1.0, KernelSignature.L5)

    def test_unknown_signature(self):
        with pytest.raises(InvalidSignature) as excinfo:
            kernel_K2(0.2, 0.1, 1.0, "j5")
        assert excinfo.value.code == "invalid_signature"
        assert excinfo.value.field == "signature"


class TestKernelK3:
    @pytest.mark.parametrize("sign", [1, -1])
    def test_resonance_limit(self, sign):
        assert kernel_K3(0.0, 0.2, sign) == pytest.approx(0.02)

    def test_full_period(self):
        z = 0.5
        expected = -1j * z * z / (2 * math.pi)
        assert kernel_K3(2 * math.pi / z, z) == pytest.approx(expected, abs=1e-14)

    @pytest.mark.parametrize("sign", [1, -1])
    def test_tiny_detuning_against_extended_precision(self, sign):
        assert_relative(kernel_K3(1e-7, 0.2, sign), reference_K3(1e-7, 0.2, sign), 1e-12)

    @given(x=detuning, z=length, sign=st.sampled_from([1, -1]))
    @settings(max_examples=100, deadline=None)
    def test_matches_extended_precision(self, x, z, sign):
        assert_relative(kernel_K3(x, z, sign), reference_K3(x, z, sign), 1e-10)

    def test_rejects_other_signs(self):
        with pytest.raises(ValueError):
            kernel_K3(0.1, 1.0, 0)


class TestZenoKernels:
    @pytest.mark.parametrize("kernel", [stokes_zeno_kernel, antistokes_zeno_kernel])
    def test_resonance_limit(self, kernel):
        assert kernel(0.0, 0.0, 0.1) == pytest.approx(-0.005)
        assert_relative(kernel(1e-8, 1e-8, 0.1), complex(-0.005), 1e-6)

    @given(s=detuning, d=detuning, z=length)
    @settings(max_examples=200, deadline=None)
    def test_stokes_kernel_matches_extended_precision(self, s, d, z):
        if abs(s + d) < 1e-2:
            return
        assert_relative(stokes_zeno_kernel(s, d, z), reference_stokes_kernel(s, d, z), 1e-10)

    @given(a=detuning, d=detuning, z=length)
    @settings(max_examples=200, deadline=None)
    def test_antistokes_kernel_matches_extended_precision(self, a, d, z):
        if abs(a - d) < 1e-2:
            return
        assert_relative(
            antistokes_zeno_kernel(a, d, z), reference_antistokes_kernel(a, d, z), 1e-10
        )
