"""
Singularity-stable kernels of the second-order coefficients.

Every coefficient is a coupling product times one of three kernel families:

- K1(x, z) = (1 - e^{-ixz}) / x
- K2(u, v, z; signature), the three-exponential numerators over a product of
  three detunings. Each pattern is, up to sign, a second divided difference of
  f(w) = e^{iwz} over nodes {0, x, x + y}, with (x, y) a signed pair of (u, v).
- K3(x, z, sign) = (1 - e^{-i sign xz} - i sign xz) / x^2

Divided differences are evaluated from their farthest node pair, with Maclaurin
series below `SINGULARITY_EPSILON` in the scaled node spread.
"""

import enum
import math
import typing

import numpy as np
from numpy.polynomial import polynomial

from .exceptions import InvalidSignature


SINGULARITY_EPSILON = 1e-3
SERIES_TERMS = 8

# (e^{ih} - 1)/h = sum_{k>=1} i^k h^(k-1) / k!
_FIRST_DIFFERENCE_SERIES = np.array(
    [1j**k / math.factorial(k) for k in range(1, SERIES_TERMS + 1)]
)
# f[0, a, b] = sum_{m>=0} i^(m+2) h_m(a, b) / (m+2)!
_SECOND_DIFFERENCE_SERIES = np.array(
    [1j ** (m + 2) / math.factorial(m + 2) for m in range(SERIES_TERMS)]
)


class KernelSignature(enum.Enum):
    """
    Three-exponential numerator patterns of the second-order coefficients.

    The docstring of each member names its (u, v) arguments.
    """

    J3 = "j3"
    """(dS, dA): dA - d1 e^{-iz dS} - dS e^{iz d1}, over dA d1 dS"""
    J4 = "j4"
    """(dS, dA): dA + dS e^{-iz d2} - d2 e^{-iz dS}, over dA dS d2"""
    J6 = "j6"
    """(dS, dD): dD + dS e^{-iz d3} - d3 e^{-iz dS}, over dD dS d3"""
    K6 = "k6"
    """(dA, dD): -dD + dA e^{-iz d4} - d4 e^{-iz dA}, over dA dD d4"""
    L3 = "l3"
    """(dA, dS): dS + dA e^{iz d2} - d2 e^{iz dA}, over dS dA d2"""
    L5 = "l5"
    """(dA, dS): dS + d1 e^{iz dA} - dA e^{iz d1}, over dS d1 dA"""
    L6 = "l6"
    """(dA, dD): dD - dA e^{iz d4} + d4 e^{iz dA}, over dD dA d4"""


# signature -> (sign, x(u, v), y(u, v)) with pattern = sign * E(x, y, z)
_SIGNATURE_NODES: typing.Dict[
    KernelSignature,
    typing.Tuple[int, typing.Callable[[float, float], float], typing.Callable[[float, float], float]],
] = {
    KernelSignature.J3: (-1, lambda u, v: -u, lambda u, v: v),
    KernelSignature.J4: (1, lambda u, v: -u, lambda u, v: -v),
    KernelSignature.J6: (1, lambda u, v: -u, lambda u, v: -v),
    KernelSignature.K6: (-1, lambda u, v: -u, lambda u, v: v),
    KernelSignature.L3: (1, lambda u, v: u, lambda u, v: v),
    KernelSignature.L5: (1, lambda u, v: u - v, lambda u, v: v),
    KernelSignature.L6: (1, lambda u, v: u, lambda u, v: -v),
}


def first_divided_difference(h: float) -> complex:
    """(e^{ih} - 1)/h, continuous at h = 0 where it equals i"""
    if abs(h) < SINGULARITY_EPSILON:
        return complex(polynomial.polyval(h, _FIRST_DIFFERENCE_SERIES))
    return complex(np.expm1(1j * h) / h)


def _ordered_second_difference(p: float, q: float, r: float) -> complex:
    spread = r - p
    if spread < SINGULARITY_EPSILON:
        a, b = q - p, r - p
        homogeneous = np.empty(SERIES_TERMS)
        # complete homogeneous polynomials h_m(a, b) = a h_{m-1} + b^m
        homogeneous[0] = 1.0
        for m in range(1, SERIES_TERMS):
            homogeneous[m] = a * homogeneous[m - 1] + b**m
        series = complex(np.dot(_SECOND_DIFFERENCE_SERIES, homogeneous))
        return complex(np.exp(1j * p)) * series

    upper = complex(np.exp(1j * q)) * first_divided_difference(r - q)
    lower = complex(np.exp(1j * p)) * first_divided_difference(q - p)
    return (upper - lower) / spread


def second_divided_difference(t0: float, t1: float, t2: float) -> complex:
    """
    Second divided difference of e^{iw} over three real nodes.

    Coincident nodes are allowed; the result is the confluent limit. Mirrored
    node sets evaluate to exact complex conjugates, and a node set symmetric
    about zero gives a real value.
    """
    p, q, r = sorted((t0, t1, t2))
    balance = p + r
    if balance < 0 or (balance == 0 and q < 0):
        return _ordered_second_difference(-r, -q, -p).conjugate()
    value = _ordered_second_difference(p, q, r)
    if balance == 0 and q == 0:
        return complex(value.real, 0.0)
    return value


def exponential_difference(x: float, y: float, z: float) -> complex:
    """
    E(x, y, z) = [y + x e^{i(x+y)z} - (x+y) e^{ixz}] / (x y (x+y)),
    the second divided difference of e^{iwz} over {0, x, x + y}.

    Tends to -z^2/2 when x and y vanish.
    """
    return z * z * second_divided_difference(0.0, x * z, (x + y) * z)


def kernel_K1(x: float, z: float) -> complex:
    """
    (1 - e^{-izx})/x, equal to iz at x = 0.

    :param x: detuning
    :param z: propagation length
    """
    return z * first_divided_difference(-x * z)


def kernel_K2(
    u: float,
    v: float,
    z: float,
    signature: typing.Union[KernelSignature, str],
) -> complex:
    """
    Evaluate a three-exponential coefficient pattern.

    :param u: first detuning of the pattern
    :param v: second detuning of the pattern
    :param z: propagation length
    :param signature: pattern, as a `KernelSignature` or its value
    :raises InvalidSignature: for patterns outside the catalog
    """
    if not isinstance(signature, KernelSignature):
        try:
            signature = KernelSignature(signature)
        except ValueError:
            raise InvalidSignature(
                f"Unknown kernel signature {signature!r}", field="signature"
            ) from None

    sign, x, y = _SIGNATURE_NODES[signature]
    return sign * exponential_difference(x(u, v), y(u, v), z)


def kernel_K3(x: float, z: float, sign: int = 1) -> complex:
    """
    (1 - e^{-i sign xz} - i sign xz)/x^2, equal to z^2/2 at x = 0.

    :param sign: +1 or -1
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    # (1 - e^{-it} - it)/t^2 = -f[0, 0, -t] for f = e^{iw}
    return -z * z * second_divided_difference(0.0, 0.0, -sign * x * z)


def stokes_zeno_kernel(dS: float, dD: float, z: float) -> complex:
    """
    F_b(s, d, z) = [d + s e^{i(s+d)z} - (s+d) e^{isz}] / (s d (s+d))

    Z_b = C_b Re[e^{-i theta2} F_b(dS, dD, z)].
    """
    return exponential_difference(dS, dD, z)


def antistokes_zeno_kernel(dA: float, dD: float, z: float) -> complex:
    """
    F_d(a, d, z) = 1/(a(a-d)) - e^{i(d-a)z}/(d(a-d)) + e^{-iaz}/(d a)

    Z_d = C_d Re[e^{i theta1} F_d(dA, dD, z)].
    """
    return exponential_difference(-dA, dD, z)


__all__ = [
    "SINGULARITY_EPSILON",
    "KernelSignature",
    "first_divided_difference",
    "second_divided_difference",
    "exponential_difference",
    "kernel_K1",
    "kernel_K2",
    "kernel_K3",
    "stokes_zeno_kernel",
    "antistokes_zeno_kernel",
]
