"""特殊函数：复 log-Gamma（Lanczos 近似）与 log-Beta"""

import cmath
import math

from .errors import DomainError

# Lanczos 近似参数 g=7，共 9 个系数
LANCZOS_G = 7
LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def loggamma(z: complex) -> complex:
    """
    复 log-Gamma 函数

    Re z < 0.5 时使用反射公式 Γ(z)Γ(1−z) = π / sin(πz)。
    返回值的虚部不保证落在主分支上，只保证 exp(loggamma(z)) = Γ(z)。

    Args:
        z: 复数参数，不能是非正整数

    Returns:
        complex: log Γ(z)

    Raises:
        DomainError: z 是非正整数
    """
    z = complex(z)
    if z.real < 0.5:
        if z.imag == 0.0 and z.real == math.floor(z.real):
            raise DomainError(f"Gamma 函数在非正整数处有极点: {z}")
        return cmath.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - loggamma(1.0 - z)

    z -= 1.0
    x = LANCZOS_COEFFS[0]
    for i in range(1, LANCZOS_G + 2):
        x += LANCZOS_COEFFS[i] / (z + i)
    t = z + LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def logbeta(x: complex, y: complex) -> complex:
    """log B(x, y) = log Γ(x) + log Γ(y) − log Γ(x+y)"""
    return loggamma(x) + loggamma(y) - loggamma(x + y)
