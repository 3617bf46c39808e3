#!/usr/bin/env python3
"""闭式结果模块

Bergman 型空间 𝒜²_β 的谱、极值函数与特征函数，再生核导数恒等式，
Dirichlet 型空间的界与指标指数，以及 Hardy 空间中 (1−z)^a 的
Beta 函数逼近公式。
"""

import logging
import math
from dataclasses import dataclass
from typing import List

import mpmath
import numpy as np

from .errors import DomainError
from .series import CoeffSeries, binomial_series, multiply, tail_estimate, TAIL_EXTRA_MIN
from .special import loggamma, logbeta

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BergmanSpectrumEntry:
    """
    𝒥_ω 在 𝒜²_β 中的第 m 个孤立特征值 t_m 及其 Poincaré 根

    lambda_minus · lambda_plus = 1
    """
    m: int
    t_m: float
    lambda_minus: float
    lambda_plus: float


@dataclass(frozen=True)
class IndicialReport:
    """指标指数 r 及其到最近整数的距离（精度取决于输入范数的估计精度）"""
    n: int
    norm: float
    r: float
    nearest_integer: int
    distance: float


def _check_beta(beta: float) -> None:
    if not beta > -1:
        raise DomainError(f"Bergman 参数必须满足 β > −1，当前 β={beta}")


def bergman_tm(beta: float, m: int) -> BergmanSpectrumEntry:
    """
    t_m = (2m+β+3) / √((m+1)(m+β+2))

    m = 0 给出 ‖𝒥_ω‖ = (β+3)/√(β+2)。

    Raises:
        DomainError: β ≤ −1 或 m < 0
    """
    _check_beta(beta)
    if m < 0:
        raise DomainError(f"m 必须非负: {m}")
    t = (2 * m + beta + 3) / math.sqrt((m + 1) * (m + beta + 2))
    lam_minus = (t - math.sqrt(t * t - 4.0)) / 2.0
    return BergmanSpectrumEntry(m, t, lam_minus, 1.0 / lam_minus)


def bergman_tm_precise(beta: float, m: int, prec: int = 2048) -> mpmath.mpf:
    """以 prec 比特精度计算 t_m，供 jacobi.monic_recurrence 的高精度路径使用"""
    _check_beta(beta)
    with mpmath.workprec(prec):
        b = mpmath.mpf(beta)
        return (2 * m + b + 3) / mpmath.sqrt((m + 1) * (m + b + 2))


def bergman_spectrum(beta: float, count: int) -> List[BergmanSpectrumEntry]:
    """前 count 个 t_m（严格递减，趋于 2）"""
    return [bergman_tm(beta, m) for m in range(count)]


def bergman_extremal(beta: float, n: int) -> CoeffSeries:
    """
    极值函数 f*(z) = (1 − z/√(β+2))^{−(β+3)} 的前 N+1 个系数

    c_n = C(n+β+2, n) · (β+2)^{−n/2}
    """
    _check_beta(beta)
    return binomial_series(beta + 3.0, n, '−', c=1.0 / math.sqrt(beta + 2.0))


def kernel_derivative_coeffs(beta: int, n: int) -> CoeffSeries:
    """
    λ_0 ∂_z k(z, λ_0) 的系数，k(z, w) = (1 − z w̄)^{−(2+β)}，λ_0 = 1/√(2+β)

    第 n 项为 (n+1)·C(n+2+β, n+1)·λ_0^{n+2}。

    Raises:
        DomainError: β 不是非负整数
    """
    if int(beta) != beta or beta < 0:
        raise DomainError(f"kernel_derivative_coeffs 要求非负整数 β，当前 β={beta}")
    beta = int(beta)
    lam = 1.0 / math.sqrt(2.0 + beta)
    coeffs = np.array([(k + 1) * math.comb(k + 2 + beta, k + 1) * lam ** (k + 2) for k in range(n + 1)])

    # 尾部：C(k+2+β, k+1) = Π_{j=1}^{β+1} (k+1+j)/j
    k = np.arange(n + 1, n + 1 + TAIL_EXTRA_MIN, dtype=float)
    binom = np.ones_like(k)
    for j in range(1, beta + 2):
        binom *= (k + 1 + j) / j
    extra = (k + 1) * binom * np.power(lam, k + 2)
    return CoeffSeries(coeffs, tail_estimate(extra, n + 1))


def kernel_extremal_value(beta: int) -> float:
    """
    f*'(λ_0) / (f*(λ_0) + λ_0 f*'(λ_0))，以再生核的导数计算

    等于 ∂²k / (∂k + λ_0 ∂²k) 在 z = λ_0 处的值，理论值 (β+3)/(2√(β+2))。
    """
    if int(beta) != beta or beta < 0:
        raise DomainError(f"kernel_extremal_value 要求非负整数 β，当前 β={beta}")
    lam = 1.0 / math.sqrt(2.0 + beta)
    base = 1.0 - lam * lam
    dk = (2 + beta) * lam * base ** (-(3 + beta))
    d2k = (2 + beta) * (3 + beta) * lam * lam * base ** (-(4 + beta))
    return d2k / (dk + lam * d2k)


def bergman_eigenfunction(beta: float, m: int, n: int) -> CoeffSeries:
    """
    特征值 t_m 对应的解

    f(z; t_m) = (1 − z√((m+β+2)/(m+1)))^m · (1 − z√((m+1)/(m+β+2)))^{−(m+β+3)}，
    由有限二项式因子与负二项级数精确卷积得到，首项为 1。
    """
    _check_beta(beta)
    if m < 0:
        raise DomainError(f"m 必须非负: {m}")
    s = math.sqrt((m + beta + 2.0) / (m + 1.0))
    singular = binomial_series(m + beta + 3.0, n, "−", c=1.0 / s)
    if m == 0:
        return singular
    return multiply(binomial_series(m, m, "+", c=s), singular)


def dirichlet_bounds(alpha: float):
    """
    α < 0 时的零点半径下界与范数上界

    Returns:
        tuple: ((3/2)^{α/2}, 2·(2/3)^{α/2})

    Raises:
        DomainError: α ≥ 0
    """
    if not alpha < 0:
        raise DomainError(f"dirichlet_bounds 要求 α < 0，当前 α={alpha}")
    return (1.5 ** (alpha / 2.0), 2.0 * (2.0 / 3.0) ** (alpha / 2.0))


def dirichlet_indicial_exponent(n: int, norm: float) -> float:
    """
    r = n/2 − 3 − n·‖𝒥‖ / (2√(‖𝒥‖² − 4))

    Raises:
        DomainError: ‖𝒥‖ ≤ 2
    """
    if not norm > 2:
        raise DomainError(f"指标指数要求 ‖𝒥‖ > 2，当前 {norm}")
    if n < 1:
        raise DomainError(f"n 必须为正整数: {n}")
    return n / 2.0 - 3.0 - n * norm / (2.0 * math.sqrt(norm * norm - 4.0))


def indicial_report(n: int, norm: float) -> IndicialReport:
    r = dirichlet_indicial_exponent(n, norm)
    nearest = int(round(r))
    return IndicialReport(n, norm, r, nearest, abs(r - nearest))


def hardy_beta_approximant(a: complex, n: int) -> np.ndarray:
    """
    H² 中 (1−z)^a 的 n 次最优逼近多项式系数

    coeff_k = C(a+k−1, k) · B(n+a+1, ā) / B(n−k+1, ā)，
    全部在对数空间计算，每个系数只取一次指数。

    Raises:
        DomainError: Re a ≤ 0
    """
    a = complex(a)
    if a.real <= 0:
        raise DomainError(f"hardy_beta_approximant 要求 Re a > 0，当前 a={a}")
    if n < 0:
        raise DomainError(f"次数必须非负: {n}")
    ac = a.conjugate()
    common = logbeta(n + a + 1, ac) - loggamma(a)
    out = np.empty(n + 1, dtype=complex)
    for k in range(n + 1):
        log_c = loggamma(a + k) - loggamma(k + 1) + common - logbeta(n - k + 1, ac)
        out[k] = np.exp(log_c)
    if a.imag == 0:
        out = out.real.astype(complex)
    return out
