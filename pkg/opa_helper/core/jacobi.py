#!/usr/bin/env python3
"""Jacobi 矩阵模块

𝒥_ω 是对角线为零、次对角线 c_k = √(ω_k/ω_{k+1}) (k ≥ 1) 的单边 Jacobi 矩阵。
‖𝒥_ω‖/2 给出极值问题的值 𝒰_ω；首一多项式 P_n 满足三项递推
P_n(t) = t P_{n−1}(t) − (ω_{n−1}/ω_n) P_{n−2}(t)，其零点即截断矩阵的特征值。
"""

import logging
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Union

import mpmath
import numpy as np
from scipy import linalg

from .errors import ConvergenceError, DomainError, NoExtremalError
from .series import CoeffSeries, theta
from .weights import WeightSequence

logger = logging.getLogger(__name__)

NORM_START_SIZE = 64
NORM_SIZE_CAP = 2 ** 20
# LAPACK stebz 二分法的绝对容差
EIGEN_ABS_TOL = 1e-13
EXTREMAL_MARGIN = 1e-6
POWER_ITER_MAX = 200_000
POWER_SHIFT = 1.0


@dataclass(frozen=True, eq=False)
class JacobiTruncation:
    """N×N 截断：对角线为零，次对角线 c_1..c_{N−1}"""
    size: int
    offdiag: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        return np.zeros(self.size)

    def to_dense(self) -> np.ndarray:
        return np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def gershgorin_bound(self) -> float:
        """max_k (c_k + c_{k+1})，特征值绝对值的上界"""
        if self.size == 1:
            return 0.0
        padded = np.concatenate([[0.0], self.offdiag, [0.0]])
        return float(np.max(padded[:-1] + padded[1:]))


class NormEstimate(NamedTuple):
    """norm_estimate 的结果：估计值与所用截断规模"""
    value: float
    size: int

    @property
    def half(self) -> float:
        """𝒰_ω = ‖𝒥_ω‖/2"""
        return self.value / 2.0


class ThetaMaximum(NamedTuple):
    value: float
    coeffs: np.ndarray


def offdiagonal(omega: WeightSequence, n: int) -> np.ndarray:
    """c_1..c_{n−1}"""
    return np.sqrt(omega.ratios(np.arange(1, n)))


def jacobi_truncation(omega: WeightSequence, n: int) -> JacobiTruncation:
    if n < 1:
        raise DomainError(f"截断规模必须 ≥ 1: {n}")
    return JacobiTruncation(n, offdiagonal(omega, n))


def _top_eigenvalues(c: np.ndarray, count: int) -> np.ndarray:
    n = len(c) + 1
    if n == 1:
        return np.zeros(1)
    count = min(count, n)
    return linalg.eigvalsh_tridiagonal(
        np.zeros(n), c, select='i', select_range=(n - count, n - 1),
        lapack_driver='stebz', tol=EIGEN_ABS_TOL,
    )


def truncated_norm(omega: WeightSequence, n: int) -> float:
    """
    N×N 截断的最大特征值（Sturm 序列二分，LAPACK stebz）

    对角线为零，谱关于 0 对称，因此也等于该块的谱半径。
    """
    c = jacobi_truncation(omega, n).offdiag
    return float(_top_eigenvalues(c, 1)[-1])


def norm_estimate(omega: WeightSequence,
                  tol: float,
                  cap: int = NORM_SIZE_CAP,
                  start: int = NORM_START_SIZE) -> NormEstimate:
    """
    估计 ‖𝒥_ω‖：从 N=64 起倍增，直到相邻两次截断范数之差 < tol

    Args:
        omega: 权重
        tol: 收敛容差
        cap: N 的上限

    Returns:
        NormEstimate: (估计值, 所用 N)

    Raises:
        DomainError: tol ≤ 0
        ConvergenceError: N 超过上限
    """
    if not tol > 0:
        raise DomainError(f"tol 必须为正: {tol}")
    size = start
    prev = truncated_norm(omega, size)
    bracket = (prev, prev)
    while size * 2 <= cap:
        size *= 2
        cur = truncated_norm(omega, size)
        if abs(cur - prev) < tol:
            logger.info(f"‖𝒥‖ 估计收敛于 N={size}: {cur:.15g}（{omega.label}）")
            return NormEstimate(cur, size)
        bracket = (prev, cur)
        prev = cur
    raise ConvergenceError(
        f"norm_estimate 未收敛：N 超过上限 {cap}，最后区间 [{bracket[0]!r}, {bracket[1]!r}]",
        bracket=bracket,
    )


def recurrence_bits(t: float, n: int) -> int:
    """前向递推在 t 处需要的 mpmath 工作精度（比特）"""
    t = abs(float(t))
    growth = 1.0
    if t > 2.0:
        growth = (t + math.sqrt(t * t - 4.0)) / 2.0
    return 64 + int(math.ceil(2 * n * math.log2(growth))) + int(math.ceil(math.log2(n + 2)))


def monic_recurrence(omega: WeightSequence, t: Union[float, mpmath.mpf], n: int) -> np.ndarray:
    """
    首一正交多项式在 t 处的值 [P_0(t), …, P_N(t)]

    t 为 float 时用双精度前向递推。t 为 mpmath.mpf 时在
    recurrence_bits(t, N) 比特精度下递推，权重比值使用闭式；
    t 是递推的特征值时，这是得到衰减解的可靠途径（t 本身需要同等精度）。
    """
    if n < 0:
        raise DomainError(f"N 必须非负: {n}")
    if isinstance(t, mpmath.mpf):
        return _monic_recurrence_mp(omega, t, n)

    t = float(t)
    ratios = omega.ratios(np.arange(1, n + 1))
    values = np.empty(n + 1)
    values[0] = 1.0
    if n >= 1:
        values[1] = t
    for j in range(2, n + 1):
        values[j] = t * values[j - 1] - ratios[j - 2] * values[j - 2]
    return values


def _monic_recurrence_mp(omega: WeightSequence, t: mpmath.mpf, n: int) -> np.ndarray:
    bits = max(recurrence_bits(float(t), n), mpmath.mp.prec)
    with mpmath.workprec(bits):
        t = +t
        prev, cur = mpmath.mpf(1), t
        out = [prev, cur][:n + 1]
        for j in range(2, n + 1):
            prev, cur = cur, t * cur - omega.ratio_mp(j - 1) * prev
            out.append(cur)
        return np.array([float(v) for v in out])


def orthonormal_from_monic(omega: WeightSequence, values: np.ndarray) -> np.ndarray:
    """φ_n(t) = P_n(t) / (c_1 ⋯ c_n)"""
    c = offdiagonal(omega, len(values))
    scale = np.concatenate([[1.0], np.cumprod(c)])
    return np.asarray(values, dtype=float) / scale


def monic_polynomial_coeffs(omega: WeightSequence, n: int) -> np.ndarray:
    """P_n 的幂基系数（低次在前）"""
    prev = np.array([1.0])
    if n == 0:
        return prev
    cur = np.array([0.0, 1.0])
    for j in range(2, n + 1):
        nxt = np.concatenate([[0.0], cur])
        nxt[:j - 1] -= omega.ratio(j - 1) * prev
        prev, cur = cur, nxt
    return cur


def sturm_count(omega: WeightSequence, n: int, x: float) -> int:
    """
    N×N 截断中大于 x 的特征值个数

    等于 P_0(x), …, P_N(x) 的变号次数，用比值 q_j = P_j/P_{j−1} 计算以避免溢出。
    """
    ratios = omega.ratios(np.arange(1, n))
    count = 0
    q = x
    tiny = np.finfo(float).tiny
    for j in range(n):
        if j > 0:
            q = x - ratios[j - 1] / q
        if q == 0.0:
            q = -tiny
        if q < 0:
            count += 1
    return count


def largest_recurrence_root(omega: WeightSequence, n: int, tol: float = 1e-14) -> float:
    """P_N 的最大零点（按变号次数二分，不依赖 LAPACK）"""
    if n < 1:
        raise DomainError(f"N 必须 ≥ 1: {n}")
    lo, hi = 0.0, jacobi_truncation(omega, n).gershgorin_bound() + 1.0
    if sturm_count(omega, n, lo) == 0:
        return 0.0
    while hi - lo > tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if sturm_count(omega, n, mid) >= 1:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def maximize_theta(omega: WeightSequence, n: int, samples: int = 200, seed: int = 0) -> ThetaMaximum:
    """
    在长度为 N+1 的实向量上最大化 Θ

    先取 samples 个随机单位向量，再从最佳者出发在 J_{N+1} + σI 上做幂迭代。
    a = D^{−1/2} v（D = diag(ω_1..ω_{N+1})）时 Θ(a) = vᵀJv / (2‖v‖²)。

    Returns:
        ThetaMaximum: 最大值与对应系数（a_0 = 1）
    """
    size = n + 1
    trunc = jacobi_truncation(omega, size)
    c = trunc.offdiag
    scale = 1.0 / np.sqrt(omega.values(np.arange(1, size + 1)))
    rng = np.random.default_rng(seed)

    best_value, best_vec = -math.inf, None
    for _ in range(samples):
        v = rng.standard_normal(size)
        v /= np.linalg.norm(v)
        value = theta(scale * v, omega)
        if value > best_value:
            best_value, best_vec = value, v

    def apply(v: np.ndarray) -> np.ndarray:
        out = POWER_SHIFT * v
        out[:-1] += c * v[1:]
        out[1:] += c * v[:-1]
        return out

    v = np.abs(best_vec)
    v /= np.linalg.norm(v)
    rayleigh = float(v @ apply(v))
    for it in range(POWER_ITER_MAX):
        w = apply(v)
        v = w / np.linalg.norm(w)
        nxt = float(v @ apply(v))
        if abs(nxt - rayleigh) <= 1e-15 * abs(nxt):
            break
        rayleigh = nxt
    else:
        logger.warning(f"幂迭代达到上限 {POWER_ITER_MAX} 次（N={n}）")

    a = scale * v
    value = theta(a, omega)
    if value < best_value:
        a, value = scale * best_vec, best_value
    return ThetaMaximum(value, a / a[0])


def extremal_coeffs(omega: WeightSequence,
                    n: int,
                    tol: float,
                    margin: float = EXTREMAL_MARGIN) -> CoeffSeries:
    """
    极值函数 f* = Σ P_n(‖𝒥_ω‖) z^n 的前 N+1 个系数

    P_n(t*) 取自大截断最大特征值对应的特征向量：v_n·c_1⋯c_n（v_0 归一为 1）。
    尾部按几何衰减率 t*₋ = (t* − √(t*² − 4))/2 估计。

    Raises:
        NoExtremalError: ‖𝒥_ω‖ ≤ 2 + margin
    """
    est = norm_estimate(omega, tol)
    if est.value <= 2.0 + margin:
        raise NoExtremalError(
            f"未检测到极值函数：‖𝒥_ω‖ ≈ {est.value:.12g} ≤ 2 + {margin:g}", norm=est.value,
        )
    size = max(est.size, 4 * (n + 1))
    c = offdiagonal(omega, size)
    t_star, vec = linalg.eigh_tridiagonal(
        np.zeros(size), c, select='i', select_range=(size - 1, size - 1),
        lapack_driver='stebz', tol=EIGEN_ABS_TOL,
    )
    v = vec[:, 0] / vec[0, 0]
    p = v * np.concatenate([[1.0], np.cumprod(c)])

    rate = (t_star[0] - math.sqrt(t_star[0] ** 2 - 4.0)) / 2.0
    last = min(size - 1, 4 * (n + 1))
    partial = float(np.sum(p[n + 1:last + 1] ** 2))
    q = rate
    if abs(p[last]) > 1e-12 * float(np.max(np.abs(p))) and p[last - 1] != 0:
        q = max(rate, min(abs(p[last] / p[last - 1]), 0.999999))
    rest = p[last] ** 2 * q * q / (1.0 - q * q)
    logger.info(f"极值函数：t* = {t_star[0]:.15g}，衰减率 {rate:.6g}，截断规模 {size}")
    return CoeffSeries(p[:n + 1], math.sqrt(partial + rest))


def _eigenvalues_above(omega: WeightSequence, n: int, lower: float, count: int) -> np.ndarray:
    trunc = jacobi_truncation(omega, n)
    upper = trunc.gershgorin_bound() + 1.0
    if upper <= lower:
        return np.empty(0)
    vals = linalg.eigvalsh_tridiagonal(
        np.zeros(n), trunc.offdiag, select='v', select_range=(lower, upper),
        lapack_driver='stebz', tol=EIGEN_ABS_TOL,
    )
    return np.sort(vals)[::-1][:count]


def point_spectrum_above_2(omega: WeightSequence,
                           tol: float,
                           max_count: int,
                           cap: int = NORM_SIZE_CAP) -> List[float]:
    """
    𝒥_ω 在 (2 + 10·tol, ∞) 中的孤立特征值（至多 max_count 个，降序）

    N 从 64 起倍增，当 N 与 2N 的候选列表长度相同且逐项相差 < tol 时接受。

    Raises:
        ConvergenceError: N 超过上限
    """
    lower = 2.0 + 10.0 * tol
    size = NORM_START_SIZE
    prev = _eigenvalues_above(omega, size, lower, max_count)
    bracket = (prev.tolist(), prev.tolist())
    while size * 2 <= cap:
        size *= 2
        cur = _eigenvalues_above(omega, size, lower, max_count)
        if len(cur) == len(prev) and np.all(np.abs(cur - prev) < tol):
            logger.info(f"点谱在 N={size} 稳定，共 {len(cur)} 个特征值 > {lower:g}")
            return cur.tolist()
        bracket = (prev.tolist(), cur.tolist())
        prev = cur
    raise ConvergenceError(f"点谱未稳定：N 超过上限 {cap}", bracket=bracket)


def boundary_series_partial_sums(omega: WeightSequence, n: int) -> np.ndarray:
    """‖𝒥_ω‖ = 2 时的诊断量：部分和 Σ_{k≤m} ω_k P_k(2)²，m = 0..N（不做可达性判断）"""
    p = monic_recurrence(omega, 2.0, n)
    return np.cumsum(omega.values(np.arange(n + 1)) * p * p)
