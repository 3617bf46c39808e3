#!/usr/bin/env python3
"""最优多项式逼近模块

对给定的 f 与权重 ω，求次数 ≤ n 的多项式 p_n 使 ‖p f − 1‖_ω 最小。
p_n f 是 1 在子空间 f·𝒫_n 上的正交投影，系数由 Gram 矩阵的
Hermite 正规方程通过 Cholesky 分解求得。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
from scipy import linalg

from .errors import ConditioningError, DomainError
from .series import CoeffSeries, shift, weighted_inner, weighted_norm_sq
from .weights import WeightSequence

logger = logging.getLogger(__name__)

# Cholesky 主元下限（相对于最大对角元）
PIVOT_FLOOR = 1e-14
# 截断误差允许量（相对于最小对角元）
TRUNCATION_GATE = 1e-8
# 残差公式与直接展开的一致性阈值
RESIDUAL_CROSSCHECK = 1e-6
# 扩展精度残差的迭代修正次数
REFINE_STEPS = 2


@dataclass
class Approximant:
    """
    n 次最优逼近多项式

    Attributes:
        degree: 次数上限 n
        coeffs: 复系数，长度 n+1
        residual_norm: ‖p_n f − 1‖_ω
        roots: 由 roots 模块填充
    """
    degree: int
    coeffs: np.ndarray
    residual_norm: float
    roots: Optional[np.ndarray] = field(default=None)

    @property
    def polynomial(self) -> CoeffSeries:
        return CoeffSeries(self.coeffs, 0.0)

    def to_dict(self) -> Dict:
        data = {
            'degree': self.degree,
            'coeffs': {'re': self.coeffs.real.tolist(), 'im': self.coeffs.imag.tolist()},
            'residual_norm': self.residual_norm,
        }
        if self.roots is not None:
            data['roots'] = {'re': self.roots.real.tolist(), 'im': self.roots.imag.tolist()}
        return data


def _shifted_rows(f: CoeffSeries, n: int) -> np.ndarray:
    length = len(f)
    rows = np.zeros((n + 1, length + n), dtype=complex)
    for j in range(n + 1):
        rows[j, j:j + length] = f.coeffs
    return rows


def gram_matrix(f: CoeffSeries, omega: WeightSequence, n: int) -> np.ndarray:
    """
    Gram 矩阵 G_{jk} = ⟨z^j f, z^k f⟩_ω，j, k = 0..n

    Args:
        f: 函数系数
        omega: 权重
        n: 多项式次数上限

    Returns:
        np.ndarray: (n+1)×(n+1) Hermite 矩阵

    Raises:
        DomainError: f 恒为零或 n < 0
    """
    if n < 0:
        raise DomainError(f"次数必须非负: {n}")
    if not np.any(f.coeffs):
        raise DomainError("f 恒为零，Gram 矩阵无定义")
    rows = _shifted_rows(f, n)
    w = omega.values(np.arange(rows.shape[1]))
    gram = (rows * w) @ rows.conj().T
    # 对角元取实部，消除舍入带来的虚部
    gram[np.diag_indices_from(gram)] = gram.diagonal().real
    return gram


def gram_truncation_error(f: CoeffSeries, omega: WeightSequence, gram: np.ndarray) -> float:
    """
    截断尾部对 Gram 矩阵元素的误差上界

    |δG_{jk}| ≤ s·T·(√G_jj + √G_kk) + s²T²，其中 T 为 ℓ² 尾部上界，
    s² = sup_{m ≥ len(f)} ω_m。
    """
    if f.is_exact:
        return 0.0
    sup = omega.tail_sup(len(f))
    if not f.is_trusted or not math.isfinite(sup):
        return math.inf
    st = math.sqrt(sup) * f.tail_bound
    diag_max = float(np.max(gram.diagonal().real))
    return st * 2.0 * math.sqrt(diag_max) + st * st


def optimal_approximant(f: CoeffSeries, omega: WeightSequence, n: int) -> Approximant:
    """
    求 n 次最优逼近多项式

    解 conj(G) c = b，b = (conj(f(0)), 0, …, 0)。残差由
    ‖p f − 1‖² = 1 − c_0 f(0) 得到（截断于 0），并与直接展开交叉检验。
    f(0) = 0 时返回零多项式，残差为 1。

    Args:
        f: 函数系数
        omega: 权重
        n: 次数上限

    Returns:
        Approximant: 系数与残差

    Raises:
        DomainError: f 恒为零
        ConditioningError: Gram 矩阵数值上不正定，或截断误差过大
    """
    f0 = complex(f.coeffs[0])
    gram = gram_matrix(f, omega, n)

    if f0 == 0:
        logger.info(f"f(0) = 0，{n} 次逼近多项式为零多项式")
        return Approximant(n, np.zeros(n + 1, dtype=complex), 1.0)

    diag = gram.diagonal().real
    err = gram_truncation_error(f, omega, gram)
    if err >= TRUNCATION_GATE * float(diag.min()):
        raise ConditioningError(
            f"截断误差过大：元素误差上界 {err:.3g} ≥ {TRUNCATION_GATE:g} × 最小对角元 {diag.min():.3g}，"
            f"请增大截断次数"
        )

    system = gram.conj()
    try:
        lower = linalg.cholesky(system, lower=True, check_finite=True)
    except linalg.LinAlgError:
        raise ConditioningError(f"Gram 矩阵（n={n}）数值上不正定", smallest_pivot=0.0)
    pivots = np.abs(lower.diagonal()) ** 2
    smallest = float(pivots.min())
    if smallest < PIVOT_FLOOR * float(diag.max()):
        raise ConditioningError(
            f"Gram 矩阵（n={n}）病态：最小主元 {smallest:.3g} 低于下限 {PIVOT_FLOOR:g}×{diag.max():.3g}",
            smallest_pivot=smallest,
        )

    rhs = np.zeros(n + 1, dtype=complex)
    rhs[0] = f0.conjugate()
    coeffs = linalg.cho_solve((lower, True), rhs)
    coeffs = _refine(f, omega, n, lower, rhs, coeffs)

    residual = math.sqrt(max(0.0, 1.0 - (coeffs[0] * f0).real))
    direct = _direct_residual(coeffs, f, omega)
    if abs(direct - residual) > RESIDUAL_CROSSCHECK:
        logger.warning(f"残差交叉检验不一致：公式 {residual:.12g}，直接展开 {direct:.12g}（n={n}）")
    return Approximant(n, coeffs, residual)


def _refine(f: CoeffSeries,
            omega: WeightSequence,
            n: int,
            lower: np.ndarray,
            rhs: np.ndarray,
            coeffs: np.ndarray) -> np.ndarray:
    """迭代修正：残差在扩展精度（np.longdouble）下计算"""
    rows = _shifted_rows(f, n).astype(np.clongdouble)
    w = omega.values(np.arange(rows.shape[1])).astype(np.longdouble)
    system = ((rows * w) @ rows.conj().T).conj()
    for _ in range(REFINE_STEPS):
        resid = rhs.astype(np.clongdouble) - system @ coeffs.astype(np.clongdouble)
        coeffs = coeffs + linalg.cho_solve((lower, True), resid.astype(complex))
    return coeffs


def _direct_residual(coeffs: np.ndarray, f: CoeffSeries, omega: WeightSequence) -> float:
    err = np.convolve(coeffs, f.coeffs)
    err[0] -= 1.0
    w = omega.values(np.arange(len(err)))
    return math.sqrt(float(np.sum(np.abs(err) ** 2 * w)))


def residual_norm(p: CoeffSeries, f: CoeffSeries, omega: WeightSequence) -> float:
    """任意多项式 p 的 ‖p f − 1‖_ω（截断部分内）"""
    return _direct_residual(p.coeffs, f, omega)


def first_order_zero(f: CoeffSeries, omega: WeightSequence) -> Optional[complex]:
    """
    一次逼近多项式的零点 z_1 = ‖zf‖²_ω / ⟨f, zf⟩_ω

    Returns:
        complex | None: ⟨f, zf⟩_ω = 0 时一次逼近多项式为常数，返回 None
    """
    zf = shift(f, 1)
    den = weighted_inner(f, zf, omega)
    if den == 0:
        logger.info("⟨f, zf⟩ = 0，一次逼近多项式为常数")
        return None
    return weighted_norm_sq(zf, omega) / den
