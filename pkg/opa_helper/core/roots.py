#!/usr/bin/env python3
"""多项式求根模块（Aberth–Ehrlich 同时迭代 + Newton 修正）"""

import logging
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConvergenceError, DomainError
from .jacobi import monic_polynomial_coeffs
from .series import CoeffSeries
from .weights import WeightSequence

logger = logging.getLogger(__name__)

ABERTH_MAX_SWEEPS = 500
DEFAULT_ROOT_TOL = 1e-12
# 初始圆周上的相位偏移，避免实系数多项式的对称停滞
START_ANGLE = 0.4
POLISH_STEPS = 3


@dataclass
class RootSet:
    """
    求根结果

    Attributes:
        roots: 全部根（含原点处的重根）
        max_residual: 各根的尺度化残差 |p(r)| / Σ|c_k| max(1,|r|)^k 的最大值
        degree_deflated: 去掉首尾零系数后的有效次数
    """
    roots: np.ndarray
    max_residual: float
    degree_deflated: int

    def __len__(self) -> int:
        return len(self.roots)


def _horner(high_first: np.ndarray, z: np.ndarray):
    p = np.full(z.shape, high_first[0], dtype=complex)
    dp = np.zeros(z.shape, dtype=complex)
    for c in high_first[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def _scaled_residual(low_first: np.ndarray, z: np.ndarray) -> np.ndarray:
    p, _ = _horner(low_first[::-1], z)
    k = np.arange(len(low_first))
    scale = np.abs(low_first) @ np.power(np.maximum(1.0, np.abs(z))[None, :], k[:, None])
    return np.abs(p) / scale


def initial_guesses(low_first: np.ndarray) -> np.ndarray:
    """
    初始点：半径 ρ = |c_0/c_d|^{1/d}（根模的几何平均）的圆周，
    以 Cauchy 界 1 + max|c_k/c_d| 为上限，并加相位偏移
    """
    d = len(low_first) - 1
    lead = abs(low_first[-1])
    radius = (abs(low_first[0]) / lead) ** (1.0 / d)
    cauchy = 1.0 + float(np.max(np.abs(low_first[:-1]))) / lead
    radius = min(radius, cauchy)
    angles = 2.0 * math.pi * np.arange(d) / d + START_ANGLE
    return radius * np.exp(1j * angles)


def poly_roots(p: Union[CoeffSeries, np.ndarray], tol: float = DEFAULT_ROOT_TOL) -> RootSet:
    """
    求多项式的全部复根

    Args:
        p: 系数（低次在前）
        tol: 残差接受阈值

    Returns:
        RootSet: 根与残差

    Raises:
        DomainError: p 恒为零
        ConvergenceError: 迭代上限内未收敛（附带最佳迭代与残差）
    """
    coeffs = np.asarray(p.coeffs if isinstance(p, CoeffSeries) else p, dtype=complex)
    nonzero = np.flatnonzero(coeffs)
    if nonzero.size == 0:
        raise DomainError("零多项式没有确定的根")
    at_origin = int(nonzero[0])
    core = coeffs[at_origin:nonzero[-1] + 1]
    d = len(core) - 1
    origin = np.zeros(at_origin, dtype=complex)

    if d == 0:
        return RootSet(origin, 0.0, 0)
    if d == 1:
        root = np.array([-core[0] / core[1]])
        return RootSet(np.concatenate([root, origin]), float(_scaled_residual(core, root).max()), 1)

    high = core[::-1]
    z = initial_guesses(core)
    passed_streak = 0
    for sweep in range(ABERTH_MAX_SWEEPS):
        pv, dpv = _horner(high, z)
        with np.errstate(divide='ignore', invalid='ignore'):
            newton = np.where(pv == 0, 0.0, pv / dpv)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            sums = inv.sum(axis=1)
            step = newton / (1.0 - newton * sums)
        step = np.where(np.isfinite(step), step, 1e-8 * np.maximum(1.0, np.abs(z)))
        z = z - step

        resid = _scaled_residual(core, z)
        small_step = float(np.max(np.abs(step) / np.maximum(1.0, np.abs(z)))) < 1e-12
        if np.all(resid <= tol):
            passed_streak += 1
            if small_step or passed_streak >= 3:
                break
        else:
            passed_streak = 0
    else:
        resid = _scaled_residual(core, z)
        if not np.all(resid <= tol):
            raise ConvergenceError(
                f"Aberth 迭代 {ABERTH_MAX_SWEEPS} 次未收敛，最大残差 {resid.max():.3g}",
                best=np.concatenate([z, origin]), residuals=resid,
            )

    z = _polish(high, core, z)
    resid = _scaled_residual(core, z)
    logger.debug(f"求根完成：次数 {d}，{sweep + 1} 次迭代，最大残差 {resid.max():.3g}")
    return RootSet(np.concatenate([z, origin]), float(resid.max()), d)


def _polish(high: np.ndarray, core: np.ndarray, z: np.ndarray) -> np.ndarray:
    for _ in range(POLISH_STEPS):
        pv, dpv = _horner(high, z)
        with np.errstate(divide='ignore', invalid='ignore'):
            cand = z - np.where(dpv != 0, pv / dpv, 0.0)
        better = _scaled_residual(core, cand) < _scaled_residual(core, z)
        z = np.where(better, cand, z)
    return z


def recurrence_roots(omega: WeightSequence, n: int, tol: float = DEFAULT_ROOT_TOL) -> RootSet:
    """P_n 的根（实数、关于 0 对称）"""
    return poly_roots(monic_polynomial_coeffs(omega, n), tol)
