#!/usr/bin/env python3
"""零点分布统计模块

对一列最优逼近多项式计算 Jentzsch 型统计量：闭圆盘 |z| ≤ 1+ε 内的
零点比例、零点模的几何平均、辐角的圆周差异度；以及 f_{k,n}(z^r)
的多零点构造。
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Tuple

import numpy as np

from .errors import DomainError
from .gram import Approximant, optimal_approximant
from .roots import DEFAULT_ROOT_TOL, RootSet, poly_roots
from .series import CoeffSeries, cayley_function, weighted_inner, weighted_norm_sq, shift
from .weights import WeightSequence

logger = logging.getLogger(__name__)

DEFAULT_CUTOFF = 2.0
# 单位圆上的根因舍入会落在圆的任一侧
ROOT_BOUNDARY_TOL = 1e-9
STATUS_OK = 'ok'
STATUS_CONSTANT = 'constant approximant'
CSV_COLUMNS = ('degree', 'tau_eps_fraction', 'geo_mean_modulus', 'angular_discrepancy',
               'count_in_unit_disk', 'min_root_modulus')


@dataclass
class ZeroStats:
    """
    单个次数的零点统计

    tau_eps_fraction = #{|z| ≤ 1+ε} / n；geo_mean_modulus = (Π|z_j|)^{1/n}；
    angular_discrepancy 只统计 |z| ≤ cutoff_radius 的零点。
    """
    degree: int
    tau_eps_fraction: float
    geo_mean_modulus: float
    angular_discrepancy: float
    count_in_unit_disk: int
    min_root_modulus: float
    epsilon: float
    cutoff_radius: float = DEFAULT_CUTOFF
    status: str = STATUS_OK

    def to_dict(self) -> Dict:
        return asdict(self)


@dataclass
class MultiZeroReport:
    """多零点构造的检验结果"""
    k: int
    n: int
    r: int
    stated_condition: bool
    lattice_condition: bool
    strictly_decreasing: bool
    quotient: float
    moduli: List[float]
    modulus_spread: float
    quotient_error: float
    angular_gap_error: float
    other_coeff_max: float
    inside_unit_disk: bool
    notes: List[str] = field(default_factory=list)

    @property
    def condition_met(self) -> bool:
        return self.strictly_decreasing and self.stated_condition

    @property
    def verified(self) -> bool:
        return (self.other_coeff_max < 1e-10 and self.quotient_error < 1e-8
                and self.modulus_spread < 1e-8 and self.angular_gap_error < 1e-8)

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['condition_met'] = self.condition_met
        data['verified'] = self.verified
        return data


def angular_discrepancy(roots: np.ndarray, cutoff: float = DEFAULT_CUTOFF) -> float:
    """
    |z| ≤ cutoff 的零点辐角相对 [0, 2π) 均匀分布的圆周差异度 D⁺ + D⁻

    没有零点落在 cutoff 内时返回 1。
    """
    roots = np.asarray(roots, dtype=complex)
    inside = roots[np.abs(roots) <= cutoff]
    m = inside.size
    if m == 0:
        return 1.0
    x = np.sort(np.mod(np.angle(inside), 2.0 * math.pi) / (2.0 * math.pi))
    k = np.arange(1, m + 1)
    d_plus = float(np.max(k / m - x))
    d_minus = float(np.max(x - (k - 1) / m))
    return max(d_plus, 0.0) + max(d_minus, 0.0)


def zero_stats(roots, n: int, epsilon: float, cutoff: float = DEFAULT_CUTOFF) -> ZeroStats:
    """
    计算零点统计

    Args:
        roots: RootSet 或根数组
        n: 有效次数
        epsilon: τ_ε 的半径增量
        cutoff: 辐角统计的半径上限

    Raises:
        DomainError: n = 0
    """
    if n <= 0:
        raise DomainError("零点统计要求 n ≥ 1")
    z = np.asarray(roots.roots if isinstance(roots, RootSet) else roots, dtype=complex)
    mod = np.abs(z)
    with np.errstate(divide='ignore'):
        geo = float(np.exp(np.sum(np.log(mod)) / n))
    return ZeroStats(
        degree=n,
        tau_eps_fraction=float(np.count_nonzero(mod <= 1.0 + epsilon)) / n,
        geo_mean_modulus=geo,
        angular_discrepancy=angular_discrepancy(z, cutoff),
        count_in_unit_disk=int(np.count_nonzero(mod <= 1.0 + ROOT_BOUNDARY_TOL)),
        min_root_modulus=float(mod.min()) if mod.size else math.nan,
        epsilon=epsilon,
        cutoff_radius=cutoff,
    )


def _constant_row(degree: int, epsilon: float, cutoff: float) -> ZeroStats:
    nan = math.nan
    return ZeroStats(degree, nan, nan, nan, 0, nan, epsilon, cutoff, STATUS_CONSTANT)


def degree_stats(f: CoeffSeries,
                 omega: WeightSequence,
                 degree: int,
                 epsilon: float,
                 cutoff: float = DEFAULT_CUTOFF,
                 tol: float = DEFAULT_ROOT_TOL) -> Tuple[Approximant, ZeroStats]:
    """单个次数：逼近多项式、根与统计"""
    approx = optimal_approximant(f, omega, degree)
    if not np.any(approx.coeffs[1:]):
        logger.info(f"n={degree}：逼近多项式为常数，统计量无定义")
        approx.roots = np.empty(0, dtype=complex)
        return approx, _constant_row(degree, epsilon, cutoff)
    found = poly_roots(approx.coeffs, tol)
    approx.roots = found.roots
    stats = zero_stats(found, len(found.roots), epsilon, cutoff)
    stats.degree = degree
    return approx, stats


def jentzsch_sweep(f: CoeffSeries,
                   omega: WeightSequence,
                   degrees: Iterable[int],
                   epsilon: float,
                   cutoff: float = DEFAULT_CUTOFF,
                   workers: int = 1) -> List[ZeroStats]:
    """
    对每个次数计算逼近多项式、根与统计量

    workers > 1 时按次数并行，输出顺序与 degrees 一致。

    Raises:
        DomainError: f 恒为零
    """
    if not np.any(f.coeffs):
        raise DomainError("f 恒为零")
    degrees = list(degrees)

    def run(n: int) -> ZeroStats:
        return degree_stats(f, omega, n, epsilon, cutoff)[1]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, degrees))
    else:
        rows = [run(n) for n in degrees]
    logger.info(f"Jentzsch 扫描完成：{len(rows)} 个次数（{omega.label}）")
    return rows


def lattice_function(k: int, n: int, r: int) -> CoeffSeries:
    """g_r(z) = f_{k,n}(z^r)"""
    if r < 1:
        raise DomainError(f"r 必须 ≥ 1: {r}")
    base = cayley_function(k, n).coeffs
    out = np.zeros(r * (len(base) - 1) + 1, dtype=complex)
    out[::r] = base
    return CoeffSeries(out, 0.0)


def multi_zero_example(omega: WeightSequence, k: int, n: int, r: int) -> Tuple[Approximant, MultiZeroReport]:
    """
    多零点构造：g_r = f_{k,n}(z^r) 的 r 次最优逼近多项式 q

    q 只依赖 z^r，其 r 个根位于同一圆周上且辐角等分，
    |z₀|^r = ‖z^r g_r‖² / |⟨g_r, z^r g_r⟩|。
    ω 的前提条件不满足时照常计算，只在报告中标记。
    """
    g = lattice_function(k, n, r)
    notes: List[str] = []

    decreasing = omega.strictly_decreasing_upto(n * r + k * r + 2)
    stated = omega.value(k * r + 1) > 4.0 * omega.value(n * r + k * r + 1)
    lattice = omega.value(r * (k + 1)) > 4.0 * omega.value(r * (n + k + 1))
    if not (decreasing and stated):
        notes.append("condition not met")
        logger.warning(f"多零点构造前提不满足（k={k}, n={n}, r={r}, {omega.label}）")

    approx = optimal_approximant(g, omega, r)
    zr = shift(g, r)
    den = abs(weighted_inner(g, zr, omega))
    quotient = weighted_norm_sq(zr, omega) / den if den else math.inf

    if not np.any(approx.coeffs[1:]):
        notes.append("degree-r approximant is constant")
        approx.roots = np.empty(0, dtype=complex)
        report = MultiZeroReport(k, n, r, stated, lattice, decreasing, quotient, [], math.nan,
                                 math.nan, math.nan, math.nan, False, notes)
        return approx, report

    approx.roots = poly_roots(approx.coeffs).roots
    moduli = np.abs(approx.roots)
    other = np.delete(approx.coeffs, [0, r]) if r > 0 else np.empty(0)
    args = np.sort(np.mod(np.angle(approx.roots), 2.0 * math.pi))
    gaps = np.diff(np.concatenate([args, [args[0] + 2.0 * math.pi]]))

    report = MultiZeroReport(
        k=k, n=n, r=r,
        stated_condition=bool(stated),
        lattice_condition=bool(lattice),
        strictly_decreasing=decreasing,
        quotient=quotient,
        moduli=moduli.tolist(),
        modulus_spread=float(moduli.max() - moduli.min()),
        quotient_error=float(np.max(np.abs(moduli ** r - quotient))),
        angular_gap_error=float(np.max(np.abs(gaps - 2.0 * math.pi / r))),
        other_coeff_max=float(np.max(np.abs(other))) if other.size else 0.0,
        inside_unit_disk=bool(np.all(moduli < 1.0)),
        notes=notes,
    )
    return approx, report
