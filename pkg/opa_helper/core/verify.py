#!/usr/bin/env python3
"""验收检验套件

每个套件由若干数值检验组成，结果为可序列化为 JSON 的 pydantic 模型。
命令行 `oph verify <suite>` 与 MCP 工具 run_verification 都调用这里的注册表。
"""

import logging
import math
import time
from typing import Callable, Dict, List, Optional

import numpy as np
from pydantic import BaseModel, Field

from . import closedform, jacobi, series
from .errors import OpaError
from .gram import first_order_zero, optimal_approximant
from .jentzsch import degree_stats, multi_zero_example
from .roots import recurrence_roots
from .weights import bergman, dirichlet, hardy

logger = logging.getLogger(__name__)


class CheckVerdict(BaseModel):
    name: str
    passed: bool
    value: Optional[float] = None
    expected: Optional[float] = None
    tolerance: Optional[float] = None
    detail: str = ''


class SuiteVerdict(BaseModel):
    suite: str
    passed: bool
    # 计时只写日志，不进入序列化结果
    elapsed: float = Field(exclude=True)
    checks: List[CheckVerdict]


class FigureRow(BaseModel):
    """Dirichlet 型空间 D_α 的一行：半范数估计、上界、零点半径"""
    alpha: float
    half_norm: float
    half_norm_bound: float
    zero_free_radius: float
    size: int


SUITES: Dict[str, Callable[[], List[CheckVerdict]]] = {}


def suite(name: str):
    """注册一个检验套件"""
    def wrap(func):
        SUITES[name] = func
        return func
    return wrap


def close(name: str, value: float, expected: float, tol: float, detail: str = '') -> CheckVerdict:
    ok = bool(abs(value - expected) <= tol)
    return CheckVerdict(name=name, passed=ok, value=float(value), expected=float(expected),
                        tolerance=tol, detail=detail)


def holds(name: str, condition: bool, detail: str = '', value: Optional[float] = None) -> CheckVerdict:
    return CheckVerdict(name=name, passed=bool(condition), value=value, detail=detail)


def figure1_rows(alphas, tol: float = 1e-9) -> List[FigureRow]:
    """
    ‖𝒥_ω‖/2 在 D_α 上的估计及 (2/3)^{α/2} 上界

    α = 0 时取 Hardy 极限值：上界 1，零点半径 1。
    """
    rows = []
    for alpha in alphas:
        est = jacobi.norm_estimate(dirichlet(alpha), tol)
        if alpha < 0:
            radius, upper = closedform.dirichlet_bounds(alpha)
            bound = upper / 2.0
        else:
            radius, bound = 1.0, 1.0
        rows.append(FigureRow(alpha=alpha, half_norm=est.half, half_norm_bound=bound,
                              zero_free_radius=radius, size=est.size))
    return rows


# ----------------------------------------------------------------------
# 套件
# ----------------------------------------------------------------------
@suite('bergman-closedform')
def _bergman_closedform() -> List[CheckVerdict]:
    checks = []
    for beta in (-0.5, 0.0, 1.0, 2.5):
        est = jacobi.norm_estimate(bergman(beta), 1e-9)
        checks.append(close(f"norm beta={beta:g}", est.value, (beta + 3) / math.sqrt(beta + 2), 1e-8))
    for beta in (0.0, 1.0):
        f = closedform.bergman_extremal(beta, 200)
        z1 = first_order_zero(f, bergman(beta))
        checks.append(holds(f"extremal tail beta={beta:g}", f.tail_bound < 1e-12, value=f.tail_bound))
        checks.append(close(f"min zero modulus beta={beta:g}", abs(z1),
                            2 * math.sqrt(beta + 2) / (beta + 3), 1e-8))
    for beta in (0, 1, 2):
        diff = np.max(np.abs(closedform.kernel_derivative_coeffs(beta, 50).coeffs
                             - closedform.bergman_extremal(beta, 50).coeffs))
        checks.append(close(f"kernel derivative beta={beta}", float(diff), 0.0, 1e-12))
        checks.append(close(f"kernel extremal value beta={beta}", closedform.kernel_extremal_value(beta),
                            (beta + 3) / (2 * math.sqrt(beta + 2)), 1e-12))
    return checks


@suite('bergman-spectrum')
def _bergman_spectrum() -> List[CheckVerdict]:
    checks = []
    found = jacobi.point_spectrum_above_2(bergman(0), 1e-8, 4)
    expected = [e.t_m for e in closedform.bergman_spectrum(0, 4)]
    checks.append(holds("point spectrum count beta=0", len(found) == 4, value=len(found)))
    for m, (got, want) in enumerate(zip(found, expected)):
        checks.append(close(f"t_{m} beta=0", got, want, 1e-7))
    found = jacobi.point_spectrum_above_2(bergman(1), 1e-8, 1)
    checks.append(close("t_0 beta=1", found[0] if found else math.nan, 4 / math.sqrt(3), 1e-7))

    omega = bergman(0)
    for m in (0, 1, 2):
        ef = closedform.bergman_eigenfunction(0, m, 40).coeffs.real
        rec = jacobi.monic_recurrence(omega, closedform.bergman_tm_precise(0, m), 40)
        rel = float(np.max(np.abs(ef - rec)) / np.max(np.abs(rec)))
        checks.append(close(f"eigenfunction m={m}", rel, 0.0, 1e-9))
        t = closedform.bergman_tm(0, m).t_m
        resid = series.functional_residual(closedform.bergman_eigenfunction(0, m, 60), t, omega)
        checks.append(close(f"functional residual m={m}", resid, 0.0, 1e-10))

    for beta in (0.0, 1.0):
        t = closedform.bergman_tm_precise(beta, 0)
        values = jacobi.monic_recurrence(bergman(beta), t, 400)
        checks.append(close(f"critical point beta={beta:g}", series.theta(values, bergman(beta)),
                            float(t) / 2, 1e-8))

    for beta in (-0.5, 0.0, 1.0, 3.0):
        t = np.array([closedform.bergman_tm(beta, m).t_m for m in range(10_001)])
        checks.append(holds(f"t_m decreasing beta={beta:g}", bool(np.all(np.diff(t) < 0))))
        checks.append(holds(f"t_m -> 2 beta={beta:g}", 2.0 < t[-1] < 2.0 + 1e-6, value=float(t[-1])))
    return checks


@suite('hardy-beta')
def _hardy_beta() -> List[CheckVerdict]:
    checks = []
    omega = hardy()
    checks.append(close("a=1 p_1", float(np.max(np.abs(closedform.hardy_beta_approximant(1, 1)
                                                        - np.array([2 / 3, 1 / 3])))), 0.0, 1e-14))
    checks.append(close("a=1 p_2", float(np.max(np.abs(closedform.hardy_beta_approximant(1, 2)
                                                        - np.array([3 / 4, 1 / 2, 1 / 4])))), 0.0, 1e-14))
    for a in (1, 2, 3):
        f = series.binomial_series(a, a)
        worst = 0.0
        for n in range(21):
            got = optimal_approximant(f, omega, n).coeffs
            worst = max(worst, float(np.max(np.abs(got - closedform.hardy_beta_approximant(a, n)))))
        checks.append(close(f"exact polynomial a={a}", worst, 0.0, 1e-10))
    for a in (1.5, 2 + 0.5j):
        f = series.binomial_series(a, 20_000)
        checks.append(holds(f"tail a={a}", f.tail_bound < 1e-9, value=f.tail_bound))
        worst = 0.0
        for n in range(0, 21, 5):
            got = optimal_approximant(f, omega, n).coeffs
            worst = max(worst, float(np.max(np.abs(got - closedform.hardy_beta_approximant(a, n)))))
        checks.append(close(f"truncated series a={a}", worst, 0.0, 1e-6))
    return checks


def _interlace(inner: np.ndarray, outer: np.ndarray) -> bool:
    return bool(np.all(outer[:-1] < inner) and np.all(inner < outer[1:]))


@suite('duality')
def _duality() -> List[CheckVerdict]:
    checks = []
    for omega in (bergman(0), dirichlet(-2)):
        for n in (5, 10, 20):
            top = jacobi.truncated_norm(omega, n + 1)
            best = jacobi.maximize_theta(omega, n)
            checks.append(close(f"max theta {omega.label} N={n}", best.value, top / 2, 1e-8))
            checks.append(close(f"largest root {omega.label} N={n}",
                                jacobi.largest_recurrence_root(omega, n + 1) / 2, top / 2, 1e-8))
        prev = None
        for n in range(1, 17):
            r = np.sort_complex(recurrence_roots(omega, n).roots)
            real = float(np.max(np.abs(r.imag)))
            x = np.sort(r.real)
            checks.append(holds(f"real roots {omega.label} n={n}", real < 1e-9, value=real))
            checks.append(close(f"symmetry {omega.label} n={n}", float(np.max(np.abs(x + x[::-1]))), 0.0, 1e-9))
            if prev is not None:
                checks.append(holds(f"interlace {omega.label} n={n - 1},{n}", _interlace(prev, x)))
            prev = x
        for n in (3, 8, 15):
            x = recurrence_roots(omega, n + 1).roots.real.max()
            checks.append(close(f"small-N duality {omega.label} N={n}", float(x),
                                jacobi.truncated_norm(omega, n + 1), 1e-8))
    return checks


@suite('theta-witness')
def _theta_witness() -> List[CheckVerdict]:
    checks = []
    for omega in (bergman(0), dirichlet(-3), hardy()):
        w = omega.values(np.arange(40))
        worst = 0.0
        for k in range(5):
            for n in range(1, 6):
                got = series.theta(series.cayley_function(k, n).coeffs, omega)
                want = 1 + (w[k + 1] - 4 * w[n + k + 1]) / (w[k + 1] + 4 * np.sum(w[k + 2:n + k + 2]))
                worst = max(worst, abs(got - want))
        checks.append(close(f"witness formula {omega.label}", worst, 0.0, 1e-12))
    return checks


@suite('figure1')
def _figure1() -> List[CheckVerdict]:
    checks = []
    for row in figure1_rows([0] + list(range(-1, -13, -1))):
        if row.alpha < 0:
            ok = 1.0 < row.half_norm <= row.half_norm_bound
        else:
            ok = row.half_norm < 1.0 and row.half_norm <= row.half_norm_bound
        checks.append(holds(f"estimate within bound alpha={row.alpha:g}", ok, value=row.half_norm))
        if row.alpha == -1:
            checks.append(close("alpha=-1 half norm", row.half_norm, 3 / (2 * math.sqrt(2)), 1e-7))
    return checks


def _random_polynomial(rng: np.random.Generator, degree: int) -> series.CoeffSeries:
    moduli = np.where(rng.random(degree) < 0.5, rng.uniform(0.5, 0.85, degree), rng.uniform(1.2, 3.0, degree))
    zeros = moduli * np.exp(2j * np.pi * rng.random(degree))
    coeffs = np.array([1.0 + 0j])
    for z0 in zeros:
        coeffs = np.convolve(coeffs, [1.0, -1.0 / z0])
    return series.CoeffSeries(coeffs, 0.0)


@suite('zero-location')
def _zero_location() -> List[CheckVerdict]:
    checks = []
    rng = np.random.default_rng(20240611)
    for omega in (hardy(), dirichlet(0), dirichlet(1)):
        lowest = math.inf
        for trial in range(4):
            f = _random_polynomial(rng, int(rng.integers(1, 5)))
            for n in range(1, 16):
                _, stats = degree_stats(f, omega, n, 0.1)
                lowest = min(lowest, stats.min_root_modulus)
        checks.append(holds(f"roots outside closed disk {omega.label}", lowest > 1 - 1e-9, value=lowest))

    omega = bergman(0)
    f = series.one_minus_z()
    rows = [degree_stats(f, omega, n, 0.2)[1] for n in (25, 50, 100)]
    for row in rows:
        checks.append(holds(f"geo mean n={row.degree}", 0.85 <= row.geo_mean_modulus <= 1.15,
                            value=row.geo_mean_modulus))
        checks.append(holds(f"min modulus n={row.degree}",
                            row.min_root_modulus >= 2 * math.sqrt(2) / 3 - 1e-9, value=row.min_root_modulus))
    disc = [row.angular_discrepancy for row in rows]
    checks.append(holds("discrepancy decreasing", disc[0] > disc[1] > disc[2], detail=str(disc)))
    return checks


@suite('multizero')
def _multizero() -> List[CheckVerdict]:
    checks = []
    for r in (2, 3, 5):
        approx, report = multi_zero_example(bergman(0), 0, 20, r)
        checks.append(holds(f"r={r} root count", len(approx.roots) == r, value=len(approx.roots)))
        checks.append(holds(f"r={r} inside unit disk", report.inside_unit_disk))
        checks.append(close(f"r={r} modulus spread", report.modulus_spread, 0.0, 1e-8))
        checks.append(close(f"r={r} angular gaps", report.angular_gap_error, 0.0, 1e-8))
        checks.append(close(f"r={r} quotient", report.quotient_error, 0.0, 1e-8))
    return checks


def run_suite(name: str) -> SuiteVerdict:
    """
    运行一个套件（'all' 运行全部）

    Raises:
        KeyError: 未知套件
    """
    if name == 'all':
        verdicts = [run_suite(n) for n in SUITES]
        checks = [c for v in verdicts for c in v.checks]
        return SuiteVerdict(suite='all', passed=all(v.passed for v in verdicts),
                            elapsed=sum(v.elapsed for v in verdicts), checks=checks)
    if name not in SUITES:
        raise KeyError(name)
    logger.info(f"运行检验套件: {name}")
    start = time.perf_counter()
    try:
        checks = SUITES[name]()
    except OpaError as e:
        logger.error(f"套件 {name} 数值失败: {e}")
        checks = [CheckVerdict(name=name, passed=False, detail=f"{type(e).__name__}: {e}")]
    elapsed = time.perf_counter() - start
    passed = all(c.passed for c in checks)
    if not passed:
        failed = [c.name for c in checks if not c.passed]
        logger.warning(f"套件 {name} 未通过: {failed}")
    logger.info(f"套件 {name} 用时 {elapsed:.3f}s")
    return SuiteVerdict(suite=name, passed=passed, elapsed=elapsed, checks=checks)
