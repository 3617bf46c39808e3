#!/usr/bin/env python3
"""系数序列模块

CoeffSeries 表示多项式或截断的解析函数 f(z) = Σ a_n z^n，
并记录被丢弃尾部在 H²（ω ≡ 1）范数下的上界 tail_bound：
0 表示精确多项式，inf 表示尾部不可信。
"""

import json
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, Field, model_validator

from .errors import DomainError, InputError
from .weights import TAIL_WINDOW, WeightSequence

logger = logging.getLogger(__name__)

# 构造函数额外计算的项数（用于估计尾部）
TAIL_EXTRA_MIN = 4096
TAIL_EXTRA_FACTOR = 3


@dataclass(frozen=True, eq=False)
class CoeffSeries:
    """
    复系数序列

    Attributes:
        coeffs: 复数组，下标 n 对应 z^n 的系数
        tail_bound: 丢弃尾部的 ℓ² 范数上界；0 为精确，inf 为不可信
    """
    coeffs: np.ndarray
    tail_bound: float = 0.0

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if arr.ndim != 1 or arr.size == 0:
            raise DomainError("系数序列必须是非空一维数组")
        arr.setflags(write=False)
        object.__setattr__(self, 'coeffs', arr)
        if not self.tail_bound >= 0:
            raise DomainError(f"tail_bound 必须非负，当前 {self.tail_bound}")
        object.__setattr__(self, 'tail_bound', float(self.tail_bound))

    @property
    def truncation_degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return self.tail_bound == 0.0

    @property
    def is_trusted(self) -> bool:
        return math.isfinite(self.tail_bound)

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.coeffs.imag == 0))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def to_dict(self) -> dict:
        if self.is_exact:
            tail: Union[float, str] = 'exact'
        elif not self.is_trusted:
            tail = 'untrusted'
        else:
            tail = self.tail_bound
        return {
            're': self.coeffs.real.tolist(),
            'im': self.coeffs.imag.tolist(),
            'tail_bound': tail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> 'CoeffSeries':
        """
        从 JSON 文本解析

        Raises:
            InputError: 格式错误
        """
        try:
            doc = CoeffSeriesDoc.model_validate_json(text)
        except ValueError as e:
            raise InputError(f"系数文件格式错误: {e}")
        return doc.to_series()


class CoeffSeriesDoc(BaseModel):
    """CoeffSeries 的 JSON 形式 {"re": [...], "im": [...], "tail_bound": x}"""
    re: List[float] = Field(min_length=1)
    im: Optional[List[float]] = None
    tail_bound: Union[float, str] = 'exact'

    @model_validator(mode='after')
    def _check(self):
        if self.im is not None and len(self.im) != len(self.re):
            raise ValueError("re 与 im 长度不一致")
        if isinstance(self.tail_bound, str) and self.tail_bound not in ('exact', 'untrusted'):
            raise ValueError("tail_bound 只能是非负数、'exact' 或 'untrusted'")
        if isinstance(self.tail_bound, float) and self.tail_bound < 0:
            raise ValueError("tail_bound 必须非负")
        return self

    def to_series(self) -> CoeffSeries:
        coeffs = np.asarray(self.re, dtype=float) + 1j * np.asarray(self.im or [0.0] * len(self.re))
        tail = {'exact': 0.0, 'untrusted': math.inf}.get(self.tail_bound, self.tail_bound)
        return CoeffSeries(coeffs, float(tail))


# ----------------------------------------------------------------------
# 基本运算
# ----------------------------------------------------------------------
def from_coeffs(values: Sequence[complex], tail_bound: float = 0.0) -> CoeffSeries:
    return CoeffSeries(np.asarray(values, dtype=complex), tail_bound)


def weighted_inner(f: CoeffSeries, g: CoeffSeries, omega: WeightSequence) -> complex:
    """
    加权内积 ⟨f, g⟩_ω = Σ a_n · conj(b_n) · ω_n（在两者共同定义的下标上求和）

    Args:
        f: 第一个序列
        g: 第二个序列
        omega: 权重

    Returns:
        complex: 内积值
    """
    m = min(len(f), len(g))
    w = omega.values(np.arange(m))
    return complex(np.sum(f.coeffs[:m] * np.conj(g.coeffs[:m]) * w))


def weighted_norm_sq(f: CoeffSeries, omega: WeightSequence) -> float:
    """‖f‖²_ω"""
    w = omega.values(np.arange(len(f)))
    return float(np.sum(np.abs(f.coeffs) ** 2 * w))


def shift(f: CoeffSeries, k: int) -> CoeffSeries:
    """z^k f：在前面补 k 个零；ℓ² 尾部上界不变"""
    if k < 0:
        raise DomainError(f"平移量必须非负: {k}")
    if k == 0:
        return f
    return CoeffSeries(np.concatenate([np.zeros(k, dtype=complex), f.coeffs]), f.tail_bound)


def scale(f: CoeffSeries, c: complex) -> CoeffSeries:
    return CoeffSeries(f.coeffs * c, f.tail_bound * abs(c))


def truncate(f: CoeffSeries, n: int) -> CoeffSeries:
    """保留到 z^n 的系数，被截掉的部分并入 tail_bound"""
    if n + 1 >= len(f):
        return f
    dropped = float(np.linalg.norm(f.coeffs[n + 1:]))
    return CoeffSeries(f.coeffs[:n + 1], math.hypot(dropped, f.tail_bound))


def multiply(f: CoeffSeries, g: CoeffSeries) -> CoeffSeries:
    """
    Cauchy 乘积

    结果只保留两个因子都能精确确定的系数；溢出部分与尾部的贡献
    按 ‖f‖_{ℓ¹}·tail(g) + ‖g‖_{ℓ¹}·tail(f) 估计。
    """
    full = np.convolve(f.coeffs, g.coeffs)
    if f.is_exact and g.is_exact:
        return CoeffSeries(full, 0.0)
    if f.is_exact:
        n = len(g)
    elif g.is_exact:
        n = len(f)
    else:
        n = min(len(f), len(g))
    spill = float(np.linalg.norm(full[n:]))
    tail = (spill
            + np.sum(np.abs(f.coeffs)) * g.tail_bound
            + np.sum(np.abs(g.coeffs)) * f.tail_bound
            + f.tail_bound * g.tail_bound)
    return CoeffSeries(full[:n], float(tail))


def evaluate(f: CoeffSeries, z: complex) -> complex:
    """计算截断多项式在 z 处的值"""
    return complex(np.polynomial.polynomial.polyval(z, f.coeffs))


# ----------------------------------------------------------------------
# Θ 泛函与算子 T_ω
# ----------------------------------------------------------------------
def theta(a, omega: WeightSequence) -> float:
    """
    Θ(a) = Σ_{n<N} a_n a_{n+1} ω_{n+1} / Σ_{n≤N} a_n² ω_{n+1}

    复数输入按模处理。对任意非零实数 t 有 Θ(t·a) = Θ(a)。

    Args:
        a: 长度为 N+1 的实向量
        omega: 权重

    Returns:
        float: Θ 的值

    Raises:
        DomainError: a 为零向量
    """
    a = np.asarray(a)
    if np.iscomplexobj(a):
        a = np.abs(a)
    a = a.astype(float)
    if a.size == 0 or not np.any(a):
        raise DomainError("Θ 要求非零向量")
    w = omega.values(np.arange(1, a.size + 1))
    num = float(np.sum(a[:-1] * a[1:] * w[:-1]))
    den = float(np.sum(a * a * w))
    return num / den


def t_omega_multipliers(omega: WeightSequence, n: int) -> np.ndarray:
    """T_ω 的对角乘子 (ω_{j+1} − ω_{j+2}) / ω_{j+2}，j = 0..n−1"""
    return omega.ratios(np.arange(1, n + 1)) - 1.0


def t_omega_apply(g: CoeffSeries, omega: WeightSequence) -> CoeffSeries:
    """对系数逐项乘以 (ω_{j+1} − ω_{j+2}) / ω_{j+2}"""
    mult = t_omega_multipliers(omega, len(g))
    tail = 0.0
    if not g.is_exact:
        far = t_omega_multipliers(omega, len(g) + TAIL_WINDOW)[len(g):]
        tail = g.tail_bound * float(np.max(np.abs(far)))
    return CoeffSeries(g.coeffs * mult, tail)


def functional_residual(f: CoeffSeries, t: float, omega: WeightSequence) -> float:
    """
    函数方程残差

    计算 f·(z² − t z + 1) − 1 + z²·T_ω(f) 到 z^N 的系数，
    返回下标 0..N−2 上的最大模（最后两个下标受截断污染，不计入）。

    Raises:
        DomainError: 截断次数 N < 2
    """
    n = f.truncation_degree
    if n < 2:
        raise DomainError(f"functional_residual 需要截断次数 N ≥ 2，当前 N={n}")
    a = f.coeffs
    h = a.copy()
    h[1:] -= t * a[:-1]
    h[2:] += a[:-2] * (1.0 + t_omega_multipliers(omega, n - 1))
    h[0] -= 1.0
    return float(np.max(np.abs(h[:n - 1])))


# ----------------------------------------------------------------------
# 标准构造
# ----------------------------------------------------------------------
def cayley_section(n: int) -> CoeffSeries:
    """T_n((1+z)/(1−z)) = 1 + 2z + … + 2z^n"""
    if n < 1:
        raise DomainError(f"cayley_section 需要 n ≥ 1，当前 n={n}")
    return CoeffSeries(np.concatenate([[1.0], np.full(n, 2.0)]), 0.0)


def cayley_function(k: int, n: int) -> CoeffSeries:
    """f_{k,n} = z^k T_n((1+z)/(1−z))"""
    return shift(cayley_section(n), k)


def binomial_series(a: complex, n: int, sign: str = '+', c: complex = 1.0) -> CoeffSeries:
    """
    二项式级数

    sign='+' 给出 (1 − c z)^a，sign='−' 给出 (1 − c z)^{−a}，保留到 z^n。
    系数由比值递推得到：c_k = c_{k−1} · (k−1∓a)/k · c。
    a 为非负整数且 sign='+' 时结果是精确多项式。

    Args:
        a: 指数，'+' 时要求 Re a > 0
        n: 截断次数
        sign: '+' 或 '−'（也接受 '-'）
        c: 缩放因子

    Returns:
        CoeffSeries: 系数与尾部估计
    """
    if sign not in ('+', '-', '−'):
        raise DomainError(f"sign 只能是 '+' 或 '−': {sign}")
    a = complex(a)
    if sign == '+' and a.real <= 0:
        raise DomainError(f"(1−z)^a 要求 Re a > 0，当前 a={a}")
    if n < 0:
        raise DomainError(f"截断次数必须非负: {n}")

    power = a if sign == '+' else -a
    poly_degree = None
    if power.imag == 0 and power.real >= 0 and float(power.real).is_integer():
        poly_degree = int(power.real)

    extra = 0 if poly_degree is not None and poly_degree <= n else max(TAIL_EXTRA_MIN, TAIL_EXTRA_FACTOR * (n + 1))
    k = np.arange(1, n + extra + 1)
    steps = (k - 1 - power) / k * c
    coeffs = np.concatenate([[1.0 + 0j], np.cumprod(steps)])
    if np.isrealobj(c) and power.imag == 0:
        coeffs = coeffs.real.astype(complex)

    if extra == 0:
        coeffs[poly_degree + 1:] = 0.0
        return CoeffSeries(coeffs[:n + 1], 0.0)
    return CoeffSeries(coeffs[:n + 1], tail_estimate(coeffs[n + 1:], n + 1))


def tail_estimate(tail: np.ndarray, start: int) -> float:
    """
    由额外计算的系数估计 ℓ² 尾部

    已计算部分直接求和；更远处按几何衰减或幂律衰减外推（是估计，不是严格上界）。
    """
    mags = np.abs(tail) ** 2
    partial = float(np.sum(mags))
    if mags.size < 4 or mags[-1] == 0.0:
        return math.sqrt(partial)
    q = mags[-1] / mags[-2]
    if q < 0.998:
        rest = mags[-1] * q / (1.0 - q)
    else:
        mid = mags.size // 2
        k_mid, k_end = start + mid, start + mags.size - 1
        if mags[mid] <= mags[-1]:
            return math.inf
        p = math.log(mags[mid] / mags[-1]) / math.log(k_end / k_mid)
        if p <= 1.0:
            return math.inf
        rest = mags[-1] * k_end / (p - 1.0)
    return math.sqrt(partial + rest)


def one_minus_z() -> CoeffSeries:
    return CoeffSeries(np.array([1.0, -1.0]), 0.0)


def reciprocal_linear(z0: complex, n: int) -> CoeffSeries:
    """
    1/(z − z₀) 的 Maclaurin 展开，要求 |z₀| > 1

    系数为 −z₀^{−(k+1)}，尾部为精确的几何级数和。
    """
    z0 = complex(z0)
    if abs(z0) <= 1.0:
        raise DomainError(f"reciprocal_linear 要求 |z₀| > 1，当前 |z₀|={abs(z0)}")
    k = np.arange(n + 1)
    coeffs = -np.power(1.0 / z0, k + 1)
    q = 1.0 / abs(z0) ** 2
    tail = abs(z0) ** (-(n + 2)) / math.sqrt(1.0 - q)
    return CoeffSeries(coeffs, tail)
