#!/usr/bin/env python3
"""权重序列模块

权重 ω = {ω_n} 决定空间 H²_ω 的几何：‖f‖² = Σ |a_n|² ω_n。
支持 Dirichlet (ω_n = (n+1)^α)、Bergman (ω_n = C(β+n+1, n)^{-1})、
Hardy (ω_n ≡ 1) 以及通过 JSON 描述的自定义序列。
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Union

import mpmath
import numpy as np
import sympy
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from scipy import special

from .errors import DomainError, InputError

logger = logging.getLogger(__name__)

KINDS = ('dirichlet', 'bergman', 'hardy', 'custom')

# 自定义序列比值检验：|ω_n/ω_{n+1} − 1| < RATIO_GATE（启发式准入门槛，不是证明）
RATIO_GATE = 0.5
# 比值检验的采样范围
RATIO_CHECK_DENSE = 2048
RATIO_CHECK_FAR = 10 ** 6
# tail_sup 对自定义序列使用的窗口长度
TAIL_WINDOW = 4096


class RatioTail(BaseModel):
    """常比值延拓：n ≥ len(prefix)−1 时 ω_n / ω_{n+1} = ratio"""
    type: Literal['ratio']
    ratio: float = Field(gt=0)


class FormulaTail(BaseModel):
    """公式尾部：n ≥ len(prefix) 时 ω_n = expr(n)，expr 是关于 n 的 sympy 表达式"""
    type: Literal['formula']
    expr: str

    @field_validator('expr')
    @classmethod
    def _parse(cls, value: str) -> str:
        try:
            parsed = sympy.sympify(value)
        except (sympy.SympifyError, SyntaxError, TypeError) as e:
            raise ValueError(f"无法解析尾部公式 {value!r}: {e}")
        extra = parsed.free_symbols - {sympy.Symbol('n')}
        if extra:
            raise ValueError(f"尾部公式只能包含变量 n，发现: {sorted(map(str, extra))}")
        return value


class CustomWeights(BaseModel):
    """自定义权重 JSON 文档

    {"prefix": [1, 0.8, 0.7], "tail": {"type": "ratio", "ratio": 1.0}}
    {"prefix": [], "tail": {"type": "formula", "expr": "(n+1)**(-2)"}}
    """
    name: Optional[str] = None
    prefix: List[float] = Field(default_factory=list)
    tail: Annotated[Union[RatioTail, FormulaTail], Field(discriminator='type')]
    ratio_check_from: int = Field(default=0, ge=0)

    @model_validator(mode='after')
    def _check_prefix(self):
        if isinstance(self.tail, RatioTail) and not self.prefix:
            raise ValueError("ratio 尾部需要非空 prefix")
        if any(v <= 0 for v in self.prefix):
            raise ValueError("prefix 中的权重必须为正")
        return self


@dataclass(frozen=True)
class WeightSequence:
    """
    权重序列（不可变）

    Attributes:
        kind: 'dirichlet' / 'bergman' / 'hardy' / 'custom'
        param: Dirichlet 的 α 或 Bergman 的 β
        custom: 自定义序列的描述
    """
    kind: str
    param: float = 0.0
    custom: Optional[CustomWeights] = field(default=None, compare=False)
    source: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"未知的权重类型: {self.kind}")
        if self.kind == 'bergman' and not self.param > -1:
            raise DomainError(f"Bergman 参数必须满足 β > −1，当前 β={self.param}")
        if self.kind == 'custom':
            if self.custom is None:
                raise DomainError("custom 权重需要提供 CustomWeights")
            object.__setattr__(self, '_formula', _compile_tail(self.custom))
            _validate_custom(self)

    # ------------------------------------------------------------------
    # 求值
    # ------------------------------------------------------------------
    def values(self, n) -> np.ndarray:
        """对索引数组逐元素求 ω_n（float64）"""
        n = np.asarray(n, dtype=np.int64)
        if np.any(n < 0):
            raise DomainError("权重索引必须非负")
        x = n.astype(float)

        if self.kind == 'hardy':
            return np.ones_like(x)
        if self.kind == 'dirichlet':
            alpha = float(self.param)
            if alpha < 0 and alpha.is_integer():
                # 与 Bergman 的 1/(n+1) 逐位一致
                return 1.0 / np.power(x + 1.0, -alpha)
            return np.power(x + 1.0, alpha)
        if self.kind == 'bergman':
            return _bergman_values(float(self.param), x)
        return self._custom_values(n)

    def value(self, n: int) -> float:
        """单点求值，与 values 走同一条路径"""
        return float(self.values(np.array([n]))[0])

    def ratio(self, n: int) -> float:
        """ω_n / ω_{n+1}"""
        return float(self.ratios(np.array([n]))[0])

    def ratios(self, n) -> np.ndarray:
        """逐元素求 ω_n / ω_{n+1}；参数化类型使用闭式"""
        n = np.asarray(n, dtype=np.int64)
        x = n.astype(float)
        if self.kind == 'hardy':
            return np.ones_like(x)
        if self.kind == 'dirichlet':
            return np.power((x + 1.0) / (x + 2.0), float(self.param))
        if self.kind == 'bergman':
            return (x + float(self.param) + 2.0) / (x + 1.0)
        return self.values(n) / self.values(n + 1)

    def ratio_mp(self, n: int) -> mpmath.mpf:
        """当前 mpmath 精度下的 ω_n / ω_{n+1}（自定义序列退化为双精度值）"""
        if self.kind == 'hardy':
            return mpmath.mpf(1)
        if self.kind == 'dirichlet':
            return (mpmath.mpf(n + 1) / (n + 2)) ** mpmath.mpf(self.param)
        if self.kind == 'bergman':
            return (mpmath.mpf(n + 2) + mpmath.mpf(self.param)) / (n + 1)
        return mpmath.mpf(self.ratio(n))

    def tail_sup(self, start: int) -> float:
        """
        sup_{m ≥ start} ω_m

        参数化类型为精确值；自定义序列取一个窗口及远端采样上的最大值。
        权重递增时返回 inf。
        """
        start = max(int(start), 0)
        if self.kind == 'hardy':
            return 1.0
        if self.kind == 'dirichlet':
            return math.inf if self.param > 0 else self.value(start)
        if self.kind == 'bergman':
            return self.value(start)

        if isinstance(self.custom.tail, RatioTail) and self.custom.tail.ratio < 1:
            return math.inf
        idx = np.concatenate([
            np.arange(start, start + TAIL_WINDOW),
            start + np.unique(np.logspace(np.log10(TAIL_WINDOW), 7, 64).astype(np.int64)),
        ])
        vals = self.values(idx)
        sup = float(vals.max())
        if vals[-1] > vals[-2]:
            return math.inf
        return sup

    def is_nondecreasing(self) -> bool:
        """是否为非减序列（参数化类型为精确判断）"""
        if self.kind == 'hardy':
            return True
        if self.kind == 'dirichlet':
            return self.param >= 0
        if self.kind == 'bergman':
            return False
        return bool(np.all(np.diff(self.values(np.arange(RATIO_CHECK_DENSE))) >= 0))

    def strictly_decreasing_upto(self, last: int) -> bool:
        """检查 ω_0 > ω_1 > … > ω_last"""
        return bool(np.all(np.diff(self.values(np.arange(last + 1))) < 0))

    @property
    def label(self) -> str:
        """命令行格式的描述，如 'bergman:0'"""
        if self.kind == 'hardy':
            return 'hardy'
        if self.kind == 'custom':
            return f"custom:{self.source or self.custom.name or 'inline'}"
        return f"{self.kind}:{self.param:g}"

    def _custom_values(self, n: np.ndarray) -> np.ndarray:
        spec = self.custom
        prefix = np.asarray(spec.prefix, dtype=float)
        out = np.empty(n.shape, dtype=float)
        in_prefix = n < len(prefix)
        out[in_prefix] = prefix[n[in_prefix]]
        rest = ~in_prefix
        if np.any(rest):
            m = n[rest]
            if isinstance(spec.tail, RatioTail):
                last = len(prefix) - 1
                out[rest] = prefix[last] * np.power(spec.tail.ratio, -(m - last).astype(float))
            else:
                out[rest] = np.broadcast_to(self._formula(m.astype(float)), m.shape)
        return out


def _bergman_values(beta: float, x: np.ndarray) -> np.ndarray:
    if float(beta).is_integer() and beta <= 60:
        # ω_n = Π_{j=1}^{β+1} j / (n+j)
        w = np.ones_like(x)
        for j in range(1, int(beta) + 2):
            w *= (x + j) / j
        return 1.0 / w
    # ω_n = Γ(β+2) Γ(n+1) / Γ(n+β+2)，对数形式避免溢出
    return np.exp(special.gammaln(beta + 2.0) + special.gammaln(x + 1.0) - special.gammaln(x + beta + 2.0))


def _compile_tail(spec: CustomWeights):
    if isinstance(spec.tail, FormulaTail):
        n = sympy.Symbol('n')
        return sympy.lambdify(n, sympy.sympify(spec.tail.expr), modules='numpy')
    return None


def _validate_custom(seq: WeightSequence) -> None:
    spec = seq.custom
    w0 = seq.value(0)
    if w0 != 1.0:
        raise DomainError(f"自定义权重必须满足 ω_0 = 1，当前 ω_0 = {w0}")

    start = spec.ratio_check_from
    idx = np.concatenate([
        np.arange(0, start + RATIO_CHECK_DENSE),
        start + np.unique(np.logspace(np.log10(RATIO_CHECK_DENSE), np.log10(RATIO_CHECK_FAR), 200).astype(np.int64)),
    ])
    with np.errstate(all='ignore'):
        vals = seq.values(idx)
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
        bad = int(idx[~(np.isfinite(vals) & (vals > 0))][0])
        raise DomainError(f"自定义权重必须为正的有限值，ω_{bad} 不满足")

    check = idx[idx >= start]
    with np.errstate(all='ignore'):
        dev = np.abs(seq.ratios(check) - 1.0)
    if np.any(dev >= RATIO_GATE):
        bad = int(check[dev >= RATIO_GATE][0])
        raise DomainError(
            f"比值检验失败：|ω_{bad}/ω_{bad + 1} − 1| = {dev[dev >= RATIO_GATE][0]:.3g} ≥ {RATIO_GATE}"
        )
    logger.debug(f"自定义权重检验通过，采样 {len(idx)} 个索引")


# ----------------------------------------------------------------------
# 构造函数与公开操作
# ----------------------------------------------------------------------
def hardy() -> WeightSequence:
    return WeightSequence('hardy')


def dirichlet(alpha: float) -> WeightSequence:
    return WeightSequence('dirichlet', float(alpha))


def bergman(beta: float) -> WeightSequence:
    return WeightSequence('bergman', float(beta))


def custom(spec: CustomWeights, source: Optional[str] = None) -> WeightSequence:
    return WeightSequence('custom', custom=spec, source=source)


def dirichlet_weight(alpha: float, n: int) -> float:
    """(n+1)^α"""
    return dirichlet(alpha).value(n)


def bergman_weight(beta: float, n: int) -> float:
    """
    1 / C(β+n+1, n)

    Raises:
        DomainError: β ≤ −1
    """
    return bergman(beta).value(n)


def weight_ratio(omega: WeightSequence, n: int) -> float:
    """ω_n / ω_{n+1}"""
    return omega.ratio(n)


def load_custom_weights(path: Union[str, Path]) -> WeightSequence:
    """
    从 JSON 文件加载自定义权重

    Raises:
        InputError: 文件不存在或格式不符合 CustomWeights
        DomainError: 数值检验失败
    """
    path = Path(path)
    if not path.exists():
        raise InputError(f"权重文件不存在: {path}")
    try:
        spec = CustomWeights.model_validate(json.loads(path.read_text(encoding='utf-8')))
    except (json.JSONDecodeError, ValidationError) as e:
        raise InputError(f"权重文件格式错误 {path}: {e}")
    logger.info(f"加载自定义权重: {path}")
    return custom(spec, source=str(path))


def parse_space(text: str) -> WeightSequence:
    """
    解析空间描述：hardy | dirichlet:α | bergman:β | custom:<file>

    Raises:
        InputError: 格式错误
    """
    kind, _, arg = text.strip().partition(':')
    kind = kind.lower()
    if kind == 'hardy' and not arg:
        return hardy()
    if kind == 'custom' and arg:
        return load_custom_weights(arg)
    if kind in ('dirichlet', 'bergman') and arg:
        try:
            value = float(arg)
        except ValueError:
            raise InputError(f"无法解析空间参数: {text}")
        try:
            return dirichlet(value) if kind == 'dirichlet' else bergman(value)
        except DomainError as e:
            raise InputError(str(e))
    raise InputError(f"无法解析空间描述: {text}（可选 hardy | dirichlet:α | bergman:β | custom:<file>）")
