#!/usr/bin/env python3
"""
命令行参数解析与结果输出

RunConfig 记录一次运行的完整配置，并写入每个输出文件的头部，
相同配置得到逐字节相同的输出。
"""

import io
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence

import pandas as pd
from pydantic import BaseModel, Field

from .. import __version__
from ..core import closedform, series
from ..core.errors import DomainError, InputError
from ..core.series import CoeffSeries

logger = logging.getLogger(__name__)

TOOL_NAME = 'opa-helper'
DEFAULT_TOL = 1e-9
# 无穷级数构造默认保留的项数
DEFAULT_TERMS = 20_000
DEFAULT_EXTREMAL_TERMS = 400
FUNCTION_NAMES = ('one_minus_z', 'one_minus_z_pow', 'cayley', 'bergman_extremal',
                  'reciprocal_linear', 'coeffs')


class RunConfig(BaseModel):
    """一次运行的完整配置"""
    command: str
    space: Optional[str] = None
    function: Optional[str] = None
    degree: Optional[int] = None
    degrees: Optional[List[int]] = None
    tol: float = Field(default=DEFAULT_TOL, gt=0)
    out: Optional[str] = None
    format: Literal['csv', 'json'] = 'csv'
    workers: int = Field(default=1, ge=1)
    options: Dict[str, Any] = Field(default_factory=dict)

    def header_json(self) -> str:
        return self.model_dump_json(exclude={'out'})


def parse_complex(text: str) -> complex:
    """解析 '1.5'、'2+0.5i'、'2+0.5j' 形式的复数"""
    try:
        return complex(text.strip().replace('i', 'j').replace(' ', ''))
    except ValueError:
        raise InputError(f"无法解析复数: {text}")


def _split_args(arg: str, name: str, count: Sequence[int]) -> List[str]:
    parts = [p.strip() for p in arg.split(',')] if arg else []
    if len(parts) not in count:
        raise InputError(f"函数 {name} 的参数个数错误: {arg!r}")
    return parts


def _int(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InputError(f"需要整数: {text}")


def parse_function(text: str) -> CoeffSeries:
    """
    解析函数描述

    one_minus_z | one_minus_z_pow:a[,M] | cayley:k,n | bergman_extremal:β[,N]
    | reciprocal_linear:z0[,N] | coeffs:<file>

    Raises:
        InputError: 格式错误或文件无法读取
    """
    name, _, arg = text.strip().partition(':')
    try:
        if name == 'one_minus_z' and not arg:
            return series.one_minus_z()
        if name == 'one_minus_z_pow':
            parts = _split_args(arg, name, (1, 2))
            terms = _int(parts[1]) if len(parts) == 2 else DEFAULT_TERMS
            return series.binomial_series(parse_complex(parts[0]), terms)
        if name == 'cayley':
            k, n = (_int(p) for p in _split_args(arg, name, (2,)))
            return series.cayley_function(k, n)
        if name == 'bergman_extremal':
            parts = _split_args(arg, name, (1, 2))
            terms = _int(parts[1]) if len(parts) == 2 else DEFAULT_EXTREMAL_TERMS
            return closedform.bergman_extremal(float(parts[0]), terms)
        if name == 'reciprocal_linear':
            parts = _split_args(arg, name, (1, 2))
            terms = _int(parts[1]) if len(parts) == 2 else DEFAULT_EXTREMAL_TERMS
            return series.reciprocal_linear(parse_complex(parts[0]), terms)
        if name == 'coeffs' and arg:
            path = Path(arg)
            if not path.exists():
                raise InputError(f"系数文件不存在: {path}")
            return CoeffSeries.from_json(path.read_text(encoding='utf-8'))
    except DomainError as e:
        raise InputError(f"函数描述 {text!r} 超出定义域: {e}")
    except ValueError as e:
        if isinstance(e, InputError):
            raise
        raise InputError(f"无法解析函数描述 {text!r}: {e}")
    raise InputError(f"未知的函数描述: {text}（可选 {' | '.join(FUNCTION_NAMES)}）")


def parse_degrees(text: str) -> List[int]:
    """'a..b'（含两端）、'a,b,c' 或单个整数"""
    text = text.strip()
    if '..' in text:
        lo, _, hi = text.partition('..')
        lo, hi = _int(lo), _int(hi)
        if lo > hi or lo < 0:
            raise InputError(f"次数范围无效: {text}")
        return list(range(lo, hi + 1))
    values = [_int(p) for p in text.split(',') if p.strip()]
    if not values or min(values) < 0:
        raise InputError(f"次数列表无效: {text}")
    return values


def parse_floats(text: str) -> List[float]:
    try:
        return [float(p) for p in text.split(',') if p.strip()]
    except ValueError:
        raise InputError(f"无法解析数值列表: {text}")


# ----------------------------------------------------------------------
# 输出
# ----------------------------------------------------------------------
def fmt(value: Any) -> str:
    """CSV 单元格：浮点数保留 15 位有效数字"""
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return '%.15g' % value
    if value is None:
        return ''
    return str(value)


def _json_value(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if math.isnan(value):
            return None
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return float('%.15g' % value)
    if isinstance(value, dict):
        return {k: _json_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    if hasattr(value, 'item'):
        return _json_value(value.item())
    return value


def render_csv(config: RunConfig, columns: Sequence[str], rows: Sequence[Sequence[Any]],
               notes: Sequence[str] = ()) -> str:
    lines = [f"# {TOOL_NAME} {__version__}", f"# config: {config.header_json()}"]
    lines += [f"# {note}" for note in notes]
    # 单元格先格式化为字符串，含逗号或引号的单元格由 to_csv 加引号
    frame = pd.DataFrame([[fmt(v) for v in row] for row in rows], columns=list(columns), dtype=object)
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format='%.15g', lineterminator='\n')
    return '\n'.join(lines) + '\n' + buffer.getvalue()


def render_json(config: RunConfig, data: Any, notes: Sequence[str] = ()) -> str:
    doc = {
        'tool': TOOL_NAME,
        'version': __version__,
        'config': json.loads(config.header_json()),
        'data': _json_value(data),
    }
    if notes:
        doc['notes'] = list(notes)
    return json.dumps(doc, ensure_ascii=False, indent=2) + '\n'


def render_table(config: RunConfig, columns: Sequence[str], rows: Sequence[Sequence[Any]],
                 notes: Sequence[str] = ()) -> str:
    """按 config.format 输出表格；JSON 形式为对象列表"""
    if config.format == 'json':
        data = [dict(zip(columns, row)) for row in rows]
        return render_json(config, data, notes)
    return render_csv(config, columns, rows, notes)


def emit(text: str, out: Optional[str]) -> None:
    """写入文件或标准输出"""
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding='utf-8')
        logger.info(f"已写入: {path}")
    else:
        print(text, end='')
