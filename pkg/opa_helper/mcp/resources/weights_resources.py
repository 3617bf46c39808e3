"""
权重序列相关的 MCP 资源
"""

import json

from ...core.weights import CustomWeights


def register_weights_resources(mcp):
    """注册权重序列相关的 MCP 资源"""

    @mcp.resource("opa://weights-schema")
    def get_weights_schema() -> str:
        """获取自定义权重 JSON 文件的格式说明"""
        schema = json.dumps(CustomWeights.model_json_schema(), indent=2, ensure_ascii=False)
        return f"""# 自定义权重文件格式

通过 `--space custom:<file>` 加载。文件描述正权重序列 ω_0, ω_1, …，
要求 ω_0 = 1，且 ω_n / ω_{{n+1}} → 1。

## 字段
- `name`：可选，显示用名称
- `prefix`：前若干项的显式取值
- `tail`：prefix 之后的延拓方式
  - `{{"type": "ratio", "ratio": r}}`：ω_n / ω_{{n+1}} = r（需要非空 prefix）
  - `{{"type": "formula", "expr": "..."}}`：ω_n 由关于 n 的表达式给出（sympy 语法）
- `ratio_check_from`：比值检验的起始下标（默认 0）

## 示例
```json
{{"name": "bergman-like", "prefix": [1, 0.5], "tail": {{"type": "formula", "expr": "1/(n+1)"}}, "ratio_check_from": 2}}
```

```json
{{"prefix": [1, 1, 1], "tail": {{"type": "ratio", "ratio": 1.0}}}}
```

## 数值检验
- 加载时在 0..ratio_check_from+2048 的每个下标以及到 10⁶ 的对数采样点上检查
  ω_n > 0 与 |ω_n/ω_{{n+1}} − 1| < 0.5，这是准入门槛而不是收敛证明
- 权重递增时截断级数的尾部不可信，Gram 矩阵计算会拒绝非精确输入

## JSON Schema
```json
{schema}
```
"""
