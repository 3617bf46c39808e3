"""异常类型定义"""

from typing import Any, Optional, Sequence


class OpaError(Exception):
    """opa-helper 所有异常的基类"""


class InputError(OpaError, ValueError):
    """输入文件或命令行参数格式错误"""


class DomainError(OpaError, ValueError):
    """参数超出定义域（例如 β ≤ −1、α ≥ 0、零向量）"""


class NoExtremalError(OpaError):
    """‖𝒥_ω‖ ≤ 2 + margin 时不存在极值函数"""

    def __init__(self, message: str, norm: float):
        super().__init__(message)
        self.norm = norm


class ConditioningError(OpaError, ArithmeticError):
    """Gram 矩阵数值上不正定，或截断误差过大"""

    def __init__(self, message: str, smallest_pivot: Optional[float] = None):
        super().__init__(message)
        self.smallest_pivot = smallest_pivot


class ConvergenceError(OpaError, ArithmeticError):
    """迭代达到上限仍未收敛

    Attributes:
        bracket: 最后一次比较的两个值（norm_estimate / 点谱）
        best: 最优迭代结果（例如 Aberth 的根）
        residuals: 与 best 对应的残差
    """

    def __init__(self,
                 message: str,
                 bracket: Optional[Sequence[Any]] = None,
                 best: Any = None,
                 residuals: Any = None):
        super().__init__(message)
        self.bracket = bracket
        self.best = best
        self.residuals = residuals
