"""
最优逼近多项式相关的 MCP 工具
"""

import json
import logging

from ...cli.specs import parse_degrees, parse_function
from ...core.gram import optimal_approximant as solve_approximant
from ...core.jentzsch import jentzsch_sweep
from ...core.roots import poly_roots
from ...core.weights import parse_space

logger = logging.getLogger(__name__)


def register_approximant_tools(mcp):
    """注册逼近多项式相关的 MCP 工具"""

    @mcp.tool()
    def optimal_approximant(space: str, function: str, degree: int) -> str:
        """
        求 f 在 H²_ω 中的 n 次最优逼近多项式

        Args:
            space: 空间描述（hardy | dirichlet:α | bergman:β | custom:<file>）
            function: 函数描述（one_minus_z | one_minus_z_pow:a[,M] | cayley:k,n |
                      bergman_extremal:β[,N] | reciprocal_linear:z0[,N] | coeffs:<file>）
            degree: 次数 n

        Returns:
            系数、残差与根（JSON）
        """
        try:
            omega = parse_space(space)
            f = parse_function(function)
            approx = solve_approximant(f, omega, degree)
            if approx.coeffs.any():
                approx.roots = poly_roots(approx.coeffs).roots
            return f"""✅ 最优逼近多项式计算完成

- 空间: {omega.label}
- 次数: {degree}
- 残差 ‖p f − 1‖_ω: {approx.residual_norm:.15g}

{json.dumps(approx.to_dict(), indent=2)}"""
        except Exception as e:
            logger.error(f"逼近多项式计算失败: {e}")
            return f"❌ 计算失败: {str(e)}"

    @mcp.tool()
    def zero_statistics(space: str,
                        function: str,
                        degrees: str,
                        epsilon: float = 0.1,
                        cutoff: float = 2.0) -> str:
        """
        逼近多项式零点的 Jentzsch 型统计

        Args:
            space: 空间描述
            function: 函数描述
            degrees: 次数，'a..b' 或 'a,b,c'
            epsilon: τ_ε 的半径增量
            cutoff: 辐角统计只计入 |z| ≤ cutoff 的零点

        Returns:
            每个次数一行的统计表
        """
        try:
            omega = parse_space(space)
            f = parse_function(function)
            rows = jentzsch_sweep(f, omega, parse_degrees(degrees), epsilon, cutoff)
            lines = [f"✅ 零点统计完成（{omega.label}，ε={epsilon:g}）", "",
                     "| n | τ_ε/n | 几何平均模 | 辐角差异度 | |z|≤1 个数 | 最小模 |",
                     "|---|---|---|---|---|---|"]
            for r in rows:
                lines.append(f"| {r.degree} | {r.tau_eps_fraction:.6g} | {r.geo_mean_modulus:.6g} | "
                             f"{r.angular_discrepancy:.6g} | {r.count_in_unit_disk} | {r.min_root_modulus:.9g} |")
            return "\n".join(lines)
        except Exception as e:
            logger.error(f"零点统计失败: {e}")
            return f"❌ 统计失败: {str(e)}"
