"""
Jacobi 矩阵与谱相关的 MCP 工具
"""

import logging

from ...core import closedform, jacobi, verify
from ...core.weights import parse_space

logger = logging.getLogger(__name__)


def register_spectral_tools(mcp):
    """注册谱相关的 MCP 工具"""

    @mcp.tool()
    def jacobi_norm(space: str, tol: float = 1e-9) -> str:
        """
        估计 ‖𝒥_ω‖，给出极值 𝒰_ω = ‖𝒥_ω‖/2 与最优逼近多项式零点模的下界 1/𝒰_ω

        Args:
            space: 空间描述（hardy | dirichlet:α | bergman:β | custom:<file>）
            tol: 相邻两次截断之差的收敛容差

        Returns:
            估计结果
        """
        try:
            omega = parse_space(space)
            est = jacobi.norm_estimate(omega, tol)
            attained = est.value > 2.0 + jacobi.EXTREMAL_MARGIN
            return f"""✅ ‖𝒥_ω‖ 估计完成

- 空间: {omega.label}
- ‖𝒥_ω‖: {est.value:.15g}
- 𝒰_ω: {est.half:.15g}
- 零点模下界 1/𝒰_ω: {1.0 / est.half:.15g}
- 截断规模 N: {est.size}
- 极值是否可达: {'是' if attained else '否（‖𝒥_ω‖ ≤ 2）'}"""
        except Exception as e:
            logger.error(f"范数估计失败: {e}")
            return f"❌ 范数估计失败: {str(e)}"

    @mcp.tool()
    def bergman_spectrum(beta: float, count: int = 5) -> str:
        """
        Bergman 型空间 𝒜²_β 中 𝒥_ω 的孤立特征值 t_m（闭式）

        Args:
            beta: 参数 β > −1
            count: 输出个数

        Returns:
            特征值列表
        """
        try:
            entries = closedform.bergman_spectrum(beta, count)
            lines = [f"✅ β={beta:g} 的前 {count} 个特征值", ""]
            for e in entries:
                lines.append(f"- t_{e.m} = {e.t_m:.15g}（λ₋ = {e.lambda_minus:.12g}，λ₊ = {e.lambda_plus:.12g}）")
            return "\n".join(lines)
        except Exception as e:
            logger.error(f"Bergman 谱计算失败: {e}")
            return f"❌ 计算失败: {str(e)}"

    @mcp.tool()
    def run_verification(suite: str = "bergman-closedform") -> str:
        """
        运行数值验收套件

        Args:
            suite: 套件名（bergman-closedform、bergman-spectrum、hardy-beta、duality、
                   theta-witness、figure1、zero-location、multizero 或 all）

        Returns:
            JSON 格式的检验结果
        """
        if suite != 'all' and suite not in verify.SUITES:
            return f"❌ 未知的检验套件: {suite}（可选 {', '.join(verify.SUITES)}、all）"
        try:
            verdict = verify.run_suite(suite)
            mark = "✅" if verdict.passed else "❌"
            return f"{mark} 套件 {suite}：{'通过' if verdict.passed else '未通过'}\n\n{verdict.model_dump_json(indent=2)}"
        except Exception as e:
            logger.error(f"检验套件运行失败: {e}")
            return f"❌ 运行失败: {str(e)}"
