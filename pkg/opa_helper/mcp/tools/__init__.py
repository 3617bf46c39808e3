"""
MCP 工具模块
"""

from .spectral_tools import register_spectral_tools
from .approximant_tools import register_approximant_tools


def register_tools(mcp):
    """注册所有 MCP 工具"""
    register_spectral_tools(mcp)
    register_approximant_tools(mcp)
