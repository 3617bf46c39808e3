"""
MCP 资源模块
"""

from .weights_resources import register_weights_resources


def register_resources(mcp):
    """注册所有 MCP 资源"""
    register_weights_resources(mcp)
