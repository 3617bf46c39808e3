"""
MCP (Model Context Protocol) 服务器模块

工具与资源只负责解析参数和格式化文本，数值计算全部在 core 中完成。
"""

import logging

from mcp.server.fastmcp import FastMCP

from .tools import register_tools
from .resources import register_resources

logger = logging.getLogger(__name__)

SERVER_NAME = "opa-helper"
SERVER_INSTRUCTIONS = """加权 Hardy 空间 H²_ω 中最优逼近多项式的数值工具。
空间描述：hardy | dirichlet:α | bergman:β | custom:<file>，
自定义权重文件的格式见资源 opa://weights-schema。"""

_server = None


def initialize_mcp_server() -> FastMCP:
    """创建 MCP 服务器并注册所有工具和资源（重复调用返回同一实例）"""
    global _server
    if _server is None:
        _server = FastMCP(SERVER_NAME, instructions=SERVER_INSTRUCTIONS)
        register_tools(_server)
        register_resources(_server)
        logger.info(f"MCP 服务器 {SERVER_NAME} 初始化完成")
    return _server
