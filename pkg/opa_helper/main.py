#!/usr/bin/env python3
"""
OPA Helper MCP Server 主入口
"""

import logging
import sys

from . import __version__
from .mcp import initialize_mcp_server

logger = logging.getLogger(__name__)


def main():
    """以 stdio 传输运行 MCP 服务器"""
    # stdout 归 MCP 协议使用
    logging.basicConfig(level=logging.INFO, stream=sys.stderr)
    mcp = initialize_mcp_server()
    logger.info(f"正在启动 OPA Helper MCP 服务器 v{__version__}...")
    mcp.run()


if __name__ == "__main__":
    main()
