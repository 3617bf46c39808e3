"""python -m opa_helper：启动 MCP 服务器"""

from .main import main

if __name__ == "__main__":
    main()
