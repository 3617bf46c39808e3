"""
OPA Helper CLI 工具模块
"""

from .main import main
from .specs import RunConfig, parse_function

__all__ = [
    'main',
    'RunConfig',
    'parse_function',
]
