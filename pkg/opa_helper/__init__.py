"""OPA Helper：加权 Hardy 空间中的最优多项式逼近数值工具"""

__version__ = "0.1.0"
