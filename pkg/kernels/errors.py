"""
内核层统一的异常类型
"""
from typing import Optional


class KernelLabError(Exception):
    """所有内核异常的基类"""


class UsageError(KernelLabError, ValueError):
    """调用方式错误：形状不匹配、limb数量不一致、参数非法等"""


class RangeError(UsageError):
    """数值超出允许范围"""


class DomainError(UsageError):
    """NTT求值域无法构建"""


class ParameterError(KernelLabError):
    """预置参数未通过启动校验"""


class NonInvertibleError(KernelLabError, ZeroDivisionError):
    """对零元素求逆"""

    def __init__(self, message: str, index: Optional[int] = None):
        super().__init__(message)
        self.index = index


class UnsatisfiedInstanceError(KernelLabError):
    """实例不满足 a·b == c，商多项式整除性检查失败"""


class MemoryBudgetError(KernelLabError):
    """预估内存超出预算"""

    def __init__(self, message: str, estimate_bytes: int, budget_bytes: int):
        super().__init__(message)
        self.estimate_bytes = estimate_bytes
        self.budget_bytes = budget_bytes
