"""
零知识证明 Prover 计算内核：limb 运算、有限域、椭圆曲线、MSM、NTT 与证明流水线
"""
from kernels.counters import OpCounters, counting, current_counters, uncounted
from kernels.errors import (
    DomainError,
    KernelLabError,
    MemoryBudgetError,
    NonInvertibleError,
    ParameterError,
    RangeError,
    UnsatisfiedInstanceError,
    UsageError,
)

__all__ = [
    "OpCounters",
    "counting",
    "current_counters",
    "uncounted",
    "KernelLabError",
    "UsageError",
    "RangeError",
    "DomainError",
    "ParameterError",
    "NonInvertibleError",
    "UnsatisfiedInstanceError",
    "MemoryBudgetError",
]
