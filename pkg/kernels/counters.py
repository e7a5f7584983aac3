"""
运算计数器

OpCounters 记录有限域运算、limb运算、字节访问估计以及内核级计数（PADD/PDBL/蝶形/变换）。
计数上下文通过 contextvars 绑定到当前线程/任务，不存在全局可变状态；
多个上下文之间通过 merge 合并（交换、结合，零元为空计数器）。
"""
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, fields
from typing import Dict, Iterator, Optional

FF_OPS = ("ff_add", "ff_sub", "ff_dbl", "ff_mul", "ff_sqr", "ff_inv")
LIMB_OPS = ("limb_muladd", "limb_add", "limb_sub", "limb_shift", "limb_cmp")
KERNEL_OPS = ("padd", "pdbl", "butterfly", "transform")

# IMAD类乘加指令权重为2，其余整数指令权重为1
MULADD_WEIGHT = 2


@dataclass(slots=True)
class OpCounters:
    """可合并的运算计数"""

    ff_add: int = 0
    ff_sub: int = 0
    ff_dbl: int = 0
    ff_mul: int = 0
    ff_sqr: int = 0
    ff_inv: int = 0
    limb_muladd: int = 0
    limb_add: int = 0
    limb_sub: int = 0
    limb_shift: int = 0
    limb_cmp: int = 0
    bytes_touched: int = 0
    padd: int = 0
    pdbl: int = 0
    butterfly: int = 0
    transform: int = 0

    def merge(self, other: "OpCounters") -> "OpCounters":
        """将 other 累加到自身，返回自身"""
        for f in fields(self):
            setattr(self, f.name, getattr(self, f.name) + getattr(other, f.name))
        return self

    def copy(self) -> "OpCounters":
        return OpCounters(**self.as_dict())

    def __add__(self, other: "OpCounters") -> "OpCounters":
        return self.copy().merge(other)

    def __sub__(self, other: "OpCounters") -> "OpCounters":
        return OpCounters(**{
            f.name: getattr(self, f.name) - getattr(other, f.name) for f in fields(self)
        })

    def as_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def ff_counts(self) -> Dict[str, int]:
        """只返回有限域运算计数，键去掉 ff_ 前缀"""
        return {name[3:]: getattr(self, name) for name in FF_OPS}

    def ff_total(self) -> int:
        return sum(getattr(self, name) for name in FF_OPS)

    def limb_total(self) -> int:
        return sum(getattr(self, name) for name in LIMB_OPS)

    def weighted_limb_ops(self, muladd_weight: int = MULADD_WEIGHT) -> int:
        """按乘加权重加权的limb运算数"""
        others = self.limb_add + self.limb_sub + self.limb_shift + self.limb_cmp
        return muladd_weight * self.limb_muladd + others

    def is_zero(self) -> bool:
        return not any(self.as_dict().values())


_ACTIVE: ContextVar[Optional[OpCounters]] = ContextVar("kernel_lab_counters", default=None)


def current_counters() -> Optional[OpCounters]:
    """当前上下文绑定的计数器，没有时返回 None"""
    return _ACTIVE.get()


@contextmanager
def counting(target: Optional[OpCounters] = None, propagate: bool = True) -> Iterator[OpCounters]:
    """
    在 with 块内把运算计入 target

    Args:
        target: 目标计数器，为None时新建
        propagate: 退出时是否把 target 的全部内容并入外层计数器

    Yields:
        正在使用的计数器
    """
    target = target if target is not None else OpCounters()
    parent = _ACTIVE.get()
    token = _ACTIVE.set(target)
    try:
        yield target
    finally:
        _ACTIVE.reset(token)
        if propagate and parent is not None:
            parent.merge(target)


@contextmanager
def uncounted() -> Iterator[None]:
    """参数构建、预计算等不计入内核计数的代码段"""
    token = _ACTIVE.set(None)
    try:
        yield
    finally:
        _ACTIVE.reset(token)
