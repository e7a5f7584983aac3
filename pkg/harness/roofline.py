"""
加权指令数与算术强度：在固定工作集上循环执行各有限域运算
"""
import random
import time
from typing import Callable, Dict, List

from harness.reports import RooflineRecord, RooflineReport
from kernels.counters import MULADD_WEIGHT, OpCounters, counting
from kernels.errors import UsageError
from kernels.field import FieldElement, ff_add, ff_dbl, ff_inv, ff_mul, ff_sqr, ff_sub, random_element
from kernels.presets import get_field
from utils.logs import logger

_BINARY = {"ff_add": ff_add, "ff_sub": ff_sub, "ff_mul": ff_mul}
_UNARY = {"ff_dbl": ff_dbl, "ff_sqr": ff_sqr, "ff_inv": ff_inv}
ROOFLINE_OPS = ("ff_add", "ff_sub", "ff_dbl", "ff_mul", "ff_sqr", "ff_inv")


def _loop(op: str, working_set: List[FieldElement], iterations: int) -> Callable[[], None]:
    size = len(working_set)
    if op in _BINARY:
        fn = _BINARY[op]

        def run():
            for i in range(iterations):
                fn(working_set[i % size], working_set[(i + 1) % size])
    else:
        fn = _UNARY[op]

        def run():
            for i in range(iterations):
                fn(working_set[i % size])
    return run


def roofline_report(
    field_name: str = "bls12-377-fq",
    iterations: int = 1000,
    working_set: int = 64,
    seed: int = 2024,
    word_bits: int = 32,
    backend: str = "native",
) -> RooflineReport:
    """
    对每种有限域运算统计加权 limb 指令数、访存字节与算术强度

    Args:
        field_name: 域预置
        iterations: 每种运算的调用次数，0 时返回空记录
        working_set: 工作集大小（非零元素个数）
        seed: 工作集的随机种子

    Returns:
        加权指令报告
    """
    if iterations < 0 or working_set < 1:
        raise UsageError("迭代次数不能为负，工作集至少包含一个元素")
    field = get_field(field_name, word_bits, backend)
    report = RooflineReport(
        field=field.name, word_bits=field.word_bits, limb_count=field.limb_count, muladd_weight=MULADD_WEIGHT
    )
    if iterations == 0:
        return report
    rng = random.Random(seed)
    elements = [random_element(field, rng, nonzero=True) for _ in range(working_set)]
    for op in ROOFLINE_OPS:
        local = OpCounters()
        run = _loop(op, elements, iterations)
        with counting(local, propagate=False):
            start = time.perf_counter()
            run()
            elapsed = time.perf_counter() - start
        weighted = local.weighted_limb_ops()
        report.records.append(
            RooflineRecord(
                op=op,
                iterations=iterations,
                weighted_ops=weighted,
                weighted_ops_per_call=weighted / iterations,
                bytes_touched=local.bytes_touched,
                arithmetic_intensity=weighted / local.bytes_touched if local.bytes_touched else 0.0,
                ops_per_second=iterations / elapsed if elapsed > 0 else 0.0,
            )
        )
    return report


def intensity_by_op(report: RooflineReport) -> Dict[str, float]:
    return {r.op: r.arithmetic_intensity for r in report.records}


class RooflineAction:
    """生成算术强度报告的Action"""

    def __init__(self):
        self.desc = "统计各有限域运算的加权指令数与算术强度"

    async def run(self, field_name: str, iterations: int, working_set: int, seed: int,
                  word_bits: int = 32, backend: str = "native") -> RooflineReport:
        logger.info(f"算术强度分析: {field_name}, 每种运算 {iterations} 次")
        report = roofline_report(field_name, iterations, working_set, seed, word_bits, backend)
        for op, intensity in intensity_by_op(report).items():
            logger.debug(f"{op}: 算术强度 {intensity:.3f}")
        return report
