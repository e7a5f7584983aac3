"""
预计算的权衡：有效窗口数越少，桶规约的 FF_mul 越少，但预计算点占用的内存越多
"""
import math

from harness.reports import TradeoffReport, TradeoffRow
from kernels.curve import Form
from kernels.errors import UsageError
from kernels.msm import AFFINE_POINT_BYTES, FFMUL_PER_PADD, cost_model
from utils.logs import logger

GIB = 1 << 30


def tradeoff_report(
    scalar_bits: int = 253,
    window_bits: int = 23,
    n: int = 1 << 26,
    memory_budget_bytes: int = 48 * GIB,
    form: Form = Form.XYZZ,
    affine_point_bytes: int = AFFINE_POINT_BYTES,
) -> TradeoffReport:
    """
    对 w_eff = w, w-1, ..., 1 逐一评估开销模型

    每个目标 w_eff 取 q = ceil(w / w_eff) 份预计算点，实际的有效窗口数为 ceil(w / q)。

    Args:
        scalar_bits: 标量位数 λ
        window_bits: 窗口位数 c
        n: MSM 规模
        memory_budget_bytes: 内存预算
        form: 桶的坐标形式
        affine_point_bytes: 每个仿射点的字节数

    Returns:
        权衡表
    """
    if memory_budget_bytes < 0:
        raise UsageError("内存预算不能为负")
    base = cost_model(n, scalar_bits, window_bits, form, 1, affine_point_bytes)
    w = base.window_count
    report = TradeoffReport(
        scalar_bits=scalar_bits, window_bits=window_bits, n=n, memory_budget_bytes=memory_budget_bytes
    )
    for target in range(w, 0, -1):
        q = math.ceil(w / target)
        cost = cost_model(n, scalar_bits, window_bits, form, q, affine_point_bytes)
        memory = cost.precompute_memory_bytes
        report.rows.append(
            TradeoffRow(
                windows=target,
                precompute_factor=q,
                effective_windows=cost.effective_windows,
                ffmul_count=cost.total_ffmul_estimate,
                bucket_reduce_ffmul=cost.bucket_reduce_padds * FFMUL_PER_PADD,
                memory_bytes=memory,
                memory_gib=round(memory / GIB, 3),
                fits=memory <= memory_budget_bytes,
            )
        )
    fitting = [row.effective_windows for row in report.rows if row.fits]
    report.smallest_fitting_windows = min(fitting) if fitting else None
    return report


class TradeoffAction:
    """生成预计算权衡表的Action"""

    def __init__(self):
        self.desc = "评估不同有效窗口数下的 FF_mul 数与内存占用"

    async def run(self, scalar_bits: int, window_bits: int, n: int, memory_budget_bytes: int) -> TradeoffReport:
        logger.info(f"权衡分析: λ={scalar_bits}, c={window_bits}, n={n}, 预算 {memory_budget_bytes / GIB:.1f} GiB")
        report = tradeoff_report(scalar_bits, window_bits, n, memory_budget_bytes)
        if report.smallest_fitting_windows is None:
            logger.warning("没有任何配置能放进内存预算")
        else:
            logger.info(f"能放进预算的最少有效窗口数: {report.smallest_fitting_windows}")
        return report
