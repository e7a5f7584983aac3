"""
表征实验的各个命令：基准测试、运算计数表、预计算权衡、算术强度与正确性自检
"""
from harness.bench import BenchAction, BenchConfig, run_bench
from harness.optable import OpTableAction, optable_report
from harness.roofline import RooflineAction, roofline_report
from harness.tradeoff import TradeoffAction, tradeoff_report
from harness.verify import VerifyAction, verify_suite

__all__ = [
    "BenchAction",
    "BenchConfig",
    "run_bench",
    "OpTableAction",
    "optable_report",
    "RooflineAction",
    "roofline_report",
    "TradeoffAction",
    "tradeoff_report",
    "VerifyAction",
    "verify_suite",
]
