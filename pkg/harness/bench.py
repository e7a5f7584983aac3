"""
内核基准测试：按规模扫描 MSM / NTT / prove，报告中位耗时、精确计数与耗时占比
"""
import random
import time
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field

from harness.reports import BenchEntry, BenchReport, EnvironmentStanza
from kernels.counters import OpCounters, counting
from kernels.curve import sample_points
from kernels.errors import MemoryBudgetError, UsageError
from kernels.field import random_element
from kernels.msm import MsmConfig, cost_model, msm, msm_precomputed, precompute_points
from kernels.ntt import build_domain, ntt_radix2, ntt_staged
from kernels.presets import get_curve, get_field
from kernels.prover import mock_setup, prove, random_inputs
from utils.logs import logger

GIB = 1 << 30
SUPPORTED_KERNELS = ("msm", "ntt", "prove")


class BenchConfig(BaseModel):
    kernels: List[str] = Field(default_factory=lambda: ["msm", "ntt"])
    scale_min: int = 10
    scale_max: int = 18
    warmup: int = 3
    repetitions: int = 10
    threads: int = 1
    field: str = "bls12-377-fr"
    curve: str = "bls12-377-g1"
    seed: int = 2024
    word_bits: int = 32
    backend: str = "native"
    window_bits: Optional[int] = None
    precompute: int = 1
    radix_log: Optional[int] = None
    memory_budget_bytes: int = 8 * GIB


def _validate(config: BenchConfig) -> None:
    for kernel in config.kernels:
        if kernel not in SUPPORTED_KERNELS:
            raise UsageError(f"未知的内核: {kernel}，可选: {', '.join(SUPPORTED_KERNELS)}")
    if config.kernels and config.scale_min > config.scale_max:
        raise UsageError(f"规模范围无效: {config.scale_min} > {config.scale_max}")
    if config.scale_min < 1:
        raise UsageError("规模必须至少为 1")
    if config.repetitions < 1 or config.warmup < 0:
        raise UsageError("重复次数必须为正，预热次数不能为负")


def _check_memory(config: BenchConfig) -> None:
    """按开销模型估计最大规模的内存，超出预算时拒绝执行"""
    if "msm" not in config.kernels and "prove" not in config.kernels:
        return
    curve = get_curve(config.curve, config.word_bits, config.backend)
    n = 1 << config.scale_max
    window = config.window_bits or MsmConfig.for_inputs(n, curve.scalar_bits).window_bits
    point_bytes = 2 * curve.field.element_bytes
    cost = cost_model(n, curve.scalar_bits, window, q_max=config.precompute, affine_point_bytes=point_bytes)
    estimate = cost.precompute_memory_bytes + cost.bucket_memory_bytes
    if estimate > config.memory_budget_bytes:
        raise MemoryBudgetError(
            f"规模 2^{config.scale_max} 的内存估计 {estimate / GIB:.2f} GiB 超出预算 "
            f"{config.memory_budget_bytes / GIB:.2f} GiB",
            estimate_bytes=estimate,
            budget_bytes=config.memory_budget_bytes,
        )


def _prepare_msm(config: BenchConfig, scale: int, rng: random.Random) -> Tuple[Callable[[], object], Dict]:
    curve = get_curve(config.curve, config.word_bits, config.backend)
    n = 1 << scale
    points = sample_points(curve, n, rng)
    bound = curve.scalar_field.modulus if curve.scalar_field else curve.order
    scalars = [rng.randrange(bound) for _ in range(n)]
    cfg = MsmConfig.for_inputs(
        n, curve.scalar_bits, config.window_bits, precompute_factor=config.precompute, threads=config.threads
    )
    params = {"window_bits": cfg.window_bits, "precompute": cfg.precompute_factor, "form": cfg.form.value}
    if cfg.precompute_factor > 1:
        table = precompute_points(points, cfg)
        return lambda: msm_precomputed(table, scalars, cfg), params
    return lambda: msm(points, scalars, cfg), params


def _prepare_ntt(config: BenchConfig, scale: int, rng: random.Random) -> Tuple[Callable[[], object], Dict]:
    field = get_field(config.field, config.word_bits, config.backend)
    domain = build_domain(1 << scale, field)
    values = [random_element(field, rng) for _ in range(domain.size)]
    if config.radix_log:
        return lambda: ntt_staged(values, domain, config.radix_log), {"radix_log": config.radix_log}
    return lambda: ntt_radix2(values, domain), {"radix_log": 1}


def _prepare_prove(config: BenchConfig, scale: int, rng: random.Random) -> Tuple[Callable[[], object], Dict]:
    curve = get_curve(config.curve, config.word_bits, config.backend)
    n = 1 << scale
    pk, _ = mock_setup(n, n, rng.randrange(1 << 32), curve)
    domain = build_domain(n, curve.scalar_field)
    inputs = random_inputs(domain, n, rng)
    return lambda: prove(pk, inputs, threads=config.threads, window_bits=config.window_bits, domain=domain), {}


_PREPARERS = {"msm": _prepare_msm, "ntt": _prepare_ntt, "prove": _prepare_prove}


def measure(run: Callable[[], object], warmup: int, repetitions: int) -> Tuple[float, OpCounters]:
    """
    预热后重复计时，返回中位耗时与单次运行的计数

    Args:
        run: 被测函数
        warmup: 预热次数
        repetitions: 计时次数

    Returns:
        (中位耗时秒数, 一次运行的计数)
    """
    for _ in range(warmup):
        run()
    times = []
    counters = None
    for _ in range(repetitions):
        local = OpCounters()
        with counting(local):
            start = time.perf_counter()
            run()
            times.append(time.perf_counter() - start)
        counters = counters or local
    return float(np.median(times)), counters


def _fill_shares(entries: List[BenchEntry]) -> None:
    by_scale: Dict[int, List[BenchEntry]] = {}
    for e in entries:
        by_scale.setdefault(e.scale, []).append(e)
    for group in by_scale.values():
        total = sum(e.wall_time for e in group)
        for e in group:
            e.share_pct = e.wall_time / total * 100 if total > 0 else 100 / len(group)


def run_bench(config: BenchConfig) -> BenchReport:
    """
    按规模扫描内核

    Raises:
        UsageError: 配置无效
        MemoryBudgetError: 最大规模超出内存预算
    """
    _validate(config)
    report = BenchReport(
        environment=EnvironmentStanza(
            threads=config.threads,
            field=config.field,
            curve=config.curve,
            seed=config.seed,
            word_bits=config.word_bits,
            backend=config.backend,
        )
    )
    if not config.kernels:
        return report
    _check_memory(config)

    for scale in range(config.scale_min, config.scale_max + 1):
        for kernel in config.kernels:
            rng = random.Random(f"{config.seed}-{kernel}-{scale}")
            run, params = _PREPARERS[kernel](config, scale, rng)
            logger.info(f"基准测试 {kernel} @ 2^{scale}")
            wall_time, counters = measure(run, config.warmup, config.repetitions)
            ff_total = counters.ff_total()
            report.entries.append(
                BenchEntry(
                    kernel=kernel,
                    scale=scale,
                    wall_time=wall_time,
                    op_counters=counters.as_dict(),
                    ff_ops_per_second=ff_total / wall_time if wall_time > 0 else 0.0,
                    mul_sqr_share_pct=(counters.ff_mul + counters.ff_sqr) / ff_total * 100 if ff_total else 0.0,
                    parameters=params,
                )
            )
    _fill_shares(report.entries)
    return report


class BenchAction:
    """运行内核基准测试的Action"""

    def __init__(self):
        self.desc = "按规模扫描 MSM/NTT/prove，输出耗时、计数与占比"

    async def run(self, config: BenchConfig) -> BenchReport:
        logger.info(f"开始基准测试: 内核 {config.kernels}, 规模 2^{config.scale_min}..2^{config.scale_max}")
        report = run_bench(config)
        logger.info(f"基准测试完成，共 {len(report.entries)} 条记录")
        return report
