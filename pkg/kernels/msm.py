"""
Pippenger 多标量乘法 Q = Σ k_i·P_i

λ 位标量切成 w 个 c 位窗口；每个窗口先做桶累加，再用 running-sum 规约成窗口和，
最后按 Horner 方式（窗口之间做 c 次倍点）合并所有窗口和。
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from kernels.counters import OpCounters, counting, current_counters, uncounted
from kernels.curve import (
    AffinePoint,
    CurvePoint,
    Form,
    batch_to_affine,
    convert,
    identity,
    is_on_curve,
    padd,
    pdbl,
    scalar_mul,
)
from kernels.errors import RangeError, UsageError
from kernels.limbs import FixedUint
from utils.logs import logger

Scalar = Union[int, FixedUint]

MAX_WINDOW_BITS = 31
AFFINE_POINT_BYTES = 96
FFMUL_PER_PADD = 10

# 每种形式的坐标个数，用于估算桶内存
_COORDINATES = {Form.AFFINE: 2, Form.JACOBIAN: 3, Form.XYZZ: 4}


def default_window_bits(n: int) -> int:
    """c = max(1, floor(log2 n) − 3)"""
    return max(1, n.bit_length() - 1 - 3) if n > 0 else 1


@dataclass(frozen=True)
class MsmConfig:
    """MSM 参数；precompute_factor 为 q_max，1 表示不做预计算"""

    scalar_bits: int
    window_bits: int
    form: Form = Form.XYZZ
    precompute_factor: int = 1
    mixed_addition: bool = True
    threads: int = 1

    def __post_init__(self):
        if self.scalar_bits < 1:
            raise UsageError(f"标量位数必须为正: {self.scalar_bits}")
        if not 1 <= self.window_bits <= MAX_WINDOW_BITS:
            raise UsageError(f"窗口位数必须在 1..{MAX_WINDOW_BITS}: {self.window_bits}")
        if self.precompute_factor < 1:
            raise UsageError(f"预计算因子必须 ≥ 1: {self.precompute_factor}")
        if self.threads < 1:
            raise UsageError(f"线程数必须 ≥ 1: {self.threads}")
        object.__setattr__(self, "form", Form(self.form))

    @classmethod
    def for_inputs(cls, n: int, scalar_bits: int, window_bits: Optional[int] = None, **kwargs) -> "MsmConfig":
        return cls(scalar_bits, window_bits or default_window_bits(n), **kwargs)

    @property
    def window_count(self) -> int:
        return -(-self.scalar_bits // self.window_bits)

    @property
    def effective_windows(self) -> int:
        return -(-self.window_count // self.precompute_factor)


def window_decompose(k: Scalar, cfg: MsmConfig) -> List[int]:
    """把标量拆成 w 个 c 位数字，Σ digits[j]·2^(j·c) == k"""
    value = k.to_int() if isinstance(k, FixedUint) else k
    if value < 0 or value >> cfg.scalar_bits:
        raise RangeError(f"标量超出 {cfg.scalar_bits} 位")
    c = cfg.window_bits
    mask = (1 << c) - 1
    return [(value >> (j * c)) & mask for j in range(cfg.window_count)]


def _lift(p: CurvePoint, form: Form) -> CurvePoint:
    with uncounted():
        return convert(p, form)


def _accumulate(points: Sequence[CurvePoint], window_digits: Sequence[int], cfg: MsmConfig) -> List[CurvePoint]:
    curve = points[0].curve
    buckets = [identity(curve, cfg.form) for _ in range(1 << cfg.window_bits)]
    for pt, d in zip(points, window_digits):
        if d:
            buckets[d] = padd(buckets[d], pt, allow_mixed=cfg.mixed_addition)
    return buckets


def bucket_accumulate(
    points: Sequence[CurvePoint],
    digits_per_point: Sequence[Sequence[int]],
    window: int,
    cfg: MsmConfig,
) -> List[CurvePoint]:
    """
    第 window 个窗口的桶累加

    Args:
        points: 输入点
        digits_per_point: 每个点对应标量的窗口数字
        window: 窗口下标
        cfg: MSM 参数

    Returns:
        长度 2^c 的桶数组，下标 0 不使用
    """
    if len(points) != len(digits_per_point):
        raise UsageError("点与数字的数量不一致")
    if not points:
        return []
    lifted = [_lift(p, cfg.form) for p in points]
    return _accumulate(lifted, [d[window] for d in digits_per_point], cfg)


def bucket_reduce(buckets: Sequence[CurvePoint], allow_mixed: bool = True) -> CurvePoint:
    """running-sum 规约 Σ b·bucket[b]，跳过无穷远点，PADD 次数不超过 2·2^c"""
    if not buckets:
        raise UsageError("桶数组为空")
    curve = buckets[0].curve
    form = buckets[0].form
    running = identity(curve, form)
    total = identity(curve, form)
    for b in range(len(buckets) - 1, 0, -1):
        running = padd(running, buckets[b], allow_mixed=allow_mixed)
        total = padd(total, running, allow_mixed=allow_mixed)
    return total


def window_reduce(window_sums: Sequence[CurvePoint], shift_bits: int) -> CurvePoint:
    """Horner 合并 Σ 2^(j·shift)·sums[j]，从最高窗口开始"""
    if not window_sums:
        raise UsageError("窗口和为空")
    acc = window_sums[-1]
    for s in reversed(window_sums[:-1]):
        for _ in range(shift_bits):
            acc = pdbl(acc)
        acc = padd(acc, s)
    return acc


def _validate(points: Sequence[CurvePoint], scalars: Sequence[Scalar]) -> None:
    if len(points) != len(scalars):
        raise UsageError(f"点数 {len(points)} 与标量数 {len(scalars)} 不一致")
    if not points:
        raise UsageError("MSM 至少需要一个点")
    curve = points[0].curve
    for i, pt in enumerate(points):
        if pt.curve != curve:
            raise UsageError(f"第 {i} 个点属于不同曲线")
        if not is_on_curve(pt):
            raise UsageError(f"第 {i} 个点不在曲线上")


def _run_windows(tasks, threads: int) -> List[CurvePoint]:
    """
    各窗口独立计数，按窗口顺序合并到外层计数器

    每个任务返回 (窗口和, 计数)；多线程时结果与单线程逐位一致。
    """
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda task: task(), tasks))
    else:
        results = [task() for task in tasks]
    parent = current_counters()
    if parent is not None:
        for _, local in results:
            parent.merge(local)
    return [s for s, _ in results]


def _window_task(points: Sequence[CurvePoint], window_digits: Sequence[int], cfg: MsmConfig):
    def task() -> Tuple[CurvePoint, OpCounters]:
        with counting(propagate=False) as local:
            buckets = _accumulate(points, window_digits, cfg)
            window_sum = bucket_reduce(buckets, allow_mixed=cfg.mixed_addition)
        return window_sum, local

    return task


def msm(points: Sequence[CurvePoint], scalars: Sequence[Scalar], cfg: Optional[MsmConfig] = None) -> CurvePoint:
    """
    Pippenger MSM

    Args:
        points: 同一曲线上的点
        scalars: 标量，位数不超过 cfg.scalar_bits
        cfg: MSM 参数，默认按输入规模选窗口

    Returns:
        cfg.form 形式的结果
    """
    _validate(points, scalars)
    if cfg is None:
        cfg = MsmConfig.for_inputs(len(points), points[0].curve.scalar_bits)
    logger.debug(
        f"MSM: n={len(points)}, λ={cfg.scalar_bits}, c={cfg.window_bits}, w={cfg.window_count}, "
        f"form={cfg.form.value}, threads={cfg.threads}"
    )
    digits = [window_decompose(k, cfg) for k in scalars]
    lifted = [_lift(p, cfg.form) for p in points]
    tasks = [_window_task(lifted, [d[j] for d in digits], cfg) for j in range(cfg.window_count)]
    sums = _run_windows(tasks, cfg.threads)
    return window_reduce(sums, cfg.window_bits)


def msm_naive(points: Sequence[CurvePoint], scalars: Sequence[Scalar]) -> CurvePoint:
    """逐项 scalar_mul 再求和的参考实现（Jacobian）"""
    if len(points) != len(scalars):
        raise UsageError(f"点数 {len(points)} 与标量数 {len(scalars)} 不一致")
    if not points:
        raise UsageError("MSM 至少需要一个点")
    acc = identity(points[0].curve, Form.JACOBIAN)
    for pt, k in zip(points, scalars):
        acc = padd(acc, scalar_mul(convert(pt, Form.JACOBIAN), k))
    return acc


def precompute_points(points: Sequence[CurvePoint], cfg: MsmConfig) -> List[List[AffinePoint]]:
    """第 q 行为 2^(q·c)·P_i，q ∈ [0, q_max)"""
    rows = [batch_to_affine(points)]
    current = [convert(p, Form.JACOBIAN) for p in rows[0]]
    for _ in range(1, cfg.precompute_factor):
        nxt = []
        for pt in current:
            for _ in range(cfg.window_bits):
                pt = pdbl(pt)
            nxt.append(pt)
        rows.append(batch_to_affine(nxt))
        current = nxt
    return rows


def msm_precomputed(table: Sequence[Sequence[CurvePoint]], scalars: Sequence[Scalar], cfg: MsmConfig) -> CurvePoint:
    """
    使用预计算表的 MSM：第 j 个数字进入表的第 j mod q_max 行、
    第 j div q_max 个有效窗口，窗口之间移位 c·q_max 位
    """
    q_max = cfg.precompute_factor
    if len(table) != q_max:
        raise UsageError(f"预计算表行数 {len(table)} 与 q_max {q_max} 不一致")
    _validate(table[0], scalars)
    digits = [window_decompose(k, cfg) for k in scalars]
    rows = [[_lift(p, cfg.form) for p in row] for row in table]
    tasks = []
    for e in range(cfg.effective_windows):
        pts: List[CurvePoint] = []
        window_digits: List[int] = []
        for q in range(q_max):
            j = e * q_max + q
            if j >= cfg.window_count:
                break
            pts.extend(rows[q])
            window_digits.extend(d[j] for d in digits)
        tasks.append(_window_task(pts, window_digits, cfg))
    sums = _run_windows(tasks, cfg.threads)
    return window_reduce(sums, cfg.window_bits * q_max)


@dataclass(frozen=True)
class CostEstimate:
    window_count: int
    effective_windows: int
    bucket_reduce_padds: int
    accumulate_padds: int
    total_ffmul_estimate: int
    precompute_memory_bytes: int
    bucket_memory_bytes: int

    def as_dict(self) -> Dict[str, int]:
        return asdict(self)


def cost_model(
    n: int,
    scalar_bits: int,
    window_bits: int,
    form: Form = Form.XYZZ,
    q_max: int = 1,
    affine_point_bytes: int = AFFINE_POINT_BYTES,
    ffmul_per_padd: int = FFMUL_PER_PADD,
) -> CostEstimate:
    """
    Pippenger 的闭式开销模型

    桶规约 PADD = w_eff·2·2^c；桶累加 PADD = n·w；
    FF_mul 估计 = (桶规约 + 桶累加) PADD × 每次 PADD 的 FF_mul；
    预计算内存 = n·q_max·仿射点字节数。
    """
    if min(n, scalar_bits, window_bits, q_max, affine_point_bytes, ffmul_per_padd) < 1:
        raise UsageError("开销模型参数必须为正")
    w = math.ceil(scalar_bits / window_bits)
    w_eff = math.ceil(w / q_max)
    reduce_padds = w_eff * 2 * (1 << window_bits)
    accumulate_padds = n * w
    coordinate_bytes = affine_point_bytes // 2
    return CostEstimate(
        window_count=w,
        effective_windows=w_eff,
        bucket_reduce_padds=reduce_padds,
        accumulate_padds=accumulate_padds,
        total_ffmul_estimate=(reduce_padds + accumulate_padds) * ffmul_per_padd,
        precompute_memory_bytes=n * q_max * affine_point_bytes,
        bucket_memory_bytes=w_eff * ((1 << window_bits) - 1) * _COORDINATES[Form(form)] * coordinate_bytes,
    )
