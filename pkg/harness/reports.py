"""
报告数据模型（pydantic）

所有报告都可以导出为 JSON；CSV 与 markdown 由 utils.report_utils 按 table_rows() 渲染。
"""
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

SCHEMA_VERSION = "1"

REFERENCE_LABEL = "published reference values, not measured here"

# 公开发表的有限域运算延迟（周期数），仅作为参考表打印
PUBLISHED_LATENCIES: Dict[str, Dict[str, int]] = {
    "cpu": {"ff_add": 29, "ff_sub": 27, "ff_dbl": 19, "ff_mul": 402, "ff_sqr": 402},
    "gpu": {"ff_add": 244, "ff_sub": 217, "ff_dbl": 121, "ff_mul": 2656, "ff_sqr": 2633},
}

# 最快 GPU 实现相对 CPU 的加速比：规模 -> (msm 加速比, msm 实现, ntt 加速比, ntt 实现)
PUBLISHED_SPEEDUPS: Dict[int, Tuple[float, str, float, str]] = {
    15: (34.1, "sppark", 12.5, "bellperson"),
    16: (52.5, "sppark", 12.3, "bellperson"),
    17: (69.7, "sppark", 14.8, "bellperson"),
    18: (78.1, "sppark", 20.4, "cuzk"),
    19: (127.5, "sppark", 27.9, "cuzk"),
    20: (176.1, "sppark", 35.4, "cuzk"),
    21: (254.1, "yrrid", 45.0, "cuzk"),
    22: (408.1, "ymc", 50.6, "cuzk"),
    23: (589.4, "ymc", 50.3, "cuzk"),
    24: (693.2, "ymc", 40.5, "bellperson"),
    25: (754.3, "ymc", 20.4, "bellperson"),
    26: (799.5, "ymc", 24.3, "bellperson"),
}

# ff_mul 在每个 SMSP 2 个 warp 时的 warp 停顿周期；正文只给出了这几项
PUBLISHED_FFMUL_STALLS: Dict[str, float] = {
    "stall_wait": 4.0,
    "selected": 1.0,
    "total": 6.2,
}

# CPU 能耗相对 GPU 的倍数：规模 -> (ntt, msm)
PUBLISHED_ENERGY_RATIOS: Dict[int, Tuple[float, float]] = {
    16: (2.74, 2.74),
    18: (3.08, 9.06),
    20: (3.21, 27.59),
    22: (3.31, 102.59),
    24: (2.93, 236.90),
    26: (3.62, 398.40),
}


class EnvironmentStanza(BaseModel):
    threads: int = 1
    field: Optional[str] = None
    curve: Optional[str] = None
    seed: Optional[int] = None
    word_bits: int = 32
    backend: str = "native"


class BenchEntry(BaseModel):
    kernel: str
    scale: int
    wall_time: float
    op_counters: Dict[str, int]
    share_pct: float = 0.0
    ff_ops_per_second: float = 0.0
    mul_sqr_share_pct: float = 0.0
    parameters: Dict[str, Any] = Field(default_factory=dict)


class BenchReport(BaseModel):
    """内核计时与计数报告"""

    schema_version: str = SCHEMA_VERSION
    environment: EnvironmentStanza
    entries: List[BenchEntry] = Field(default_factory=list)

    def table_rows(self) -> List[Dict[str, Any]]:
        rows = []
        for e in self.entries:
            row = {
                "kernel": e.kernel,
                "scale": e.scale,
                "wall_time": f"{e.wall_time:.6f}",
                "share_pct": f"{e.share_pct:.2f}",
                "ff_ops_per_second": f"{e.ff_ops_per_second:.1f}",
                "mul_sqr_share_pct": f"{e.mul_sqr_share_pct:.2f}",
            }
            row.update(e.op_counters)
            rows.append(row)
        return rows

    def counter_section(self) -> List[Dict[str, Any]]:
        """不含计时字段的部分，用于确定性比较"""
        return [
            {"kernel": e.kernel, "scale": e.scale, "op_counters": e.op_counters, "parameters": e.parameters}
            for e in self.entries
        ]


class OpTableRow(BaseModel):
    form: str
    op: str
    variant: str
    measured: Dict[str, int]
    published: Optional[Dict[str, int]] = None
    verdicts: Dict[str, str] = Field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.measured.values())


class DominanceRow(BaseModel):
    form: str
    computed_pct: float
    published_pct: float
    published_counts_pct: float
    verdict: str


class OpTableReport(BaseModel):
    """PADD/PDBL 的有限域运算计数矩阵与对照结论"""

    schema_version: str = SCHEMA_VERSION
    curve: str
    rows: List[OpTableRow] = Field(default_factory=list)
    dominance: List[DominanceRow] = Field(default_factory=list)
    batched_affine: Dict[str, float] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        cells = [v for row in self.rows for v in row.verdicts.values()]
        return "DIFF" not in cells and all(d.verdict != "DIFF" for d in self.dominance)

    def table_rows(self) -> List[Dict[str, Any]]:
        out = []
        for row in self.rows:
            item = {"form": row.form, "op": row.op, "variant": row.variant}
            for name, value in row.measured.items():
                item[name] = value
                if name in row.verdicts:
                    item[f"{name}_verdict"] = row.verdicts[name]
            item["total"] = row.total
            out.append(item)
        return out


class TradeoffRow(BaseModel):
    windows: int
    precompute_factor: int
    effective_windows: int
    ffmul_count: int
    bucket_reduce_ffmul: int
    memory_bytes: int
    memory_gib: float
    fits: bool


class TradeoffReport(BaseModel):
    """预计算窗口数与内存的权衡"""

    schema_version: str = SCHEMA_VERSION
    scalar_bits: int
    window_bits: int
    n: int
    memory_budget_bytes: int
    rows: List[TradeoffRow] = Field(default_factory=list)
    smallest_fitting_windows: Optional[int] = None

    def table_rows(self) -> List[Dict[str, Any]]:
        return [row.model_dump() for row in self.rows]


class RooflineRecord(BaseModel):
    op: str
    iterations: int
    weighted_ops: int
    weighted_ops_per_call: float
    bytes_touched: int
    arithmetic_intensity: float
    ops_per_second: float


class RooflineReport(BaseModel):
    """加权指令数与算术强度"""

    schema_version: str = SCHEMA_VERSION
    field: str
    word_bits: int
    limb_count: int
    muladd_weight: int
    records: List[RooflineRecord] = Field(default_factory=list)

    def table_rows(self) -> List[Dict[str, Any]]:
        return [r.model_dump() for r in self.records]


class SuiteResult(BaseModel):
    name: str
    passed: int = 0
    failed: int = 0
    failures: List[str] = Field(default_factory=list)


class VerifySummary(BaseModel):
    schema_version: str = SCHEMA_VERSION
    seed: int
    suites: List[SuiteResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.failed == 0 for s in self.suites)

    def table_rows(self) -> List[Dict[str, Any]]:
        return [{"suite": s.name, "passed": s.passed, "failed": s.failed} for s in self.suites]


class KernelRunReport(BaseModel):
    """单次运行 msm / ntt / prove 的结果与计数"""

    schema_version: str = SCHEMA_VERSION
    kernel: str
    environment: EnvironmentStanza
    parameters: Dict[str, Any] = Field(default_factory=dict)
    outputs: List[str] = Field(default_factory=list)
    op_counters: Dict[str, int] = Field(default_factory=dict)
    wall_time: float = 0.0
    accepted: Optional[bool] = None
    # prove 的分阶段记录：msm / ntt / glue 计数、变换次数与内核耗时
    transcript: Optional[Dict[str, Any]] = None

    def table_rows(self) -> List[Dict[str, Any]]:
        return [{"index": i, "value": value} for i, value in enumerate(self.outputs)]
