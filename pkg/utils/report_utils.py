"""
报告输出工具：CSV / JSON / markdown 渲染，十六进制向量与点文件读写
"""
import csv
import io
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel

from harness.reports import (
    PUBLISHED_ENERGY_RATIOS,
    PUBLISHED_FFMUL_STALLS,
    PUBLISHED_LATENCIES,
    PUBLISHED_SPEEDUPS,
    REFERENCE_LABEL,
)
from kernels.curve import AffinePoint, CurveParams, point_from_hex, point_to_hex
from kernels.errors import UsageError
from kernels.field import FieldElement, FieldParams, element_from_hex, element_to_hex
from utils.logs import logger

FORMAT_EXTENSIONS = {"csv": "csv", "json": "json", "md": "md"}


def rows_to_csv(rows: List[Dict[str, Any]]) -> str:
    """每行一个字典，列为所有行键的并集（按首次出现顺序）"""
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()


def rows_to_markdown(rows: List[Dict[str, Any]], title: Optional[str] = None) -> str:
    lines = []
    if title:
        lines.extend([f"## {title}", ""])
    if not rows:
        lines.append("(无数据)")
        return "\n".join(lines) + "\n"
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    lines.append("| " + " | ".join(columns) + " |")
    lines.append("|" + "---|" * len(columns))
    for row in rows:
        lines.append("| " + " | ".join(str(row.get(c, "")) for c in columns) + " |")
    return "\n".join(lines) + "\n"


def reference_table_markdown() -> str:
    """公开发表的 GPU 测量值：运算延迟、加速比、ff_mul 停顿与能耗比"""
    latency = [{"platform": platform, **values} for platform, values in PUBLISHED_LATENCIES.items()]
    speedups = [
        {"scale": scale, "msm_speedup": msm, "msm_fastest": msm_lib, "ntt_speedup": ntt, "ntt_fastest": ntt_lib}
        for scale, (msm, msm_lib, ntt, ntt_lib) in PUBLISHED_SPEEDUPS.items()
    ]
    stalls = [{"source": source, "cycles": cycles} for source, cycles in PUBLISHED_FFMUL_STALLS.items()]
    energy = [
        {"scale": scale, "ntt_cpu_over_gpu": ntt, "msm_cpu_over_gpu": msm}
        for scale, (ntt, msm) in PUBLISHED_ENERGY_RATIOS.items()
    ]
    return "\n".join(
        [
            rows_to_markdown(latency, title=f"Field-op latency in cycles ({REFERENCE_LABEL})"),
            rows_to_markdown(speedups, title=f"GPU speedup over CPU ({REFERENCE_LABEL})"),
            rows_to_markdown(stalls, title=f"ff_mul warp stalls, 2 warps per SMSP ({REFERENCE_LABEL})"),
            rows_to_markdown(energy, title=f"CPU energy relative to GPU ({REFERENCE_LABEL})"),
        ]
    )


def render_report(report: BaseModel, fmt: str, title: str) -> str:
    """
    把报告渲染成指定格式

    Args:
        report: 带 table_rows() 的报告模型
        fmt: csv / json / md
        title: markdown 标题

    Returns:
        渲染后的文本
    """
    if fmt == "json":
        return report.model_dump_json(indent=2) + "\n"
    rows = report.table_rows()
    if fmt == "csv":
        return rows_to_csv(rows)
    if fmt == "md":
        parts = [f"# {title}\n", rows_to_markdown(rows)]
        extra = getattr(report, "dominance", None)
        if extra:
            parts.append(rows_to_markdown([d.model_dump() for d in extra], title="(mul+sqr) / total"))
        notes = getattr(report, "notes", None)
        if notes:
            parts.append("\n".join(f"- {note}" for note in notes) + "\n")
        parts.append(reference_table_markdown())
        return "\n".join(parts)
    raise UsageError(f"不支持的报告格式: {fmt}")


def emit(text: str, command: str, fmt: str, out: Optional[str] = None, output_dir: Optional[str] = None) -> Optional[Path]:
    """
    输出报告：--out 优先，其次输出目录下的 <command>.<ext>，否则打印到标准输出

    Returns:
        写入的文件路径，打印到标准输出时为 None
    """
    if out:
        path = Path(out)
    elif output_dir:
        path = Path(output_dir) / f"{command}.{FORMAT_EXTENSIONS.get(fmt, fmt)}"
    else:
        print(text, end="")
        return None
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"报告已保存到 {path}")
    return path


def _data_lines(path: str) -> List[str]:
    if not os.path.isfile(path):
        raise UsageError(f"文件不存在: {path}")
    with open(path, "r", encoding="utf-8") as f:
        return [line.strip() for line in f if line.strip() and not line.startswith("#")]


def read_scalars(path: str) -> List[int]:
    """每行一个十六进制标量"""
    try:
        return [int(line, 16) for line in _data_lines(path)]
    except ValueError as e:
        raise UsageError(f"标量文件格式错误: {path}") from e


def read_points(path: str, curve: CurveParams) -> List[AffinePoint]:
    """每行一个未压缩仿射点（x‖y 十六进制）或 infinity"""
    return [point_from_hex(curve, line) for line in _data_lines(path)]


def read_vector(path: str, field: FieldParams) -> List[FieldElement]:
    """每行一个定宽十六进制域元素"""
    return [element_from_hex(field, line) for line in _data_lines(path)]


def vector_lines(values: Sequence[FieldElement]) -> List[str]:
    return [element_to_hex(v) for v in values]


def point_lines(points: Sequence[AffinePoint]) -> List[str]:
    return [point_to_hex(p) for p in points]
