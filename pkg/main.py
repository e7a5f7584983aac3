import argparse
import asyncio
import json
import os
import random
import sys
import time
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel

from config import (
    DEFAULT_FORMAT,
    SUPPORTED_BACKENDS,
    SUPPORTED_FORMATS,
    SUPPORTED_WORD_BITS,
    check_environment,
    get_config,
    merge_dict,
)
from harness.bench import GIB, SUPPORTED_KERNELS, BenchAction, BenchConfig
from harness.optable import OpTableAction
from harness.reports import EnvironmentStanza, KernelRunReport
from harness.roofline import RooflineAction
from harness.tradeoff import TradeoffAction
from harness.verify import SUITES, VerifyAction
from kernels.counters import counting
from kernels.curve import sample_points
from kernels.errors import MemoryBudgetError, UsageError
from kernels.field import random_element
from kernels.msm import MsmConfig, msm, msm_precomputed, precompute_points
from kernels.ntt import Direction, build_domain, coset_ntt, ntt_radix2, ntt_staged
from kernels.presets import get_curve, get_field
from kernels.prover import check_with_trapdoor, mock_setup, prove, random_inputs
from utils.logs import logger
from utils.report_utils import emit, point_lines, read_points, read_scalars, read_vector, render_report, vector_lines

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

TITLES = {
    "bench": "Kernel benchmark",
    "optable": "PADD/PDBL finite-field operation counts",
    "tradeoff": "Precomputation trade-off",
    "roofline": "Weighted instruction counts and arithmetic intensity",
    "msm": "MSM run",
    "ntt": "NTT run",
    "prove": "Prover run",
    "verify": "Verification summary",
}


class CharacterizationLab:
    """表征实验的协调者：把命令行参数交给对应的Action，并决定退出码"""

    def __init__(self, config: Dict[str, Any]):
        self.config = config
        self.bench = BenchAction()
        self.optable = OpTableAction()
        self.tradeoff = TradeoffAction()
        self.roofline = RooflineAction()
        self.verify = VerifyAction()

    def _environment(self, args: argparse.Namespace) -> EnvironmentStanza:
        return EnvironmentStanza(
            threads=args.threads,
            field=args.field,
            curve=args.curve,
            seed=args.seed,
            word_bits=args.word_bits,
            backend=args.backend,
        )

    async def run_bench(self, args: argparse.Namespace) -> Tuple[BaseModel, int]:
        bench = self.config["bench"]
        kernels = args.kernels if args.kernels is not None else bench["kernels"]
        config = BenchConfig(
            kernels=[k for k in kernels if k],
            scale_min=args.scale_min if args.scale_min is not None else bench["scale_min"],
            scale_max=args.scale_max if args.scale_max is not None else bench["scale_max"],
            warmup=args.warmup if args.warmup is not None else bench["warmup"],
            repetitions=args.repetitions if args.repetitions is not None else bench["repetitions"],
            threads=args.threads,
            field=args.field,
            curve=args.curve,
            seed=args.seed,
            word_bits=args.word_bits,
            backend=args.backend,
            window_bits=args.window_bits if args.window_bits is not None else self.config["msm"]["window_bits"],
            precompute=args.precompute if args.precompute is not None else self.config["msm"]["precompute"],
            radix_log=args.radix_log,
            memory_budget_bytes=int(
                (args.memory_budget_gib if args.memory_budget_gib is not None else bench["memory_budget_gib"]) * GIB
            ),
        )
        return await self.bench.run(config), EXIT_OK

    async def run_optable(self, args: argparse.Namespace) -> Tuple[BaseModel, int]:
        report = await self.optable.run(args.curve, args.seed, args.word_bits, args.backend)
        return report, EXIT_OK if report.passed else EXIT_FAILED

    async def run_tradeoff(self, args: argparse.Namespace) -> Tuple[BaseModel, int]:
        budget = args.memory_budget_gib if args.memory_budget_gib is not None else 48
        report = await self.tradeoff.run(args.scalar_bits, args.window_bits or 23, 1 << args.scale, int(budget * GIB))
        return report, EXIT_OK

    async def run_roofline(self, args: argparse.Namespace) -> Tuple[BaseModel, int]:
        report_cfg = self.config["report"]
        iterations = args.iterations if args.iterations is not None else report_cfg["roofline_iterations"]
        working_set = args.working_set if args.working_set is not None else report_cfg["roofline_working_set"]
        report = await self.roofline.run(args.field, iterations, working_set, args.seed, args.word_bits, args.backend)
        return report, EXIT_OK

    async def run_msm(self, args: argparse.Namespace) -> Tuple[BaseModel, int]:
        curve = get_curve(args.curve, args.word_bits, args.backend)
        rng = random.Random(args.seed)
        if args.points:
            points = read_points(args.points, curve)
            scalars = read_scalars(args.scalars) if args.scalars else [rng.randrange(curve.order) for _ in points]
        else:
            n = 1 << (args.scale if args.scale is not None else 8)
            points = sample_points(curve, n, rng)
            scalars = [rng.randrange(curve.order) for _ in points]
        cfg = MsmConfig.for_inputs(
            len(points),
            curve.scalar_bits,
            args.window_bits,
            form=args.form,
            precompute_factor=args.precompute or 1,
            threads=args.threads,
        )
        report = KernelRunReport(
            kernel="msm",
            environment=self._environment(args),
            parameters={"n": len(points), "window_bits": cfg.window_bits, "precompute": cfg.precompute_factor, "form": cfg.form.value},
        )
        table = precompute_points(points, cfg) if cfg.precompute_factor > 1 else None
        with counting() as delta:
            start = time.perf_counter()
            result = msm_precomputed(table, scalars, cfg) if table else msm(points, scalars, cfg)
            report.wall_time = time.perf_counter() - start
        report.outputs = point_lines([result])
        report.op_counters = delta.as_dict()
        return report, EXIT_OK

    async def run_ntt(self, args: argparse.Namespace) -> Tuple[BaseModel, int]:
        field = get_field(args.field, args.word_bits, args.backend)
        rng = random.Random(args.seed)
        if args.input:
            values = read_vector(args.input, field)
        else:
            values = [random_element(field, rng) for _ in range(1 << (args.scale if args.scale is not None else 10))]
        domain = build_domain(len(values), field)
        direction = Direction(args.direction)
        report = KernelRunReport(
            kernel="ntt",
            environment=self._environment(args),
            parameters={"n": len(values), "direction": direction.value, "radix_log": args.radix_log or 1, "coset": args.coset},
        )
        with counting() as delta:
            start = time.perf_counter()
            if args.coset:
                out = coset_ntt(values, domain, direction)
            elif args.radix_log:
                out = ntt_staged(values, domain, args.radix_log, direction)
            else:
                out = ntt_radix2(values, domain, direction)
            report.wall_time = time.perf_counter() - start
        report.outputs = vector_lines(out)
        report.op_counters = delta.as_dict()
        return report, EXIT_OK

    async def run_prove(self, args: argparse.Namespace) -> Tuple[BaseModel, int]:
        curve = get_curve(args.curve, args.word_bits, args.backend)
        if curve.scalar_field is None:
            raise UsageError(f"曲线 {curve.name} 没有标量域，不能用于证明流水线")
        n = 1 << (args.scale if args.scale is not None else 6)
        rng = random.Random(args.seed)
        pk, trapdoor = mock_setup(n, n, args.seed, curve)
        domain = build_domain(n, curve.scalar_field)
        inputs = random_inputs(domain, n, rng)
        check_points = self.config["ntt"]["check_points"]
        with counting() as delta:
            start = time.perf_counter()
            proof = prove(pk, inputs, args.threads, args.window_bits, check_points, domain)
            wall_time = time.perf_counter() - start
        accepted = check_with_trapdoor(proof, trapdoor, inputs)
        report = KernelRunReport(
            kernel="prove",
            environment=self._environment(args),
            parameters={"n": n, "transforms": proof.transcript.transform_count, "kernel_seconds": proof.transcript.kernel_seconds},
            outputs=point_lines([proof.A, proof.C]),
            op_counters=delta.as_dict(),
            wall_time=wall_time,
            accepted=accepted,
            transcript=proof.transcript.model_dump(),
        )
        if not accepted:
            logger.error("陷门检查拒绝了证明")
        return report, EXIT_OK if accepted else EXIT_FAILED

    async def run_verify(self, args: argparse.Namespace) -> Tuple[BaseModel, int]:
        summary = await self.verify.run(args.seed, args.suites)
        return summary, EXIT_OK if summary.passed else EXIT_FAILED

    async def dispatch(self, args: argparse.Namespace) -> Tuple[BaseModel, int]:
        handler = getattr(self, f"run_{args.command}")
        return await handler(args)


def _load_custom_config(config: Dict[str, Any], path: Optional[str]) -> Dict[str, Any]:
    if not path:
        return config
    if not os.path.isfile(path):
        logger.warning(f"配置文件不存在: {path}")
        return config
    try:
        with open(path, "r", encoding="utf-8") as f:
            merge_dict(config, json.load(f))
        logger.info(f"已加载自定义配置: {path}")
    except Exception as e:
        logger.error(f"加载自定义配置失败: {str(e)}")
    return config


def build_parser(config: Dict[str, Any]) -> argparse.ArgumentParser:
    """命令行解析器；未给出的选项取配置中的默认值"""
    field_cfg = config["field"]
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=field_cfg["name"], help="域预置")
    common.add_argument("--curve", default=field_cfg["curve"], help="曲线预置")
    common.add_argument("--word-bits", type=int, choices=SUPPORTED_WORD_BITS, default=field_cfg["word_bits"], help="limb 字长")
    common.add_argument("--backend", choices=SUPPORTED_BACKENDS, default=field_cfg["backend"], help="域运算后端")
    common.add_argument("--threads", type=int, default=1, help="MSM 窗口并行的线程数")
    common.add_argument("--seed", type=int, default=config["bench"]["seed"], help="随机种子")
    common.add_argument("--format", choices=SUPPORTED_FORMATS, default=config["report"]["format"] or DEFAULT_FORMAT, help="报告格式")
    common.add_argument("--out", help="报告输出路径，默认写入输出目录或标准输出")
    common.add_argument("--config", help="自定义配置文件路径")
    common.add_argument("--scale-min", type=int, help="最小规模 log2(n)")
    common.add_argument("--scale-max", type=int, help="最大规模 log2(n)")
    common.add_argument("--window-bits", type=int, help="Pippenger 窗口位数 c")
    common.add_argument("--precompute", type=int, help="预计算因子 q_max（1 表示不预计算）")
    common.add_argument("--radix-log", type=int, help="分段 NTT 每趟合并的阶段数")

    parser = argparse.ArgumentParser(description="零知识证明 Prover 内核（MSM/NTT）表征工具")
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", parents=[common], help="按规模扫描内核耗时与计数")
    bench.add_argument("--kernels", type=lambda s: s.split(","), help=f"逗号分隔，可选 {','.join(SUPPORTED_KERNELS)}")
    bench.add_argument("--warmup", type=int, help="预热次数")
    bench.add_argument("--repetitions", type=int, help="计时次数")
    bench.add_argument("--memory-budget-gib", type=float, help="内存预算（GiB）")

    sub.add_parser("optable", parents=[common], help="PADD/PDBL 运算计数表")

    tradeoff = sub.add_parser("tradeoff", parents=[common], help="预计算窗口数与内存的权衡")
    tradeoff.add_argument("--scalar-bits", type=int, default=253, help="标量位数 λ")
    tradeoff.add_argument("--scale", type=int, default=26, help="MSM 规模 log2(n)")
    tradeoff.add_argument("--memory-budget-gib", type=float, help="内存预算（GiB），默认 48")

    roofline = sub.add_parser("roofline", parents=[common], help="加权指令数与算术强度")
    roofline.add_argument("--iterations", type=int, help="每种运算的调用次数")
    roofline.add_argument("--working-set", type=int, help="工作集大小")

    msm_cmd = sub.add_parser("msm", parents=[common], help="运行一次 MSM")
    msm_cmd.add_argument("--points", help="点文件，每行 x‖y 十六进制或 infinity")
    msm_cmd.add_argument("--scalars", help="标量文件，每行一个十六进制数")
    msm_cmd.add_argument("--scale", type=int, help="随机输入的规模 log2(n)")
    msm_cmd.add_argument("--form", default=config["msm"]["form"], choices=["affine", "jacobian", "xyzz"], help="桶的坐标形式")

    ntt_cmd = sub.add_parser("ntt", parents=[common], help="运行一次 NTT")
    ntt_cmd.add_argument("--input", help="向量文件，每行一个定宽十六进制域元素")
    ntt_cmd.add_argument("--scale", type=int, help="随机输入的规模 log2(n)")
    ntt_cmd.add_argument("--direction", choices=[d.value for d in Direction], default=Direction.FORWARD.value, help="变换方向")
    ntt_cmd.add_argument("--inverse", dest="direction", action="store_const", const=Direction.INVERSE.value, help="等同于 --direction inverse")
    ntt_cmd.add_argument("--coset", action="store_true", help="陪集变换")

    prove_cmd = sub.add_parser("prove", parents=[common], help="生成并用陷门检查一个证明")
    prove_cmd.add_argument("--scale", type=int, help="约束规模 log2(n)，默认 6")

    verify = sub.add_parser("verify", parents=[common], help="运行正确性自检")
    verify.add_argument("--suites", type=lambda s: s.split(","), help=f"逗号分隔，可选 {','.join(SUITES)}")
    return parser


async def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    # --config 要在构造解析器之前合并，配置里的默认值才能生效
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    config = _load_custom_config(get_config(), known.config)
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        # 检查环境变量
        check_environment()

        lab = CharacterizationLab(config)
        report, code = await lab.dispatch(args)
        text = render_report(report, args.format, TITLES[args.command])
        emit(text, args.command, args.format, args.out, config["report"]["output_dir"])
        return code
    except MemoryBudgetError as e:
        logger.error(f"{str(e)} (估计 {e.estimate_bytes} 字节，预算 {e.budget_bytes} 字节)")
        return EXIT_USAGE
    except UsageError as e:
        logger.error(f"参数错误: {str(e)}")
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"程序执行出错: {str(e)}")
        import traceback
        logger.debug(traceback.format_exc())
        return EXIT_FAILED


def main_cli():
    sys.exit(asyncio.run(main()))


if __name__ == "__main__":
    main_cli()
