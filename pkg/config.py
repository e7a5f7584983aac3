import os
import json
from pathlib import Path
from typing import Dict, Any
from dotenv import load_dotenv

# 加载环境变量
load_dotenv()

# 支持的取值
SUPPORTED_BACKENDS = ["native", "limb"]
SUPPORTED_WORD_BITS = [32, 64]
SUPPORTED_FORMATS = ["csv", "json", "md"]
SUPPORTED_LOG_LEVELS = ["TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"]

# 输出与日志
OUTPUT_DIR = os.getenv("KERNEL_LAB_OUTPUT_DIR")
LOG_LEVEL = os.getenv("KERNEL_LAB_LOG_LEVEL", "INFO").upper()

# 域运算配置
FIELD_BACKEND = os.getenv("KERNEL_LAB_FIELD_BACKEND", "native")
WORD_BITS = os.getenv("KERNEL_LAB_WORD_BITS", "32")

if LOG_LEVEL not in SUPPORTED_LOG_LEVELS:
    print(f"警告: 日志级别 '{LOG_LEVEL}' 不受支持，将使用默认级别 'INFO'")
    LOG_LEVEL = "INFO"

# 如果指定的后端不在支持列表中，使用默认后端
if FIELD_BACKEND not in SUPPORTED_BACKENDS:
    print(f"警告: 域运算后端 '{FIELD_BACKEND}' 不受支持，将使用默认后端 'native'")
    FIELD_BACKEND = "native"

if not WORD_BITS.isdigit() or int(WORD_BITS) not in SUPPORTED_WORD_BITS:
    print(f"警告: 字长 '{WORD_BITS}' 不受支持，将使用默认字长 32")
    WORD_BITS = "32"
WORD_BITS = int(WORD_BITS)

# 项目配置
PROJECT_ROOT = Path(__file__).parent
DEFAULT_SEED = 2024
DEFAULT_FIELD = "bls12-377-fr"
DEFAULT_CURVE = "bls12-377-g1"
DEFAULT_FORMAT = "json"

# 基准测试配置：3 次预热 + 10 次计时，取中位数
DEFAULT_WARMUP = 3
DEFAULT_REPETITIONS = 10
DEFAULT_SCALE_MIN = 10
DEFAULT_SCALE_MAX = 18
DEFAULT_KERNELS = ["msm", "ntt"]
DEFAULT_MEMORY_BUDGET_GIB = 8

# 内核配置
DEFAULT_RADIX_LOG = 8
DEFAULT_PRECOMPUTE = 1
DEFAULT_HCHECK_POINTS = 2
DEFAULT_ROOFLINE_ITERATIONS = 1000
DEFAULT_ROOFLINE_WORKING_SET = 64


def check_environment():
    """检查环境配置是否可用"""
    if OUTPUT_DIR and Path(OUTPUT_DIR).exists() and not Path(OUTPUT_DIR).is_dir():
        raise EnvironmentError(
            f"KERNEL_LAB_OUTPUT_DIR 指向的路径不是目录: {OUTPUT_DIR}"
            "\n请在.env文件中修改或通过命令行导出，例如：export KERNEL_LAB_OUTPUT_DIR=./reports"
        )
    return True


def load_user_config() -> Dict[str, Any]:
    """
    加载用户配置文件

    Returns:
        用户配置字典
    """
    config_path = PROJECT_ROOT / "user_config.json"
    if config_path.exists():
        try:
            with open(config_path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except Exception as e:
            print(f"加载用户配置文件失败: {str(e)}")
    return {}


def save_user_config(config: Dict[str, Any]):
    """
    保存用户配置到文件

    Args:
        config: 要保存的配置字典
    """
    config_path = PROJECT_ROOT / "user_config.json"
    try:
        with open(config_path, 'w', encoding='utf-8') as f:
            json.dump(config, f, indent=2, ensure_ascii=False)
    except Exception as e:
        print(f"保存用户配置文件失败: {str(e)}")


def merge_dict(d1: Dict[str, Any], d2: Dict[str, Any]) -> Dict[str, Any]:
    """递归合并字典，d2 覆盖 d1"""
    for k, v in d2.items():
        if k in d1 and isinstance(d1[k], dict) and isinstance(v, dict):
            merge_dict(d1[k], v)
        else:
            d1[k] = v
    return d1


def default_config() -> Dict[str, Any]:
    """默认配置（每次返回新的字典）"""
    return {
        "field": {
            "name": DEFAULT_FIELD,
            "curve": DEFAULT_CURVE,
            "backend": FIELD_BACKEND,
            "word_bits": WORD_BITS,
        },
        "bench": {
            "kernels": list(DEFAULT_KERNELS),
            "scale_min": DEFAULT_SCALE_MIN,
            "scale_max": DEFAULT_SCALE_MAX,
            "warmup": DEFAULT_WARMUP,
            "repetitions": DEFAULT_REPETITIONS,
            "memory_budget_gib": DEFAULT_MEMORY_BUDGET_GIB,
            "seed": DEFAULT_SEED,
        },
        "msm": {
            "window_bits": None,
            "precompute": DEFAULT_PRECOMPUTE,
            "form": "xyzz",
        },
        "ntt": {
            "radix_log": DEFAULT_RADIX_LOG,
            "check_points": DEFAULT_HCHECK_POINTS,
        },
        "report": {
            "format": DEFAULT_FORMAT,
            "output_dir": OUTPUT_DIR,
            "roofline_iterations": DEFAULT_ROOFLINE_ITERATIONS,
            "roofline_working_set": DEFAULT_ROOFLINE_WORKING_SET,
        },
    }


def get_config() -> Dict[str, Any]:
    """
    获取完整配置

    Returns:
        合并默认配置与 user_config.json 后的配置字典
    """
    return merge_dict(default_config(), load_user_config())
