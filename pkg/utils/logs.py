"""
日志配置：loguru，一个 stderr 输出加一个按日期命名的文件输出
"""
import os
import sys
from datetime import datetime
from pathlib import Path

from loguru import logger as _logger

PROJECT_ROOT = Path(__file__).resolve().parent.parent

_print_level = "INFO"


def define_log_level(print_level: str = "INFO", logfile_level: str = "DEBUG", name: str = None):
    """
    调整日志级别

    Args:
        print_level: 终端输出级别
        logfile_level: 文件输出级别
        name: 日志文件名前缀

    Returns:
        配置好的 logger
    """
    global _print_level
    _print_level = print_level

    formatted_date = datetime.now().strftime("%Y%m%d")
    log_name = f"{name}_{formatted_date}" if name else formatted_date

    _logger.remove()
    _logger.add(sys.stderr, level=print_level)
    _logger.add(PROJECT_ROOT / "logs" / f"{log_name}.txt", level=logfile_level)
    return _logger


logger = define_log_level(os.getenv("KERNEL_LAB_LOG_LEVEL", "INFO"))
