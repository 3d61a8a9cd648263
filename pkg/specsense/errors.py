#!/usr/bin/env python3
"""
specsense错误处理和日志模块
提供统一的异常类型、错误报告和日志记录功能
"""

import sys
import logging
from typing import Optional, List
from enum import Enum


class ErrorSeverity(Enum):
    """错误严重程度"""
    DEBUG = "debug"
    INFO = "info"
    WARNING = "warning"
    ERROR = "error"
    CRITICAL = "critical"


class SensingError(Exception):
    """频谱感知错误基类"""

    def __init__(self, message: str, key: Optional[str] = None,
                 context: Optional[str] = None):
        super().__init__(message)
        self.key = key
        self.context = context

    def __str__(self):
        location = []
        if self.key:
            location.append(f"键: {self.key}")
        if self.context:
            location.append(f"上下文: {self.context}")

        if location:
            return f"{self.args[0]} ({', '.join(location)})"
        return self.args[0]


class ArgumentError(SensingError, ValueError):
    """参数不满足前置条件"""
    pass


class DegenerateInputError(SensingError, ValueError):
    """退化输入，例如全零帧"""
    pass


class ConfigurationError(SensingError):
    """配置错误"""
    pass


class OutputError(SensingError):
    """结果文件写入错误"""
    pass


class PluginError(SensingError):
    """检测器插件错误"""
    pass


def check_argument(condition: bool, message: str, key: Optional[str] = None):
    """条件不成立时抛出ArgumentError"""
    if not condition:
        raise ArgumentError(message, key=key)


class ErrorReporter:
    """错误报告器"""

    def __init__(self, debug_mode: bool = False, verbose: bool = False):
        """初始化错误报告器"""
        self.debug_mode = debug_mode
        self.verbose = verbose
        self.errors: List[SensingError] = []
        self.warnings: List[str] = []

        self._setup_logging()

    def _setup_logging(self):
        """设置日志记录"""
        log_level = logging.DEBUG if self.debug_mode else logging.INFO
        logging.basicConfig(
            level=log_level,
            format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
            handlers=[
                logging.StreamHandler(sys.stderr)
            ]
        )
        self.logger = logging.getLogger('specsense')
        self.logger.setLevel(log_level)

    def report_error(self, error: SensingError, severity: ErrorSeverity = ErrorSeverity.ERROR):
        """报告错误"""
        self.errors.append(error)

        if severity == ErrorSeverity.DEBUG and not self.debug_mode:
            return

        if severity == ErrorSeverity.CRITICAL:
            self.logger.critical(str(error))
        elif severity == ErrorSeverity.ERROR:
            self.logger.error(str(error))
        elif severity == ErrorSeverity.WARNING:
            self.logger.warning(str(error))
        elif severity == ErrorSeverity.INFO:
            self.logger.info(str(error))
        else:
            self.logger.debug(str(error))

    def report_warning(self, message: str, key: Optional[str] = None):
        """报告警告"""
        warning = f"警告: {message}"
        if key:
            warning += f" (键: {key})"

        self.warnings.append(warning)
        self.logger.warning(warning)

    def report_info(self, message: str):
        """报告信息"""
        if self.verbose:
            self.logger.info(message)

    def has_errors(self) -> bool:
        """是否有错误"""
        return len(self.errors) > 0

    def get_error_summary(self) -> str:
        """获取错误摘要"""
        if not self.errors and not self.warnings:
            return "无错误"

        summary = f"总共 {len(self.errors)} 个错误"
        if self.warnings:
            summary += f", {len(self.warnings)} 个警告"

        return summary

    def print_detailed_report(self):
        """打印详细错误报告"""
        print("\n" + "="*50, file=sys.stderr)
        print("SPECSENSE 运行报告", file=sys.stderr)
        print("="*50, file=sys.stderr)

        if self.errors:
            print(f"\n错误 ({len(self.errors)} 个):", file=sys.stderr)
            for i, error in enumerate(self.errors, 1):
                print(f"  {i}. {error}", file=sys.stderr)

        if self.warnings:
            print(f"\n警告 ({len(self.warnings)} 个):", file=sys.stderr)
            for i, warning in enumerate(self.warnings, 1):
                print(f"  {i}. {warning}", file=sys.stderr)

        print(f"\n{self.get_error_summary()}", file=sys.stderr)
        print("="*50, file=sys.stderr)


def handle_sensing_error(error: Exception, reporter: ErrorReporter,
                         context: Optional[str] = None):
    """统一错误处理"""
    if isinstance(error, SensingError):
        reporter.report_error(error)
    else:
        # 未知错误
        message = f"未知错误: {error}"
        reporter.report_error(SensingError(message, context=context), ErrorSeverity.CRITICAL)


# 全局错误报告器
_global_reporter: Optional[ErrorReporter] = None


def get_error_reporter() -> ErrorReporter:
    """获取全局错误报告器"""
    global _global_reporter
    if _global_reporter is None:
        _global_reporter = ErrorReporter()
    return _global_reporter


def reset_error_reporter(debug_mode: bool = False, verbose: bool = False) -> ErrorReporter:
    """重置全局错误报告器"""
    global _global_reporter
    _global_reporter = ErrorReporter(debug_mode=debug_mode, verbose=verbose)
    return _global_reporter
