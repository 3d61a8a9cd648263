#!/usr/bin/env python3
"""
specsense性能监控模块
记录每个仿真条件的耗时与试验吞吐量
"""

import time
from dataclasses import dataclass


@dataclass
class PerformanceMetrics:
    """性能指标"""
    conditions_run: int = 0
    trials_run: int = 0
    last_condition_time: float = 0.0
    average_condition_time: float = 0.0
    total_time: float = 0.0


class PerformanceMonitor:
    """性能监控器"""

    def __init__(self):
        """初始化性能监控器"""
        self.metrics = PerformanceMetrics()
        self.start_time = 0.0

    def start_condition(self):
        """开始计时"""
        self.start_time = time.perf_counter()

    def end_condition(self, trials: int = 0) -> float:
        """结束计时，返回本次耗时（毫秒）"""
        if self.start_time <= 0:
            return 0.0

        elapsed = time.perf_counter() - self.start_time
        self.start_time = 0.0
        self.record(elapsed * 1000.0, trials)
        return elapsed * 1000.0

    def record(self, elapsed_ms: float, trials: int = 0):
        """记录一次已完成条件的耗时"""
        elapsed = elapsed_ms / 1000.0
        self.metrics.last_condition_time = elapsed
        self.metrics.conditions_run += 1
        self.metrics.trials_run += trials
        self.metrics.total_time += elapsed
        self.metrics.average_condition_time = self.metrics.total_time / self.metrics.conditions_run

    def get_metrics(self) -> PerformanceMetrics:
        """获取性能指标"""
        return self.metrics

    def get_detailed_report(self) -> str:
        """获取详细性能报告"""
        metrics = self.metrics
        throughput = 0.0
        if metrics.total_time > 0:
            throughput = metrics.trials_run / metrics.total_time

        return f"""
性能监控报告:
- 仿真条件数: {metrics.conditions_run}
- 试验总数: {metrics.trials_run}
- 平均每条件耗时: {metrics.average_condition_time:.4f}秒
- 最后条件耗时: {metrics.last_condition_time:.4f}秒
- 累计耗时: {metrics.total_time:.4f}秒
- 吞吐量: {throughput:.1f} 次试验/秒
        """.strip()
