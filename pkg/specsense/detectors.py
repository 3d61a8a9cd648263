#!/usr/bin/env python3
"""
specsense检测统计量模块
能量检测、匹配滤波检测和自相关(lag0/lag1)检测，以及门限判决
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ArgumentError, DegenerateInputError, check_argument
from .signals import SampleFrame


class DetectorKind(Enum):
    """检测器种类"""
    ENERGY = "energy"
    MATCHED_FILTER = "matched_filter"
    AUTOCORRELATION = "autocorrelation"


class Decision(Enum):
    """感知判决"""
    PU_PRESENT = "present"
    PU_ABSENT = "absent"


@dataclass(frozen=True)
class DetectorStatistic:
    """检测统计量 T 及其来源检测器"""

    kind: DetectorKind
    value: float

    def __post_init__(self):
        if self.kind is DetectorKind.ENERGY and self.value < 0:
            raise ArgumentError("能量统计量不能为负", key="value")
        if self.kind is DetectorKind.AUTOCORRELATION and not 0.0 <= self.value <= 1.0:
            raise ArgumentError("自相关比值必须位于[0, 1]", key="value")


def energy_statistic(frame: SampleFrame) -> DetectorStatistic:
    """T_ED = Σ|y(n)|²"""
    value = float(np.vdot(frame.samples, frame.samples).real)
    return DetectorStatistic(DetectorKind.ENERGY, value)


def matched_filter_statistic(frame: SampleFrame, pilot: SampleFrame) -> DetectorStatistic:
    """T_MFD = Re(Σ y(n)·conj(x_p(n)))"""
    check_argument(frame.n == pilot.n,
                   f"接收帧长度 {frame.n} 与导频长度 {pilot.n} 不一致", key="pilot")
    check_argument(frame.mode is pilot.mode, "接收帧与导频的采样模式不一致", key="pilot")

    # vdot对第一个参数取共轭
    value = float(np.vdot(pilot.samples, frame.samples).real)
    return DetectorStatistic(DetectorKind.MATCHED_FILTER, value)


def autocorrelation(frame: SampleFrame, lag: int) -> complex:
    """有限样本单边自相关 R(lag) = Σ_{n=lag}^{N-1} y(n)·conj(y(n-lag))"""
    check_argument(0 <= lag < frame.n, f"滞后 {lag} 必须位于 [0, {frame.n})", key="lag")
    samples = frame.samples
    return complex(np.vdot(samples[:frame.n - lag], samples[lag:]))


def lag_ratio_statistic(frame: SampleFrame) -> DetectorStatistic:
    """ρ = |R(1)| / R(0)，由Cauchy-Schwarz不等式位于[0, 1]"""
    check_argument(frame.n >= 2, "自相关检测至少需要2个采样", key="frame")
    lag0 = autocorrelation(frame, 0).real
    if lag0 <= 0:
        raise DegenerateInputError("全零帧的自相关比值无定义", key="frame")

    ratio = abs(autocorrelation(frame, 1)) / lag0
    # 舍入误差可能使比值略超过1
    return DetectorStatistic(DetectorKind.AUTOCORRELATION, min(ratio, 1.0))


def decide(statistic: DetectorStatistic, threshold: float) -> Decision:
    """T ≥ λ 判为PU存在，相等时同样判为存在"""
    if statistic.value >= threshold:
        return Decision.PU_PRESENT
    return Decision.PU_ABSENT
