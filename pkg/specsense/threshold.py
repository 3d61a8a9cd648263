#!/usr/bin/env python3
"""
specsense门限模块
理论门限（目标P_f）、静默期(quiet-time)动态估计门限以及门限因子缩放 λ′ = k·λ
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from .analytic import q_inverse
from .errors import ArgumentError, check_argument
from .signals import SampleFrame, SignalMode, generate_noise_frame

# 自相关检测的默认判决裕量
DEFAULT_MARGIN = 0.5


class ThresholdMethod(Enum):
    """门限获取方式"""
    THEORETICAL_ENERGY = "theoretical_energy"
    THEORETICAL_MATCHED_FILTER = "theoretical_matched_filter"
    QUIET_TIME = "quiet_time"
    FIXED_MARGIN = "fixed_margin"

    @property
    def is_theoretical(self) -> bool:
        return self in (ThresholdMethod.THEORETICAL_ENERGY,
                        ThresholdMethod.THEORETICAL_MATCHED_FILTER)


@dataclass(frozen=True)
class ThresholdSpec:
    """门限规格：方法、因子k及各方法的参数"""

    method: ThresholdMethod
    factor_k: float = 1.0
    target_pf: Optional[float] = None
    quiet_windows_m: int = 1
    margin: Optional[float] = None

    def __post_init__(self):
        check_argument(self.factor_k > 0, "门限因子k必须为正", key="factor_k")
        if self.method.is_theoretical:
            check_argument(self.target_pf is not None and 0.0 < self.target_pf < 1.0,
                           "理论门限需要位于(0, 1)的目标P_f", key="target_pf")
        if self.method is ThresholdMethod.QUIET_TIME:
            check_argument(self.quiet_windows_m >= 1, "静默窗口数必须至少为1",
                           key="quiet_windows_m")
        if self.method is ThresholdMethod.FIXED_MARGIN:
            if self.margin is None:
                object.__setattr__(self, "margin", DEFAULT_MARGIN)
            check_argument(0.0 < self.margin < 1.0, "判决裕量必须位于(0, 1)", key="margin")

    def with_factor(self, factor_k: float) -> "ThresholdSpec":
        """返回仅因子不同的规格"""
        return replace(self, factor_k=factor_k)

    def describe(self) -> str:
        """方法及其参数的简短描述，用于结果表"""
        if self.method.is_theoretical:
            return f"theoretical@pf={self.target_pf:.12g}"
        if self.method is ThresholdMethod.QUIET_TIME:
            return f"quiet-time@m={self.quiet_windows_m}"
        return f"fixed-margin@{self.margin:.12g}"


@dataclass(frozen=True)
class ThresholdValue:
    """门限值λ及其来源；spec.factor_k 记录已施加的累计因子"""

    lam: float
    spec: ThresholdSpec


def energy_threshold_theoretical(target_pf: float, n: int, noise_variance: float) -> ThresholdValue:
    """λ = (Q⁻¹(P_f)·√(2N) + N)·δ_w²"""
    check_argument(0.0 < target_pf < 1.0, "目标P_f必须位于(0, 1)", key="target_pf")
    check_argument(n >= 1, "采样数必须至少为1", key="n")
    check_argument(noise_variance > 0, "噪声方差必须为正", key="noise_variance")

    lam = (q_inverse(target_pf) * math.sqrt(2.0 * n) + n) * noise_variance
    spec = ThresholdSpec(ThresholdMethod.THEORETICAL_ENERGY, target_pf=target_pf)
    return ThresholdValue(lam, spec)


def mf_threshold_theoretical(target_pf: float, pilot_energy: float,
                             noise_variance: float) -> ThresholdValue:
    """λ = Q⁻¹(P_f)·√(E·δ_w²)"""
    check_argument(0.0 < target_pf < 1.0, "目标P_f必须位于(0, 1)", key="target_pf")
    check_argument(pilot_energy > 0, "导频能量必须为正", key="pilot_energy")
    check_argument(noise_variance > 0, "噪声方差必须为正", key="noise_variance")

    lam = q_inverse(target_pf) * math.sqrt(pilot_energy * noise_variance)
    spec = ThresholdSpec(ThresholdMethod.THEORETICAL_MATCHED_FILTER, target_pf=target_pf)
    return ThresholdValue(lam, spec)


def quiet_time_mf_threshold(pilot: SampleFrame, noise_variance: float, windows_m: int,
                            rng: np.random.Generator) -> ThresholdValue:
    """
    静默期匹配滤波门限

    每个静默窗口计算 c_j = Re(Σ w(n)·conj(x_p(n)))，返回 max_j |c_j|；
    windows_m = 1 时即逐次迭代的单窗口估计。窗口按顺序抽取，
    因此相同随机流下前一个窗口与 windows_m = 1 的结果一致。
    """
    check_argument(windows_m >= 1, "静默窗口数必须至少为1", key="windows_m")

    envelope = 0.0
    for _ in range(windows_m):
        noise = generate_noise_frame(pilot.n, noise_variance, pilot.mode, rng)
        correlation = float(np.vdot(pilot.samples, noise.samples).real)
        envelope = max(envelope, abs(correlation))

    spec = ThresholdSpec(ThresholdMethod.QUIET_TIME, quiet_windows_m=windows_m)
    return ThresholdValue(envelope, spec)


def quiet_time_energy_threshold(n: int, noise_variance: float, windows_m: int,
                                mode: SignalMode, rng: np.random.Generator) -> ThresholdValue:
    """静默期能量门限 λ = max_j Σ|w_j(n)|²"""
    check_argument(windows_m >= 1, "静默窗口数必须至少为1", key="windows_m")

    envelope = 0.0
    for _ in range(windows_m):
        noise = generate_noise_frame(n, noise_variance, mode, rng)
        envelope = max(envelope, float(np.vdot(noise.samples, noise.samples).real))

    spec = ThresholdSpec(ThresholdMethod.QUIET_TIME, quiet_windows_m=windows_m)
    return ThresholdValue(envelope, spec)


def fixed_margin_threshold(margin: float = DEFAULT_MARGIN) -> ThresholdValue:
    """自相关检测的固定裕量门限"""
    spec = ThresholdSpec(ThresholdMethod.FIXED_MARGIN, margin=margin)
    return ThresholdValue(spec.margin, spec)


def apply_factor(threshold: ThresholdValue, k: float) -> ThresholdValue:
    """λ′ = k·λ"""
    if not k > 0:
        raise ArgumentError(f"门限因子 {k} 必须为正", key="k")
    return replace(threshold, lam=k * threshold.lam,
                   spec=threshold.spec.with_factor(threshold.spec.factor_k * k))
