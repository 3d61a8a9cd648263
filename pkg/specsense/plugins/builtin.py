#!/usr/bin/env python3
"""
specsense内置检测器插件
能量检测、匹配滤波检测、自相关检测
"""

from dataclasses import replace
from typing import List, Optional

import numpy as np

from .. import analytic
from ..detectors import (DetectorKind, DetectorStatistic, energy_statistic,
                         lag_ratio_statistic, matched_filter_statistic)
from ..errors import ArgumentError
from ..signals import SampleFrame
from ..threshold import (ThresholdMethod, ThresholdSpec, ThresholdValue,
                         energy_threshold_theoretical, fixed_margin_threshold,
                         mf_threshold_theoretical, quiet_time_energy_threshold,
                         quiet_time_mf_threshold)
from .base import DetectorPlugin, SensingContext


def _unsupported(plugin: DetectorPlugin, spec: ThresholdSpec) -> ArgumentError:
    return ArgumentError(
        f"检测器 {plugin.kind.value} 不支持门限方法 {spec.method.value}", key="threshold_method"
    )


class EnergyDetectorPlugin(DetectorPlugin):
    """能量检测插件"""

    def __init__(self):
        super().__init__(
            name="energy",
            kind=DetectorKind.ENERGY,
            description="接收信号能量 Σ|y(n)|² 与门限比较",
            traits={
                'complexity': "低",
                'prior_knowledge': "不需要PU信号的先验知识",
                'strengths': "高SNR下性能好",
                'weaknesses': "判决后无法区分噪声与信号，虚警高",
            },
        )

    def compute_statistic(self, frame: SampleFrame,
                          pilot: Optional[SampleFrame] = None) -> DetectorStatistic:
        return energy_statistic(frame)

    def estimate_threshold(self, spec: ThresholdSpec, context: SensingContext,
                           pilot: Optional[SampleFrame],
                           rng: np.random.Generator) -> ThresholdValue:
        if spec.method is ThresholdMethod.THEORETICAL_ENERGY:
            n_eff, noise_eff = analytic.effective_parameters(
                self.kind, context.mode, context.n_samples, context.noise_variance
            )
            value = energy_threshold_theoretical(spec.target_pf, n_eff, noise_eff)
        elif spec.method is ThresholdMethod.QUIET_TIME:
            value = quiet_time_energy_threshold(
                context.n_samples, context.noise_variance, spec.quiet_windows_m, context.mode, rng
            )
        else:
            raise _unsupported(self, spec)
        return replace(value, spec=spec.with_factor(1.0))

    def analytic_point(self, lam: float, context: SensingContext):
        return analytic.analytic_point(
            self.kind, lam, context.n_samples, context.gamma, context.noise_variance,
            mode=context.mode,
        )


class MatchedFilterPlugin(DetectorPlugin):
    """匹配滤波检测插件"""

    requires_pilot = True

    def __init__(self):
        super().__init__(
            name="matched_filter",
            kind=DetectorKind.MATCHED_FILTER,
            description="接收信号在导频方向上的投影 Re(Σ y(n)·conj(x_p(n)))",
            traits={
                'complexity': "高",
                'prior_knowledge': "需要PU信号（导频）的先验知识",
                'strengths': "少量采样即可达到高性能，可工作于低SNR区域",
                'weaknesses': "依赖准确的导频",
            },
        )

    def _require_pilot(self, pilot: Optional[SampleFrame]) -> SampleFrame:
        if pilot is None:
            raise ArgumentError("匹配滤波检测需要导频", key="pilot")
        return pilot

    def compute_statistic(self, frame: SampleFrame,
                          pilot: Optional[SampleFrame] = None) -> DetectorStatistic:
        return matched_filter_statistic(frame, self._require_pilot(pilot))

    def estimate_threshold(self, spec: ThresholdSpec, context: SensingContext,
                           pilot: Optional[SampleFrame],
                           rng: np.random.Generator) -> ThresholdValue:
        if spec.method is ThresholdMethod.THEORETICAL_MATCHED_FILTER:
            _, noise_eff = analytic.effective_parameters(
                self.kind, context.mode, context.n_samples, context.noise_variance
            )
            value = mf_threshold_theoretical(spec.target_pf, context.pilot_energy, noise_eff)
        elif spec.method is ThresholdMethod.QUIET_TIME:
            value = quiet_time_mf_threshold(
                self._require_pilot(pilot), context.noise_variance, spec.quiet_windows_m, rng
            )
        else:
            raise _unsupported(self, spec)
        return replace(value, spec=spec.with_factor(1.0))

    def analytic_point(self, lam: float, context: SensingContext):
        return analytic.analytic_point(
            self.kind, lam, context.n_samples, context.gamma, context.noise_variance,
            pilot_energy=context.pilot_energy, mode=context.mode,
        )


class AutocorrelationPlugin(DetectorPlugin):
    """自相关检测插件"""

    def __init__(self):
        super().__init__(
            name="autocorrelation",
            kind=DetectorKind.AUTOCORRELATION,
            description="比较自相关 lag0 与 lag1：ρ = |R(1)|/R(0) 与裕量比较",
            traits={
                'complexity': "数据处理量大",
                'prior_knowledge': "需要自相关函数统计分布的知识",
                'strengths': "判决后可区分PU信号与噪声，对噪声不确定性稳健",
                'weaknesses': "低SNR下检测概率较低",
            },
        )

    def compute_statistic(self, frame: SampleFrame,
                          pilot: Optional[SampleFrame] = None) -> DetectorStatistic:
        return lag_ratio_statistic(frame)

    def estimate_threshold(self, spec: ThresholdSpec, context: SensingContext,
                           pilot: Optional[SampleFrame],
                           rng: np.random.Generator) -> ThresholdValue:
        if spec.method is not ThresholdMethod.FIXED_MARGIN:
            raise _unsupported(self, spec)
        return replace(fixed_margin_threshold(spec.margin), spec=spec.with_factor(1.0))


def get_builtin_plugins() -> List[DetectorPlugin]:
    """获取所有内置插件"""
    return [
        EnergyDetectorPlugin(),
        MatchedFilterPlugin(),
        AutocorrelationPlugin(),
    ]
