#!/usr/bin/env python3
"""
specsense - 认知无线电频谱感知工具包
能量检测、匹配滤波检测、自相关检测，理论门限与静默期动态门限，以及可复现的蒙特卡洛引擎
"""

__version__ = "1.0.0"
__author__ = "specsense developers"

from .signals import (SampleFrame, SignalMode, ChannelParams, generate_qpsk_frame,
                      generate_pilot, noise_variance_from_snr, add_awgn,
                      generate_noise_frame, signal_power, signal_energy)
from .detectors import (DetectorKind, DetectorStatistic, Decision, energy_statistic,
                        matched_filter_statistic, autocorrelation, lag_ratio_statistic, decide)
from .analytic import (AnalyticPoint, q_function, q_inverse, energy_pd_analytic,
                       energy_pf_analytic, mf_pd_analytic, mf_pf_analytic, roc_curve)
from .threshold import (ThresholdMethod, ThresholdSpec, ThresholdValue,
                        energy_threshold_theoretical, mf_threshold_theoretical,
                        quiet_time_mf_threshold, quiet_time_energy_threshold, apply_factor)
from .montecarlo import (Hypothesis, TrialCondition, TrialCounts, SweepResult, run_trial,
                         run_condition, run_sweep, best_sample_count)
from .config import ExperimentConfig, parse_config, list_presets, expand_grid
from .errors import get_error_reporter, SensingError
from .plugins import get_detector_registry, register_detector

__all__ = [
    # 信号
    'SampleFrame',
    'SignalMode',
    'ChannelParams',
    'generate_qpsk_frame',
    'generate_pilot',
    'noise_variance_from_snr',
    'add_awgn',
    'generate_noise_frame',
    'signal_power',
    'signal_energy',

    # 检测统计量
    'DetectorKind',
    'DetectorStatistic',
    'Decision',
    'energy_statistic',
    'matched_filter_statistic',
    'autocorrelation',
    'lag_ratio_statistic',
    'decide',

    # 解析性能
    'AnalyticPoint',
    'q_function',
    'q_inverse',
    'energy_pd_analytic',
    'energy_pf_analytic',
    'mf_pd_analytic',
    'mf_pf_analytic',
    'roc_curve',

    # 门限
    'ThresholdMethod',
    'ThresholdSpec',
    'ThresholdValue',
    'energy_threshold_theoretical',
    'mf_threshold_theoretical',
    'quiet_time_mf_threshold',
    'quiet_time_energy_threshold',
    'apply_factor',

    # 蒙特卡洛
    'Hypothesis',
    'TrialCondition',
    'TrialCounts',
    'SweepResult',
    'run_trial',
    'run_condition',
    'run_sweep',
    'best_sample_count',

    # 配置
    'ExperimentConfig',
    'parse_config',
    'list_presets',
    'expand_grid',

    # 错误处理
    'get_error_reporter',
    'SensingError',

    # 检测器插件
    'get_detector_registry',
    'register_detector',
]
