#!/usr/bin/env python3
"""
specsense蒙特卡洛仿真引擎

每个仿真条件在H1下运行N_t次试验统计检测次数N_d，在H0下运行N_t次试验统计
虚警次数N_f，得到 P_d = N_d/N_t 与 P_f = N_f/N_t。每次试验的随机性只由
(master_seed, 条件指纹, 假设, 试验序号) 决定，结果与执行顺序和线程数无关。
"""

import hashlib
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .detectors import Decision, DetectorKind, decide
from .errors import ArgumentError, check_argument, get_error_reporter
from .monitor import PerformanceMonitor
from .plugins import DetectorRegistry, SensingContext, get_detector_registry
from .signals import (ChannelParams, SignalMode, apply_channel, generate_noise_frame,
                      generate_pilot, generate_qpsk_frame, noise_variance_from_snr,
                      snr_linear)
from .threshold import ThresholdSpec, apply_factor

logger = logging.getLogger("specsense.montecarlo")

# QPSK帧的名义信号功率
NOMINAL_SIGNAL_POWER = 1.0

DEFAULT_TRIALS = 1000

_UINT64_MAX = 2 ** 64 - 1


class Hypothesis(Enum):
    """假设：H0 仅噪声，H1 PU信号加噪声"""
    H0 = 0
    H1 = 1


@dataclass(frozen=True)
class TrialCondition:
    """一个仿真条件"""

    detector: DetectorKind
    snr_db: float
    n_samples: int
    threshold_spec: ThresholdSpec
    oversample_factor: int = 2
    mode: SignalMode = SignalMode.COMPLEX
    trials_nt: int = DEFAULT_TRIALS
    master_seed: int = 0

    def __post_init__(self):
        check_argument(self.n_samples >= 1, "采样数必须至少为1", key="n_samples")
        check_argument(self.trials_nt >= 1, "试验次数必须至少为1", key="trials_nt")
        check_argument(self.oversample_factor >= 1, "过采样因子必须至少为1",
                       key="oversample_factor")
        noise_variance_from_snr(NOMINAL_SIGNAL_POWER, self.snr_db)
        check_argument(0 <= self.master_seed <= _UINT64_MAX,
                       "master_seed必须是64位无符号整数", key="master_seed")

    @property
    def noise_variance(self) -> float:
        """由名义单位功率和SNR得到的δ_w²，同一条件内所有试验相同"""
        return noise_variance_from_snr(NOMINAL_SIGNAL_POWER, self.snr_db)

    @property
    def gamma(self) -> float:
        """线性SNR"""
        return snr_linear(self.snr_db)

    @property
    def pilot_energy(self) -> float:
        """名义导频能量 E = N·P"""
        return self.n_samples * NOMINAL_SIGNAL_POWER

    def sensing_context(self) -> SensingContext:
        return SensingContext(
            n_samples=self.n_samples,
            mode=self.mode,
            noise_variance=self.noise_variance,
            gamma=self.gamma,
            pilot_energy=self.pilot_energy,
        )

    @cached_property
    def fingerprint(self) -> int:
        """
        条件指纹：与随机性相关的字段的摘要

        门限因子k不参与指纹，仅k不同的条件使用相同的随机数，
        因此固定种子下P_d、P_f随k严格不增。
        """
        spec = self.threshold_spec
        payload = {
            'detector': self.detector.value,
            'snr_db': repr(float(self.snr_db)),
            'n_samples': self.n_samples,
            'oversample_factor': self.oversample_factor,
            'mode': self.mode.value,
            'method': spec.method.value,
            'target_pf': None if spec.target_pf is None else repr(float(spec.target_pf)),
            'quiet_windows_m': spec.quiet_windows_m,
            'margin': None if spec.margin is None else repr(float(spec.margin)),
        }
        digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode('utf-8')).digest()
        return int.from_bytes(digest[:8], 'big')


@dataclass(frozen=True)
class TrialCounts:
    """N_t、N_d、N_f 计数"""

    nt: int
    nd: int = 0
    nf: int = 0

    def __post_init__(self):
        check_argument(self.nt >= 1, "试验次数必须至少为1", key="nt")
        check_argument(0 <= self.nd <= self.nt, "检测次数超出范围", key="nd")
        check_argument(0 <= self.nf <= self.nt, "虚警次数超出范围", key="nf")

    @property
    def pd(self) -> float:
        return self.nd / self.nt

    @property
    def pf(self) -> float:
        return self.nf / self.nt

    def as_fractions(self) -> Tuple[Fraction, Fraction]:
        """精确有理数形式的 (P_d, P_f)"""
        return Fraction(self.nd, self.nt), Fraction(self.nf, self.nt)


@dataclass(frozen=True)
class TrialOutcome:
    """单次试验结果"""

    decision: Decision
    threshold: float
    statistic: float


@dataclass(frozen=True)
class SweepResult:
    """结果表的一行"""

    condition: TrialCondition
    counts: TrialCounts
    pd: float
    pf: float
    pd_analytic: Optional[float]
    pf_analytic: Optional[float]
    mean_threshold: float
    wall_time_ms: float = 0.0
    low_n_caveat: bool = False


def trial_rng(condition: TrialCondition, hypothesis: Hypothesis,
              trial_index: int) -> np.random.Generator:
    """基于计数器的Philox随机流，由种子序列的spawn_key区分每次试验"""
    sequence = np.random.SeedSequence(
        entropy=condition.master_seed,
        spawn_key=(condition.fingerprint, hypothesis.value, trial_index),
    )
    return np.random.Generator(np.random.Philox(sequence))


def _simulate_trial(condition: TrialCondition, hypothesis: Hypothesis, trial_index: int,
                    registry: DetectorRegistry) -> TrialOutcome:
    """一次完整的感知流程：生成信号、加噪、估计门限、计算统计量、判决"""
    check_argument(0 <= trial_index < condition.trials_nt,
                   f"试验序号 {trial_index} 超出 [0, {condition.trials_nt})", key="trial_index")

    plugin = registry.get(condition.detector)
    rng = trial_rng(condition, hypothesis, trial_index)
    n = condition.n_samples
    noise_variance = condition.noise_variance

    pilot = None
    pu_frame = None
    if hypothesis is Hypothesis.H1 or plugin.requires_pilot:
        n_symbols = -(-n // condition.oversample_factor)
        pu_frame = generate_qpsk_frame(n_symbols, condition.oversample_factor, rng, condition.mode)
        if pu_frame.n > n:
            pu_frame = pu_frame.truncated(n)
        if plugin.requires_pilot:
            pilot = generate_pilot(pu_frame)

    if hypothesis is Hypothesis.H1:
        channel = ChannelParams(snr_db=condition.snr_db, noise_variance=noise_variance)
        received = apply_channel(pu_frame, channel, rng)
    else:
        received = generate_noise_frame(n, noise_variance, condition.mode, rng)

    spec = condition.threshold_spec
    threshold = plugin.estimate_threshold(spec, condition.sensing_context(), pilot, rng)
    threshold = apply_factor(threshold, spec.factor_k)

    statistic = plugin.compute_statistic(received, pilot)
    return TrialOutcome(decide(statistic, threshold.lam), threshold.lam, statistic.value)


def run_trial(condition: TrialCondition, hypothesis: Hypothesis, trial_index: int,
              registry: Optional[DetectorRegistry] = None) -> Decision:
    """运行单次试验并返回判决"""
    registry = registry or get_detector_registry()
    return _simulate_trial(condition, hypothesis, trial_index, registry).decision


def _analytic_values(condition: TrialCondition,
                     registry: DetectorRegistry) -> Tuple[Optional[float], Optional[float], bool]:
    """理论门限条件下的解析 (P_d, P_f)；静默期门限是随机的，不给出解析值"""
    spec = condition.threshold_spec
    if not spec.method.is_theoretical:
        return None, None, False

    plugin = registry.get(condition.detector)
    context = condition.sensing_context()
    threshold = apply_factor(plugin.estimate_threshold(spec, context, None, None), spec.factor_k)
    point = plugin.analytic_point(threshold.lam, context)
    if point is None:
        return None, None, False
    return point.pd, point.pf, point.low_n_caveat


def run_condition(condition: TrialCondition,
                  registry: Optional[DetectorRegistry] = None) -> SweepResult:
    """对一个条件运行 N_t 次H1试验和 N_t 次H0试验"""
    registry = registry or get_detector_registry()
    monitor = PerformanceMonitor()
    monitor.start_condition()

    nd = nf = 0
    thresholds: List[float] = []
    for trial_index in range(condition.trials_nt):
        outcome = _simulate_trial(condition, Hypothesis.H1, trial_index, registry)
        thresholds.append(outcome.threshold)
        if outcome.decision is Decision.PU_PRESENT:
            nd += 1
    for trial_index in range(condition.trials_nt):
        outcome = _simulate_trial(condition, Hypothesis.H0, trial_index, registry)
        thresholds.append(outcome.threshold)
        if outcome.decision is Decision.PU_PRESENT:
            nf += 1

    counts = TrialCounts(nt=condition.trials_nt, nd=nd, nf=nf)
    pd_analytic, pf_analytic, caveat = _analytic_values(condition, registry)
    if caveat:
        get_error_reporter().report_warning(
            f"N={condition.n_samples} 小于中心极限定理近似所需的采样数，解析值仅供参考",
            key="n_samples",
        )

    wall_time_ms = monitor.end_condition(2 * condition.trials_nt)
    result = SweepResult(
        condition=condition,
        counts=counts,
        pd=counts.pd,
        pf=counts.pf,
        pd_analytic=pd_analytic,
        pf_analytic=pf_analytic,
        mean_threshold=math.fsum(thresholds) / len(thresholds),
        wall_time_ms=wall_time_ms,
        low_n_caveat=caveat,
    )
    logger.debug(
        "条件 %016x 完成: detector=%s snr=%s N=%d k=%s pd=%.4f pf=%.4f (%.1f ms)",
        condition.fingerprint, condition.detector.value, condition.snr_db,
        condition.n_samples, condition.threshold_spec.factor_k,
        result.pd, result.pf, wall_time_ms,
    )
    return result


def run_sweep(grid: Sequence[TrialCondition], workers: int = 1,
              registry: Optional[DetectorRegistry] = None,
              monitor: Optional[PerformanceMonitor] = None) -> List[SweepResult]:
    """
    逐条件运行扫描，保持输入顺序

    workers > 1 时条件在线程池中并发执行；每个条件的结果只取决于
    条件本身和种子，与线程数无关。
    """
    check_argument(len(grid) > 0, "扫描网格不能为空", key="grid")
    check_argument(workers >= 1, "线程数必须至少为1", key="workers")
    registry = registry or get_detector_registry()

    if workers == 1:
        results = [run_condition(condition, registry) for condition in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(lambda c: run_condition(c, registry), grid))

    if monitor is not None:
        for result in results:
            monitor.record(result.wall_time_ms, 2 * result.condition.trials_nt)

    logger.info("扫描完成: %d 个条件, 线程数 %d", len(results), workers)
    return results


def best_sample_count(results: Sequence[SweepResult], snr_db: Optional[float] = None) -> int:
    """P_d最大的采样数N，P_d相同时取较小的N"""
    candidates = [
        r for r in results
        if snr_db is None or math.isclose(r.condition.snr_db, snr_db, abs_tol=1e-12)
    ]
    if not candidates:
        raise ArgumentError("没有可用于选择采样数的结果", key="results")

    best = min(candidates, key=lambda r: (-r.pd, r.condition.n_samples))
    return best.condition.n_samples
