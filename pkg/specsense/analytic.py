#!/usr/bin/env python3
"""
specsense解析性能模块
Q函数及其反函数，能量检测与匹配滤波检测的解析 P_d / P_f
"""

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

from scipy import optimize, special

from .detectors import DetectorKind
from .errors import ArgumentError, check_argument
from .signals import SignalMode

# 中心极限定理近似成立所需的最小采样数
CLT_MIN_SAMPLES = 250

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class AnalyticPoint:
    """一组参数下的解析 (P_d, P_f)"""

    pd: float
    pf: float
    detector: DetectorKind
    lam: float
    n: int
    gamma: float
    noise_variance: float
    pilot_energy: Optional[float] = None
    low_n_caveat: bool = False

    def __post_init__(self):
        if not (0.0 <= self.pd <= 1.0 and 0.0 <= self.pf <= 1.0):
            raise ArgumentError("解析概率必须位于[0, 1]", key="pd/pf")


def q_function(x: float) -> float:
    """高斯尾概率 Q(x) = ½·erfc(x/√2)"""
    return float(0.5 * special.erfc(x / _SQRT2))


def q_inverse(p: float) -> float:
    """
    Q⁻¹(p)：在单调的Q上先用ndtri给出初值括区间，再用brentq细化

    返回值满足 |Q(x) - p| ≤ 1e-10。
    """
    check_argument(0.0 < p < 1.0, f"概率 {p} 必须位于 (0, 1)", key="p")
    if p == 0.5:
        return 0.0

    guess = -float(special.ndtri(p))
    lower, upper = guess - 1.0, guess + 1.0
    while q_function(lower) < p:
        lower -= 1.0
    while q_function(upper) > p:
        upper += 1.0

    return float(optimize.brentq(lambda x: q_function(x) - p, lower, upper,
                                 xtol=1e-15, maxiter=200))


def energy_pd_analytic(lam: float, n: int, gamma: float, noise_variance: float) -> float:
    """
    能量检测解析P_d

    以归一化门限 λ̂ = λ/δ_w² 计算：
    P_d = Q((λ̂ − N(1+γ)) / √(2N(1+γ)²))
    """
    check_argument(n >= 1, "采样数必须至少为1", key="n")
    check_argument(gamma >= 0, "SNR线性值不能为负", key="gamma")
    check_argument(noise_variance > 0, "噪声方差必须为正", key="noise_variance")

    lam_hat = lam / noise_variance
    spread = math.sqrt(2.0 * n) * (1.0 + gamma)
    return q_function((lam_hat - n * (1.0 + gamma)) / spread)


def energy_pf_analytic(lam: float, n: int, noise_variance: float) -> float:
    """P_f = Q((λ − N·δ_w²) / √(2N·δ_w⁴))"""
    check_argument(n >= 1, "采样数必须至少为1", key="n")
    check_argument(noise_variance > 0, "噪声方差必须为正", key="noise_variance")
    return q_function((lam - n * noise_variance) / (math.sqrt(2.0 * n) * noise_variance))


def mf_pd_analytic(lam: float, pilot_energy: float, noise_variance: float) -> float:
    """P_d = Q((λ − E) / √(E·δ_w²))"""
    check_argument(pilot_energy > 0, "导频能量必须为正", key="pilot_energy")
    check_argument(noise_variance > 0, "噪声方差必须为正", key="noise_variance")
    return q_function((lam - pilot_energy) / math.sqrt(pilot_energy * noise_variance))


def mf_pf_analytic(lam: float, pilot_energy: float, noise_variance: float) -> float:
    """P_f = Q(λ / √(E·δ_w²))"""
    check_argument(pilot_energy > 0, "导频能量必须为正", key="pilot_energy")
    check_argument(noise_variance > 0, "噪声方差必须为正", key="noise_variance")
    return q_function(lam / math.sqrt(pilot_energy * noise_variance))


def effective_parameters(kind: DetectorKind, mode: SignalMode, n: int,
                         noise_variance: float) -> Tuple[int, float]:
    """
    把Complex模式映射到实高斯推导所用的等效 (N, δ_w²)

    能量检测: N个复采样等价于2N个方差为δ_w²/2的实采样；
    匹配滤波: 取实部后的统计量方差为 E·δ_w²/2。
    """
    if mode is SignalMode.REAL:
        return n, noise_variance
    if kind is DetectorKind.ENERGY:
        return 2 * n, noise_variance / 2.0
    return n, noise_variance / 2.0


def analytic_point(kind: DetectorKind, lam: float, n: int, gamma: float,
                   noise_variance: float, pilot_energy: Optional[float] = None,
                   mode: SignalMode = SignalMode.REAL) -> Optional[AnalyticPoint]:
    """
    门限λ处的解析点；自相关检测没有闭式解，返回None

    Complex模式下λ与统计量同单位，内部换算为等效参数后计算。
    """
    if kind is DetectorKind.AUTOCORRELATION:
        return None

    n_eff, noise_eff = effective_parameters(kind, mode, n, noise_variance)
    if kind is DetectorKind.ENERGY:
        pd = energy_pd_analytic(lam, n_eff, gamma, noise_eff)
        pf = energy_pf_analytic(lam, n_eff, noise_eff)
        caveat = n < CLT_MIN_SAMPLES
    else:
        check_argument(pilot_energy is not None, "匹配滤波解析值需要导频能量", key="pilot_energy")
        pd = mf_pd_analytic(lam, pilot_energy, noise_eff)
        pf = mf_pf_analytic(lam, pilot_energy, noise_eff)
        # 匹配滤波统计量对任意N都是精确高斯
        caveat = False

    return AnalyticPoint(
        pd=pd, pf=pf, detector=kind, lam=lam, n=n, gamma=gamma,
        noise_variance=noise_variance, pilot_energy=pilot_energy, low_n_caveat=caveat,
    )


def roc_curve(kind: DetectorKind, pf_grid: Iterable[float], n: int, gamma: float,
              noise_variance: float, pilot_energy: Optional[float] = None,
              mode: SignalMode = SignalMode.REAL) -> List[AnalyticPoint]:
    """按目标P_f网格求理论门限，再给出对应P_d，得到解析ROC曲线"""
    # 延迟导入，threshold模块依赖本模块
    from .threshold import energy_threshold_theoretical, mf_threshold_theoretical

    check_argument(kind is not DetectorKind.AUTOCORRELATION,
                   "自相关检测没有解析ROC", key="kind")
    n_eff, noise_eff = effective_parameters(kind, mode, n, noise_variance)

    points = []
    for target_pf in sorted(pf_grid):
        if kind is DetectorKind.ENERGY:
            lam = energy_threshold_theoretical(target_pf, n_eff, noise_eff).lam
        else:
            check_argument(pilot_energy is not None, "匹配滤波ROC需要导频能量", key="pilot_energy")
            lam = mf_threshold_theoretical(target_pf, pilot_energy, noise_eff).lam
        points.append(analytic_point(kind, lam, n, gamma, noise_variance, pilot_energy, mode))
    return points
