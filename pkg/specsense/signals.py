#!/usr/bin/env python3
"""
specsense信号模块
生成主用户(PU)波形、计算信号功率/能量，并按目标SNR施加AWGN信道
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union

import numpy as np

from .errors import ArgumentError, check_argument


class SignalMode(Enum):
    """采样模式"""
    REAL = "real"
    COMPLEX = "complex"


@dataclass(frozen=True)
class SampleFrame:
    """
    有限长度的基带采样帧 y(n) / s(n) / w(n) / x_p(n)

    Real模式存储float64数组，Complex模式存储complex128数组；
    数组在构造后设为只读。
    """

    samples: np.ndarray
    mode: SignalMode = SignalMode.COMPLEX

    def __post_init__(self):
        dtype = np.float64 if self.mode is SignalMode.REAL else np.complex128
        values = np.asarray(self.samples)
        if self.mode is SignalMode.REAL and np.iscomplexobj(values):
            # Real模式下虚部必须恰好为0
            if np.any(values.imag != 0):
                raise ArgumentError("Real模式的帧不允许非零虚部", key="samples")
            values = values.real
        values = np.array(values, dtype=dtype, copy=True).reshape(-1)

        if values.size < 1:
            raise ArgumentError("采样帧长度必须至少为1", key="samples")
        if not np.all(np.isfinite(values)):
            raise ArgumentError("采样帧包含NaN或Inf", key="samples")

        values.setflags(write=False)
        object.__setattr__(self, "samples", values)

    @classmethod
    def from_values(cls, values: Union[Iterable[complex], np.ndarray],
                    mode: Optional[SignalMode] = None) -> "SampleFrame":
        """由任意序列构造帧，未指定模式时根据数据类型推断"""
        array = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
        if mode is None:
            mode = SignalMode.COMPLEX if np.iscomplexobj(array) else SignalMode.REAL
        return cls(array, mode)

    @property
    def n(self) -> int:
        """采样数N"""
        return int(self.samples.size)

    def __len__(self) -> int:
        return self.n

    def scaled(self, factor: float) -> "SampleFrame":
        """返回 c·F"""
        return SampleFrame(self.samples * factor, self.mode)

    def truncated(self, n: int) -> "SampleFrame":
        """保留前n个采样"""
        check_argument(1 <= n <= self.n, f"截断长度 {n} 超出范围 [1, {self.n}]", key="n")
        return SampleFrame(self.samples[:n], self.mode)


@dataclass(frozen=True)
class ChannelParams:
    """AWGN信道参数：SNR(dB)、信道增益h、噪声方差δ_w²"""

    snr_db: float
    noise_variance: float
    channel_gain_h: float = 1.0

    def __post_init__(self):
        check_argument(self.noise_variance > 0, "噪声方差必须为正", key="noise_variance")
        check_argument(self.channel_gain_h > 0, "信道增益必须为正", key="channel_gain_h")

    @classmethod
    def from_snr(cls, signal_power: float, snr_db: float,
                 channel_gain_h: float = 1.0) -> "ChannelParams":
        """根据信号功率和目标SNR构造信道参数"""
        return cls(
            snr_db=snr_db,
            noise_variance=noise_variance_from_snr(signal_power, snr_db),
            channel_gain_h=channel_gain_h,
        )


# QPSK星座点幅度 1/√2，保证每个复采样的功率为1
_QPSK_AMPLITUDE = math.sqrt(0.5)


def generate_qpsk_frame(n_symbols: int, oversample_factor: int, rng: np.random.Generator,
                        mode: SignalMode = SignalMode.COMPLEX) -> SampleFrame:
    """
    生成矩形保持的QPSK帧

    Complex模式每个符号从 {(±1±i)/√2} 中均匀抽取；Real模式用等功率的 ±1 符号代替。
    每个符号连续保持 oversample_factor 个采样，帧长 N = n_symbols × oversample_factor。
    """
    check_argument(n_symbols >= 1, "符号数必须至少为1", key="n_symbols")
    check_argument(oversample_factor >= 1, "过采样因子必须至少为1", key="oversample_factor")

    if mode is SignalMode.REAL:
        bits = rng.integers(0, 2, size=n_symbols)
        symbols = 2.0 * bits - 1.0
    else:
        bits = rng.integers(0, 2, size=(n_symbols, 2))
        signs = 2.0 * bits - 1.0
        symbols = _QPSK_AMPLITUDE * (signs[:, 0] + 1j * signs[:, 1])

    return SampleFrame(np.repeat(symbols, oversample_factor), mode)


def generate_pilot(frame: SampleFrame) -> SampleFrame:
    """匹配滤波器使用的导频流 x_p：完全先验知识下即为干净PU帧的拷贝"""
    return SampleFrame(frame.samples, frame.mode)


def snr_linear(snr_db: float) -> float:
    """γ = 10^(snr_db/10)，溢出或下溢为0时报错"""
    check_argument(math.isfinite(snr_db), "SNR必须为有限值", key="snr_db")
    try:
        gamma = 10.0 ** (snr_db / 10.0)
    except OverflowError:
        raise ArgumentError(f"SNR {snr_db} dB 超出可表示范围", key="snr_db") from None
    check_argument(0.0 < gamma < math.inf, f"SNR {snr_db} dB 超出可表示范围", key="snr_db")
    return gamma


def noise_variance_from_snr(signal_power: float, snr_db: float) -> float:
    """δ_w² = signal_power / 10^(snr_db/10)"""
    check_argument(signal_power > 0, "信号功率必须为正", key="signal_power")
    variance = signal_power / snr_linear(snr_db)
    check_argument(0.0 < variance < math.inf, f"SNR {snr_db} dB 下噪声方差无法表示",
                   key="snr_db")
    return float(variance)


def generate_noise_frame(n: int, noise_variance: float, mode: SignalMode,
                         rng: np.random.Generator) -> SampleFrame:
    """
    生成纯噪声帧 w(n)

    Real模式每个采样方差为δ_w²；Complex模式为圆对称复高斯，
    总方差δ_w²（每个正交分量δ_w²/2）。
    """
    check_argument(n >= 1, "噪声帧长度必须至少为1", key="n")
    check_argument(noise_variance > 0, "噪声方差必须为正", key="noise_variance")

    if mode is SignalMode.REAL:
        noise = math.sqrt(noise_variance) * rng.standard_normal(n)
    else:
        quadrature = rng.standard_normal((2, n))
        noise = math.sqrt(noise_variance / 2.0) * (quadrature[0] + 1j * quadrature[1])

    return SampleFrame(noise, mode)


def add_awgn(frame: SampleFrame, noise_variance: float,
             rng: np.random.Generator) -> SampleFrame:
    """y(n) = x(n) + w(n)，噪声与 generate_noise_frame 使用同一随机流约定"""
    noise = generate_noise_frame(frame.n, noise_variance, frame.mode, rng)
    return SampleFrame(frame.samples + noise.samples, frame.mode)


def apply_channel(frame: SampleFrame, params: ChannelParams,
                  rng: np.random.Generator) -> SampleFrame:
    """H1 接收模型 y(n) = h·s(n) + w(n)"""
    if params.channel_gain_h != 1.0:
        frame = frame.scaled(params.channel_gain_h)
    return add_awgn(frame, params.noise_variance, rng)


def signal_energy(frame: SampleFrame) -> float:
    """E = Σ|x(n)|²"""
    return float(np.vdot(frame.samples, frame.samples).real)


def signal_power(frame: SampleFrame) -> float:
    """P = E / N"""
    return signal_energy(frame) / frame.n
