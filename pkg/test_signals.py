#!/usr/bin/env python3
"""
specsense信号模块测试
"""

import math
import unittest

import numpy as np

from specsense.errors import ArgumentError
from specsense.signals import (ChannelParams, SampleFrame, SignalMode, add_awgn, apply_channel,
                               generate_noise_frame, generate_pilot, generate_qpsk_frame,
                               noise_variance_from_snr, signal_energy, signal_power,
                               snr_linear)


class TestSampleFrame(unittest.TestCase):
    """测试采样帧"""

    def test_real_mode_has_zero_imaginary(self):
        """Real模式帧没有虚部"""
        frame = SampleFrame(np.array([1.0, -2.0, 3.5]), SignalMode.REAL)
        self.assertEqual(frame.samples.dtype, np.float64)
        self.assertEqual(frame.n, 3)

    def test_real_mode_rejects_imaginary(self):
        """Real模式拒绝非零虚部"""
        with self.assertRaises(ArgumentError):
            SampleFrame(np.array([1 + 1j]), SignalMode.REAL)

    def test_empty_and_non_finite_rejected(self):
        """空帧与NaN/Inf被拒绝"""
        with self.assertRaises(ArgumentError):
            SampleFrame(np.array([]), SignalMode.COMPLEX)
        with self.assertRaises(ArgumentError):
            SampleFrame(np.array([1.0, np.nan]), SignalMode.REAL)
        with self.assertRaises(ArgumentError):
            SampleFrame(np.array([np.inf + 0j]), SignalMode.COMPLEX)

    def test_samples_read_only(self):
        """帧数据不可修改"""
        frame = SampleFrame.from_values([1.0, 2.0])
        with self.assertRaises(ValueError):
            frame.samples[0] = 5.0

    def test_from_values_infers_mode(self):
        """根据数据类型推断模式"""
        self.assertIs(SampleFrame.from_values([1.0, 2.0]).mode, SignalMode.REAL)
        self.assertIs(SampleFrame.from_values([1j, 2.0]).mode, SignalMode.COMPLEX)


class TestQpsk(unittest.TestCase):
    """测试QPSK生成"""

    def test_unit_modulus(self):
        """每个采样模为1"""
        frame = generate_qpsk_frame(4, 1, np.random.default_rng(1))
        self.assertEqual(frame.n, 4)
        np.testing.assert_allclose(np.abs(frame.samples) ** 2, 1.0, rtol=0, atol=1e-15)

    def test_constellation(self):
        """符号取自 (±1±i)/√2"""
        frame = generate_qpsk_frame(200, 1, np.random.default_rng(2))
        scaled = frame.samples * math.sqrt(2.0)
        np.testing.assert_allclose(np.abs(scaled.real), 1.0, atol=1e-15)
        np.testing.assert_allclose(np.abs(scaled.imag), 1.0, atol=1e-15)
        self.assertEqual(len(set(np.round(scaled, 6))), 4)

    def test_rectangular_hold(self):
        """每个符号保持L个采样"""
        frame = generate_qpsk_frame(3, 2, np.random.default_rng(3))
        self.assertEqual(frame.n, 6)
        s = frame.samples
        self.assertEqual(s[0], s[1])
        self.assertEqual(s[2], s[3])
        self.assertEqual(s[4], s[5])

    def test_power_is_one(self):
        """平均采样功率为1"""
        frame = generate_qpsk_frame(500, 1, np.random.default_rng(4))
        self.assertAlmostEqual(signal_power(frame), 1.0, places=12)

    def test_real_mode_is_bpsk(self):
        """Real模式为等功率±1符号"""
        frame = generate_qpsk_frame(100, 2, np.random.default_rng(5), SignalMode.REAL)
        self.assertIs(frame.mode, SignalMode.REAL)
        self.assertTrue(np.all(np.abs(frame.samples) == 1.0))
        self.assertEqual(signal_power(frame), 1.0)

    def test_zero_arguments_rejected(self):
        """符号数或过采样因子为0时报错"""
        rng = np.random.default_rng(6)
        with self.assertRaises(ArgumentError):
            generate_qpsk_frame(0, 1, rng)
        with self.assertRaises(ArgumentError):
            generate_qpsk_frame(1, 0, rng)


class TestPilotAndPower(unittest.TestCase):
    """测试导频与功率"""

    def test_pilot_is_copy(self):
        """导频与PU帧逐元素相等"""
        frame = generate_qpsk_frame(16, 2, np.random.default_rng(7))
        pilot = generate_pilot(frame)
        np.testing.assert_array_equal(pilot.samples, frame.samples)
        self.assertAlmostEqual(signal_energy(pilot), 32.0, places=10)

    def test_energy_and_power(self):
        """能量与功率"""
        zero = SampleFrame(np.zeros(5), SignalMode.REAL)
        self.assertEqual(signal_energy(zero), 0.0)
        self.assertEqual(signal_power(zero), 0.0)

        frame = SampleFrame(np.array([1, 1j, -1]), SignalMode.COMPLEX)
        self.assertEqual(signal_energy(frame), 3.0)
        self.assertEqual(signal_power(frame), 1.0)

    def test_energy_power_consistency(self):
        """E = N·P"""
        rng = np.random.default_rng(8)
        for n in (1, 7, 64, 1001):
            frame = generate_noise_frame(n, 2.5, SignalMode.COMPLEX, rng)
            self.assertTrue(math.isclose(signal_energy(frame), n * signal_power(frame),
                                         rel_tol=1e-15))


class TestNoise(unittest.TestCase):
    """测试噪声与AWGN信道"""

    def test_noise_variance_from_snr(self):
        """δ_w² = P / 10^(SNR/10)"""
        self.assertEqual(noise_variance_from_snr(1.0, 0.0), 1.0)
        self.assertAlmostEqual(noise_variance_from_snr(1.0, 10.0), 0.1, places=15)
        self.assertAlmostEqual(noise_variance_from_snr(2.0, -3.0103), 4.0, delta=1e-4)
        with self.assertRaises(ArgumentError):
            noise_variance_from_snr(0.0, 0.0)

    def test_extreme_snr_rejected(self):
        """超出浮点范围或使噪声方差下溢的SNR报错"""
        for snr_db in (4000.0, -4000.0, 3100.0, float('inf')):
            with self.subTest(snr_db=snr_db):
                with self.assertRaises(ArgumentError) as ctx:
                    noise_variance_from_snr(1.0, snr_db)
                self.assertEqual(ctx.exception.key, "snr_db")
        self.assertAlmostEqual(snr_linear(-300.0), 1e-30, delta=1e-42)
        self.assertAlmostEqual(noise_variance_from_snr(1.0, 300.0), 1e-30, delta=1e-42)

    def test_complex_noise_statistics(self):
        """N=10⁵ 的复噪声均值与功率"""
        frame = generate_noise_frame(100_000, 1.0, SignalMode.COMPLEX, np.random.default_rng(9))
        self.assertLess(abs(np.mean(frame.samples)), 0.02)
        self.assertAlmostEqual(signal_power(frame), 1.0, delta=0.02)

    def test_real_noise_statistics(self):
        """Real模式噪声方差"""
        frame = generate_noise_frame(100_000, 1.0, SignalMode.REAL, np.random.default_rng(10))
        self.assertIs(frame.mode, SignalMode.REAL)
        self.assertLess(abs(np.mean(frame.samples)), 0.02)
        self.assertAlmostEqual(signal_power(frame), 1.0, delta=0.02)

    def test_noise_energy_bounds(self):
        """噪声帧能量位于 [0.98N, 1.02N]"""
        n = 100_000
        frame = generate_noise_frame(n, 1.0, SignalMode.COMPLEX, np.random.default_rng(11))
        self.assertTrue(0.98 * n <= signal_energy(frame) <= 1.02 * n)

    def test_noise_is_white(self):
        """加性噪声的lag-1自相关很小"""
        zero = SampleFrame(np.zeros(100_000, dtype=complex), SignalMode.COMPLEX)
        noisy = add_awgn(zero, 1.0, np.random.default_rng(12))
        w = noisy.samples
        ratio = abs(np.vdot(w[:-1], w[1:])) / np.vdot(w, w).real
        self.assertLess(ratio, 0.02)

    def test_deterministic(self):
        """相同种子得到相同噪声"""
        a = generate_noise_frame(50, 1.0, SignalMode.COMPLEX, np.random.default_rng(13))
        b = generate_noise_frame(50, 1.0, SignalMode.COMPLEX, np.random.default_rng(13))
        np.testing.assert_array_equal(a.samples, b.samples)
        self.assertEqual(generate_noise_frame(1, 3.0, SignalMode.REAL,
                                              np.random.default_rng(0)).n, 1)

    def test_add_awgn_matches_noise_frame(self):
        """add_awgn 与 generate_noise_frame 使用同一随机流"""
        zero = SampleFrame(np.zeros(64), SignalMode.REAL)
        noisy = add_awgn(zero, 0.5, np.random.default_rng(14))
        noise = generate_noise_frame(64, 0.5, SignalMode.REAL, np.random.default_rng(14))
        np.testing.assert_array_equal(noisy.samples, noise.samples)

        frame = generate_qpsk_frame(32, 2, np.random.default_rng(15))
        noisy = add_awgn(frame, 0.5, np.random.default_rng(16))
        noise = generate_noise_frame(64, 0.5, SignalMode.COMPLEX, np.random.default_rng(16))
        np.testing.assert_allclose(noisy.samples - frame.samples, noise.samples, rtol=0, atol=1e-14)

    def test_mode_preserved(self):
        """Real输入得到Real输出"""
        frame = SampleFrame(np.ones(8), SignalMode.REAL)
        noisy = add_awgn(frame, 1.0, np.random.default_rng(17))
        self.assertIs(noisy.mode, SignalMode.REAL)
        self.assertFalse(np.iscomplexobj(noisy.samples))

    def test_channel_params(self):
        """信道参数校验与信道增益"""
        params = ChannelParams.from_snr(1.0, 10.0)
        self.assertAlmostEqual(params.noise_variance, 0.1)
        self.assertEqual(params.channel_gain_h, 1.0)
        with self.assertRaises(ArgumentError):
            ChannelParams(snr_db=0.0, noise_variance=0.0)
        with self.assertRaises(ArgumentError):
            ChannelParams(snr_db=0.0, noise_variance=1.0, channel_gain_h=0.0)

        frame = SampleFrame(np.ones(4), SignalMode.REAL)
        params = ChannelParams(snr_db=0.0, noise_variance=1e-300, channel_gain_h=2.0)
        received = apply_channel(frame, params, np.random.default_rng(18))
        np.testing.assert_allclose(received.samples, 2.0)


if __name__ == "__main__":
    unittest.main(verbosity=2)
