#!/usr/bin/env python3
"""
specsense蒙特卡洛引擎测试
"""

import random
import unittest
from fractions import Fraction

from specsense.detectors import Decision, DetectorKind
from specsense.errors import ArgumentError
from specsense.monitor import PerformanceMonitor
from specsense.montecarlo import (Hypothesis, SweepResult, TrialCondition, TrialCounts,
                                  best_sample_count, run_condition, run_sweep, run_trial,
                                  trial_rng)
from specsense.signals import SignalMode
from specsense.threshold import ThresholdMethod, ThresholdSpec, energy_threshold_theoretical

QUIET = ThresholdSpec(ThresholdMethod.QUIET_TIME)
MARGIN = ThresholdSpec(ThresholdMethod.FIXED_MARGIN)


def energy_theoretical(pf=0.1, k=1.0):
    return ThresholdSpec(ThresholdMethod.THEORETICAL_ENERGY, target_pf=pf, factor_k=k)


def mf_theoretical(pf=0.1, k=1.0):
    return ThresholdSpec(ThresholdMethod.THEORETICAL_MATCHED_FILTER, target_pf=pf, factor_k=k)


class TestTrialCondition(unittest.TestCase):
    """测试仿真条件"""

    def test_derived_parameters(self):
        """噪声方差与导频能量"""
        condition = TrialCondition(DetectorKind.ENERGY, 10.0, 500, QUIET, master_seed=1)
        self.assertAlmostEqual(condition.noise_variance, 0.1, places=15)
        self.assertAlmostEqual(condition.gamma, 10.0, places=12)
        self.assertEqual(condition.pilot_energy, 500.0)

    def test_invalid_conditions(self):
        """非法条件报错"""
        with self.assertRaises(ArgumentError):
            TrialCondition(DetectorKind.ENERGY, 0.0, 0, QUIET)
        with self.assertRaises(ArgumentError):
            TrialCondition(DetectorKind.ENERGY, 0.0, 10, QUIET, trials_nt=0)
        with self.assertRaises(ArgumentError):
            TrialCondition(DetectorKind.ENERGY, float('nan'), 10, QUIET)
        with self.assertRaises(ArgumentError):
            TrialCondition(DetectorKind.ENERGY, 0.0, 10, QUIET, master_seed=-1)
        for snr_db in (4000.0, -4000.0):
            with self.assertRaises(ArgumentError) as ctx:
                TrialCondition(DetectorKind.ENERGY, snr_db, 10, QUIET)
            self.assertEqual(ctx.exception.key, "snr_db")

    def test_fingerprint_ignores_factor(self):
        """指纹不包含门限因子，但包含SNR等字段"""
        base = TrialCondition(DetectorKind.MATCHED_FILTER, -4.0, 100, QUIET, master_seed=3)
        scaled = TrialCondition(DetectorKind.MATCHED_FILTER, -4.0, 100, QUIET.with_factor(3.0),
                                master_seed=3)
        other = TrialCondition(DetectorKind.MATCHED_FILTER, -2.0, 100, QUIET, master_seed=3)
        self.assertEqual(base.fingerprint, scaled.fingerprint)
        self.assertNotEqual(base.fingerprint, other.fingerprint)

    def test_trial_streams_are_independent(self):
        """不同假设与试验序号得到不同随机流"""
        condition = TrialCondition(DetectorKind.ENERGY, 0.0, 10, QUIET, master_seed=5)
        draws = {
            float(trial_rng(condition, hypothesis, index).standard_normal())
            for hypothesis in Hypothesis for index in range(5)
        }
        self.assertEqual(len(draws), 10)
        again = float(trial_rng(condition, Hypothesis.H1, 2).standard_normal())
        self.assertIn(again, draws)


class TestTrialCounts(unittest.TestCase):
    """测试计数"""

    def test_fractions(self):
        """P_d = N_d/N_t, P_f = N_f/N_t"""
        counts = TrialCounts(nt=8, nd=6, nf=1)
        self.assertEqual(counts.pd, 0.75)
        self.assertEqual(counts.pf, 0.125)
        self.assertEqual(counts.as_fractions(), (Fraction(3, 4), Fraction(1, 8)))

    def test_out_of_range(self):
        """计数超出范围报错"""
        with self.assertRaises(ArgumentError):
            TrialCounts(nt=5, nd=6)
        with self.assertRaises(ArgumentError):
            TrialCounts(nt=0)


class TestRunTrial(unittest.TestCase):
    """测试单次试验"""

    def test_high_snr_matched_filter(self):
        """SNR=+20 dB 匹配滤波几乎总能检测到"""
        condition = TrialCondition(DetectorKind.MATCHED_FILTER, 20.0, 1000, QUIET,
                                   master_seed=11)
        present = sum(
            run_trial(condition, Hypothesis.H1, i) is Decision.PU_PRESENT
            for i in range(condition.trials_nt)
        )
        self.assertGreaterEqual(present / condition.trials_nt, 0.99)

    def test_sentinel_threshold(self):
        """门限极大时H0总判为不存在"""
        for detector in (DetectorKind.ENERGY, DetectorKind.MATCHED_FILTER):
            condition = TrialCondition(detector, 0.0, 64, QUIET.with_factor(1e12),
                                       trials_nt=50, master_seed=12)
            for i in range(condition.trials_nt):
                self.assertIs(run_trial(condition, Hypothesis.H0, i), Decision.PU_ABSENT)

    def test_deterministic(self):
        """相同参数重复运行得到相同判决"""
        for detector, spec in ((DetectorKind.ENERGY, QUIET),
                               (DetectorKind.MATCHED_FILTER, QUIET),
                               (DetectorKind.AUTOCORRELATION, MARGIN)):
            condition = TrialCondition(detector, -6.0, 128, spec, trials_nt=10, master_seed=13)
            for i in range(10):
                self.assertIs(run_trial(condition, Hypothesis.H1, i),
                              run_trial(condition, Hypothesis.H1, i))

    def test_index_out_of_range(self):
        """试验序号超出 [0, N_t) 报错"""
        condition = TrialCondition(DetectorKind.ENERGY, 0.0, 16, QUIET, trials_nt=5)
        with self.assertRaises(ArgumentError):
            run_trial(condition, Hypothesis.H0, 5)
        with self.assertRaises(ArgumentError):
            run_trial(condition, Hypothesis.H0, -1)


class TestRunCondition(unittest.TestCase):
    """测试单条件统计"""

    def test_energy_theoretical_real(self):
        """能量检测 SNR=+10 dB, 理论门限 P_f=0.1"""
        condition = TrialCondition(DetectorKind.ENERGY, 10.0, 1000, energy_theoretical(),
                                   mode=SignalMode.REAL, trials_nt=1000, master_seed=21)
        result = run_condition(condition)
        self.assertGreaterEqual(result.pd, 0.97)
        self.assertTrue(0.07 <= result.pf <= 0.13, result.pf)
        self.assertIsNotNone(result.pd_analytic)
        self.assertAlmostEqual(result.pf_analytic, 0.1, places=9)
        expected = energy_threshold_theoretical(0.1, 1000, condition.noise_variance).lam
        self.assertAlmostEqual(result.mean_threshold, expected, places=9)

    def test_low_snr_indistinguishable(self):
        """SNR=-25 dB, N=10 时 P_d 与 P_f 接近"""
        condition = TrialCondition(DetectorKind.MATCHED_FILTER, -25.0, 10, mf_theoretical(),
                                   mode=SignalMode.REAL, trials_nt=1000, master_seed=22)
        result = run_condition(condition)
        self.assertLess(result.pd - result.pf, 0.15)

    def test_quiet_time_has_no_analytic(self):
        """静默期门限与自相关检测不给出解析值"""
        for detector, spec in ((DetectorKind.ENERGY, QUIET),
                               (DetectorKind.AUTOCORRELATION, MARGIN)):
            condition = TrialCondition(detector, 0.0, 100, spec, trials_nt=20, master_seed=23)
            result = run_condition(condition)
            self.assertIsNone(result.pd_analytic)
            self.assertIsNone(result.pf_analytic)
            self.assertTrue(0.0 <= result.pd <= 1.0 and 0.0 <= result.pf <= 1.0)

    def test_low_n_caveat(self):
        """能量检测小N时标记解析近似不足"""
        condition = TrialCondition(DetectorKind.ENERGY, 0.0, 50, energy_theoretical(),
                                   trials_nt=10, master_seed=24)
        self.assertTrue(run_condition(condition).low_n_caveat)

    def test_repeatable(self):
        """相同条件重复运行结果一致"""
        condition = TrialCondition(DetectorKind.MATCHED_FILTER, -10.0, 200, QUIET,
                                   trials_nt=50, master_seed=25)
        first, second = run_condition(condition), run_condition(condition)
        self.assertEqual(first.counts, second.counts)
        self.assertEqual(first.mean_threshold, second.mean_threshold)


class TestRunSweep(unittest.TestCase):
    """测试扫描"""

    def make_grid(self):
        grid = []
        for detector, spec in ((DetectorKind.ENERGY, QUIET),
                               (DetectorKind.MATCHED_FILTER, QUIET),
                               (DetectorKind.AUTOCORRELATION, MARGIN)):
            for snr in (-10.0, 0.0, 6.0):
                grid.append(TrialCondition(detector, snr, 64, spec, trials_nt=30,
                                           master_seed=31))
        return grid

    @staticmethod
    def signature(result: SweepResult):
        return (result.condition, result.counts, result.mean_threshold,
                result.pd_analytic, result.pf_analytic)

    def test_order_independent(self):
        """打乱网格顺序后逐条件结果不变"""
        grid = self.make_grid()
        ordered = {r.condition: self.signature(r) for r in run_sweep(grid)}
        shuffled = list(grid)
        random.Random(7).shuffle(shuffled)
        results = run_sweep(shuffled)
        self.assertEqual([r.condition for r in results], shuffled)
        for result in results:
            self.assertEqual(self.signature(result), ordered[result.condition])

    def test_thread_count_independent(self):
        """线程数不影响结果"""
        grid = self.make_grid()
        single = [self.signature(r) for r in run_sweep(grid, workers=1)]
        threaded = [self.signature(r) for r in run_sweep(grid, workers=4)]
        self.assertEqual(single, threaded)

    def test_monotone_in_factor(self):
        """固定种子下 N_d、N_f 随k不增"""
        for snr in (-20.0, -12.0, -6.0, 0.0):
            grid = [TrialCondition(DetectorKind.MATCHED_FILTER, snr, 200, QUIET.with_factor(k),
                                   trials_nt=100, master_seed=32)
                    for k in (1.0, 2.0, 3.0, 4.0)]
            results = run_sweep(grid)
            nds = [r.counts.nd for r in results]
            nfs = [r.counts.nf for r in results]
            self.assertEqual(nds, sorted(nds, reverse=True))
            self.assertEqual(nfs, sorted(nfs, reverse=True))

    def test_monitor_records(self):
        """监控器记录条件数与试验数"""
        monitor = PerformanceMonitor()
        grid = self.make_grid()[:2]
        run_sweep(grid, monitor=monitor)
        metrics = monitor.get_metrics()
        self.assertEqual(metrics.conditions_run, 2)
        self.assertEqual(metrics.trials_run, 2 * 2 * 30)

    def test_invalid_arguments(self):
        """空网格或非法线程数报错"""
        with self.assertRaises(ArgumentError):
            run_sweep([])
        with self.assertRaises(ArgumentError):
            run_sweep(self.make_grid(), workers=0)


class TestBestSampleCount(unittest.TestCase):
    """测试最佳采样数选择"""

    @staticmethod
    def fake_result(n, snr, nd):
        condition = TrialCondition(DetectorKind.MATCHED_FILTER, snr, n, QUIET, trials_nt=10)
        counts = TrialCounts(nt=10, nd=nd, nf=0)
        return SweepResult(condition, counts, counts.pd, counts.pf, None, None, 0.0)

    def test_selects_highest_pd(self):
        """取P_d最大者，相同时取较小的N"""
        results = [self.fake_result(100, -4.0, 6), self.fake_result(200, -4.0, 9),
                   self.fake_result(300, -4.0, 9), self.fake_result(400, 0.0, 10)]
        self.assertEqual(best_sample_count(results, snr_db=-4.0), 200)
        self.assertEqual(best_sample_count(results), 400)

    def test_no_candidates(self):
        """没有匹配的结果时报错"""
        with self.assertRaises(ArgumentError):
            best_sample_count([self.fake_result(100, -4.0, 1)], snr_db=10.0)


if __name__ == "__main__":
    unittest.main(verbosity=2)
