#!/usr/bin/env python3
"""
specsense命令行接口
运行频谱感知扫描实验并输出结果CSV和manifest
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

from .config import (ExperimentConfig, expand_grid, list_presets, load_config_file,
                     preset_config)
from .errors import (ConfigurationError, SensingError, get_error_reporter,
                     handle_sensing_error, reset_error_reporter)
from .monitor import PerformanceMonitor
from .montecarlo import SweepResult, run_sweep
from .plugins import get_detector_registry
from .report import write_manifest, write_results_csv

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

# 解析值与蒙特卡洛的允许偏差
DEFAULT_TOLERANCE = 0.03


@dataclass
class ExperimentReport:
    """一次实验运行的产物"""

    config: ExperimentConfig
    results: List[SweepResult]
    csv_path: Path
    manifest_path: Path
    monitor: PerformanceMonitor


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """展开网格、运行扫描、写出CSV与manifest"""
    grid = expand_grid(config)
    get_error_reporter().report_info(
        f"展开 {len(grid)} 个仿真条件，master_seed={config.master_seed}，线程数={config.workers}"
    )
    monitor = PerformanceMonitor()
    results = run_sweep(grid, workers=config.workers, monitor=monitor)

    csv_path = write_results_csv(results, config.output_path)
    manifest_path = write_manifest(config, results, str(csv_path))
    return ExperimentReport(config, results, csv_path, manifest_path, monitor)


def analytic_deviations(results: List[SweepResult]) -> List[float]:
    """各行 |pd − pd_analytic| 与 |pf − pf_analytic| 中的较大者；无解析值的行跳过"""
    deviations = []
    for result in results:
        if result.pd_analytic is None or result.pf_analytic is None:
            continue
        deviations.append(max(abs(result.pd - result.pd_analytic),
                              abs(result.pf - result.pf_analytic)))
    return deviations


def _load_config(args: argparse.Namespace) -> ExperimentConfig:
    reporter = get_error_reporter()
    if args.config:
        reporter.report_info(f"加载配置文件: {args.config}")
        config = load_config_file(args.config, seed=args.seed, trials=args.trials,
                                  output_path=args.out)
    else:
        reporter.report_info(f"使用预设: {args.preset}")
        config = preset_config(args.preset, seed=args.seed, trials=args.trials,
                               output_path=args.out)
    if getattr(args, 'workers', None):
        config.workers = args.workers
    return config


def _print_summary(report: ExperimentReport, verbose: bool):
    print(f"完成 {len(report.results)} 个仿真条件")
    print(f"结果已保存到: {report.csv_path}")
    print(f"manifest已保存到: {report.manifest_path}")
    if verbose:
        print(report.monitor.get_detailed_report())


def cmd_run(args: argparse.Namespace) -> int:
    """run 子命令"""
    reporter = get_error_reporter()
    try:
        config = _load_config(args)
    except ConfigurationError as e:
        handle_sensing_error(e, reporter, context="run")
        print(f"配置错误: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        report = run_experiment(config)
    except SensingError as e:
        handle_sensing_error(e, reporter, context="run")
        print(f"错误：{e}", file=sys.stderr)
        return EXIT_FAILURE

    _print_summary(report, args.verbose)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    """validate 子命令：Real模式理论门限下的解析值/蒙特卡洛一致性检查"""
    reporter = get_error_reporter()
    try:
        config = preset_config("validate-analytic", seed=args.seed, trials=args.trials,
                               output_path=args.out)
        if args.workers:
            config.workers = args.workers
        reporter.report_info(f"容差: {args.tolerance}")
        report = run_experiment(config)
    except ConfigurationError as e:
        handle_sensing_error(e, reporter, context="validate")
        print(f"配置错误: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except SensingError as e:
        handle_sensing_error(e, reporter, context="validate")
        print(f"错误：{e}", file=sys.stderr)
        return EXIT_FAILURE

    deviations = analytic_deviations(report.results)
    worst = max(deviations) if deviations else 0.0
    _print_summary(report, args.verbose)
    print(f"解析值与蒙特卡洛最大偏差: {worst:.4f} (容差 {args.tolerance})")
    if worst > args.tolerance:
        reporter.report_warning(f"最大偏差 {worst:.4f} 超出容差 {args.tolerance}")
        return EXIT_FAILURE
    return EXIT_OK


def cmd_presets(args: argparse.Namespace) -> int:
    """presets 子命令"""
    for preset in list_presets():
        print(f"{preset.name:<20} {preset.description}")
    return EXIT_OK


def cmd_detectors(args: argparse.Namespace) -> int:
    """detectors 子命令：三种检测器的定性比较"""
    labels = [
        ('complexity', "复杂度"),
        ('prior_knowledge', "先验知识"),
        ('strengths', "优点"),
        ('weaknesses', "缺点"),
    ]
    for info in get_detector_registry().list_plugins():
        print(f"{info['name']} - {info['description']}")
        for key, label in labels:
            if key in info:
                print(f"  {label}: {info[key]}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """构造命令行解析器"""
    parser = argparse.ArgumentParser(
        prog='specsense',
        description='认知无线电频谱感知仿真：能量检测、匹配滤波检测、自相关检测',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog='''
示例用法:
  specsense run --preset fig7 --out results/fig7.csv
  specsense run --config experiment.yaml --seed 7 --trials 2000
  specsense validate --workers 4
  specsense presets
  specsense detectors
        '''
    )
    parser.add_argument('--verbose', action='store_true', help='输出详细信息')
    parser.add_argument('--debug', action='store_true', help='调试日志')

    subparsers = parser.add_subparsers(dest='command', help='可用命令')

    # run命令
    run_parser = subparsers.add_parser('run', help='运行扫描实验')
    source = run_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--config', help='配置文件路径（YAML或JSON）')
    source.add_argument('--preset', help='预设名称')
    run_parser.add_argument('--seed', type=int, help='覆盖随机种子')
    run_parser.add_argument('--out', help='结果CSV路径')
    run_parser.add_argument('--trials', type=int, help='覆盖每个条件的试验次数N_t')
    run_parser.add_argument('--workers', type=int, help='并发线程数（不影响结果）')

    # validate命令
    validate_parser = subparsers.add_parser('validate', help='解析值与蒙特卡洛一致性检查')
    validate_parser.add_argument('--seed', type=int, help='覆盖随机种子')
    validate_parser.add_argument('--out', default='validate-analytic.csv', help='结果CSV路径')
    validate_parser.add_argument('--trials', type=int, help='覆盖试验次数N_t')
    validate_parser.add_argument('--workers', type=int, help='并发线程数')
    validate_parser.add_argument('--tolerance', type=float, default=DEFAULT_TOLERANCE,
                                 help='允许的最大偏差')

    subparsers.add_parser('presets', help='列出预设')
    subparsers.add_parser('detectors', help='比较三种检测器')

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_OK

    reporter = reset_error_reporter(debug_mode=args.debug, verbose=args.verbose)

    commands = {
        'run': cmd_run,
        'validate': cmd_validate,
        'presets': cmd_presets,
        'detectors': cmd_detectors,
    }
    try:
        code = commands[args.command](args)
    except Exception as e:
        if args.debug:
            raise
        handle_sensing_error(e, reporter, context=args.command)
        print(f"错误：{e}", file=sys.stderr)
        code = EXIT_FAILURE

    if args.verbose or reporter.has_errors():
        reporter.print_detailed_report()
    return code


if __name__ == "__main__":
    sys.exit(main())
