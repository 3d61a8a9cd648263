#!/usr/bin/env python3
"""
specsense实验配置管理
提供配置文档解析、校验、预设以及扫描网格展开
"""

import json
import math
from dataclasses import dataclass, field, fields
from itertools import product
from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from .detectors import DetectorKind
from .errors import ConfigurationError, SensingError
from .montecarlo import DEFAULT_TRIALS, TrialCondition
from .signals import SignalMode
from .threshold import DEFAULT_MARGIN, ThresholdMethod, ThresholdSpec

THRESHOLD_METHODS = ("quiet-time", "theoretical")

# 预设使用的固定种子
DEFAULT_PRESET_SEED = 20190415

_UINT64_MAX = 2 ** 64 - 1
SNR_LIMIT_DB = 300.0


def _snr_range(start: int = -20, stop: int = 20, step: int = 2) -> List[float]:
    return [float(v) for v in range(start, stop + 1, step)]


@dataclass
class ExperimentConfig:
    """实验配置类"""

    master_seed: int
    detectors: List[DetectorKind] = field(default_factory=lambda: list(DetectorKind))
    snr_grid_db: List[float] = field(default_factory=_snr_range)
    n_grid: List[int] = field(default_factory=lambda: [1000])
    k_grid: List[float] = field(default_factory=lambda: [1.0, 2.0, 3.0, 4.0])
    threshold_method: str = "quiet-time"
    target_pf_grid: List[float] = field(default_factory=lambda: [0.1])
    quiet_windows_m: int = 1
    margin: float = DEFAULT_MARGIN
    trials_nt: int = DEFAULT_TRIALS
    oversample_factor: int = 2
    mode: SignalMode = SignalMode.COMPLEX
    output_path: str = "results.csv"
    workers: int = 1
    preset: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        """配置回显，可被 parse_config 原样读回"""
        data = {
            'master_seed': self.master_seed,
            'detectors': [kind.value for kind in self.detectors],
            'snr_grid_db': list(self.snr_grid_db),
            'n_grid': list(self.n_grid),
            'k_grid': list(self.k_grid),
            'threshold_method': self.threshold_method,
            'target_pf_grid': list(self.target_pf_grid),
            'quiet_windows_m': self.quiet_windows_m,
            'margin': self.margin,
            'trials_nt': self.trials_nt,
            'oversample_factor': self.oversample_factor,
            'mode': self.mode.value,
            'output_path': self.output_path,
            'workers': self.workers,
        }
        if self.preset:
            data['preset'] = self.preset
        return data


@dataclass(frozen=True)
class Preset:
    """预设实验"""

    name: str
    description: str
    overrides: Dict[str, Any]


PRESETS: Dict[str, Preset] = {
    preset.name: preset for preset in (
        Preset(
            name="fig5",
            description="三种检测器 P_d 随SNR变化（N=1000，k=1，静默期门限，自相关裕量0.5）",
            overrides={
                'detectors': ["energy", "matched_filter", "autocorrelation"],
                'n_grid': [1000],
                'k_grid': [1],
                'threshold_method': "quiet-time",
                'quiet_windows_m': 1,
                'margin': 0.5,
                'oversample_factor': 16,
            },
        ),
        Preset(
            name="fig6",
            description="匹配滤波 P_d 随采样数N变化（SNR ∈ {-20,-12,-4,0} dB）",
            overrides={
                'detectors': ["matched_filter"],
                'n_grid': list(range(100, 1001, 100)),
                'snr_grid_db': [-20, -12, -4, 0],
                'k_grid': [1],
                'threshold_method': "quiet-time",
                'quiet_windows_m': 1,
            },
        ),
        Preset(
            name="fig7",
            description="匹配滤波 P_d 随SNR变化，门限因子 k ∈ {1,2,3,4}",
            overrides={
                'detectors': ["matched_filter"],
                'n_grid': [1000],
                'k_grid': [1, 2, 3, 4],
                'threshold_method': "quiet-time",
                'quiet_windows_m': 1,
            },
        ),
        Preset(
            name="fig8",
            description="匹配滤波 P_f 随SNR变化，门限因子 k ∈ {1,2,3,4}",
            overrides={
                'detectors': ["matched_filter"],
                'n_grid': [1000],
                'k_grid': [1, 2, 3, 4],
                'threshold_method': "quiet-time",
                'quiet_windows_m': 1,
            },
        ),
        Preset(
            name="validate-analytic",
            description="Real模式理论门限下解析值与蒙特卡洛的一致性网格（N_t=10⁴）",
            overrides={
                'detectors': ["energy", "matched_filter"],
                'mode': "real",
                'threshold_method': "theoretical",
                'snr_grid_db': [-10, -5, 0, 5],
                'n_grid': [500, 1000],
                'target_pf_grid': [0.05, 0.1],
                'k_grid': [1],
                'trials_nt': 10000,
            },
        ),
        Preset(
            name="roc",
            description="SNR=-10 dB 下能量检测与匹配滤波的实测ROC点及解析ROC",
            overrides={
                'detectors': ["energy", "matched_filter"],
                'mode': "real",
                'threshold_method': "theoretical",
                'snr_grid_db': [-10],
                'n_grid': [1000],
                'target_pf_grid': [0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.9],
                'k_grid': [1],
            },
        ),
    )
}


def list_presets() -> List[Preset]:
    """列出所有预设，顺序固定"""
    return list(PRESETS.values())


def get_preset(name: str) -> Preset:
    """按名称获取预设"""
    if name not in PRESETS:
        raise ConfigurationError(
            f"未知预设 '{name}'，可用预设: {', '.join(PRESETS)}", key="preset"
        )
    return PRESETS[name]


def _require_list(data: Dict[str, Any], key: str) -> List[Any]:
    value = data[key]
    if not isinstance(value, (list, tuple)) or len(value) == 0:
        raise ConfigurationError("必须是非空列表", key=key)
    return list(value)


def _require_int(value: Any, key: str, minimum: int = 1) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ConfigurationError(f"必须是不小于 {minimum} 的整数", key=key)
    return value


def _require_real(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ConfigurationError("必须是有限实数", key=key)
    return float(value)


def _validate(data: Dict[str, Any]) -> ExperimentConfig:
    """校验配置字典并填充默认值"""
    known = {f.name for f in fields(ExperimentConfig)}
    for key in data:
        if key not in known:
            raise ConfigurationError("未知配置键", key=key)

    if data.get('master_seed') is None:
        raise ConfigurationError("缺少随机种子，必须显式给出", key="master_seed")
    seed = data['master_seed']
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed <= _UINT64_MAX:
        raise ConfigurationError("必须是64位无符号整数", key="master_seed")

    config = ExperimentConfig(master_seed=seed)

    if 'detectors' in data:
        detectors = []
        for name in _require_list(data, 'detectors'):
            try:
                detectors.append(DetectorKind(name))
            except ValueError:
                raise ConfigurationError(f"未知检测器 '{name}'", key="detectors") from None
        config.detectors = detectors

    if 'snr_grid_db' in data:
        snr_grid = [_require_real(v, 'snr_grid_db') for v in _require_list(data, 'snr_grid_db')]
        if any(abs(snr) > SNR_LIMIT_DB for snr in snr_grid):
            raise ConfigurationError(f"SNR必须位于 [-{SNR_LIMIT_DB:g}, {SNR_LIMIT_DB:g}] dB",
                                     key="snr_grid_db")
        config.snr_grid_db = snr_grid

    if 'n_grid' in data:
        config.n_grid = [_require_int(v, 'n_grid') for v in _require_list(data, 'n_grid')]

    if 'k_grid' in data:
        k_grid = [_require_real(v, 'k_grid') for v in _require_list(data, 'k_grid')]
        if any(k <= 0 for k in k_grid):
            raise ConfigurationError("门限因子必须为正", key="k_grid")
        config.k_grid = k_grid

    if 'threshold_method' in data:
        if data['threshold_method'] not in THRESHOLD_METHODS:
            raise ConfigurationError(
                f"必须是 {' / '.join(THRESHOLD_METHODS)} 之一", key="threshold_method"
            )
        config.threshold_method = data['threshold_method']

    if 'target_pf_grid' in data:
        pf_grid = [_require_real(v, 'target_pf_grid')
                   for v in _require_list(data, 'target_pf_grid')]
        if any(not 0.0 < pf < 1.0 for pf in pf_grid):
            raise ConfigurationError("目标P_f必须位于(0, 1)", key="target_pf_grid")
        config.target_pf_grid = pf_grid

    if 'quiet_windows_m' in data:
        config.quiet_windows_m = _require_int(data['quiet_windows_m'], 'quiet_windows_m')

    if 'margin' in data:
        margin = _require_real(data['margin'], 'margin')
        if not 0.0 < margin < 1.0:
            raise ConfigurationError("判决裕量必须位于(0, 1)", key="margin")
        config.margin = margin

    if 'trials_nt' in data:
        config.trials_nt = _require_int(data['trials_nt'], 'trials_nt')

    if 'oversample_factor' in data:
        config.oversample_factor = _require_int(data['oversample_factor'], 'oversample_factor')

    if 'mode' in data:
        try:
            config.mode = SignalMode(data['mode'])
        except ValueError:
            raise ConfigurationError("必须是 real 或 complex", key="mode") from None

    if 'output_path' in data:
        if not isinstance(data['output_path'], str) or not data['output_path']:
            raise ConfigurationError("必须是非空路径字符串", key="output_path")
        config.output_path = data['output_path']

    if 'workers' in data:
        config.workers = _require_int(data['workers'], 'workers')

    if data.get('preset') is not None:
        config.preset = get_preset(data['preset']).name

    return config


def config_from_dict(data: Dict[str, Any], seed: Optional[int] = None,
                     trials: Optional[int] = None,
                     output_path: Optional[str] = None) -> ExperimentConfig:
    """
    由配置字典构造实验配置

    字典中的 preset 键先展开为预设的默认值，其余键覆盖预设；
    seed / trials / output_path 参数（命令行覆盖）优先级最高。
    """
    merged: Dict[str, Any] = {}
    if data.get('preset') is not None:
        merged.update(get_preset(data['preset']).overrides)
        merged['master_seed'] = DEFAULT_PRESET_SEED
    merged.update(data)

    if seed is not None:
        merged['master_seed'] = seed
    if trials is not None:
        merged['trials_nt'] = trials
    if output_path is not None:
        merged['output_path'] = output_path

    return _validate(merged)


MANIFEST_TOOL = "specsense"


def unwrap_manifest(data: Dict[str, Any]) -> Dict[str, Any]:
    """运行manifest（tool为specsense且带config键）取出其中的配置回显，其余文档原样返回"""
    if data.get('tool') != MANIFEST_TOOL or 'config' not in data:
        return data
    config = data['config']
    if not isinstance(config, dict):
        raise ConfigurationError("manifest中的config必须是键值映射", key="config")
    return config


def parse_config(text: str, seed: Optional[int] = None, trials: Optional[int] = None,
                 output_path: Optional[str] = None) -> ExperimentConfig:
    """
    解析配置文档（YAML，兼容JSON）

    文档本身是一个字符串时视为预设名称。
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigurationError(f"无法解析配置文档: {e}", key="document") from e

    if data is None:
        data = {}
    elif isinstance(data, str):
        data = {'preset': data}
    elif not isinstance(data, dict):
        raise ConfigurationError("配置文档必须是键值映射或预设名称", key="document")
    else:
        data = unwrap_manifest(data)

    return config_from_dict(data, seed=seed, trials=trials, output_path=output_path)


def preset_config(name: str, seed: Optional[int] = None, trials: Optional[int] = None,
                  output_path: Optional[str] = None) -> ExperimentConfig:
    """按预设名称构造配置"""
    return config_from_dict({'preset': name}, seed=seed, trials=trials, output_path=output_path)


def build_threshold_spec(config: ExperimentConfig, detector: DetectorKind,
                         factor_k: float, target_pf: Optional[float]) -> ThresholdSpec:
    """把配置中的门限方法映射到具体检测器的门限规格"""
    if detector is DetectorKind.AUTOCORRELATION:
        return ThresholdSpec(ThresholdMethod.FIXED_MARGIN, factor_k=factor_k, margin=config.margin)
    if config.threshold_method == "quiet-time":
        return ThresholdSpec(ThresholdMethod.QUIET_TIME, factor_k=factor_k,
                             quiet_windows_m=config.quiet_windows_m)
    method = (ThresholdMethod.THEORETICAL_ENERGY if detector is DetectorKind.ENERGY
              else ThresholdMethod.THEORETICAL_MATCHED_FILTER)
    return ThresholdSpec(method, factor_k=factor_k, target_pf=target_pf)


def expand_grid(config: ExperimentConfig) -> List[TrialCondition]:
    """展开扫描网格：检测器 × N × 目标P_f × k × SNR"""
    conditions = []
    for detector, n, target_pf, k, snr in product(
        config.detectors, config.n_grid, config.target_pf_grid, config.k_grid, config.snr_grid_db
    ):
        uses_pf = detector is not DetectorKind.AUTOCORRELATION and config.threshold_method == "theoretical"
        if not uses_pf and target_pf != config.target_pf_grid[0]:
            # 目标P_f只对理论门限有意义，其余方法不重复展开
            continue
        conditions.append(TrialCondition(
            detector=detector,
            snr_db=snr,
            n_samples=n,
            threshold_spec=build_threshold_spec(config, detector, k, target_pf if uses_pf else None),
            oversample_factor=config.oversample_factor,
            mode=config.mode,
            trials_nt=config.trials_nt,
            master_seed=config.master_seed,
        ))
    return conditions


class ConfigManager:
    """配置管理器"""

    def __init__(self, config_file: Optional[str] = None):
        """初始化配置管理器"""
        self.config_file = config_file
        self.config: Optional[ExperimentConfig] = None

    def load(self, seed: Optional[int] = None, trials: Optional[int] = None,
             output_path: Optional[str] = None) -> ExperimentConfig:
        """加载配置文件，按扩展名选择YAML或JSON解析"""
        if not self.config_file:
            raise ConfigurationError("未指定配置文件", key="config")

        path = Path(self.config_file)
        try:
            text = path.read_text(encoding='utf-8')
        except OSError as e:
            raise ConfigurationError(f"无法读取配置文件 {path}: {e}", key="config") from e

        if path.suffix == '.json':
            try:
                data = json.loads(text)
            except json.JSONDecodeError as e:
                raise ConfigurationError(f"无法解析JSON配置: {e}", key="document") from e
            if not isinstance(data, dict):
                raise ConfigurationError("配置文档必须是键值映射", key="document")
            data = unwrap_manifest(data)
            self.config = config_from_dict(data, seed=seed, trials=trials, output_path=output_path)
        else:
            self.config = parse_config(text, seed=seed, trials=trials, output_path=output_path)
        return self.config

    def save_config(self, file_path: str) -> str:
        """保存当前配置到YAML文件"""
        if self.config is None:
            raise SensingError("没有可保存的配置")
        with open(file_path, 'w', encoding='utf-8') as f:
            yaml.safe_dump(self.config.to_dict(), f, default_flow_style=False,
                           allow_unicode=True, sort_keys=False)
        return file_path


def load_config_file(path: str, seed: Optional[int] = None, trials: Optional[int] = None,
                     output_path: Optional[str] = None) -> ExperimentConfig:
    """读取并校验配置文件"""
    return ConfigManager(path).load(seed=seed, trials=trials, output_path=output_path)
