#!/usr/bin/env python3
"""
specsense检测器插件基类和检测器注册表
定义检测器插件接口，蒙特卡洛引擎按检测器种类分派到插件
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from ..analytic import AnalyticPoint
from ..detectors import DetectorKind, DetectorStatistic
from ..errors import PluginError, get_error_reporter
from ..signals import SampleFrame, SignalMode
from ..threshold import ThresholdSpec, ThresholdValue


@dataclass(frozen=True)
class SensingContext:
    """一次感知所需的已知参数"""

    n_samples: int
    mode: SignalMode
    noise_variance: float
    gamma: float
    pilot_energy: Optional[float] = None


class DetectorPlugin(ABC):
    """检测器插件基类"""

    # 是否需要PU导频（先验知识）
    requires_pilot: bool = False

    def __init__(self, name: str, kind: DetectorKind, version: str = "1.0.0",
                 description: str = "", traits: Optional[Dict[str, str]] = None):
        """初始化插件"""
        self.name = name
        self.kind = kind
        self.version = version
        self.description = description
        self.traits: Dict[str, str] = dict(traits or {})
        self.enabled = True

    @abstractmethod
    def compute_statistic(self, frame: SampleFrame,
                          pilot: Optional[SampleFrame] = None) -> DetectorStatistic:
        """计算检测统计量"""
        pass

    @abstractmethod
    def estimate_threshold(self, spec: ThresholdSpec, context: SensingContext,
                           pilot: Optional[SampleFrame],
                           rng: np.random.Generator) -> ThresholdValue:
        """按门限规格估计未缩放的门限λ"""
        pass

    def analytic_point(self, lam: float, context: SensingContext) -> Optional[AnalyticPoint]:
        """门限λ′处的解析性能，没有闭式解时返回None"""
        return None

    def get_info(self) -> Dict[str, str]:
        """获取插件信息"""
        info = {
            'name': self.name,
            'kind': self.kind.value,
            'version': self.version,
            'description': self.description,
            'enabled': str(self.enabled),
        }
        info.update(self.traits)
        return info


class DetectorRegistry:
    """检测器注册表"""

    def __init__(self, load_builtin: bool = True):
        """初始化注册表"""
        self.plugins: Dict[DetectorKind, DetectorPlugin] = {}

        if load_builtin:
            self._load_builtin_plugins()

    def _load_builtin_plugins(self):
        """加载内置检测器"""
        from .builtin import get_builtin_plugins

        for plugin in get_builtin_plugins():
            self.register_plugin(plugin)

    def register_plugin(self, plugin: DetectorPlugin):
        """注册插件，同种类的已有插件会被覆盖"""
        if plugin.kind in self.plugins:
            get_error_reporter().report_warning(
                f"检测器 '{plugin.kind.value}' 已被注册，将被覆盖", key=plugin.name
            )
        self.plugins[plugin.kind] = plugin

    def unregister_plugin(self, kind: DetectorKind) -> bool:
        """注销插件"""
        if kind not in self.plugins:
            return False
        del self.plugins[kind]
        return True

    def enable_plugin(self, kind: DetectorKind) -> bool:
        """启用插件"""
        if kind not in self.plugins:
            return False
        self.plugins[kind].enabled = True
        return True

    def disable_plugin(self, kind: DetectorKind) -> bool:
        """禁用插件"""
        if kind not in self.plugins:
            return False
        self.plugins[kind].enabled = False
        return True

    def get(self, kind: DetectorKind) -> DetectorPlugin:
        """获取已启用的插件"""
        plugin = self.plugins.get(kind)
        if plugin is None:
            raise PluginError(f"未注册的检测器: {kind.value}", key="detector")
        if not plugin.enabled:
            raise PluginError(f"检测器已被禁用: {kind.value}", key="detector")
        return plugin

    def list_plugins(self) -> List[Dict[str, str]]:
        """列出所有插件信息，按检测器种类的定义顺序"""
        return [self.plugins[kind].get_info() for kind in DetectorKind if kind in self.plugins]


# 全局检测器注册表
_global_registry: Optional[DetectorRegistry] = None


def get_detector_registry() -> DetectorRegistry:
    """获取全局检测器注册表"""
    global _global_registry
    if _global_registry is None:
        _global_registry = DetectorRegistry()
    return _global_registry


def register_detector(plugin: DetectorPlugin):
    """注册插件到全局注册表"""
    get_detector_registry().register_plugin(plugin)
