#!/usr/bin/env python3
"""
specsense检测器插件系统
提供检测器注册和按种类分派
"""

from .base import (DetectorPlugin, DetectorRegistry, SensingContext,
                   get_detector_registry, register_detector)
from .builtin import (AutocorrelationPlugin, EnergyDetectorPlugin, MatchedFilterPlugin,
                      get_builtin_plugins)

__all__ = [
    'DetectorPlugin',
    'DetectorRegistry',
    'SensingContext',
    'get_detector_registry',
    'register_detector',
    'EnergyDetectorPlugin',
    'MatchedFilterPlugin',
    'AutocorrelationPlugin',
    'get_builtin_plugins',
]
