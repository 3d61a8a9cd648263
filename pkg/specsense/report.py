#!/usr/bin/env python3
"""
specsense结果文件模块
把扫描结果映射为固定列的CSV，并写出可复现运行的manifest
"""

import csv
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import scipy

from .config import MANIFEST_TOOL, ExperimentConfig
from .errors import OutputError
from .montecarlo import SweepResult

CSV_COLUMNS = (
    'detector', 'mode', 'snr_db', 'n_samples', 'oversample', 'k_factor',
    'threshold_method', 'trials', 'pd', 'pf', 'pd_analytic', 'pf_analytic',
    'mean_threshold', 'seed',
)

# 读回时的列类型
COLUMN_TYPES = {
    'snr_db': float,
    'n_samples': int,
    'oversample': int,
    'k_factor': float,
    'trials': int,
    'pd': float,
    'pf': float,
    'pd_analytic': float,
    'pf_analytic': float,
    'mean_threshold': float,
    'seed': int,
}


def format_value(value: Any) -> str:
    """浮点数固定12位有效数字，None为空字符串"""
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, '.12g')
    return str(value)


def result_to_row(result: SweepResult) -> Dict[str, str]:
    """把一行结果映射为CSV列"""
    condition = result.condition
    spec = condition.threshold_spec
    values = {
        'detector': condition.detector.value,
        'mode': condition.mode.value,
        'snr_db': float(condition.snr_db),
        'n_samples': condition.n_samples,
        'oversample': condition.oversample_factor,
        'k_factor': float(spec.factor_k),
        'threshold_method': spec.describe(),
        'trials': condition.trials_nt,
        'pd': result.pd,
        'pf': result.pf,
        'pd_analytic': result.pd_analytic,
        'pf_analytic': result.pf_analytic,
        'mean_threshold': result.mean_threshold,
        'seed': condition.master_seed,
    }
    return {column: format_value(values[column]) for column in CSV_COLUMNS}


def render_csv(results: Sequence[SweepResult]) -> str:
    """渲染CSV文本，行尾固定为\\n"""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator='\n')
    writer.writeheader()
    for result in results:
        writer.writerow(result_to_row(result))
    return buffer.getvalue()


def _atomic_write(path: Path, content: str):
    """先写同目录临时文件再替换，避免留下不完整的文件"""
    temp_name = None
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, temp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp",
                                         dir=str(path.parent))
        with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
            f.write(content)
        os.replace(temp_name, path)
    except OSError as e:
        if temp_name and os.path.exists(temp_name):
            os.unlink(temp_name)
        raise OutputError(f"无法写入文件 '{path}': {e}", key="output_path") from e


def write_results_csv(results: Sequence[SweepResult], path: str) -> Path:
    """写出结果CSV"""
    target = Path(path)
    _atomic_write(target, render_csv(results))
    return target


def read_results_csv(path: str) -> List[Dict[str, Any]]:
    """读回结果CSV，数值列转换为数值，空的解析列为None"""
    try:
        with open(path, 'r', encoding='utf-8', newline='') as f:
            reader = csv.DictReader(f)
            if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
                raise OutputError(f"CSV表头与固定列不一致: {reader.fieldnames}", key="header")
            rows = []
            for raw in reader:
                row: Dict[str, Any] = {}
                for column in CSV_COLUMNS:
                    cell = raw[column]
                    converter = COLUMN_TYPES.get(column)
                    if converter is None:
                        row[column] = cell
                    elif cell == "":
                        row[column] = None
                    else:
                        row[column] = converter(cell)
                rows.append(row)
            return rows
    except OSError as e:
        raise OutputError(f"无法读取文件 '{path}': {e}", key="path") from e


def manifest_path_for(csv_path: str) -> Path:
    """<csv名>.manifest.json"""
    target = Path(csv_path)
    return target.with_name(f"{target.stem}.manifest.json")


def build_manifest(config: ExperimentConfig, results: Sequence[SweepResult],
                   csv_path: str) -> Dict[str, Any]:
    """manifest内容：配置回显、种子、版本和输出信息"""
    from . import __version__

    return {
        'tool': MANIFEST_TOOL,
        'version': __version__,
        'numpy_version': np.__version__,
        'scipy_version': scipy.__version__,
        'master_seed': config.master_seed,
        'config': config.to_dict(),
        'csv_file': Path(csv_path).name,
        'rows': len(results),
        'columns': list(CSV_COLUMNS),
    }


def write_manifest(config: ExperimentConfig, results: Sequence[SweepResult],
                   csv_path: str, manifest_path: Optional[str] = None) -> Path:
    """写出manifest"""
    target = Path(manifest_path) if manifest_path else manifest_path_for(csv_path)
    content = json.dumps(build_manifest(config, results, csv_path), indent=2, ensure_ascii=False)
    _atomic_write(target, content + "\n")
    return target
