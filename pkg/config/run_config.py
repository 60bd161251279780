# -*- coding: utf-8 -*-
"""
Cấu hình một lần chạy CLI: mặc định < file cấu hình < tham số dòng lệnh
"""

import os
import logging
from dataclasses import asdict, dataclass, fields
from typing import Any, Dict, Optional

from config.settings import (
    DEFAULT_DFT_N, DEFAULT_FFT_SIZE, DEFAULT_GRID_N, DEFAULT_SEED, DEFAULT_TERMS,
    DEFAULT_TRUNCATION_M, DEFAULT_WORKERS, DEFAULT_XMAX, OUTPUT_DIR, PRESETS
)
from core.errors import ConfigError
from core.quaternion import QuaternionicOrder

logger = logging.getLogger(__name__)

_TRUE_VALUES = {"1", "true", "yes", "on"}
_FALSE_VALUES = {"0", "false", "no", "off"}


@dataclass
class RunConfig:
    """Tham số của một lần chạy"""
    q: Optional[str] = None
    preset: str = "q1"
    grid_n: int = DEFAULT_GRID_N
    xmax: float = DEFAULT_XMAX
    fft_size: int = DEFAULT_FFT_SIZE
    trunc_m: int = DEFAULT_TRUNCATION_M
    dft_n: int = DEFAULT_DFT_N
    out: str = OUTPUT_DIR
    plots: bool = False
    seed: int = DEFAULT_SEED
    terms: int = DEFAULT_TERMS
    workers: int = DEFAULT_WORKERS
    compare: bool = False

    def order(self) -> QuaternionicOrder:
        if self.q:
            return parse_order(self.q)
        if self.preset not in PRESETS:
            raise ConfigError(f"Preset không tồn tại: {self.preset}")
        return QuaternionicOrder.from_components(*PRESETS[self.preset])

    @property
    def tag(self) -> str:
        return "custom" if self.q else self.preset

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def resolve(cls, file_values: Dict[str, str], flag_values: Dict[str, Any]) -> "RunConfig":
        """
        Gộp cấu hình: file ghi đè mặc định, tham số dòng lệnh ghi đè file

        Args:
            file_values: Cặp key/value (chuỗi) từ file cấu hình
            flag_values: Giá trị từ argparse (None = không đặt)
        """
        config = cls()
        types = {f.name: f.type for f in fields(cls)}
        for source in (file_values, flag_values):
            for key, value in source.items():
                if value is None:
                    continue
                if key not in types:
                    raise ConfigError(f"Khóa cấu hình không hợp lệ: {key}")
                setattr(config, key, _convert(key, value, types[key]))
        config.validate()
        return config

    def validate(self):
        if self.grid_n < 2:
            raise ConfigError(f"grid_n phải ≥ 2, nhận {self.grid_n}")
        if self.xmax <= 0:
            raise ConfigError(f"xmax phải dương, nhận {self.xmax}")
        for name in ("fft_size", "dft_n"):
            value = getattr(self, name)
            if value < 2 or value & (value - 1):
                raise ConfigError(f"{name} phải là lũy thừa của 2, nhận {value}")
        if self.trunc_m < 1 or self.terms < 1 or self.workers < 1:
            raise ConfigError("trunc_m, terms, workers phải ≥ 1")
        self.order()


def _convert(key: str, value: Any, target: Any) -> Any:
    if not isinstance(value, str):
        return value
    text = value.strip()
    try:
        if target in (bool, "bool"):
            if text.lower() in _TRUE_VALUES:
                return True
            if text.lower() in _FALSE_VALUES:
                return False
            raise ValueError(text)
        if target in (int, "int"):
            return int(text)
        if target in (float, "float"):
            return float(text)
    except ValueError:
        raise ConfigError(f"Giá trị không hợp lệ cho {key}: {value!r}")
    return text


def parse_order(text: str) -> QuaternionicOrder:
    """
    Đọc bậc q từ chuỗi "a,v1,v2,v3"

    Raises:
        ConfigError: chuỗi sai định dạng hoặc Sc q ≤ 1
    """
    parts = [part.strip() for part in str(text).split(",")]
    if len(parts) != 4:
        raise ConfigError(f"q phải có dạng a,v1,v2,v3, nhận {text!r}")
    try:
        a, v1, v2, v3 = (float(part) for part in parts)
    except ValueError:
        raise ConfigError(f"q chứa giá trị không phải số: {text!r}")
    if a <= 1.0:
        raise ConfigError(f"Cần Sc q > 1, nhận {a}")
    return QuaternionicOrder.from_components(a, v1, v2, v3)


def load_config_file(filepath: str) -> Dict[str, str]:
    """
    Đọc file cấu hình dạng key = value (cho phép chú thích #)

    Returns:
        Dict key -> chuỗi giá trị (key dùng dấu gạch dưới)
    """
    if not os.path.exists(filepath):
        raise ConfigError(f"File cấu hình không tồn tại: {filepath}")

    values: Dict[str, str] = {}
    with open(filepath, "r", encoding="utf-8") as handle:
        for number, line in enumerate(handle, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"Dòng {number} thiếu '=': {line}")
            key, value = (part.strip() for part in line.split("=", 1))
            values[key.replace("-", "_")] = value
    logger.info(f"Đã đọc {len(values)} khóa từ {filepath}")
    return values
