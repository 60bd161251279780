# -*- coding: utf-8 -*-
"""
Plotting Module - Xuất hình của L_q, F_q và F_q′ ra PNG
"""

import os
import logging
from typing import Dict, List, Tuple

import numpy as np
import matplotlib as mpl
mpl.use("Agg")

import matplotlib.pyplot as plt

from core.bspline import GridFunction
from core.quaternion import AxialElement

logger = logging.getLogger(__name__)

GOLDEN_MEAN = (np.sqrt(5.0) - 1.0) / 2.0

PARAMS = {
    "axes.labelsize": 10,
    "font.family": "serif",
    "font.size": 9,
    "mathtext.fontset": "stix",
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.dpi": 150,
    "lines.linewidth": 1,
    "figure.subplot.left": 0.15,
    "figure.subplot.bottom": 0.15,
    "figure.subplot.right": 0.95,
    "figure.subplot.top": 0.90,
}


def size(width: float = 5.0) -> List[float]:
    return [width, width * GOLDEN_MEAN]


def new(width: float = 5.0):
    with mpl.rc_context(PARAMS):
        fig, ax = plt.subplots(figsize=size(width))
    return fig, ax


def save(fig, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with mpl.rc_context(PARAMS):
        fig.savefig(path)
    plt.close(fig)
    logger.info(f"Đã lưu hình: {path}")
    return path


def plot_grid(grid: GridFunction, tag: str, out_dir: str, name: str = "fundamental") -> List[str]:
    """Phần vô hướng, phần e1 và đường cong (scalar, e1) của một hàm trên lưới"""
    scalar, e1, _, _ = (np.real(c) for c in grid.values.components())
    x = grid.x
    paths = []

    fig, ax = new()
    ax.plot(x, scalar)
    ax.set_xlabel("x")
    ax.set_title(f"Sc {name}, {tag}")
    paths.append(save(fig, os.path.join(out_dir, f"{name}_{tag}_scalar.png")))

    fig, ax = new()
    ax.plot(x, e1)
    ax.set_xlabel("x")
    ax.set_title(f"e1-part of {name}, {tag}")
    paths.append(save(fig, os.path.join(out_dir, f"{name}_{tag}_e1.png")))

    fig, ax = new(4.0)
    ax.plot(scalar, e1)
    ax.set_xlabel("scalar")
    ax.set_ylabel("e1")
    ax.set_title(f"{name} phase curve, {tag}")
    paths.append(save(fig, os.path.join(out_dir, f"{name}_{tag}_phase.png")))
    return paths


def plot_filter(frequency: np.ndarray, values: AxialElement, tag: str, out_dir: str,
                name: str = "filter") -> str:
    """|f_s|, |f_v| và |f| trên [0, 2π)"""
    fig, ax = new()
    ax.plot(frequency, np.abs(values.s), label="|s|")
    ax.plot(frequency, np.abs(values.u), label="|u|")
    ax.plot(frequency, values.norm(), label="|·|", linestyle="--")
    ax.set_xlabel("ξ")
    ax.set_title(f"{name}, {tag}")
    ax.legend()
    return save(fig, os.path.join(out_dir, f"{name}_{tag}.png"))


def plot_filter_comparison(profiles: Dict[str, Tuple[np.ndarray, AxialElement]], out_dir: str,
                           name: str = "filter_compare") -> str:
    """|F_s| và |F| của nhiều bậc trên cùng một hình"""
    fig, ax = new()
    for tag, (frequency, values) in profiles.items():
        line, = ax.plot(frequency, values.norm(), label=f"|F| {tag}")
        ax.plot(frequency, np.abs(values.s), label=f"|F_s| {tag}", linestyle="--", color=line.get_color())
    ax.set_xlabel("ξ")
    ax.set_title(", ".join(profiles))
    ax.legend()
    return save(fig, os.path.join(out_dir, f"{name}.png"))
