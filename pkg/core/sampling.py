# -*- coding: utf-8 -*-
"""
Sampling Module - Không gian bất biến dịch V_q, khai triển lấy mẫu,
cận frame và tích vô hướng L² giá trị H_C
"""

import math
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid

from config.settings import DEFAULT_TRUNCATION_M, SCAN_POINTS
from core.bspline import GridFunction, IntegerSymbol, bspline_hat, bspline_time, integer_samples
from core.errors import DomainError, GridMismatch, ZeroFilter
from core.fundamental import CoeffTable, filter_tail_bound, lq_grid
from core.quaternion import AxialElement, ComplexQuaternion, QuaternionicOrder, hamilton_product

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SplineSignal:
    """f = Σ_k d_k B_q(· − k) với hệ số hữu hạn trên các chỉ số liên tiếp k"""
    order: QuaternionicOrder
    k: np.ndarray
    d: AxialElement

    def __post_init__(self):
        if len(self.k) != len(self.d):
            raise DomainError("Số chỉ số và số hệ số khác nhau")
        if len(self.k) > 1 and np.any(np.diff(self.k) != 1):
            raise DomainError("Chỉ số hệ số phải liên tiếp")

    @classmethod
    def delta(cls, order: QuaternionicOrder, index: int = 0) -> "SplineSignal":
        return cls(order, np.array([index]), AxialElement(order.axis, np.array([1.0 + 0j]), np.array([0j])))

    @classmethod
    def random(cls, order: QuaternionicOrder, support: int, rng: np.random.Generator) -> "SplineSignal":
        """Hệ số quaternion thực ngẫu nhiên (chuẩn) trên |k| ≤ support"""
        k = np.arange(-support, support + 1)
        return cls(order, k, AxialElement(order.axis, rng.standard_normal(k.size), rng.standard_normal(k.size)))


def _grid_step(x: np.ndarray) -> float:
    if x.size < 2:
        raise DomainError("Lưới cần ít nhất 2 điểm")
    step = float(x[1] - x[0])
    if step <= 0 or np.max(np.abs(np.diff(x) - step)) > 1e-9 * max(1.0, step):
        raise DomainError("Lưới phải đều và tăng dần")
    return step


def synthesize(signal: SplineSignal, x: np.ndarray) -> GridFunction:
    """
    f(x) = Σ_k d_k B_q(x − k) trên lưới đều x

    Khi 1/step là số nguyên, B_q chỉ được tính một lần trên lưới phủ
    rồi dịch theo chỉ số.
    """
    x = np.asarray(x, dtype=float)
    step = _grid_step(x)
    order = signal.order
    k_min, k_max = int(signal.k[0]), int(signal.k[-1])
    ratio = 1.0 / step
    axis = order.axis
    d = signal.d.in_axis(axis)

    total = AxialElement(axis, np.zeros(x.size, dtype=complex), np.zeros(x.size, dtype=complex))
    if abs(ratio - round(ratio)) < 1e-12:
        ratio = int(round(ratio))
        lattice = x[0] - k_max + step * np.arange(x.size + (k_max - k_min) * ratio)
        basis = bspline_time(order, lattice)
        for index, k in enumerate(signal.k):
            offset = (k_max - int(k)) * ratio
            total = total + d[index] * basis[offset:offset + x.size]
    else:
        for index, k in enumerate(signal.k):
            total = total + d[index] * bspline_time(order, x - k)

    return GridFunction(start=float(x[0]), step=step, values=total)


def _convolve(k_first: np.ndarray, first: AxialElement,
              k_second: np.ndarray, second: AxialElement) -> Tuple[np.ndarray, AxialElement]:
    """Tích chập hai dãy phần tử trục (chéo theo tọa độ χ±)"""
    second = second.in_axis(first.axis)
    plus = np.convolve(np.asarray(first.plus), np.asarray(second.plus))
    minus = np.convolve(np.asarray(first.minus), np.asarray(second.minus))
    k = int(k_first[0]) + int(k_second[0]) + np.arange(plus.size)
    return k, AxialElement.from_chi(first.axis, plus, minus)


def sample_signal(signal: SplineSignal, m: np.ndarray, symbol: Optional[IntegerSymbol] = None) -> AxialElement:
    """f(m) = Σ_k d_k b_{m−k} = (d * b)_m tại các số nguyên m"""
    m = np.asarray(m, dtype=int)
    needed = int(max(np.max(np.abs(m - signal.k[0])), np.max(np.abs(m - signal.k[-1]))))
    if symbol is None or symbol.truncation < needed:
        symbol = integer_samples(signal.order, max(needed, 1))
    k, values = _convolve(signal.k, signal.d, symbol.k, symbol.b)
    return values[m - k[0]]


def to_fundamental_basis(signal: SplineSignal, symbol: IntegerSymbol) -> Tuple[np.ndarray, AxialElement]:
    """Hệ số của f theo L_q(· − ℓ): e = d * b"""
    return _convolve(signal.k, signal.d, symbol.k, symbol.b)


def to_bspline_basis(index: np.ndarray, coefficients: AxialElement, table: CoeffTable) -> SplineSignal:
    """Đổi ngược về cơ sở B_q(· − k): d = e * c"""
    k, values = _convolve(index, coefficients, table.k, table.c)
    return SplineSignal(table.order, k, values)


def reconstruct(order: QuaternionicOrder, index: np.ndarray, samples: AxialElement, x: np.ndarray,
                n_terms: int, fundamental: Optional[GridFunction] = None) -> GridFunction:
    """
    Khai triển lấy mẫu Σ_{|k|≤n_terms} f(k) L_q(x − k)

    Args:
        order: Bậc q
        index: Các số nguyên k có mẫu
        samples: f(k) tương ứng
        x: Lưới đều cần tái tạo
        n_terms: Số hạng tối đa mỗi phía
        fundamental: L_q đã tính sẵn (mặc định lq_grid với tham số mặc định)

    Raises:
        ZeroFilter: q không qua kiểm tra bộ lọc
    """
    x = np.asarray(x, dtype=float)
    step = _grid_step(x)
    if fundamental is None:
        fundamental = lq_grid(order)
    axis = fundamental.axis
    samples = samples.in_axis(axis)

    total = AxialElement(axis, np.zeros(x.size, dtype=complex), np.zeros(x.size, dtype=complex))
    for position, k in enumerate(np.asarray(index, dtype=int)):
        if abs(k) > n_terms:
            continue
        total = total + samples[position] * fundamental.sample(x - k)
    logger.debug(f"reconstruct: {n_terms} số hạng mỗi phía trên {x.size} điểm")
    return GridFunction(start=float(x[0]), step=step, values=total)


@dataclass(frozen=True)
class FrameBounds:
    """Cận Riesz c ≤ C cùng cận dưới lý thuyết và độ phân giải quét"""
    lower: float
    upper: float
    lower_estimate: float
    resolution: float
    truncation: int


def frame_bounds(order: QuaternionicOrder, points: int = SCAN_POINTS,
                 truncation: int = DEFAULT_TRUNCATION_M) -> FrameBounds:
    """
    c = inf Σ|B̂_q(ξ+2πk)|² / sup|F_q|², C = sup Σ|B̂_q(ξ+2πk)|² / inf|F_q|² trên [−π, π]

    Cận dưới lý thuyết: (2/π)^{2 Sc q} / sup(Σ|B̂_q(ξ+2πk)|)²
    """
    grid = np.linspace(-math.pi, math.pi, points + 1)
    shifts = np.arange(-truncation, truncation + 1)
    power = np.zeros(grid.size)
    modulus_sum = np.zeros(grid.size)
    s = np.zeros(grid.size, dtype=complex)
    u = np.zeros(grid.size, dtype=complex)
    for start in range(0, shifts.size, 256):
        block = shifts[start:start + 256]
        hat = bspline_hat(order, grid[:, None] + 2.0 * math.pi * block[None, :])
        magnitude = hat.norm()
        power += np.sum(magnitude ** 2, axis=1)
        modulus_sum += np.sum(magnitude, axis=1)
        s += hat.s.sum(axis=1)
        u += hat.u.sum(axis=1)

    filter_sq = np.abs(s) ** 2 + np.abs(u) ** 2
    tail = filter_tail_bound(order, truncation)
    if np.sqrt(filter_sq.min()) <= tail:
        raise ZeroFilter(f"inf|F_q^M| = {np.sqrt(filter_sq.min()):.3e} ≤ cận đuôi {tail:.3e}")

    bounds = FrameBounds(
        lower=float(power.min() / filter_sq.max()),
        upper=float(power.max() / filter_sq.min()),
        lower_estimate=float((2.0 / math.pi) ** (2.0 * order.a) / modulus_sum.max() ** 2),
        resolution=float(2.0 * math.pi / points),
        truncation=truncation,
    )
    logger.info(f"Cận frame q={order}: c={bounds.lower:.6f}, C={bounds.upper:.6f}")
    return bounds


def l2_pairing(f: GridFunction, g: GridFunction) -> Tuple[ComplexQuaternion, complex]:
    """
    ⟨f, g⟩ ≈ ∫ f(x) g(x)* dx bằng quy tắc hình thang

    Returns:
        (tích phân dạng quaternion phức, phần vô hướng)
    """
    if not f.same_grid(g):
        raise GridMismatch("Hai hàm không cùng lưới")
    g0, g1, g2, g3 = g.values.components()
    conjugate = (np.conj(g0), -np.conj(g1), -np.conj(g2), -np.conj(g3))
    product = hamilton_product(f.values.components(), conjugate)
    integral = ComplexQuaternion(*(trapezoid(np.asarray(p), dx=f.step) for p in product))
    return integral, integral.scalar


def relative_l2_error(approximation: GridFunction, reference: GridFunction) -> float:
    """‖approximation − reference‖ / ‖reference‖ trên lưới"""
    if not approximation.same_grid(reference):
        raise GridMismatch("Hai hàm không cùng lưới")
    difference = approximation.values - reference.values
    error = trapezoid(difference.norm() ** 2, dx=reference.step)
    scale = trapezoid(reference.values.norm() ** 2, dx=reference.step)
    return float(np.sqrt(error / scale))


def plancherel_energy(order: QuaternionicOrder, omega: float = 400.0 * math.pi, step: float = 0.01) -> float:
    """(1/2π) ∫_{−Ω}^{Ω} |B̂_q(ξ)|² dξ"""
    frequency = np.arange(-omega, omega + step / 2, step)
    return float(trapezoid(bspline_hat(order, frequency).norm() ** 2, dx=step) / (2.0 * math.pi))
