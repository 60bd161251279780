# -*- coding: utf-8 -*-
"""
B-spline Module - B-spline bậc quaternion trong miền tần số và miền thời gian
"""

import logging
from dataclasses import dataclass
from typing import Any, List, Optional, Tuple

import numpy as np

from core.errors import DomainError, GridMismatch
from core.quaternion import (
    AxialElement, Axis, QuaternionicOrder, RealQuaternion, _unwrap,
    power_zq, shadow_power
)
from core.special import gamma_complex, inverse_gamma_quat

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Lưới đều start + j·step, j = 0..n−1, với giá trị AxialElement"""
    start: float
    step: float
    values: AxialElement

    def __post_init__(self):
        if self.step <= 0:
            raise DomainError(f"Bước lưới phải dương, nhận {self.step}")
        if np.ndim(self.values.s) != 1:
            raise DomainError("Giá trị của GridFunction phải là mảng một chiều")

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def axis(self) -> Axis:
        return self.values.axis

    @property
    def x(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.n)

    @property
    def stop(self) -> float:
        return self.start + self.step * (self.n - 1)

    def same_grid(self, other: "GridFunction", tol: float = 1e-12) -> bool:
        return (
            self.n == other.n
            and abs(self.start - other.start) <= tol * max(1.0, abs(self.start))
            and abs(self.step - other.step) <= tol * self.step
        )

    def sample(self, x: Any) -> AxialElement:
        """Nội suy tuyến tính theo tọa độ χ± (chính xác tại các nút lưới)"""
        x = np.asarray(x, dtype=float)
        nodes = self.x
        columns = []
        for coordinate in (np.asarray(self.values.plus), np.asarray(self.values.minus)):
            columns.append(
                np.interp(x, nodes, coordinate.real, left=0.0, right=0.0)
                + 1j * np.interp(x, nodes, coordinate.imag, left=0.0, right=0.0)
            )
        return AxialElement.from_chi(self.axis, columns[0], columns[1])

    def crop(self, xmin: float, xmax: float) -> "GridFunction":
        x = self.x
        mask = (x >= xmin - 1e-12) & (x <= xmax + 1e-12)
        if not np.any(mask):
            raise GridMismatch(f"Lưới không giao với [{xmin}, {xmax}]")
        first = int(np.argmax(mask))
        return GridFunction(float(x[first]), self.step, self.values[mask])


@dataclass(frozen=True, eq=False)
class IntegerSymbol:
    """Các mẫu nguyên b_k = B_q(k), k ∈ [−K, K], và cận phần đuôi"""
    order: QuaternionicOrder
    k: np.ndarray
    b: AxialElement
    tail_bound: float

    @property
    def truncation(self) -> int:
        return int(self.k[-1])

    def total(self) -> AxialElement:
        return self.b.sum()

    def evaluate(self, xi: Any) -> AxialElement:
        """Σ_k b_k e^{−ikξ} (symbol tại z = e^{−iξ})"""
        xi = np.asarray(xi, dtype=float)
        phases = np.exp(-1j * np.multiply.outer(xi, self.k))
        return AxialElement(self.b.axis, _unwrap(phases @ self.b.s), _unwrap(phases @ self.b.u))


# ---------------------------------------------------------------------- #
# Miền tần số
# ---------------------------------------------------------------------- #
def xi(frequency: Any) -> Any:
    """
    Ξ(ξ) = (1 − e^{−iξ})/(iξ) = e^{−iξ/2}·sin(ξ/2)/(ξ/2), Ξ(0) = 1
    """
    frequency = np.asarray(frequency, dtype=float)
    return _unwrap(np.exp(-0.5j * frequency) * np.sinc(frequency / (2.0 * np.pi)))


def one_minus_exp(frequency: Any) -> Any:
    """1 − e^{−iξ} = 2i·sin(ξ/2)·e^{−iξ/2}"""
    frequency = np.asarray(frequency, dtype=float)
    return _unwrap(2j * np.sin(0.5 * frequency) * np.exp(-0.5j * frequency))


def bspline_hat(order: QuaternionicOrder, frequency: Any) -> AxialElement:
    """B̂_q(ξ) = Ξ(ξ)^q"""
    if order.a <= 1.0:
        raise DomainError(f"bspline_hat yêu cầu Sc q > 1, nhận {order.a}")
    return power_zq(xi(frequency), order)


def bspline_hat_complex(w: complex, frequency: Any) -> Any:
    """B̂_w(ξ) = Ξ(ξ)^w cho bậc phức"""
    return shadow_power(xi(frequency), w)


# ---------------------------------------------------------------------- #
# Hệ số nhị thức
# ---------------------------------------------------------------------- #
def quat_binomial(order: QuaternionicOrder, k: int) -> RealQuaternion:
    """binom(q, k) = (q)_k/k! qua bóng phức: Re binom(w,k) + μ Im binom(w,k)"""
    if k < 0:
        raise DomainError(f"quat_binomial yêu cầu k ≥ 0, nhận {k}")
    value = complex_binomial(order.w, k)
    return RealQuaternion(value.real, tuple(np.multiply(order.axis.mu, value.imag)))


def complex_binomial(w: complex, k: int) -> complex:
    value = 1.0 + 0j
    for j in range(k):
        value *= (w - j) / (j + 1)
    return value


def binomial_series(order: QuaternionicOrder, k_max: int) -> List[RealQuaternion]:
    """binom(q, k), k = 0..k_max, bằng tích quaternion trực tiếp q(q−1)…(q−k+1)/k!"""
    series = [RealQuaternion(1.0)]
    current = RealQuaternion(1.0)
    for j in range(k_max):
        current = current * (order.q - float(j)) * (1.0 / (j + 1))
        series.append(current)
    return series


# ---------------------------------------------------------------------- #
# Miền thời gian
# ---------------------------------------------------------------------- #
def _time_truncation(t: np.ndarray, truncation: Optional[int]) -> int:
    t_max = float(np.max(t)) if t.size else 0.0
    if truncation is None:
        return max(int(np.floor(t_max)) + 1, 0)
    if truncation < int(np.ceil(t_max)) + 1:
        raise DomainError(f"K = {truncation} quá nhỏ cho t ≤ {t_max}")
    return int(truncation)


def bspline_time(order: QuaternionicOrder, t: Any, truncation: Optional[int] = None) -> AxialElement:
    """
    B_q(t) = (1/Γ(q)) Σ_{k=0}^{K} (−1)^k binom(q, k) (t − k)_+^{q−1}

    Args:
        order: Bậc q, Sc q > 1
        t: Điểm hoặc mảng điểm
        truncation: K; mặc định floor(max t) + 1 (chuỗi hữu hạn, chính xác)
    """
    if order.a <= 1.0:
        raise DomainError(f"bspline_time yêu cầu Sc q > 1, nhận {order.a}")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    k_max = _time_truncation(t_arr, truncation)
    axis = order.axis
    exponent = order.shifted(-1.0)

    total = AxialElement(axis, np.zeros(t_arr.shape, dtype=complex), np.zeros(t_arr.shape, dtype=complex))
    for k, binom in enumerate(binomial_series(order, k_max)):
        shifted = t_arr - k
        support = shifted > 0
        if not np.any(support):
            break
        power = power_zq(np.where(support, shifted, 1.0), exponent, axis=axis)
        sign = -1.0 if k % 2 else 1.0
        coefficient = AxialElement.from_quaternion(binom * sign, axis)
        total = total + coefficient * (power * support)

    result = AxialElement.from_quaternion(inverse_gamma_quat(order), axis) * total
    if np.ndim(t) == 0:
        return result[0]
    return result


def bspline_time_complex(w: complex, t: Any, truncation: Optional[int] = None) -> Any:
    """B_w(t) cho bậc phức w (Re w > 1), cùng chuỗi với bspline_time"""
    w = complex(w)
    if w.real <= 1.0:
        raise DomainError(f"bspline_time_complex yêu cầu Re w > 1, nhận {w}")
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    k_max = _time_truncation(t_arr, truncation)

    total = np.zeros(t_arr.shape, dtype=complex)
    binom = 1.0 + 0j
    for k in range(k_max + 1):
        shifted = t_arr - k
        support = shifted > 0
        if not np.any(support):
            break
        power = np.exp((w - 1.0) * np.log(np.where(support, shifted, 1.0)))
        total += (-1.0) ** k * binom * power * support
        binom *= (w - k) / (k + 1)

    result = total / gamma_complex(w)
    return _unwrap(result[0]) if np.ndim(t) == 0 else result


def bspline_time_shadow(order: QuaternionicOrder, t: Any) -> AxialElement:
    """B_q(t) = Re B_w(t) + μ Im B_w(t)"""
    value = np.asarray(bspline_time_complex(order.w, t))
    return AxialElement(order.axis, _unwrap(value.real), _unwrap(value.imag))


def integer_samples(order: QuaternionicOrder, truncation: int) -> IntegerSymbol:
    """
    Mẫu nguyên b_k = B_q(k), |k| ≤ K

    Cận phần đuôi ước lượng từ |b_K| theo tốc độ k^{−a−1}: Σ_{k>K}|b_k| ≈ |b_K|·K/a.
    """
    if truncation < 1:
        raise DomainError(f"integer_samples yêu cầu K ≥ 1, nhận {truncation}")
    k = np.arange(-truncation, truncation + 1)
    b = bspline_time(order, k.astype(float))
    last = float(b.norm()[-1])
    tail_bound = last * truncation / order.a
    logger.debug(f"integer_samples: K={truncation}, |b_K|={last:.3e}, tail≈{tail_bound:.3e}")
    return IntegerSymbol(order=order, k=k, b=b, tail_bound=tail_bound)


def polynomial_first_moment(order: QuaternionicOrder) -> AxialElement:
    """∫ t B_q(t) dt = q/2, nên Σ_k k B_q(x − k) = x − q/2"""
    return order.as_axial() * 0.5
