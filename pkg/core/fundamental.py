# -*- coding: utf-8 -*-
"""
Fundamental Module - Bộ lọc nội suy F_q, đạo hàm và hằng số sai số,
spline nội suy cơ bản L_q qua FFT, hệ số nội suy qua DFT
"""

import math
import logging
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Sequence, Tuple

import numpy as np

from config.settings import (
    ALIAS_TOLERANCE, COEFFICIENT_DECAY_RANGE, DECAY_RANGE, DECAY_SLACK,
    DEFAULT_DFT_N, DEFAULT_FFT_SIZE, DEFAULT_OMEGA, DEFAULT_TRUNCATION_M,
    DERIVATIVE_SINGULAR_TOL, SCAN_POINTS, SCAN_REFINE,
    SECOND_DERIVATIVE_SINGULAR_TOL
)
from core.bspline import (
    GridFunction, IntegerSymbol, bspline_hat, bspline_hat_complex,
    bspline_time_complex, bspline_time_shadow, one_minus_exp
)
from core.errors import AliasWarning, DomainError, NonInvertible, ZeroFilter
from core.quaternion import AxialElement, QuaternionicOrder, _unwrap, power_zq
from core.special import zeta_denominator

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
_BLOCK = 256


@dataclass(frozen=True, eq=False)
class FilterProfile:
    """F_q^M trên lưới đều của [0, 2π)"""
    order: QuaternionicOrder
    truncation: int
    xi: np.ndarray
    values: AxialElement
    min_modulus: float
    tail_bound: float


@dataclass(frozen=True)
class FilterConstants:
    """Các hằng số của bộ lọc từ một lần quét (có tinh chỉnh quanh cực trị)"""
    order: QuaternionicOrder
    truncation: int
    min_modulus: float
    argmin: float
    sup_scalar_derivative: float
    sup_vector_derivative: float
    tail_bound: float

    @property
    def derivative_sup(self) -> float:
        return self.sup_scalar_derivative + self.sup_vector_derivative

    @property
    def epstein(self) -> float:
        return self.derivative_sup / self.min_modulus ** 2


@dataclass(frozen=True)
class ZeroFreeVerdict:
    """Kết quả kiểm tra bộ lọc không có điểm không"""
    min_modulus: float
    tail_bound: float
    margin: float
    argmin: float
    passed: bool


@dataclass(frozen=True, eq=False)
class CoeffTable:
    """Hệ số nội suy c_{N,M,k}, k = −N/2..N/2−1, cùng cận sai số"""
    order: QuaternionicOrder
    n: int
    truncation: int
    k: np.ndarray
    c: AxialElement
    error_bound: float
    epstein_term: float
    truncation_term: float

    def coefficient(self, k: int) -> AxialElement:
        index = int(k - self.k[0])
        if index < 0 or index >= len(self.k):
            raise IndexError(f"k = {k} ngoài bảng [{self.k[0]}, {self.k[-1]}]")
        return self.c[index]


@dataclass(frozen=True)
class DecayReport:
    """Khớp bình phương tối thiểu log|f| theo log|x|"""
    exponent: float
    constant: float
    max_residual: float
    bound_exponent: float
    fit_range: Tuple[float, float]
    passed: bool


@dataclass(frozen=True)
class EpsteinReport:
    """Sai số tổng Riemann N điểm so với tham chiếu, cùng cận lý thuyết"""
    n: int
    measured: float
    bound: float
    passed: bool


# ---------------------------------------------------------------------- #
# Bộ lọc F_q
# ---------------------------------------------------------------------- #
def filter_tail_bound(order: QuaternionicOrder, truncation: int) -> float:
    """|F_q − F_q^M| ≤ 2/(π^a (a−1) M^{a−1})"""
    a = order.a
    return 2.0 / (math.pi ** a * (a - 1.0) * truncation ** (a - 1.0))


def _periodize(order: QuaternionicOrder, frequency: Any, shifts: np.ndarray) -> AxialElement:
    """Σ_{k ∈ shifts} B̂_q(ξ + 2πk), tính theo khối để giới hạn bộ nhớ"""
    flat = np.atleast_1d(np.asarray(frequency, dtype=float))
    s = np.zeros(flat.shape, dtype=complex)
    u = np.zeros(flat.shape, dtype=complex)
    for start in range(0, len(shifts), _BLOCK):
        block = shifts[start:start + _BLOCK]
        hat = bspline_hat(order, flat[:, None] + TWO_PI * block[None, :])
        s += hat.s.sum(axis=1)
        u += hat.u.sum(axis=1)
    if np.ndim(frequency) == 0:
        return AxialElement(order.axis, complex(s[0]), complex(u[0]))
    return AxialElement(order.axis, s, u)


def filter_truncated(order: QuaternionicOrder, frequency: Any,
                     truncation: int = DEFAULT_TRUNCATION_M) -> AxialElement:
    """F_q^M(ξ) = Σ_{|k|≤M} B̂_q(ξ + 2πk)"""
    if truncation < 1:
        raise DomainError(f"filter_truncated yêu cầu M ≥ 1, nhận {truncation}")
    return _periodize(order, frequency, np.arange(-truncation, truncation + 1))


def filter_increment(order: QuaternionicOrder, frequency: Any, lower: int, upper: int) -> AxialElement:
    """Σ_{lower < |k| ≤ upper} B̂_q(ξ + 2πk) = F_q^{upper} − F_q^{lower}"""
    if not 0 <= lower < upper:
        raise DomainError(f"filter_increment yêu cầu 0 ≤ lower < upper, nhận {lower}, {upper}")
    shifts = np.concatenate([np.arange(-upper, -lower), np.arange(lower + 1, upper + 1)])
    return _periodize(order, frequency, shifts)


def filter_profile(order: QuaternionicOrder, truncation: int = DEFAULT_TRUNCATION_M,
                   points: int = SCAN_POINTS) -> FilterProfile:
    grid = TWO_PI * np.arange(points) / points
    values = filter_truncated(order, grid, truncation)
    return FilterProfile(
        order=order,
        truncation=truncation,
        xi=grid,
        values=values,
        min_modulus=float(np.min(values.norm())),
        tail_bound=filter_tail_bound(order, truncation),
    )


def filter_zeta_form(order: QuaternionicOrder, frequency: Any) -> AxialElement:
    """
    F_q(ξ) = ((1 − e^{−iξ})/i)^q (2π)^{−q} [ζ(q, α) + e^{iπq} ζ(q, 1 − α)], α = ξ/2π

    Các số hạng ξ + 2πk < 0 lấy arg = −π để khớp với lũy thừa chính
    của (1 − e^{−iξ})/i.
    """
    frequency_arr = np.asarray(frequency, dtype=float)
    if np.any(frequency_arr <= 0) or np.any(frequency_arr >= TWO_PI):
        raise DomainError("filter_zeta_form yêu cầu 0 < ξ < 2π")
    base = np.asarray(one_minus_exp(frequency_arr)) / 1j
    prefactor = power_zq(base, order) * power_zq(TWO_PI, order.negated(), axis=order.axis)
    return prefactor * zeta_denominator(order, frequency_arr / TWO_PI, negative_arg=-math.pi)


def _replace_singular(value: AxialElement, singular: np.ndarray, limit: AxialElement) -> AxialElement:
    if not np.any(singular):
        return value
    return AxialElement(
        value.axis,
        _unwrap(np.where(singular, limit.s, value.s)),
        _unwrap(np.where(singular, limit.u, value.u)),
    )


def filter_derivative(order: QuaternionicOrder, frequency: Any,
                      truncation: int = DEFAULT_TRUNCATION_M) -> AxialElement:
    """
    F_q′(ξ) = −iq (1 − e^{−iξ})^{−1} [F_{q+1}(ξ) − e^{−iξ} F_q(ξ)], và −iq/2 trên 2πZ
    """
    if order.a <= 1.0:
        raise DomainError(f"filter_derivative yêu cầu Sc q > 1, nhận {order.a}")
    frequency = np.asarray(frequency, dtype=float)
    denominator = np.asarray(one_minus_exp(frequency))
    rotation = np.exp(-1j * frequency)
    singular = np.abs(denominator) < DERIVATIVE_SINGULAR_TOL

    current = filter_truncated(order, frequency, truncation)
    following = filter_truncated(order.shifted(1.0), frequency, truncation)
    q = order.as_axial()
    value = q * (-1j) * (following - current * rotation) * (1.0 / np.where(singular, 1.0, denominator))
    return _replace_singular(value, singular, q * (-0.5j))


def filter_second_derivative(order: QuaternionicOrder, frequency: Any,
                             truncation: int = DEFAULT_TRUNCATION_M) -> AxialElement:
    """
    F_q″ = −iq (N′D − N D′)/D², N = F_{q+1} − e^{−iξ}F_q, D = 1 − e^{−iξ};
    trên 2πZ giá trị giới hạn −q(3q + 1)/12 (cần Sc q > 2)
    """
    if order.a <= 1.0:
        raise DomainError(f"filter_second_derivative yêu cầu Sc q > 1, nhận {order.a}")
    frequency = np.asarray(frequency, dtype=float)
    denominator = np.asarray(one_minus_exp(frequency))
    rotation = np.exp(-1j * frequency)
    singular = np.abs(denominator) < SECOND_DERIVATIVE_SINGULAR_TOL
    if np.any(singular) and order.a <= 2.0:
        raise DomainError("F_q″ không bị chặn tại 2πZ khi Sc q ≤ 2")

    following = order.shifted(1.0)
    current = filter_truncated(order, frequency, truncation)
    current_next = filter_truncated(following, frequency, truncation)
    slope = filter_derivative(order, frequency, truncation)
    slope_next = filter_derivative(following, frequency, truncation)

    safe = np.where(singular, 1.0, denominator)
    numerator = current_next - current * rotation
    numerator_slope = slope_next + current * (1j * rotation) - slope * rotation
    quotient = (numerator_slope * safe - numerator * (1j * rotation)) * (1.0 / safe ** 2)
    q = order.as_axial()
    value = q * (-1j) * quotient
    limit = q * (q * 3.0 + 1.0) * (-1.0 / 12.0)
    return _replace_singular(value, singular, limit)


def _scan(evaluate: Callable[[np.ndarray], np.ndarray], points: int, refine: int,
          find_max: bool) -> Tuple[float, float]:
    """Cực trị trên [0, 2π): lưới đều rồi làm mịn refine lần quanh điểm tốt nhất"""
    step = TWO_PI / points
    grid = step * np.arange(points)
    values = evaluate(grid)
    index = int(np.argmax(values) if find_max else np.argmin(values))
    local = grid[index] + step * np.linspace(-1.0, 1.0, 2 * refine + 1)
    local_values = evaluate(local)
    local_index = int(np.argmax(local_values) if find_max else np.argmin(local_values))
    candidates = [(values[index], grid[index]), (local_values[local_index], local[local_index])]
    best = max(candidates) if find_max else min(candidates)
    return float(best[0]), float(best[1] % TWO_PI)


@lru_cache(maxsize=32)
def filter_constants(order: QuaternionicOrder, truncation: int = DEFAULT_TRUNCATION_M,
                     points: int = SCAN_POINTS, refine: int = SCAN_REFINE) -> FilterConstants:
    """
    min|F_q^M|, sup|(F_q′)_s|, sup|(F_q′)_v| và cận phần đuôi

    Args:
        order: Bậc q
        truncation: M
        points: Số điểm quét trên [0, 2π)
        refine: Hệ số làm mịn quanh cực trị
    """
    if order.a <= 1.0:
        raise DomainError(f"filter_constants yêu cầu Sc q > 1, nhận {order.a}")
    min_modulus, argmin = _scan(
        lambda x: filter_truncated(order, x, truncation).norm(), points, refine, find_max=False
    )
    sup_scalar, _ = _scan(
        lambda x: np.abs(filter_derivative(order, x, truncation).s), points, refine, find_max=True
    )
    sup_vector, _ = _scan(
        lambda x: np.abs(filter_derivative(order, x, truncation).u), points, refine, find_max=True
    )
    constants = FilterConstants(
        order=order,
        truncation=truncation,
        min_modulus=min_modulus,
        argmin=argmin,
        sup_scalar_derivative=sup_scalar,
        sup_vector_derivative=sup_vector,
        tail_bound=filter_tail_bound(order, truncation),
    )
    logger.debug(
        f"Hằng số bộ lọc q={order}: min|F|={min_modulus:.6f} tại ξ={argmin:.4f}, "
        f"sup|F'_s|+sup|F'_v|={constants.derivative_sup:.6f}"
    )
    return constants


def zero_free_check(order: QuaternionicOrder, truncation: int = DEFAULT_TRUNCATION_M,
                    points: int = SCAN_POINTS, refine: int = SCAN_REFINE,
                    margin: float = None) -> ZeroFreeVerdict:
    """
    Kiểm tra min|F_q^M| > tail_bound + margin (mặc định margin = tail_bound)

    Returns:
        ZeroFreeVerdict, không ném lỗi khi thất bại
    """
    tail = filter_tail_bound(order, truncation)
    margin = tail if margin is None else margin
    min_modulus, argmin = _scan(
        lambda x: filter_truncated(order, x, truncation).norm(), points, refine, find_max=False
    )
    passed = min_modulus > tail + margin
    verdict = ZeroFreeVerdict(min_modulus, tail, margin, argmin, passed)
    if passed:
        logger.info(f"Bộ lọc không có điểm không: min|F|={min_modulus:.6f} > {tail + margin:.3e}")
    else:
        logger.warning(f"Bộ lọc có thể có điểm không: min|F|={min_modulus:.3e} tại ξ={argmin:.4f}")
    return verdict


def epstein_constant(order: QuaternionicOrder, truncation: int = DEFAULT_TRUNCATION_M,
                     points: int = SCAN_POINTS, refine: int = SCAN_REFINE) -> float:
    """S_q = (sup|(F_q′)_s| + sup|(F_q′)_v|) / inf|F_q|²"""
    constants = filter_constants(order, truncation, points, refine)
    if constants.min_modulus <= constants.tail_bound:
        raise ZeroFilter(
            f"inf|F_q| = {constants.min_modulus:.3e} không vượt cận đuôi {constants.tail_bound:.3e}"
        )
    return constants.epstein


def reciprocal_second_derivative_sup(order: QuaternionicOrder, truncation: int = DEFAULT_TRUNCATION_M,
                                     points: int = SCAN_POINTS, refine: int = SCAN_REFINE) -> float:
    """sup|((1/F_q)″)_s| + sup|((1/F_q)″)_v|, (1/F)″ = 2F′²/F³ − F″/F²"""

    def second(x: np.ndarray) -> AxialElement:
        value = filter_truncated(order, x, truncation)
        slope = filter_derivative(order, x, truncation)
        curvature = filter_second_derivative(order, x, truncation)
        inverse = value.inverse()
        return slope * slope * inverse * inverse * inverse * 2.0 - curvature * inverse * inverse

    sup_scalar, _ = _scan(lambda x: np.abs(second(x).s), points, refine, find_max=True)
    sup_vector, _ = _scan(lambda x: np.abs(second(x).u), points, refine, find_max=True)
    return sup_scalar + sup_vector


def epstein_bound(order: QuaternionicOrder, n: int, smoothness: int = 1,
                  truncation: int = DEFAULT_TRUNCATION_M) -> float:
    """
    Cận (2π)² (12/N)^ℓ ‖(1/F_q)^{(ℓ)}‖ cho sai số tổng Riemann N điểm, ℓ ∈ {1, 2}
    """
    if smoothness == 1:
        return TWO_PI ** 2 * (12.0 / n) * epstein_constant(order, truncation)
    if smoothness == 2:
        if order.a <= 2.0:
            raise DomainError("Cận bậc hai cần Sc q > 2")
        return TWO_PI ** 2 * (12.0 / n) ** 2 * reciprocal_second_derivative_sup(order, truncation)
    raise DomainError(f"smoothness phải là 1 hoặc 2, nhận {smoothness}")


def epstein_check(order: QuaternionicOrder, n: int, reference_n: int = 2 ** 15,
                  truncation: int = DEFAULT_TRUNCATION_M) -> EpsteinReport:
    """So sánh tổng Riemann N điểm của 1/F_q^M với tham chiếu N lớn, |k| ≤ N/2"""

    def riemann(points: int) -> Tuple[np.ndarray, np.ndarray]:
        grid = TWO_PI * np.arange(points) / points
        inverse = _invert_filter(filter_truncated(order, grid, truncation))
        scale = TWO_PI / points
        return np.fft.fft(inverse.plus) * scale, np.fft.fft(inverse.minus) * scale

    plus, minus = riemann(n)
    ref_plus, ref_minus = riemann(reference_n)
    k = np.arange(-(n // 2), n // 2)
    diff = AxialElement.from_chi(order.axis, plus[k] - ref_plus[k], minus[k] - ref_minus[k])
    measured = float(np.max(diff.norm()))
    bound = epstein_bound(order, n, 1, truncation)
    return EpsteinReport(n=n, measured=measured, bound=bound, passed=measured <= bound)


# ---------------------------------------------------------------------- #
# Symbol và nghịch đảo theo bóng phức
# ---------------------------------------------------------------------- #
def _shadow_samples(order: QuaternionicOrder, truncation: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    ell = np.arange(1, truncation + 1)
    return (
        ell,
        np.asarray(bspline_time_complex(order.w, ell.astype(float))),
        np.asarray(bspline_time_complex(np.conj(order.w), ell.astype(float))),
    )


def symbol_determinant(order: QuaternionicOrder, frequency: Any, truncation: int) -> Any:
    """(Σ B_w(ℓ) z^ℓ)(Σ B_{w̄}(ℓ) z^ℓ), z = e^{−iξ}"""
    ell, samples, samples_conj = _shadow_samples(order, truncation)
    phases = np.exp(-1j * np.multiply.outer(np.asarray(frequency, dtype=float), ell))
    return _unwrap((phases @ samples) * (phases @ samples_conj))


def symbol_inverse_formula(order: QuaternionicOrder, frequency: Any, truncation: int) -> AxialElement:
    """
    Nghịch đảo của symbol Σ B_q(ℓ) z^ℓ:
    Σ[Re B_w(ℓ) − μ Im B_w(ℓ)] z^ℓ / ((Σ B_w(ℓ) z^ℓ)(Σ B_{w̄}(ℓ) z^ℓ))
    """
    ell, samples, samples_conj = _shadow_samples(order, truncation)
    phases = np.exp(-1j * np.multiply.outer(np.asarray(frequency, dtype=float), ell))
    determinant = (phases @ samples) * (phases @ samples_conj)
    if np.any(np.abs(determinant) < 1e-14):
        raise ZeroFilter("Symbol có điểm không trên đường tròn đơn vị")
    numerator = AxialElement(order.axis, _unwrap(phases @ samples.real), _unwrap(-(phases @ samples.imag)))
    return numerator * (1.0 / np.asarray(determinant))


# ---------------------------------------------------------------------- #
# Spline nội suy cơ bản L_q
# ---------------------------------------------------------------------- #
def _invert_filter(values: AxialElement) -> AxialElement:
    try:
        return values.inverse()
    except NonInvertible as e:
        raise ZeroFilter(f"Bộ lọc không khả nghịch: {e}") from e


def lq_hat(order: QuaternionicOrder, frequency: Any, truncation: int = DEFAULT_TRUNCATION_M) -> AxialElement:
    """L̂_q(ξ) = B̂_q(ξ) · F_q(ξ)^{−1}"""
    return bspline_hat(order, frequency) * _invert_filter(filter_truncated(order, frequency, truncation))


def _fft_layout(omega: float, fft_size: int) -> Tuple[int, int]:
    """Kiểm tra Ω, N_f; trả về (số chu kỳ 2π trong [−Ω, Ω), số điểm mỗi chu kỳ)"""
    if fft_size < 2 or fft_size & (fft_size - 1):
        raise DomainError(f"Kích thước FFT phải là lũy thừa của 2, nhận {fft_size}")
    periods = omega / TWO_PI
    if periods < 1 or abs(periods - round(periods)) > 1e-9:
        raise DomainError(f"Ω phải là bội của 2π, nhận {omega}")
    total_periods = 2 * int(round(periods))
    if fft_size % total_periods:
        raise DomainError(f"N_f = {fft_size} không chia hết cho {total_periods} chu kỳ")
    return total_periods, fft_size // total_periods


def _inverse_fourier(spectrum: np.ndarray, d_xi: float) -> np.ndarray:
    """(1/2π) Σ_j L̂(ξ_j) e^{iξ_j x_m} Δξ với ξ_j = −Ω + jΔξ, x_m = mπ/Ω, xếp theo x tăng"""
    n = spectrum.size
    raw = np.fft.ifft(spectrum) * (n * d_xi / TWO_PI)
    signs = np.where(np.arange(n) % 2, -1.0, 1.0)
    return np.fft.fftshift(raw * signs)


def alias_estimate(order: QuaternionicOrder, omega: float, min_modulus: float) -> float:
    """(1/2π) ∫_{|ξ|>Ω} |L̂_q| theo bao |ξ|^{−a}"""
    a = order.a
    return 2.0 ** a * omega ** (1.0 - a) / (math.pi * (a - 1.0) * min_modulus)


def lq_grid(order: QuaternionicOrder, omega: float = DEFAULT_OMEGA, fft_size: int = DEFAULT_FFT_SIZE,
            truncation: int = DEFAULT_TRUNCATION_M) -> GridFunction:
    """
    Mẫu của L_q trên lưới x_m = mπ/Ω bằng FFT ngược của L̂_q trên [−Ω, Ω)

    Args:
        order: Bậc q (phải qua kiểm tra không điểm không)
        omega: Băng thông Ω, bội của 2π
        fft_size: N_f, lũy thừa của 2
        truncation: M của bộ lọc

    Raises:
        ZeroFilter: bộ lọc không qua kiểm tra
    """
    total_periods, per_period = _fft_layout(omega, fft_size)
    verdict = zero_free_check(order, truncation)
    if not verdict.passed:
        raise ZeroFilter(f"q = {order} không qua kiểm tra không điểm không (min|F| = {verdict.min_modulus:.3e})")

    d_xi = 2.0 * omega / fft_size
    frequency = -omega + d_xi * np.arange(fft_size)
    inverse = _invert_filter(filter_truncated(order, d_xi * np.arange(per_period), truncation))
    inverse = AxialElement(order.axis, np.tile(inverse.s, total_periods), np.tile(inverse.u, total_periods))
    spectrum = bspline_hat(order, frequency) * inverse

    values = AxialElement.from_chi(
        order.axis,
        _inverse_fourier(np.asarray(spectrum.plus), d_xi),
        _inverse_fourier(np.asarray(spectrum.minus), d_xi),
    )

    alias = alias_estimate(order, omega, verdict.min_modulus)
    if alias > ALIAS_TOLERANCE:
        logger.warning(f"Phần đuôi của L̂_q ngoài Ω ước lượng {alias:.3e}")
        warnings.warn(f"Ước lượng aliasing {alias:.3e} vượt {ALIAS_TOLERANCE:g}", AliasWarning)

    step = math.pi / omega
    logger.debug(f"lq_grid: Ω={omega:.4f}, N_f={fft_size}, Δx={step:.6f}, aliasing≈{alias:.2e}")
    return GridFunction(start=-(fft_size // 2) * step, step=step, values=values)


def lq_grid_shadow(w: complex, omega: float = DEFAULT_OMEGA, fft_size: int = DEFAULT_FFT_SIZE,
                   truncation: int = DEFAULT_TRUNCATION_M) -> Tuple[np.ndarray, np.ndarray]:
    """Spline cơ bản phức L_w trên cùng lưới với lq_grid, số học phức thuần"""
    total_periods, per_period = _fft_layout(omega, fft_size)
    d_xi = 2.0 * omega / fft_size
    period = d_xi * np.arange(per_period)
    filt = np.zeros(per_period, dtype=complex)
    for k in range(-truncation, truncation + 1):
        filt += bspline_hat_complex(w, period + TWO_PI * k)
    if np.any(np.abs(filt) < 1e-14):
        raise ZeroFilter(f"Bộ lọc phức bậc {w} có điểm không")
    frequency = -omega + d_xi * np.arange(fft_size)
    spectrum = np.asarray(bspline_hat_complex(w, frequency)) / np.tile(filt, total_periods)
    step = math.pi / omega
    x = step * np.arange(-(fft_size // 2), fft_size - fft_size // 2)
    return x, _inverse_fourier(spectrum, d_xi)


def symmetry_defect(grid: GridFunction, half_width: float = 20.0) -> float:
    """max |L(x) − L(−x)| trên |x| ≤ half_width (chỉ báo cáo)"""
    x = grid.x
    x = x[np.abs(x) <= half_width]
    difference = grid.sample(x) - grid.sample(-x)
    return float(np.max(difference.norm()))


def decay_check(grid: GridFunction, order: QuaternionicOrder,
                fit_range: Tuple[float, float] = DECAY_RANGE, slack: float = DECAY_SLACK) -> DecayReport:
    """
    Khớp log của bao max|L| trên từng đoạn đơn vị theo log|x| trên fit_range

    L_q triệt tiêu tại các số nguyên nên dùng cực đại từng đoạn thay vì mẫu thô.
    """
    low, high = fit_range
    x = grid.x
    if np.max(np.abs(x)) < high:
        raise DomainError(f"Lưới phải phủ |x| ≥ {high}")
    magnitude = grid.values.norm()
    locations, envelope = [], []
    for left in range(int(math.floor(low)), int(math.ceil(high))):
        mask = (np.abs(x) >= left) & (np.abs(x) < left + 1)
        if not np.any(mask):
            continue
        index = int(np.argmax(magnitude[mask]))
        envelope.append(magnitude[mask][index])
        locations.append(abs(x[mask][index]))
    return _fit_decay(np.array(locations), np.array(envelope), -math.floor(order.a) + slack, (low, high))


def _fit_decay(locations: np.ndarray, magnitudes: np.ndarray, bound: float,
               fit_range: Tuple[float, float]) -> DecayReport:
    log_x = np.log(locations)
    log_y = np.log(np.maximum(magnitudes, np.finfo(float).tiny))
    slope, intercept = np.polyfit(log_x, log_y, 1)
    residual = float(np.max(np.abs(log_y - (slope * log_x + intercept))))
    return DecayReport(
        exponent=float(slope),
        constant=float(np.exp(intercept)),
        max_residual=residual,
        bound_exponent=float(bound),
        fit_range=(float(fit_range[0]), float(fit_range[1])),
        passed=bool(slope <= bound),
    )


# ---------------------------------------------------------------------- #
# Hệ số nội suy
# ---------------------------------------------------------------------- #
def _dft_coefficients(order: QuaternionicOrder, n: int, truncation: int) -> Tuple[np.ndarray, AxialElement]:
    """c_{N,M,k} = (1/N) Σ_j e^{2πijk/N} / F_q^M(2πj/N), k = −N/2..N/2−1"""
    grid = TWO_PI * np.arange(n) / n
    inverse = _invert_filter(filter_truncated(order, grid, truncation))
    plus = np.fft.fftshift(np.fft.ifft(inverse.plus))
    minus = np.fft.fftshift(np.fft.ifft(inverse.minus))
    k = np.arange(-(n // 2), n - n // 2)
    return k, AxialElement.from_chi(order.axis, plus, minus)


def coeffs_dft(order: QuaternionicOrder, n: int = DEFAULT_DFT_N,
               truncation: int = DEFAULT_TRUNCATION_M) -> CoeffTable:
    """
    Hệ số nội suy c_{N,M,k} chuẩn hóa sao cho Σ_k c_k b_{m−k} = δ_{m,0}

    Cận sai số: 2π(12/N)S_q + tail/(m(m − tail)), m = min|F_q^M|
    """
    constants = filter_constants(order, truncation)
    tail = constants.tail_bound
    if constants.min_modulus <= tail:
        raise ZeroFilter(f"min|F_q^M| = {constants.min_modulus:.3e} ≤ cận đuôi {tail:.3e}")
    k, c = _dft_coefficients(order, n, truncation)
    epstein_term = TWO_PI * (12.0 / n) * constants.epstein
    truncation_term = tail / (constants.min_modulus * (constants.min_modulus - tail))
    logger.info(f"coeffs_dft: N={n}, M={truncation}, cận sai số {epstein_term + truncation_term:.3e}")
    return CoeffTable(
        order=order,
        n=n,
        truncation=truncation,
        k=k,
        c=c,
        error_bound=epstein_term + truncation_term,
        epstein_term=epstein_term,
        truncation_term=truncation_term,
    )


def interpolation_residual(table: CoeffTable, symbol: IntegerSymbol, m_max: int = 10) -> float:
    """max_{|m|≤m_max} |Σ_k c_k b_{m−k} − δ_{m,0}|"""
    table_c, symbol_b = _align_pair(table.c, symbol.b)
    plus = np.convolve(np.asarray(table_c.plus), np.asarray(symbol_b.plus))
    minus = np.convolve(np.asarray(table_c.minus), np.asarray(symbol_b.minus))
    m = table.k[0] + symbol.k[0] + np.arange(plus.size)
    product = AxialElement.from_chi(table_c.axis, plus, minus) - (m == 0).astype(float)
    mask = np.abs(m) <= m_max
    return float(np.max(product.norm()[mask]))


def _align_pair(first: AxialElement, second: AxialElement) -> Tuple[AxialElement, AxialElement]:
    return first, second.in_axis(first.axis)


def coefficient_decay(table: CoeffTable, k_range: Tuple[int, int] = COEFFICIENT_DECAY_RANGE,
                      slack: float = DECAY_SLACK) -> DecayReport:
    """Khớp log max(|c_k|, |c_{−k}|) theo log k; cận −⌊a⌋ − 1 + slack"""
    low, high = k_range
    ks = np.arange(low, high + 1)
    magnitude = table.c.norm()
    values = np.array([
        max(magnitude[k - table.k[0]], magnitude[-k - table.k[0]]) for k in ks
    ])
    return _fit_decay(ks.astype(float), values, -math.floor(table.order.a) - 1 + slack, (low, high))


def truncation_self_consistency(order: QuaternionicOrder, n: int, truncation: int, k_max: int = 8) -> float:
    """
    max_{|k|≤k_max} |c_{N,M,k} − c_{N,2M,k}|, tính không triệt tiêu qua
    1/F^M − 1/F^{2M} = ΔF/(F^M F^{2M})
    """
    grid = TWO_PI * np.arange(n) / n
    low = filter_truncated(order, grid, truncation)
    increment = filter_increment(order, grid, truncation, 2 * truncation)
    difference = increment * _invert_filter(low * (low + increment))
    plus = np.fft.fftshift(np.fft.ifft(difference.plus))
    minus = np.fft.fftshift(np.fft.ifft(difference.minus))
    k = np.arange(-(n // 2), n - n // 2)
    values = AxialElement.from_chi(order.axis, plus, minus).norm()
    return float(np.max(values[np.abs(k) <= k_max]))


def dft_self_consistency(order: QuaternionicOrder, n: int, truncation: int, k_max: int = 8) -> float:
    """max_{|k|≤k_max} |c_{N,M,k} − c_{2N,M,k}|"""
    k_small, small = _dft_coefficients(order, n, truncation)
    k_large, large = _dft_coefficients(order, 2 * n, truncation)
    ks = np.arange(-k_max, k_max + 1)
    difference = small[ks - k_small[0]] - large[ks - k_large[0]]
    return float(np.max(difference.norm()))


def convergence_slope(parameters: Sequence[float], errors: Sequence[float]) -> float:
    """Hệ số góc của log₂(sai số) theo log₂(tham số)"""
    slope, _ = np.polyfit(np.log2(parameters), np.log2(errors), 1)
    return float(slope)
