# -*- coding: utf-8 -*-
"""
Special Functions - Hàm Gamma và hàm zeta Hurwitz (phức và quaternion)
"""

import math
import logging
from typing import Any, Callable

import numpy as np
from scipy.integrate import quad
from scipy.special import bernoulli

from config.settings import EULER_MACLAURIN_HEAD, EULER_MACLAURIN_TERMS, HURWITZ_DIRECT_TERMS
from core.errors import DomainError
from core.quaternion import (
    AxialElement, QuaternionicOrder, RealQuaternion, _unwrap, exp_axial, power_zq
)

logger = logging.getLogger(__name__)

# Hệ số Lanczos g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

_BERNOULLI = bernoulli(2 * EULER_MACLAURIN_TERMS)


def gamma_complex(z: Any) -> Any:
    """
    Hàm Gamma Γ(z) cho Re z > 0 bằng xấp xỉ Lanczos (dạng log)

    Args:
        z: Số phức hoặc mảng

    Raises:
        DomainError: nếu có Re z ≤ 0
    """
    z_arr = np.asarray(z, dtype=complex)
    if np.any(z_arr.real <= 0):
        raise DomainError("gamma_complex yêu cầu Re z > 0")

    zm = z_arr - 1.0
    series = np.full(zm.shape, _LANCZOS_COEFFS[0], dtype=complex)
    for i in range(1, len(_LANCZOS_COEFFS)):
        series = series + _LANCZOS_COEFFS[i] / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    value = _SQRT_TWO_PI * np.exp((zm + 0.5) * np.log(t) - t) * series
    return _unwrap(value)


def gamma_quat(order: QuaternionicOrder) -> RealQuaternion:
    """Γ(q) = Re Γ(w) + μ Im Γ(w), w = a + i|v|"""
    if order.a <= 0:
        raise DomainError(f"gamma_quat yêu cầu Sc q > 0, nhận {order.a}")
    value = gamma_complex(order.w)
    return RealQuaternion(value.real, tuple(np.multiply(order.axis.mu, value.imag)))


def inverse_gamma_quat(order: QuaternionicOrder) -> RealQuaternion:
    """1/Γ(q) = (Re Γ(w) − μ Im Γ(w)) / |Γ(w)|²"""
    if order.a <= 0:
        raise DomainError(f"inverse_gamma_quat yêu cầu Sc q > 0, nhận {order.a}")
    value = gamma_complex(order.w)
    scale = 1.0 / abs(value) ** 2
    return RealQuaternion(value.real * scale, tuple(np.multiply(order.axis.mu, -value.imag * scale)))


def hurwitz_zeta_complex(s: complex, a: Any) -> Any:
    """
    Hàm zeta Hurwitz ζ(s, a) = Σ_{k≥0} (a + k)^{−s} bằng Euler–Maclaurin

    Args:
        s: Re s > 1
        a: Số thực dương hoặc mảng

    Returns:
        Giá trị phức (hoặc mảng cùng shape với a)
    """
    s = complex(s)
    a_arr = np.asarray(a, dtype=float)
    if s.real <= 1.0:
        raise DomainError(f"hurwitz_zeta_complex yêu cầu Re s > 1, nhận {s}")
    if np.any(a_arr <= 0):
        raise DomainError("hurwitz_zeta_complex yêu cầu a > 0")

    head_n = EULER_MACLAURIN_HEAD
    k = np.arange(head_n)
    head = np.sum(np.power(a_arr[..., None] + k, -s), axis=-1)

    x = a_arr + head_n
    tail = np.power(x, 1.0 - s) / (s - 1.0) + 0.5 * np.power(x, -s)
    rising = s
    for j in range(1, EULER_MACLAURIN_TERMS + 1):
        tail = tail + _BERNOULLI[2 * j] / math.factorial(2 * j) * rising * np.power(x, -s - 2 * j + 1)
        rising = rising * (s + 2 * j - 1) * (s + 2 * j)

    return _unwrap(head + tail)


def hurwitz_zeta_quat(order: QuaternionicOrder, a: Any) -> AxialElement:
    """
    ζ(q, a) = χ−ζ(w, a) + χ+ζ(w̄, a)

    Tọa độ χ+ mang ζ(w̄, a), tọa độ χ− mang ζ(w, a).
    """
    if order.a <= 1.0:
        raise DomainError(f"hurwitz_zeta_quat yêu cầu Sc q > 1, nhận {order.a}")
    plus = hurwitz_zeta_complex(np.conj(order.w), a)
    minus = hurwitz_zeta_complex(order.w, a)
    return AxialElement.from_chi(order.axis, plus, minus)


def zeta_denominator(order: QuaternionicOrder, alpha: Any, negative_arg: float = math.pi) -> AxialElement:
    """
    D(q, α) = ζ(q, α) + e^{−iθq} ζ(q, 1 − α) = Σ_{k∈Z} (k + α)^{−q}

    Args:
        order: Bậc q, Sc q > 1
        alpha: 0 < α < 1 (số hoặc mảng)
        negative_arg: θ = arg của số thực âm; +π theo power_zq,
            −π cho phân tích của bộ lọc
    """
    alpha_arr = np.asarray(alpha, dtype=float)
    if np.any(alpha_arr <= 0) or np.any(alpha_arr >= 1):
        raise DomainError("zeta_denominator yêu cầu 0 < α < 1")
    rotation = exp_axial(order, -1j * negative_arg)
    return hurwitz_zeta_quat(order, alpha_arr) + rotation * hurwitz_zeta_quat(order, 1.0 - alpha_arr)


def hurwitz_zeta_direct(order: QuaternionicOrder, a: float, terms: int = HURWITZ_DIRECT_TERMS) -> AxialElement:
    """
    ζ(q, a) bằng tổng trực tiếp Σ_{k<K} (a + k)^{−q} cộng phần đuôi

    Phần đuôi: tích phân ∫_{a+K}^∞ và hai số hạng hiệu chỉnh đầu, tính
    trên từng tọa độ χ±.
    """
    if order.a <= 1.0:
        raise DomainError(f"hurwitz_zeta_direct yêu cầu Sc q > 1, nhận {order.a}")
    if a <= 0:
        raise DomainError("hurwitz_zeta_direct yêu cầu a > 0")
    head = power_zq(float(a) + np.arange(terms, dtype=float), order.negated()).sum()
    x = float(a) + terms

    def tail(s: complex) -> complex:
        return x ** (1.0 - s) / (s - 1.0) + 0.5 * x ** (-s) + s * x ** (-s - 1.0) / 12.0

    return head + AxialElement.from_chi(order.axis, tail(np.conj(order.w)), tail(order.w))


def gamma_quadrature(order: QuaternionicOrder) -> RealQuaternion:
    """
    Γ(q) = ∫_0^∞ t^{q−1} e^{−t} dt bằng scipy.integrate.quad

    Với t > 0, t^{q−1} = t^{a−1}(cos(|v| ln t) + μ sin(|v| ln t)): hai tích
    phân thực.
    """
    if order.a <= 0:
        raise DomainError(f"gamma_quadrature yêu cầu Sc q > 0, nhận {order.a}")
    exponent = order.a - 1.0
    modulus = order.v_norm

    def integrate(part: Callable[[float], float]) -> float:
        total = 0.0
        for low, high in ((0.0, 1.0), (1.0, np.inf)):
            value, _ = quad(lambda t: t ** exponent * math.exp(-t) * part(modulus * math.log(t)),
                            low, high, epsabs=1e-14, epsrel=1e-12, limit=200)
            total += value
        return total

    scalar = integrate(math.cos)
    vector = integrate(math.sin) if modulus > 0.0 else 0.0
    logger.debug(f"Γ({order}) bằng tích phân số: {scalar:.12g} + μ·{vector:.12g}")
    return RealQuaternion(scalar, tuple(np.multiply(order.axis.mu, vector)))
