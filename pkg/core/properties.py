# -*- coding: utf-8 -*-
"""
Properties Module - Kiểm tra ngẫu nhiên các đẳng thức đại số của quaternion
thực, quaternion phức và phần tử trục

Mỗi tính chất nhận một Generator và trả về sai số (tương đối) của một lần rút.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from config.settings import ALGEBRA_DRAWS, ALGEBRA_TOLERANCE
from core.quaternion import (
    AxialElement, Axis, ComplexQuaternion, QuaternionicOrder, RealQuaternion,
    chi, exp_axial, exp_q, invert_complex, power_zq, star
)

logger = logging.getLogger(__name__)

PropertyCheck = Callable[[np.random.Generator], float]

DERIVATIVE_TOLERANCE = 1e-6


# ---------------------------------------------------------------------- #
# Phần tử ngẫu nhiên
# ---------------------------------------------------------------------- #
def random_complex_quaternion(rng: np.random.Generator) -> ComplexQuaternion:
    parts = rng.standard_normal(8)
    return ComplexQuaternion(*(parts[:4] + 1j * parts[4:]))


def random_real_quaternion(rng: np.random.Generator) -> RealQuaternion:
    return RealQuaternion.from_components(rng.standard_normal(4))


def random_axis(rng: np.random.Generator) -> Axis:
    return Axis.from_vector(rng.standard_normal(3))


def random_order(rng: np.random.Generator, low: float = -2.0, high: float = 4.0) -> QuaternionicOrder:
    """Bậc ngẫu nhiên: Sc q ∈ [low, high), 0.1 ≤ |v| < 2"""
    direction = random_axis(rng).mu
    modulus = rng.uniform(0.1, 2.0)
    return QuaternionicOrder.from_components(rng.uniform(low, high), *np.multiply(direction, modulus))


def random_axial(rng: np.random.Generator, axis: Axis) -> AxialElement:
    parts = rng.standard_normal(4)
    return AxialElement(axis, complex(parts[0], parts[1]), complex(parts[2], parts[3]))


def _relative(difference: float, scale: float) -> float:
    return float(difference) / max(float(scale), np.finfo(float).tiny)


# ---------------------------------------------------------------------- #
# Tính chất
# ---------------------------------------------------------------------- #
def check_star_involution(rng: np.random.Generator) -> float:
    p = random_complex_quaternion(rng)
    return _relative((star(star(p)) - p).norm(), p.norm())


def check_star_product(rng: np.random.Generator) -> float:
    """(pq)* = q* p*"""
    p = random_complex_quaternion(rng)
    q = random_complex_quaternion(rng)
    return _relative(((p * q).star() - q.star() * p.star()).norm(), p.norm() * q.norm())


def check_complex_inverse(rng: np.random.Generator) -> float:
    """p · p⁻¹ = 1 khi z0² + Σz_i² ≠ 0"""
    p = random_complex_quaternion(rng)
    while abs(p.determinant()) < 0.1 * p.norm_sq():
        p = random_complex_quaternion(rng)
    inverse = invert_complex(p)
    error = max((p * inverse - 1.0).norm(), (inverse * p - 1.0).norm())
    return _relative(error, p.norm() * inverse.norm())


def check_chi_projectors(rng: np.random.Generator) -> float:
    """χ±² = χ±, χ+χ− = 0, χ+ + χ− = 1"""
    axis = random_axis(rng)
    plus, minus = chi("+", axis), chi("-", axis)
    return max(
        (plus * plus - plus).norm(),
        (minus * minus - minus).norm(),
        (plus * minus).norm(),
        (minus * plus).norm(),
        (plus + minus - 1.0).norm(),
    )


def check_axial_product(rng: np.random.Generator) -> float:
    """Tích trên trục bằng tích Hamilton sau khi nhúng vào H_C"""
    axis = random_axis(rng)
    x, y = random_axial(rng, axis), random_axial(rng, axis)
    embedded = x.to_complex_quaternion() * y.to_complex_quaternion()
    return _relative(((x * y).to_complex_quaternion() - embedded).norm(), x.norm() * y.norm())


def check_norm_identity(rng: np.random.Generator) -> float:
    """|q|² = [q q*]₀ cho quaternion thực và phức"""
    q = random_real_quaternion(rng)
    p = random_complex_quaternion(rng)
    real_error = _relative(abs((q * q.conj()).a - q.norm_sq()), q.norm_sq())
    complex_error = _relative(abs((p * p.star()).scalar - p.norm_sq()), p.norm_sq())
    return max(real_error, complex_error)


def check_exp_modulus(rng: np.random.Generator) -> float:
    """|e^q| = e^a với q thực"""
    q = random_real_quaternion(rng)
    return _relative(abs(exp_q(q).norm() - math.exp(q.a)), math.exp(q.a))


def check_exp_bound(rng: np.random.Generator) -> float:
    """|e^{zq}| ≤ e^{√2|z||q|}; trả về phần vượt tương đối (0 nếu thỏa)"""
    q = random_real_quaternion(rng)
    z = complex(*rng.standard_normal(2))
    ratio = exp_q(q, z).norm() / math.exp(math.sqrt(2.0) * abs(z) * q.norm())
    return max(0.0, ratio - 1.0)


def check_exp_inverse(rng: np.random.Generator) -> float:
    """e^{λq} e^{−λq} = 1 với λ phức; sai số so với |e^{λq}||e^{−λq}|"""
    q = random_real_quaternion(rng)
    lam = complex(*rng.standard_normal(2))
    forward, backward = exp_q(q, lam), exp_q(q, -lam)
    return _relative((forward * backward - 1.0).norm(), forward.norm() * backward.norm())


def check_power_reflection(rng: np.random.Generator) -> float:
    """(−t)^q = e^{iπq} t^q, t > 0 (arg(−t) = +π)"""
    order = random_order(rng)
    t = rng.uniform(0.1, 10.0)
    rotated = exp_axial(order, 1j * math.pi) * power_zq(t, order)
    return _relative((power_zq(-t, order) - rotated).norm(), rotated.norm())


def check_power_derivative(rng: np.random.Generator) -> float:
    """d/dz z^q = q z^{q−1} bằng sai phân trung tâm, z ngoài nhát cắt"""
    order = random_order(rng, 1.0, 4.0)
    z = rng.uniform(0.5, 3.0) * np.exp(1j * rng.uniform(-math.pi + 0.3, math.pi - 0.3))
    h = 1e-5 * abs(z)
    quotient = (power_zq(z + h, order) - power_zq(z - h, order)) * (0.5 / h)
    exact = order.as_axial() * power_zq(z, order.shifted(-1.0))
    return _relative((quotient - exact).norm(), exact.norm())


PROPERTIES: Dict[str, Tuple[PropertyCheck, float]] = {
    "star involution": (check_star_involution, ALGEBRA_TOLERANCE),
    "star of product": (check_star_product, ALGEBRA_TOLERANCE),
    "complex inverse": (check_complex_inverse, ALGEBRA_TOLERANCE),
    "chi projectors": (check_chi_projectors, ALGEBRA_TOLERANCE),
    "axial vs Hamilton": (check_axial_product, ALGEBRA_TOLERANCE),
    "norm identity": (check_norm_identity, ALGEBRA_TOLERANCE),
    "|e^q| = e^a": (check_exp_modulus, ALGEBRA_TOLERANCE),
    "exp bound": (check_exp_bound, ALGEBRA_TOLERANCE),
    "exp inverse": (check_exp_inverse, ALGEBRA_TOLERANCE),
    "power reflection": (check_power_reflection, ALGEBRA_TOLERANCE),
    "power derivative": (check_power_derivative, DERIVATIVE_TOLERANCE),
}


@dataclass
class PropertyReport:
    """Sai số lớn nhất của từng tính chất sau một loạt lần rút"""
    draws: int
    errors: Dict[str, float] = field(default_factory=dict)
    tolerances: Dict[str, float] = field(default_factory=dict)

    @property
    def failures(self) -> List[str]:
        return [name for name, error in self.errors.items() if not error <= self.tolerances[name]]

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def worst(self) -> Tuple[str, float]:
        """Tính chất có sai số/ngưỡng lớn nhất"""
        name = max(self.errors, key=lambda key: self.errors[key] / self.tolerances[key])
        return name, self.errors[name]


def run_property_suite(rng: np.random.Generator, draws: int = ALGEBRA_DRAWS,
                       names: Optional[Sequence[str]] = None) -> PropertyReport:
    """
    Chạy các tính chất xoay vòng cho tổng cộng `draws` lần rút

    Args:
        rng: Generator đã seed
        draws: Tổng số lần rút
        names: Tập con của PROPERTIES (mặc định tất cả)
    """
    names = list(names or PROPERTIES)
    report = PropertyReport(draws, {name: 0.0 for name in names},
                            {name: PROPERTIES[name][1] for name in names})
    for index in range(draws):
        name = names[index % len(names)]
        error = PROPERTIES[name][0](rng)
        if not error <= report.errors[name]:
            report.errors[name] = error

    if report.passed:
        logger.info(f"Bộ tính chất đại số: {draws} lần rút, đạt")
    else:
        logger.warning(f"Bộ tính chất đại số thất bại: {', '.join(report.failures)}")
    return report
