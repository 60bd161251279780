# -*- coding: utf-8 -*-
"""
Quaternion Module - Đại số quaternion thực H_R, quaternion phức H_C
và đại số con giao hoán sinh bởi một trục μ cố định
"""

import logging
from dataclasses import dataclass
from typing import Any, Sequence, Tuple, Union

import numpy as np

from config.settings import AXIS_TOLERANCE, INVERSE_TOLERANCE
from core.errors import AxisMismatch, DomainError, NonInvertible, ZeroBase

logger = logging.getLogger(__name__)

Number = Union[int, float, complex]
_REAL_TYPES = (int, float, np.integer, np.floating)
_SCALAR_TYPES = (int, float, complex, np.number)


def hamilton_product(p: Sequence[Any], q: Sequence[Any]) -> Tuple[Any, Any, Any, Any]:
    """
    Tích Hamilton trên bộ 4 thành phần (1, e1, e2, e3)

    Thành phần có thể là số hoặc mảng numpy cùng shape.
    """
    p0, p1, p2, p3 = p
    q0, q1, q2, q3 = q
    return (
        p0 * q0 - p1 * q1 - p2 * q2 - p3 * q3,
        p0 * q1 + p1 * q0 + p2 * q3 - p3 * q2,
        p0 * q2 - p1 * q3 + p2 * q0 + p3 * q1,
        p0 * q3 + p1 * q2 - p2 * q1 + p3 * q0,
    )


def _unwrap(value: Any) -> Any:
    """Mảng 0 chiều -> số complex"""
    arr = np.asarray(value)
    if arr.ndim == 0:
        return complex(arr)
    return arr


@dataclass(frozen=True)
class RealQuaternion:
    """Quaternion thực q = a + v1 e1 + v2 e2 + v3 e3"""
    a: float = 0.0
    v: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        vector = tuple(float(x) for x in self.v)
        if len(vector) != 3:
            raise ValueError(f"Phần vector phải có 3 thành phần, nhận {len(vector)}")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "v", vector)

    @classmethod
    def from_components(cls, components: Sequence[float]) -> "RealQuaternion":
        return cls(components[0], tuple(components[1:4]))

    def components(self) -> Tuple[float, float, float, float]:
        return (self.a,) + self.v

    @property
    def vector_norm(self) -> float:
        return float(np.linalg.norm(self.v))

    def norm_sq(self) -> float:
        return float(np.dot(self.components(), self.components()))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    def conj(self) -> "RealQuaternion":
        return RealQuaternion(self.a, tuple(-x for x in self.v))

    def inverse(self) -> "RealQuaternion":
        norm_sq = self.norm_sq()
        if norm_sq == 0.0:
            raise NonInvertible("Quaternion 0 không khả nghịch")
        return self.conj() * (1.0 / norm_sq)

    def to_complex(self) -> "ComplexQuaternion":
        return ComplexQuaternion(*self.components())

    def isclose(self, other: "RealQuaternion", tol: float = 1e-12) -> bool:
        diff = np.subtract(self.components(), other.components())
        return bool(np.max(np.abs(diff)) <= tol)

    def __add__(self, other):
        if isinstance(other, RealQuaternion):
            return RealQuaternion.from_components(np.add(self.components(), other.components()))
        if isinstance(other, _REAL_TYPES):
            return RealQuaternion(self.a + other, self.v)
        if isinstance(other, (complex, ComplexQuaternion)):
            return self.to_complex() + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return RealQuaternion(-self.a, tuple(-x for x in self.v))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RealQuaternion):
            return RealQuaternion.from_components(hamilton_product(self.components(), other.components()))
        if isinstance(other, _REAL_TYPES):
            return RealQuaternion.from_components(np.multiply(self.components(), float(other)))
        if isinstance(other, (complex, ComplexQuaternion)):
            return self.to_complex() * other
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, _REAL_TYPES):
            return self * other
        if isinstance(other, complex):
            return other * self.to_complex()
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, RealQuaternion):
            return self * other.inverse()
        if isinstance(other, _REAL_TYPES):
            return self * (1.0 / float(other))
        return NotImplemented

    def __str__(self) -> str:
        v1, v2, v3 = self.v
        return f"{self.a:g} {v1:+g}e1 {v2:+g}e2 {v3:+g}e3"


@dataclass(frozen=True)
class ComplexQuaternion:
    """Quaternion phức z0 + z1 e1 + z2 e2 + z3 e3, z_i ∈ C"""
    z0: complex = 0j
    z1: complex = 0j
    z2: complex = 0j
    z3: complex = 0j

    def __post_init__(self):
        for name in ("z0", "z1", "z2", "z3"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def from_components(cls, components: Sequence[complex]) -> "ComplexQuaternion":
        return cls(*components[:4])

    def components(self) -> Tuple[complex, complex, complex, complex]:
        return (self.z0, self.z1, self.z2, self.z3)

    @property
    def scalar(self) -> complex:
        return self.z0

    def star(self) -> "ComplexQuaternion":
        """Liên hợp Clifford: liên hợp phức hệ số, đổi dấu các đơn vị"""
        return ComplexQuaternion(
            self.z0.conjugate(), -self.z1.conjugate(), -self.z2.conjugate(), -self.z3.conjugate()
        )

    def tilde(self) -> "ComplexQuaternion":
        """Đổi dấu phần vector, giữ nguyên hệ số phức"""
        return ComplexQuaternion(self.z0, -self.z1, -self.z2, -self.z3)

    def norm_sq(self) -> float:
        return float(sum(abs(z) ** 2 for z in self.components()))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    def determinant(self) -> complex:
        """z0² + z1² + z2² + z3²; bằng 0 khi và chỉ khi là ước của không"""
        return complex(sum(z * z for z in self.components()))

    def inverse(self) -> "ComplexQuaternion":
        return invert_complex(self)

    def isclose(self, other: "ComplexQuaternion", tol: float = 1e-12) -> bool:
        other = _as_complex_quaternion(other)
        diff = np.subtract(self.components(), other.components())
        return bool(np.max(np.abs(diff)) <= tol)

    def __add__(self, other):
        other = _as_complex_quaternion(other)
        if other is None:
            return NotImplemented
        return ComplexQuaternion.from_components(np.add(self.components(), other.components()))

    __radd__ = __add__

    def __neg__(self):
        return ComplexQuaternion(-self.z0, -self.z1, -self.z2, -self.z3)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            return ComplexQuaternion.from_components(np.multiply(self.components(), complex(other)))
        other = _as_complex_quaternion(other)
        if other is None:
            return NotImplemented
        return ComplexQuaternion.from_components(hamilton_product(self.components(), other.components()))

    def __rmul__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            return self * other
        other = _as_complex_quaternion(other)
        if other is None:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        if isinstance(other, _SCALAR_TYPES):
            return self * (1.0 / complex(other))
        return self * invert_complex(_as_complex_quaternion(other))


def _as_complex_quaternion(value: Any):
    if isinstance(value, ComplexQuaternion):
        return value
    if isinstance(value, RealQuaternion):
        return value.to_complex()
    if isinstance(value, _SCALAR_TYPES):
        return ComplexQuaternion(value)
    return None


@dataclass(frozen=True)
class Axis:
    """Trục đơn vị μ = v/|v| (quaternion thuần, μ² = −1)"""
    mu: Tuple[float, float, float] = (1.0, 0.0, 0.0)

    def __post_init__(self):
        mu = tuple(float(x) for x in self.mu)
        if len(mu) != 3 or abs(np.linalg.norm(mu) - 1.0) > 1e-10:
            raise DomainError(f"Trục không phải vector đơn vị: {self.mu}")
        object.__setattr__(self, "mu", mu)

    @classmethod
    def from_vector(cls, vector: Sequence[float]) -> "Axis":
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            raise DomainError("Không thể chuẩn hóa vector 0 thành trục")
        return cls(tuple(np.asarray(vector, dtype=float) / norm))

    @classmethod
    def default(cls) -> "Axis":
        return cls()

    def same_as(self, other: "Axis") -> bool:
        return bool(np.max(np.abs(np.subtract(self.mu, other.mu))) <= AXIS_TOLERANCE)

    def opposite_of(self, other: "Axis") -> bool:
        return bool(np.max(np.abs(np.add(self.mu, other.mu))) <= AXIS_TOLERANCE)

    def negated(self) -> "Axis":
        return Axis(tuple(-x for x in self.mu))

    def as_quaternion(self) -> RealQuaternion:
        return RealQuaternion(0.0, self.mu)


@dataclass(frozen=True, eq=False)
class AxialElement:
    """
    Phần tử s + μ·u của đại số con giao hoán sinh bởi trục μ

    s, u là số phức hoặc mảng numpy phức cùng shape. Tích được chéo hóa
    bởi tọa độ χ±: plus = s − i·u, minus = s + i·u.
    """
    axis: Axis
    s: Any = 0j
    u: Any = 0j

    # numpy nhường phép toán hai ngôi cho lớp này
    __array_ufunc__ = None

    def __post_init__(self):
        s = np.asarray(self.s, dtype=complex)
        u = np.asarray(self.u, dtype=complex)
        if s.ndim == 0 and u.ndim == 0:
            object.__setattr__(self, "s", complex(s))
            object.__setattr__(self, "u", complex(u))
            return
        s, u = np.broadcast_arrays(s, u)
        object.__setattr__(self, "s", np.array(s))
        object.__setattr__(self, "u", np.array(u))

    # ------------------------------------------------------------------ #
    # Khởi tạo
    # ------------------------------------------------------------------ #
    @classmethod
    def from_chi(cls, axis: Axis, plus: Any, minus: Any) -> "AxialElement":
        """Dựng từ tọa độ χ+ (s − iu) và χ− (s + iu)"""
        plus = np.asarray(plus, dtype=complex)
        minus = np.asarray(minus, dtype=complex)
        return cls(axis, _unwrap((plus + minus) / 2.0), _unwrap(1j * (plus - minus) / 2.0))

    @classmethod
    def constant(cls, axis: Axis, value: Any) -> "AxialElement":
        return cls(axis, value, np.zeros_like(np.asarray(value, dtype=complex)))

    @classmethod
    def from_quaternion(cls, q: Union[RealQuaternion, ComplexQuaternion], axis: Axis) -> "AxialElement":
        """Chiếu quaternion có phần vector song song với trục"""
        components = _as_complex_quaternion(q).components()
        vector = np.asarray(components[1:], dtype=complex)
        mu = np.asarray(axis.mu)
        u = complex(np.dot(vector, mu))
        residual = np.max(np.abs(vector - u * mu))
        if residual > AXIS_TOLERANCE * max(1.0, float(np.max(np.abs(vector)))):
            raise AxisMismatch(f"Phần vector không song song với trục {axis.mu}")
        return cls(axis, components[0], u)

    # ------------------------------------------------------------------ #
    # Thuộc tính
    # ------------------------------------------------------------------ #
    @property
    def plus(self) -> Any:
        return _unwrap(np.asarray(self.s) - 1j * np.asarray(self.u))

    @property
    def minus(self) -> Any:
        return _unwrap(np.asarray(self.s) + 1j * np.asarray(self.u))

    @property
    def shape(self) -> Tuple[int, ...]:
        return np.shape(self.s)

    def __len__(self) -> int:
        return len(self.s)

    def __getitem__(self, index) -> "AxialElement":
        return AxialElement(self.axis, _unwrap(np.asarray(self.s)[index]), _unwrap(np.asarray(self.u)[index]))

    def norm(self) -> Any:
        """|s + μu| = sqrt(|s|² + |u|²)"""
        value = np.sqrt(np.abs(self.s) ** 2 + np.abs(self.u) ** 2)
        return float(value) if np.ndim(value) == 0 else value

    def determinant(self) -> Any:
        """s² + u² = plus·minus"""
        return _unwrap(np.asarray(self.s) ** 2 + np.asarray(self.u) ** 2)

    def components(self) -> Tuple[Any, Any, Any, Any]:
        """Thành phần theo (1, e1, e2, e3)"""
        mu1, mu2, mu3 = self.axis.mu
        return (self.s, mu1 * self.u, mu2 * self.u, mu3 * self.u)

    def to_complex_quaternion(self) -> ComplexQuaternion:
        if np.ndim(self.s) != 0:
            raise ValueError("Chỉ chuyển được phần tử vô hướng, dùng components() cho mảng")
        return ComplexQuaternion(*self.components())

    def tilde(self) -> "AxialElement":
        return AxialElement(self.axis, self.s, -np.asarray(self.u))

    def sum(self) -> "AxialElement":
        return AxialElement(self.axis, complex(np.sum(self.s)), complex(np.sum(self.u)))

    def in_axis(self, axis: Axis) -> "AxialElement":
        """Biểu diễn lại theo trục khác (trùng, ngược hướng, hoặc u ≡ 0)"""
        if self.axis.same_as(axis):
            return self
        if self.axis.opposite_of(axis):
            return AxialElement(axis, self.s, -np.asarray(self.u))
        if not np.any(np.asarray(self.u)):
            return AxialElement(axis, self.s, self.u)
        raise AxisMismatch(f"Trục {self.axis.mu} khác trục {axis.mu}")

    def isclose(self, other: "AxialElement", tol: float = 1e-12) -> bool:
        a, b = _align(self, other)
        diff = max(np.max(np.abs(a.s - b.s)), np.max(np.abs(a.u - b.u)))
        return bool(diff <= tol)

    def inverse(self) -> "AxialElement":
        """Nghịch đảo qua tọa độ χ±"""
        plus = np.asarray(self.plus)
        minus = np.asarray(self.minus)
        if np.any(np.abs(plus) < INVERSE_TOLERANCE) or np.any(np.abs(minus) < INVERSE_TOLERANCE):
            raise NonInvertible("Tọa độ χ± gần 0, phần tử không khả nghịch")
        return AxialElement.from_chi(self.axis, 1.0 / plus, 1.0 / minus)

    # ------------------------------------------------------------------ #
    # Phép toán
    # ------------------------------------------------------------------ #
    def _coerce(self, other: Any):
        if isinstance(other, AxialElement):
            return _align(self, other)
        if isinstance(other, (RealQuaternion, ComplexQuaternion)):
            return self, AxialElement.from_quaternion(other, self.axis)
        if isinstance(other, (_SCALAR_TYPES, np.ndarray)):
            return self, AxialElement.constant(self.axis, other)
        return None, None

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return AxialElement(a.axis, a.s + b.s, a.u + b.u)

    __radd__ = __add__

    def __neg__(self):
        return AxialElement(self.axis, -np.asarray(self.s), -np.asarray(self.u))

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return AxialElement(a.axis, a.s - b.s, a.u - b.u)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (_SCALAR_TYPES, np.ndarray)):
            return AxialElement(self.axis, self.s * np.asarray(other), self.u * np.asarray(other))
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return AxialElement(a.axis, a.s * b.s - a.u * b.u, a.s * b.u + b.s * a.u)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (_SCALAR_TYPES, np.ndarray)):
            return self * (1.0 / np.asarray(other, dtype=complex))
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other


def _align(a: AxialElement, b: AxialElement) -> Tuple[AxialElement, AxialElement]:
    """Đưa hai phần tử về cùng trục; AxisMismatch nếu không thể"""
    if a.axis.same_as(b.axis):
        return a, b
    try:
        return a, b.in_axis(a.axis)
    except AxisMismatch:
        return a.in_axis(b.axis), b


@dataclass(frozen=True)
class QuaternionicOrder:
    """
    Bậc quaternion q = a + v cùng bóng phức w = a + i|v| và trục μ

    Không ràng buộc Sc q ở đây; từng phép toán tự kiểm tra miền của nó.
    """
    q: RealQuaternion

    @classmethod
    def from_components(cls, a: float, v1: float = 0.0, v2: float = 0.0, v3: float = 0.0) -> "QuaternionicOrder":
        return cls(RealQuaternion(a, (v1, v2, v3)))

    @property
    def a(self) -> float:
        return self.q.a

    @property
    def degenerate(self) -> bool:
        return self.q.vector_norm <= AXIS_TOLERANCE

    @property
    def v_norm(self) -> float:
        return 0.0 if self.degenerate else self.q.vector_norm

    @property
    def w(self) -> complex:
        return complex(self.a, self.v_norm)

    @property
    def axis(self) -> Axis:
        if self.degenerate:
            return Axis.default()
        return Axis.from_vector(self.q.v)

    def as_axial(self) -> AxialElement:
        """q = a + μ|v| trong đại số trục"""
        return AxialElement(self.axis, self.a, self.v_norm)

    def shifted(self, delta: float) -> "QuaternionicOrder":
        return QuaternionicOrder(self.q + float(delta))

    def negated(self) -> "QuaternionicOrder":
        return QuaternionicOrder(-self.q)

    def __str__(self) -> str:
        return str(self.q)


def as_order(exponent: Union[QuaternionicOrder, RealQuaternion, float, int]) -> QuaternionicOrder:
    if isinstance(exponent, QuaternionicOrder):
        return exponent
    if isinstance(exponent, RealQuaternion):
        return QuaternionicOrder(exponent)
    if isinstance(exponent, _REAL_TYPES):
        return QuaternionicOrder(RealQuaternion(float(exponent)))
    raise TypeError(f"Không hỗ trợ số mũ kiểu {type(exponent).__name__}")


# ---------------------------------------------------------------------- #
# Các phép toán mức module
# ---------------------------------------------------------------------- #
def mul(p: Any, q: Any) -> Any:
    """Tích Hamilton cho H_R, H_C và phần tử trục"""
    return p * q


def star(q: Union[ComplexQuaternion, RealQuaternion]) -> ComplexQuaternion:
    return _as_complex_quaternion(q).star()


def invert_complex(q: Union[ComplexQuaternion, RealQuaternion]) -> ComplexQuaternion:
    """
    Nghịch đảo quaternion phức: q̃ / (z0² + Σ z_i²)

    Raises:
        NonInvertible: khi z0² + Σ z_i² = 0 (ước của không)
    """
    q = _as_complex_quaternion(q)
    det = q.determinant()
    if abs(det) <= INVERSE_TOLERANCE * max(1.0, q.norm_sq()):
        raise NonInvertible(f"Quaternion phức không khả nghịch: z0² + Σz_i² = {det}")
    return q.tilde() * (1.0 / det)


def principal_log(z: Any) -> Any:
    """log z với nhánh chính −π < arg z ≤ π (số thực âm lấy arg = +π)"""
    z_arr = np.asarray(z, dtype=complex)
    theta = np.angle(z_arr)
    theta = np.where(theta <= -np.pi, np.pi, theta)
    with np.errstate(divide="ignore"):
        return np.log(np.abs(z_arr)) + 1j * theta


def exp_q(q: Union[RealQuaternion, ComplexQuaternion, Number], lam: Number = 1.0) -> ComplexQuaternion:
    """
    Hàm mũ e^{λq}

    Với q thực: e^{λa}(cos(λ|v|) + μ sin(λ|v|)). Với q phức tổng quát:
    e^{z0}(cos ρ + w·sin ρ/ρ), ρ² = Σ w_i² của λq.
    """
    lam = complex(lam)
    if isinstance(q, _SCALAR_TYPES):
        return ComplexQuaternion(np.exp(lam * complex(q)))
    if isinstance(q, RealQuaternion):
        radial = np.exp(lam * q.a)
        modulus = q.vector_norm
        if modulus == 0.0:
            return ComplexQuaternion(radial)
        mu = np.asarray(q.v) / modulus
        sine = radial * np.sin(lam * modulus)
        return ComplexQuaternion(radial * np.cos(lam * modulus), *(sine * mu))

    z0, z1, z2, z3 = (lam * z for z in q.components())
    rho_sq = z1 * z1 + z2 * z2 + z3 * z3
    if abs(rho_sq) < 1e-16:
        cosine = 1.0 - rho_sq / 2.0 + rho_sq * rho_sq / 24.0
        sinc = 1.0 - rho_sq / 6.0 + rho_sq * rho_sq / 120.0
    else:
        rho = np.sqrt(complex(rho_sq))
        cosine = np.cos(rho)
        sinc = np.sin(rho) / rho
    radial = np.exp(z0)
    return ComplexQuaternion(radial * cosine, radial * sinc * z1, radial * sinc * z2, radial * sinc * z3)


def exp_axial(order: QuaternionicOrder, lam: Any = 1.0) -> AxialElement:
    """e^{λq} dạng phần tử trục: χ+ = e^{λw̄}, χ− = e^{λw}"""
    lam = np.asarray(lam, dtype=complex)
    return AxialElement.from_chi(order.axis, np.exp(lam * np.conj(order.w)), np.exp(lam * order.w))


def power_zq(z: Any, exponent: Union[QuaternionicOrder, RealQuaternion, float],
             axis: Axis = None) -> AxialElement:
    """
    Lũy thừa quaternion z^q = z^a[cos(|v| log z) + μ sin(|v| log z)]

    Args:
        z: Số phức hoặc mảng số phức
        exponent: Bậc q
        axis: Trục muốn biểu diễn kết quả (mặc định trục của q)

    Returns:
        AxialElement; tọa độ χ+ là z^{w̄}, χ− là z^w

    Raises:
        ZeroBase: z = 0 và Sc q ≤ 0
    """
    order = as_order(exponent)
    z_arr = np.asarray(z, dtype=complex)
    zero = z_arr == 0
    if np.any(zero) and order.a <= 0:
        raise ZeroBase(f"0^q không xác định với Sc q = {order.a}")

    log_z = principal_log(np.where(zero, 1.0, z_arr))
    with np.errstate(over="ignore", invalid="ignore"):
        radial = np.exp(order.a * log_z)
        angle = order.v_norm * log_z
        s = np.where(zero, 0.0, radial * np.cos(angle))
        u = np.where(zero, 0.0, radial * np.sin(angle))

    element = AxialElement(order.axis, _unwrap(s), _unwrap(u))
    return element if axis is None else element.in_axis(axis)


def shadow_power(z: Any, w: complex) -> Any:
    """Lũy thừa phức nhánh chính z^w (cùng quy ước arg như power_zq)"""
    z_arr = np.asarray(z, dtype=complex)
    zero = z_arr == 0
    if np.any(zero) and complex(w).real <= 0:
        raise ZeroBase(f"0^w không xác định với Re w = {complex(w).real}")
    with np.errstate(over="ignore", invalid="ignore"):
        value = np.exp(complex(w) * principal_log(np.where(zero, 1.0, z_arr)))
    return _unwrap(np.where(zero, 0.0, value))


def chi(sign: Union[str, int], axis: Axis) -> ComplexQuaternion:
    """Phép chiếu lũy đẳng χ±(v) = ½(1 ± iμ)"""
    if sign in ("+", 1, +1):
        factor = 0.5j
    elif sign in ("-", -1):
        factor = -0.5j
    else:
        raise ValueError(f"Dấu không hợp lệ: {sign}")
    mu1, mu2, mu3 = axis.mu
    return ComplexQuaternion(0.5, factor * mu1, factor * mu2, factor * mu3)
