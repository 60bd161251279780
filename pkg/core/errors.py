# -*- coding: utf-8 -*-
"""
Các lớp lỗi dùng chung cho QuatSpline
"""


class QuatSplineError(Exception):
    """Lỗi gốc của thư viện"""


class AxisMismatch(QuatSplineError, ValueError):
    """Hai phần tử trục có trục μ khác nhau"""


class NonInvertible(QuatSplineError, ZeroDivisionError):
    """Quaternion phức là ước của không (z0² + Σz_i² = 0)"""


class ZeroBase(QuatSplineError, ValueError):
    """Lũy thừa 0^q với Sc q ≤ 0"""


class DomainError(QuatSplineError, ValueError):
    """Tham số nằm ngoài miền xác định"""


class ZeroFilter(QuatSplineError, ArithmeticError):
    """Bộ lọc nội suy F_q có (gần) điểm không"""


class GridMismatch(QuatSplineError, ValueError):
    """Hai lưới không trùng nhau"""


class ConfigError(QuatSplineError, ValueError):
    """Cấu hình / tham số dòng lệnh không hợp lệ"""


class AliasWarning(UserWarning):
    """Phần đuôi của L̂_q ngoài [−Ω, Ω] vượt ngưỡng"""
