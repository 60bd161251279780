# -*- coding: utf-8 -*-
"""
Cấu hình cho QuatSpline - B-spline bậc quaternion và spline nội suy cơ bản
"""

import os
import math

# Đường dẫn gốc
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# Thư mục data
DATA_DIR = os.path.join(BASE_DIR, "data")
OUTPUT_DIR = os.path.join(DATA_DIR, "output")
LOG_FILE = os.path.join(DATA_DIR, "quatspline.log")

# Tạo thư mục nếu chưa tồn tại
for dir_path in [DATA_DIR, OUTPUT_DIR]:
    os.makedirs(dir_path, exist_ok=True)

# Bậc quaternion mẫu: (a, v1, v2, v3), cả hai đều có |v| = 1/2
PRESETS = {
    "q1": (6.2, 1.0 / (2.0 * math.sqrt(2.0)), -0.25, 0.25),
    "q2": (2.5, 1.0 / (4.0 * math.sqrt(2.0)), 0.125, -math.sqrt(13.0) / 8.0),
}

# Hằng số tham chiếu của bộ lọc (M = 64, lưới quét 4096 điểm)
REFERENCE_CONSTANTS = {
    "q1": {"min_modulus": 0.1568, "derivative_sup": 3.7889},
    "q2": {"min_modulus": 0.7799, "derivative_sup": 2.1753},
}
MIN_MODULUS_TOLERANCE = 0.002
DERIVATIVE_SUP_TOLERANCE = 0.01

# Đại số quaternion
AXIS_TOLERANCE = 1e-12          # so sánh trục μ theo từng thành phần
INVERSE_TOLERANCE = 1e-14       # ngưỡng tọa độ χ± khi nghịch đảo

# Hàm đặc biệt
EULER_MACLAURIN_HEAD = 32
EULER_MACLAURIN_TERMS = 8
HURWITZ_DIRECT_TERMS = 100000

# Bộ lọc nội suy
DEFAULT_TRUNCATION_M = 64
SCAN_POINTS = 4096
SCAN_REFINE = 10
DERIVATIVE_SINGULAR_TOL = 1e-8
SECOND_DERIVATIVE_SINGULAR_TOL = 1e-5
ROUTE_EQUIVALENCE_M = 10000

# Spline cơ bản L_q qua FFT
DEFAULT_OMEGA = 64.0 * math.pi
DEFAULT_FFT_SIZE = 2 ** 16
ALIAS_TOLERANCE = 1e-3

# Hệ số nội suy qua DFT
DEFAULT_DFT_N = 1024
DEFAULT_INTEGER_RANGE = 40

# Kiểm tra độ suy giảm
DECAY_RANGE = (5.0, 20.0)
COEFFICIENT_DECAY_RANGE = (4, 24)
DECAY_SLACK = 0.5

# Lấy mẫu / tái tạo
SAMPLING_STEP = 1.0 / 64.0
SAMPLING_SPAN = 40.0
DEFAULT_SIGNAL_SUPPORT = 16
DEFAULT_TERMS = 64
RECONSTRUCTION_SIGNALS = 20
RECONSTRUCTION_TERMS = (16, 32, 64)
MONOTONE_SLACK = 1.1            # sai số được tăng tối đa 10% khi gấp đôi số hạng
RECONSTRUCTION_FLOOR = 1e-5      # dưới ngưỡng này sai số là nhiễu của lưới L_q

# Bộ kiểm tra verify
ALGEBRA_DRAWS = 10000
ALGEBRA_TOLERANCE = 1e-12
SERIES_TOLERANCE = 1e-8
FOURIER_FREQUENCIES = 20
EPSTEIN_SIZES = (256, 1024)
CONVERGENCE_TRUNCATIONS = (32, 64, 128)
CONVERGENCE_DFT_SIZES = (16, 32, 64)
SLOPE_TOLERANCE = 0.3

# CLI
DEFAULT_GRID_N = 2049
DEFAULT_XMAX = 20.0
DEFAULT_SEED = 20240517
DEFAULT_WORKERS = 4

# CSV settings
GRID_CSV_COLUMNS = ["t", "scalar", "e1", "e2", "e3"]
FREQUENCY_CSV_COLUMNS = ["xi", "s_re", "s_im", "u_re", "u_im"]
COEFFICIENT_CSV_COLUMNS = ["k", "s_re", "s_im", "u_re", "u_im"]
REPORT_COLUMNS = [
    "Check",            # Tên kiểm tra
    "Value",            # Giá trị đo được
    "Tolerance",        # Ngưỡng cho phép
    "Status",           # PASS / FAIL
    "Message",          # Ghi chú
    "Elapsed",          # Thời gian chạy (giây)
]
