# -*- coding: utf-8 -*-
"""
Giao diện dòng lệnh QuatSpline
"""

import os
import sys
import math
import logging
import argparse
from threading import Lock
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import gamma as scipy_gamma

from config.settings import (
    ALGEBRA_DRAWS, CONVERGENCE_DFT_SIZES, CONVERGENCE_TRUNCATIONS, DATA_DIR,
    DEFAULT_INTEGER_RANGE, DEFAULT_OMEGA, DEFAULT_SIGNAL_SUPPORT, DERIVATIVE_SUP_TOLERANCE,
    EPSTEIN_SIZES, FOURIER_FREQUENCIES, LOG_FILE, MIN_MODULUS_TOLERANCE, MONOTONE_SLACK,
    PRESETS, RECONSTRUCTION_FLOOR, RECONSTRUCTION_SIGNALS, RECONSTRUCTION_TERMS,
    REFERENCE_CONSTANTS, ROUTE_EQUIVALENCE_M, SAMPLING_SPAN, SAMPLING_STEP, SCAN_POINTS,
    SERIES_TOLERANCE, SLOPE_TOLERANCE
)
from config.run_config import RunConfig, load_config_file
from core.bspline import GridFunction, bspline_hat, bspline_time, bspline_time_shadow, integer_samples
from core.errors import ConfigError, DomainError, QuatSplineError, ZeroFilter
from core.fundamental import (
    CoeffTable, alias_estimate, coefficient_decay, coeffs_dft, convergence_slope, decay_check,
    dft_self_consistency, epstein_check, filter_constants, filter_derivative, filter_profile,
    filter_second_derivative, filter_tail_bound, filter_truncated, filter_zeta_form,
    interpolation_residual, lq_grid, lq_grid_shadow, symbol_inverse_formula, symmetry_defect,
    truncation_self_consistency, zero_free_check
)
from core.plotting import plot_filter, plot_filter_comparison, plot_grid
from core.properties import run_property_suite
from core.quaternion import AxialElement, QuaternionicOrder
from core.sampling import (
    SplineSignal, frame_bounds, reconstruct, relative_l2_error, sample_signal, synthesize
)
from core.special import (
    gamma_complex, gamma_quadrature, gamma_quat, hurwitz_zeta_complex, hurwitz_zeta_direct,
    hurwitz_zeta_quat
)
from core.table_handler import TableHandler
from core.thread_pool import ThreadPoolManager, VerificationTask, WorkerResult

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2

# Khóa của argparse không thuộc RunConfig
_PARSER_ONLY = ("command", "config", "verbose")


class _Parser(argparse.ArgumentParser):
    """argparse ném ConfigError thay vì tự thoát"""

    def error(self, message):
        raise ConfigError(message)


def setup_logging(verbose: int = 0):
    """Log ra console và file data/quatspline.log"""
    os.makedirs(DATA_DIR, exist_ok=True)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(),
            logging.FileHandler(LOG_FILE, encoding='utf-8')
        ],
        force=True
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=str, default=None, help="Bậc quaternion a,v1,v2,v3 (Sc q > 1)")
    common.add_argument("--preset", choices=sorted(PRESETS), default=None, help="Bậc mẫu")
    common.add_argument("--grid-n", type=int, default=None, help="Số điểm lưới thời gian/tần số")
    common.add_argument("--xmax", type=float, default=None, help="Cận phải của lưới x")
    common.add_argument("--fft-size", type=int, default=None, help="N_f của FFT (lũy thừa của 2)")
    common.add_argument("--trunc-m", type=int, default=None, help="M: số chu kỳ của bộ lọc")
    common.add_argument("--dft-n", type=int, default=None, help="N của DFT hệ số")
    common.add_argument("--out", type=str, default=None, help="Thư mục kết quả")
    common.add_argument("--plots", action="store_true", default=None, help="Xuất thêm hình PNG")
    common.add_argument("--compare", action="store_true", default=None,
                        help="figures: vẽ mọi preset trong một lần chạy, kèm hình so sánh |F|")
    common.add_argument("--seed", type=int, default=None, help="Seed của tín hiệu ngẫu nhiên")
    common.add_argument("--terms", type=int, default=None, help="Số hạng mỗi phía khi tái tạo")
    common.add_argument("--workers", type=int, default=None, help="Số worker khi verify")
    common.add_argument("--config", type=str, default=None, help="File cấu hình key = value")
    common.add_argument("-v", "--verbose", action="count", default=0, help="Log chi tiết")

    parser = _Parser(prog="quatspline", description="B-spline bậc quaternion và spline nội suy cơ bản")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, description in (
        ("bspline", "B_q trên lưới thời gian và B̂_q trên lưới tần số"),
        ("filter", "Bộ lọc F_q^M, đạo hàm và kiểm tra không điểm không"),
        ("fundamental", "Spline nội suy cơ bản L_q"),
        ("coeffs", "Hệ số nội suy c_{N,M,k}"),
        ("reconstruct", "Tái tạo tín hiệu ngẫu nhiên trong V_q từ mẫu nguyên"),
        ("verify", "Chạy bộ kiểm tra số học"),
        ("figures", "Xuất hình PNG"),
    ):
        subparsers.add_parser(name, parents=[common], help=description, description=description)
    return parser


def _flag_values(args: argparse.Namespace) -> Dict[str, Any]:
    return {key: value for key, value in vars(args).items() if key not in _PARSER_ONLY}


def _describe(value: AxialElement) -> str:
    return f"s={complex(value.s):.6g}, u={complex(value.u):.6g}"


def _time_grid(config: RunConfig) -> np.ndarray:
    return np.linspace(-1.0, config.xmax, config.grid_n)


def _fundamental(order: QuaternionicOrder, config: RunConfig) -> GridFunction:
    return lq_grid(order, DEFAULT_OMEGA, config.fft_size, config.trunc_m)


def _interpolation_error(grid: GridFunction, m_max: int = 20) -> float:
    m = np.arange(-m_max, m_max + 1)
    values = grid.sample(m.astype(float)) - (m == 0).astype(float)
    return float(np.max(values.norm()))


def _is_classical(order: QuaternionicOrder) -> bool:
    return order.degenerate and float(order.a).is_integer()


class _Shared:
    """Giá trị dùng chung giữa các worker, chỉ tính một lần"""

    def __init__(self, factory: Callable[[], Any]):
        self.factory = factory
        self.lock = Lock()
        self.ready = False
        self.value = None

    def __call__(self) -> Any:
        with self.lock:
            if not self.ready:
                self.value = self.factory()
                self.ready = True
        return self.value


# ---------------------------------------------------------------------- #
# Lệnh
# ---------------------------------------------------------------------- #
def cmd_bspline(config: RunConfig, order: QuaternionicOrder, handler: TableHandler) -> int:
    t = _time_grid(config)
    grid = GridFunction(start=float(t[0]), step=float(t[1] - t[0]), values=bspline_time(order, t))
    handler.write_grid_csv(grid, handler.path(f"bspline_{config.tag}.csv"))

    frequency = np.linspace(-4.0 * math.pi, 4.0 * math.pi, config.grid_n)
    hat = bspline_hat(order, frequency)
    handler.write_frequency_csv(frequency, hat, handler.path(f"bspline_hat_{config.tag}.csv"))

    symbol = integer_samples(order, DEFAULT_INTEGER_RANGE)
    print(f"q = {order}")
    print(f"B_q(1) = {_describe(bspline_time(order, 1.0))}")
    print(f"Σ_k B_q(k) = {_describe(symbol.total())}")
    if config.plots:
        plot_grid(grid, config.tag, config.out, name="bspline")
        plot_filter(frequency, hat, config.tag, config.out, name="bspline_hat")
    return EXIT_OK


def cmd_filter(config: RunConfig, order: QuaternionicOrder, handler: TableHandler) -> int:
    profile = filter_profile(order, config.trunc_m, SCAN_POINTS)
    handler.write_frequency_csv(profile.xi, profile.values, handler.path(f"filter_{config.tag}.csv"))
    slope = filter_derivative(order, profile.xi, config.trunc_m)
    handler.write_frequency_csv(profile.xi, slope, handler.path(f"filter_derivative_{config.tag}.csv"))
    if order.a > 2.0:
        curvature = filter_second_derivative(order, profile.xi, config.trunc_m)
        handler.write_frequency_csv(
            profile.xi, curvature, handler.path(f"filter_second_derivative_{config.tag}.csv")
        )
    if config.plots:
        plot_filter(profile.xi, profile.values, config.tag, config.out, name="filter")
        plot_filter(profile.xi, slope, config.tag, config.out, name="filter_derivative")

    verdict = zero_free_check(order, config.trunc_m)
    print(f"q = {order}, M = {config.trunc_m}")
    print(f"min|F_q^M| = {verdict.min_modulus:.6f} tại ξ = {verdict.argmin:.6f}")
    print(f"Cận đuôi = {verdict.tail_bound:.3e}")
    if not verdict.passed:
        print("Không điểm không: FAIL")
        return EXIT_NUMERIC

    constants = filter_constants(order, config.trunc_m)
    print(f"sup|F'_s| = {constants.sup_scalar_derivative:.6f}, sup|F'_v| = {constants.sup_vector_derivative:.6f}")
    print(f"S_q = {constants.epstein:.6f}")
    print("Không điểm không: PASS")
    return EXIT_OK


def cmd_fundamental(config: RunConfig, order: QuaternionicOrder, handler: TableHandler) -> int:
    grid = _fundamental(order, config)
    window = grid.crop(-config.xmax, config.xmax)
    handler.write_grid_csv(window, handler.path(f"fundamental_{config.tag}.csv"))

    m = np.arange(-20, 21)
    values = grid.sample(m.astype(float))
    off_center = values.norm()[m != 0]
    report = decay_check(grid, order)
    print(f"q = {order}")
    print(f"|L(0) − 1| = {float((values[20] - 1.0).norm()):.3e}")
    print(f"max_(1≤|m|≤20) |L(m)| = {float(np.max(off_center)):.3e}")
    print(f"Số mũ suy giảm = {report.exponent:.4f} (cận {report.bound_exponent:.2f})")
    print(f"Độ lệch đối xứng = {symmetry_defect(grid, min(20.0, config.xmax)):.3e}")
    if config.plots:
        plot_grid(window, config.tag, config.out)
    return EXIT_OK


def cmd_coeffs(config: RunConfig, order: QuaternionicOrder, handler: TableHandler) -> int:
    table = coeffs_dft(order, config.dft_n, config.trunc_m)
    handler.write_coefficients_csv(table, handler.path(f"coeffs_{config.tag}.csv"))
    handler.write_coefficients_xlsx(table, handler.path(f"coeffs_{config.tag}.xlsx"))
    handler.close()

    residual = interpolation_residual(table, integer_samples(order, DEFAULT_INTEGER_RANGE))
    print(f"q = {order}, N = {table.n}, M = {table.truncation}")
    print(f"c_0 = {_describe(table.coefficient(0))}")
    print(f"Cận sai số = {table.error_bound:.3e} "
          f"(Riemann {table.epstein_term:.3e}, cắt cụt {table.truncation_term:.3e})")
    print(f"max_(|m|≤10) |Σ c_k b_(m−k) − δ| = {residual:.3e}")
    return EXIT_OK


def cmd_reconstruct(config: RunConfig, order: QuaternionicOrder, handler: TableHandler) -> int:
    rng = np.random.default_rng(config.seed)
    signal = SplineSignal.random(order, DEFAULT_SIGNAL_SUPPORT, rng)
    x = np.arange(-SAMPLING_SPAN, SAMPLING_SPAN + SAMPLING_STEP / 2, SAMPLING_STEP)
    original = synthesize(signal, x)

    index = np.arange(-config.terms, config.terms + 1)
    samples = sample_signal(signal, index)
    rebuilt = reconstruct(order, index, samples, x, config.terms, _fundamental(order, config))

    handler.write_grid_csv(original, handler.path(f"reconstruct_original_{config.tag}.csv"))
    handler.write_grid_csv(rebuilt, handler.path(f"reconstruct_{config.tag}.csv"))
    error = relative_l2_error(rebuilt, original)
    print(f"q = {order}, N_terms = {config.terms}, seed = {config.seed}")
    print(f"Sai số L² tương đối = {error:.3e}")
    if config.plots:
        plot_grid(rebuilt, config.tag, config.out, name="reconstruct")
    return EXIT_OK


def _figure_targets(config: RunConfig, order: QuaternionicOrder) -> List[Tuple[str, QuaternionicOrder]]:
    """Bậc cần vẽ: bậc đã chọn, hoặc mọi preset khi bật compare"""
    if not config.compare:
        return [(config.tag, order)]
    return [(name, QuaternionicOrder.from_components(*PRESETS[name])) for name in sorted(PRESETS)]


def cmd_figures(config: RunConfig, order: QuaternionicOrder, handler: TableHandler) -> int:
    t = _time_grid(config)
    paths: List[str] = []
    profiles: Dict[str, Tuple[np.ndarray, AxialElement]] = {}
    for tag, target in _figure_targets(config, order):
        bspline = GridFunction(start=float(t[0]), step=float(t[1] - t[0]), values=bspline_time(target, t))
        paths += plot_grid(bspline, tag, config.out, name="bspline")
        paths += plot_grid(_fundamental(target, config).crop(-config.xmax, config.xmax), tag, config.out)

        profile = filter_profile(target, config.trunc_m, SCAN_POINTS)
        slope = filter_derivative(target, profile.xi, config.trunc_m)
        paths.append(plot_filter(profile.xi, profile.values, tag, config.out, name="filter"))
        paths.append(plot_filter(profile.xi, slope, tag, config.out, name="filter_derivative"))
        profiles[tag] = (profile.xi, profile.values)

    if len(profiles) > 1:
        paths.append(plot_filter_comparison(profiles, config.out))
    for path in paths:
        print(path)
    return EXIT_OK


def cmd_verify(config: RunConfig, order: QuaternionicOrder, handler: TableHandler) -> int:
    tasks = build_verification_tasks(order, config)
    pool = ThreadPoolManager(max_workers=config.workers)
    results = pool.process_tasks(tasks)

    print(f"q = {order}")
    for result in results:
        print(_format_result(result))
    handler.write_report_xlsx(results, handler.path(f"verify_{config.tag}.xlsx"))
    handler.close()

    if not pool.is_running:
        print("Đã dừng giữa chừng, các kiểm tra chưa chạy được ghi là thất bại")
    failed = [result.name for result in results if not result.success]
    if failed:
        print(f"FAIL: {len(failed)}/{len(results)} kiểm tra")
        return EXIT_NUMERIC
    print(f"PASS: {len(results)} kiểm tra")
    return EXIT_OK


def _format_result(result: WorkerResult) -> str:
    value = "-" if result.value is None else f"{result.value:.4e}"
    tolerance = "-" if result.tolerance is None else f"{result.tolerance:.1e}"
    status = "PASS" if result.success else "FAIL"
    return f"{status:4}  {result.name:<32} {value:>12} {tolerance:>9}  {result.message}"


# ---------------------------------------------------------------------- #
# Bộ kiểm tra
# ---------------------------------------------------------------------- #
def build_verification_tasks(order: QuaternionicOrder, config: RunConfig) -> List[VerificationTask]:
    """
    Danh sách kiểm tra cho một bậc q

    Bậc cổ điển (q nguyên, không phần vector) bỏ qua các khớp suy giảm,
    tốc độ hội tụ theo N và so sánh với hằng số tham chiếu. Các kiểm tra
    ngẫu nhiên tự tạo Generator từ config.seed nên kết quả không phụ thuộc
    thứ tự chạy của worker.
    """
    truncation = config.trunc_m
    classical = _is_classical(order)
    reference = None if config.q else REFERENCE_CONSTANTS.get(config.preset)

    fundamental: Callable[[], GridFunction] = _Shared(lambda: _fundamental(order, config))
    table: Callable[[], CoeffTable] = _Shared(lambda: coeffs_dft(order, config.dft_n, truncation))

    def constants():
        return filter_constants(order, truncation)

    tasks: List[VerificationTask] = []

    def add(name: str, tolerance: Optional[float] = None):
        def register(func: Callable):
            tasks.append(VerificationTask(name, func, tolerance))
            return func
        return register

    @add("gamma vs scipy", 1e-10)
    def check_gamma():
        ours = complex(gamma_complex(order.w))
        theirs = complex(scipy_gamma(order.w))
        error = abs(ours - theirs) / abs(theirs)
        return error <= 1e-10, f"Γ(w) = {ours:.10g}", error

    @add("B_q axial vs shadow", 1e-10)
    def check_bspline_structure():
        t = np.linspace(0.0, 10.0, 401)
        difference = (bspline_time(order, t) - bspline_time_shadow(order, t)).norm()
        error = float(np.max(difference))
        return error <= 1e-10, "B_q = Re B_w + μ Im B_w", error

    partition_range = DEFAULT_INTEGER_RANGE if order.a >= 4.0 else 200
    partition_tail = float(bspline_time(order, float(partition_range)).norm()) * partition_range / order.a
    partition_tolerance = max(1e-6, 4.0 * partition_tail)

    @add("partition of unity", partition_tolerance)
    def check_partition():
        error = 0.0
        for x in (0.0, 0.25, 0.5, 0.75):
            total = bspline_time(order, x + np.arange(partition_range + 1, dtype=float)).sum()
            error = max(error, float((total - 1.0).norm()))
        return error <= partition_tolerance, f"K = {partition_range}", error

    @add("zero-free filter")
    def check_zero_free():
        verdict = zero_free_check(order, truncation)
        return verdict.passed, f"min|F| = {verdict.min_modulus:.6f}, tail = {verdict.tail_bound:.2e}", \
            verdict.min_modulus

    if reference is not None:
        @add("min|F_q^M| reference", MIN_MODULUS_TOLERANCE)
        def check_min_modulus():
            measured = constants().min_modulus
            error = abs(measured - reference["min_modulus"])
            return error <= MIN_MODULUS_TOLERANCE, f"{measured:.6f} vs {reference['min_modulus']}", error

        @add("sup|F'_s| + sup|F'_v| reference", DERIVATIVE_SUP_TOLERANCE)
        def check_derivative_sup():
            measured = constants().derivative_sup
            error = abs(measured - reference["derivative_sup"])
            return error <= DERIVATIVE_SUP_TOLERANCE, f"{measured:.6f} vs {reference['derivative_sup']}", error

    route_tolerance = max(1e-6, 4.0 * filter_tail_bound(order, ROUTE_EQUIVALENCE_M))

    @add("filter periodization vs zeta form", route_tolerance)
    def check_routes():
        xi = 2.0 * math.pi * (np.arange(256) + 0.5) / 256
        direct = filter_truncated(order, xi, ROUTE_EQUIVALENCE_M)
        closed = filter_zeta_form(order, xi)
        error = float(np.max((direct - closed).norm() / closed.norm()))
        return error <= route_tolerance, f"M = {ROUTE_EQUIVALENCE_M}, 256 điểm", error

    @add("symbol inverse formula", 1e-8)
    def check_symbol_inverse():
        xi = np.linspace(0.0, 2.0 * math.pi, 512, endpoint=False)
        symbol = integer_samples(order, 24)
        product = symbol.evaluate(xi) * symbol_inverse_formula(order, xi, 24)
        error = float(np.max((product - 1.0).norm()))
        return error <= 1e-8, "K = 24", error

    @add("Epstein bound")
    def check_epstein():
        reports = [epstein_check(order, n, truncation=truncation) for n in EPSTEIN_SIZES]
        message = ", ".join(f"N={r.n}: {r.measured:.2e} ≤ {r.bound:.2e}" for r in reports)
        return all(r.passed for r in reports), message, max(r.measured / r.bound for r in reports)

    @add("frame bounds")
    def check_frame():
        bounds = frame_bounds(order, truncation=truncation)
        message = f"c = {bounds.lower:.6f}, C = {bounds.upper:.6f}, ước lượng c ≥ {bounds.lower_estimate:.3e}"
        passed = 0.0 < bounds.lower <= bounds.upper
        if classical and order.a == 2.0:
            passed = passed and abs(bounds.lower - 1.0 / 3.0) <= 1e-2 and abs(bounds.upper - 1.0) <= 1e-2
        return passed, message, bounds.lower

    min_modulus = constants().min_modulus
    tail = filter_tail_bound(order, truncation)
    interpolation_tolerance = max(1e-3, 2.0 * alias_estimate(order, DEFAULT_OMEGA, min_modulus))
    coefficient_tolerance = 1e-3
    if min_modulus > tail:
        coefficient_tolerance = max(1e-3, 2.0 * tail / (min_modulus * (min_modulus - tail)))

    @add("L_q(m) = δ_m", interpolation_tolerance)
    def check_interpolation():
        error = _interpolation_error(fundamental())
        return error <= interpolation_tolerance, "|m| ≤ 20", error

    @add("L_q axial vs shadow", 1e-8)
    def check_fundamental_structure():
        grid = fundamental()
        x, shadow = lq_grid_shadow(order.w, DEFAULT_OMEGA, config.fft_size, truncation)
        mask = np.abs(x) <= config.xmax
        reference_values = AxialElement(order.axis, shadow.real[mask], shadow.imag[mask])
        error = float(np.max((grid.values[mask] - reference_values).norm()))
        return error <= 1e-8, f"|x| ≤ {config.xmax:g}", error

    @add("interpolation coefficients", coefficient_tolerance)
    def check_coefficients():
        coefficients = table()
        residual = interpolation_residual(coefficients, integer_samples(order, DEFAULT_INTEGER_RANGE))
        return residual <= coefficient_tolerance, f"cận sai số {coefficients.error_bound:.3e}", residual

    if classical and order.a == 2.0:
        @add("B_2(1) = 1", 1e-12)
        def check_classical():
            symbol = integer_samples(order, 4)
            error = float((symbol.b[symbol.k == 1].sum() - 1.0).norm())
            return error <= 1e-12, "spline tuyến tính", error

    if not classical:
        @add("decay of L_q")
        def check_fundamental_decay():
            report = decay_check(fundamental(), order)
            return report.passed, f"cận {report.bound_exponent:.2f}", report.exponent

        @add("decay of c_k")
        def check_coefficient_decay():
            report = coefficient_decay(table())
            return report.passed, f"cận {report.bound_exponent:.2f}", report.exponent

    # Hàm đặc biệt
    @add("ζ(2, 1) = π²/6", 1e-10)
    def check_basel():
        error = abs(complex(hurwitz_zeta_complex(2.0, 1.0)) - math.pi ** 2 / 6.0)
        return error <= 1e-10, "Euler–Maclaurin", error

    @add("ζ(q, a) vs direct sum", SERIES_TOLERANCE)
    def check_hurwitz_direct():
        error = 0.0
        for a in (0.25, 1.0, 2.5):
            closed = hurwitz_zeta_quat(order, a)
            direct = hurwitz_zeta_direct(order, a)
            error = max(error, float((closed - direct).norm()) / max(1.0, float(closed.norm())))
        return error <= SERIES_TOLERANCE, "a ∈ {0.25, 1, 2.5}, 10⁵ số hạng + đuôi", error

    @add("Γ(q) vs quadrature", 1e-9)
    def check_gamma_quadrature():
        ours = gamma_quat(order)
        reference_value = gamma_quadrature(order)
        error = (ours - reference_value).norm() / reference_value.norm()
        return error <= 1e-9, f"Γ(q) = {ours}", error

    # B_q
    fourier_span = DEFAULT_INTEGER_RANGE if order.a >= 4.0 else 200
    fourier_step = 1.0 / 256.0
    fourier_tail = float(bspline_time(order, float(fourier_span)).norm()) * fourier_span / order.a
    fourier_tolerance = max(1e-4, 4.0 * fourier_tail, 10.0 * fourier_step ** min(order.a, 2.0))

    @add("B_q Fourier transform", fourier_tolerance)
    def check_fourier():
        t = np.arange(0.0, fourier_span + fourier_step / 2, fourier_step)
        values = bspline_time(order, t)
        error = 0.0
        for frequency in np.linspace(0.1, 2.0 * math.pi, FOURIER_FREQUENCIES):
            phase = np.exp(-1j * frequency * t)
            transform = AxialElement(
                order.axis,
                trapezoid(values.s * phase, dx=fourier_step),
                trapezoid(values.u * phase, dx=fourier_step),
            )
            error = max(error, float((transform - bspline_hat(order, frequency)).norm()))
        return error <= fourier_tolerance, f"{FOURIER_FREQUENCIES} tần số, t ≤ {fourier_span}", error

    # Tốc độ hội tụ
    if not (classical and int(order.a) % 2 == 1):
        @add("M-rate of c_k", SLOPE_TOLERANCE)
        def check_truncation_rate():
            errors = [truncation_self_consistency(order, 256, m) for m in CONVERGENCE_TRUNCATIONS]
            slope = convergence_slope(CONVERGENCE_TRUNCATIONS, errors)
            error = abs(slope + (order.a - 1.0))
            return error <= SLOPE_TOLERANCE, f"hệ số góc {slope:.3f}, kỳ vọng {1.0 - order.a:.3f}", error

    if not classical:
        @add("N-rate of c_k", SLOPE_TOLERANCE)
        def check_dft_rate():
            sizes = CONVERGENCE_DFT_SIZES
            drops = [dft_self_consistency(order, n, truncation, k_max=4) for n in sizes]
            measured = convergence_slope(sizes, drops)
            bound = convergence_slope(sizes, [coeffs_dft(order, n, truncation).error_bound for n in sizes])
            error = abs(bound + 1.0)
            passed = error <= SLOPE_TOLERANCE and measured <= -1.0 + SLOPE_TOLERANCE
            return passed, f"đo {measured:.3f}, cận {bound:.3f}", error

    # Lấy mẫu
    reconstruction_tolerance = max(1e-2, 10.0 * alias_estimate(order, DEFAULT_OMEGA, min_modulus))

    @add("sampling reconstruction", reconstruction_tolerance)
    def check_reconstruction():
        rng = np.random.default_rng(config.seed)
        grid = fundamental()
        x = np.arange(-SAMPLING_SPAN, SAMPLING_SPAN + SAMPLING_STEP / 2, SAMPLING_STEP)
        worst, monotone = 0.0, True
        for _ in range(RECONSTRUCTION_SIGNALS):
            signal = SplineSignal.random(order, DEFAULT_SIGNAL_SUPPORT, rng)
            errors = reconstruction_errors(order, signal, x, grid)
            worst = max(worst, errors[-1])
            monotone = monotone and is_monotone(errors)
        message = f"{RECONSTRUCTION_SIGNALS} tín hiệu, N_terms = {RECONSTRUCTION_TERMS}, giảm: {monotone}"
        return worst <= reconstruction_tolerance and monotone, message, worst

    # Đại số
    @add("algebraic properties")
    def check_algebra():
        report = run_property_suite(np.random.default_rng(config.seed), ALGEBRA_DRAWS)
        name, error = report.worst
        message = f"{report.draws} lần rút, xấu nhất: {name}"
        if not report.passed:
            message += f"; lỗi: {', '.join(report.failures)}"
        return report.passed, message, error

    return tasks


def is_monotone(errors: List[float]) -> bool:
    """Sai số không tăng quá MONOTONE_SLACK, bỏ qua phần dưới RECONSTRUCTION_FLOOR"""
    return all(b <= max(MONOTONE_SLACK * a, RECONSTRUCTION_FLOOR) for a, b in zip(errors, errors[1:]))


def reconstruction_errors(order: QuaternionicOrder, signal: SplineSignal, x: np.ndarray,
                          fundamental: GridFunction) -> List[float]:
    """Sai số L² tương đối khi tái tạo từ mẫu nguyên với số hạng tăng dần"""
    original = synthesize(signal, x)
    errors = []
    for terms in RECONSTRUCTION_TERMS:
        index = np.arange(-terms, terms + 1)
        approximation = reconstruct(order, index, sample_signal(signal, index), x, terms, fundamental)
        errors.append(relative_l2_error(approximation, original))
    return errors


COMMANDS: Dict[str, Callable[[RunConfig, QuaternionicOrder, TableHandler], int]] = {
    "bspline": cmd_bspline,
    "filter": cmd_filter,
    "fundamental": cmd_fundamental,
    "coeffs": cmd_coeffs,
    "reconstruct": cmd_reconstruct,
    "verify": cmd_verify,
    "figures": cmd_figures,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Điểm vào CLI

    Returns:
        0 thành công, 1 lỗi cấu hình, 2 lỗi số học hoặc kiểm tra thất bại
    """
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        print(f"Lỗi tham số: {e}", file=sys.stderr)
        return EXIT_CONFIG

    setup_logging(args.verbose)
    try:
        file_values = load_config_file(args.config) if args.config else {}
        config = RunConfig.resolve(file_values, _flag_values(args))
        order = config.order()
    except ConfigError as e:
        logger.error(f"Lỗi cấu hình: {e}")
        return EXIT_CONFIG

    logger.info(f"Lệnh {args.command}: q = {order}, kết quả tại {config.out}")
    handler = TableHandler(config.out)
    try:
        return COMMANDS[args.command](config, order, handler)
    except ZeroFilter as e:
        logger.error(f"Bộ lọc không khả nghịch: {e}")
        return EXIT_NUMERIC
    except (ConfigError, DomainError) as e:
        logger.error(f"Tham số không hợp lệ: {e}")
        return EXIT_CONFIG
    except QuatSplineError as e:
        logger.error(f"Lỗi số học: {e}")
        return EXIT_NUMERIC
    finally:
        handler.close()
