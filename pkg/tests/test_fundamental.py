# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest

from config.settings import (
    DERIVATIVE_SUP_TOLERANCE, MIN_MODULUS_TOLERANCE, REFERENCE_CONSTANTS,
    ROUTE_EQUIVALENCE_M
)
from core import fundamental
from core.bspline import bspline_hat, integer_samples
from core.errors import DomainError, ZeroFilter
from core.fundamental import (
    FilterConstants, alias_estimate, coefficient_decay, coeffs_dft, convergence_slope,
    decay_check, dft_self_consistency, epstein_bound, epstein_check, epstein_constant,
    filter_constants, filter_derivative, filter_increment, filter_profile,
    filter_second_derivative, filter_tail_bound, filter_truncated, filter_zeta_form,
    interpolation_residual, lq_grid, lq_grid_shadow, lq_hat, reciprocal_second_derivative_sup,
    symbol_determinant, symbol_inverse_formula, symmetry_defect, truncation_self_consistency,
    zero_free_check
)
from core.quaternion import AxialElement


@pytest.fixture(scope="module", params=["q1", "q2"])
def fundamental_grid(request):
    order = request.getfixturevalue(request.param)
    return order, lq_grid(order)


# ---------------------------------------------------------------------- #
# Bộ lọc
# ---------------------------------------------------------------------- #
@pytest.mark.parametrize("preset", ["q1", "q2"])
def test_reference_constants(preset, request):
    order = request.getfixturevalue(preset)
    constants = filter_constants(order)
    reference = REFERENCE_CONSTANTS[preset]
    assert constants.min_modulus == pytest.approx(reference["min_modulus"], abs=MIN_MODULUS_TOLERANCE)
    assert constants.derivative_sup == pytest.approx(reference["derivative_sup"], abs=DERIVATIVE_SUP_TOLERANCE)
    assert constants.epstein == pytest.approx(constants.derivative_sup / constants.min_modulus ** 2)


def test_epstein_constant_values(q1, q2):
    assert epstein_constant(q1) == pytest.approx(154.1, rel=0.05)
    assert epstein_constant(q2) == pytest.approx(3.576, rel=0.05)


def test_filter_is_one_at_origin(q1, q2, linear):
    for order in (q1, q2, linear):
        value = filter_truncated(order, 0.0)
        assert value.isclose(AxialElement.constant(order.axis, 1.0), tol=1e-12)


def test_classical_filter_is_pure_phase(linear):
    frequency = np.linspace(0.1, 6.0, 16)
    value = filter_truncated(linear, frequency, 4096)
    assert np.allclose(value.s, np.exp(-1j * frequency), atol=1e-4)


def test_filter_periodic(q2):
    frequency = np.array([0.4, 2.0, 5.1])
    shifted = filter_truncated(q2, frequency + 2.0 * math.pi, 64)
    base = filter_truncated(q2, frequency, 64)
    assert np.max((shifted - base).norm()) <= 2.0 * filter_tail_bound(q2, 64)


def test_poisson_summation(q1):
    frequency = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
    symbol = integer_samples(q1, 40)
    difference = filter_truncated(q1, frequency, 64) - symbol.evaluate(frequency)
    assert np.max(difference.norm()) <= 1e-7


def test_filter_increment(q2):
    frequency = np.array([0.5, 3.0])
    increment = filter_increment(q2, frequency, 32, 64)
    difference = filter_truncated(q2, frequency, 64) - filter_truncated(q2, frequency, 32)
    assert increment.isclose(difference, tol=1e-13)


def test_tail_bound_shrinks(q2):
    assert filter_tail_bound(q2, 128) < filter_tail_bound(q2, 64)
    assert filter_tail_bound(q2, 64) == pytest.approx(2.0 / (math.pi ** 2.5 * 1.5 * 64 ** 1.5))


@pytest.mark.slow
def test_zeta_form_matches_periodization(q2):
    frequency = 2.0 * math.pi * (np.arange(64) + 0.5) / 64
    direct = filter_truncated(q2, frequency, ROUTE_EQUIVALENCE_M)
    closed = filter_zeta_form(q2, frequency)
    assert np.max((direct - closed).norm() / closed.norm()) <= 1e-6


def test_zeta_form_domain(q2):
    with pytest.raises(DomainError):
        filter_zeta_form(q2, np.array([0.0, 1.0]))
    with pytest.raises(DomainError):
        filter_zeta_form(q2, 2.0 * math.pi)


def test_first_derivative_matches_difference_quotient(q1):
    h = 1e-5
    for frequency in (0.0, 1.3, 4.0):
        slope = filter_derivative(q1, frequency)
        quotient = (filter_truncated(q1, frequency + h) - filter_truncated(q1, frequency - h)) * (0.5 / h)
        assert slope.isclose(quotient, tol=1e-6)


def test_first_derivative_limit(q2):
    assert filter_derivative(q2, 0.0).isclose(q2.as_axial() * (-0.5j), tol=1e-15)
    with pytest.raises(DomainError):
        filter_derivative(q2.shifted(-1.6), 1.0)


def test_second_derivative(q1):
    h = 1e-5
    frequency = 2.0
    curvature = filter_second_derivative(q1, frequency)
    quotient = (filter_derivative(q1, frequency + h) - filter_derivative(q1, frequency - h)) * (0.5 / h)
    assert curvature.isclose(quotient, tol=1e-5)

    limit = filter_second_derivative(q1, 0.0)
    q = q1.as_axial()
    assert limit.isclose(q * (q * 3.0 + 1.0) * (-1.0 / 12.0), tol=1e-15)
    assert filter_second_derivative(q1, 1e-4).isclose(limit, tol=0.05)


def test_second_derivative_unbounded_for_small_order(linear):
    with pytest.raises(DomainError):
        filter_second_derivative(linear, 0.0)


def test_profile(q2):
    profile = filter_profile(q2, 64, 512)
    assert profile.xi.size == 512
    assert profile.min_modulus >= filter_constants(q2).min_modulus - 1e-4
    assert profile.tail_bound == filter_tail_bound(q2, 64)


def test_zero_free_check(q1, q2):
    for order in (q1, q2):
        verdict = zero_free_check(order)
        assert verdict.passed
        assert verdict.margin == verdict.tail_bound
        assert 0.0 <= verdict.argmin < 2.0 * math.pi
    assert not zero_free_check(q2, margin=10.0).passed


def test_epstein_constant_rejects_zero_filter(q2, monkeypatch):
    fake = FilterConstants(q2, 64, 1e-9, 0.0, 1.0, 1.0, 1e-6)
    monkeypatch.setattr(fundamental, "filter_constants", lambda *args, **kwargs: fake)
    with pytest.raises(ZeroFilter):
        epstein_constant(q2)
    with pytest.raises(ZeroFilter):
        coeffs_dft(q2, 64)


def test_epstein_bound_and_rate(q2):
    assert epstein_check(q2, 256).passed
    sizes = [64, 128, 256, 512]
    errors = [epstein_check(q2, n, reference_n=2 ** 14).measured for n in sizes]
    assert convergence_slope(sizes, errors) <= -0.7
    assert epstein_bound(q2, 512) == pytest.approx(epstein_bound(q2, 256) / 2.0)
    with pytest.raises(DomainError):
        epstein_bound(q2, 256, smoothness=3)


def test_second_order_bound(q1):
    assert reciprocal_second_derivative_sup(q1) > 0.0
    with pytest.raises(DomainError):
        epstein_bound(q1.shifted(-4.5), 256, smoothness=2)


# ---------------------------------------------------------------------- #
# Symbol và hệ số
# ---------------------------------------------------------------------- #
def test_symbol_inverse_formula(q1):
    frequency = np.linspace(0.0, 2.0 * math.pi, 128, endpoint=False)
    symbol = integer_samples(q1, 24)
    value = symbol.evaluate(frequency)
    product = value * symbol_inverse_formula(q1, frequency, 24)
    assert np.max((product - 1.0).norm()) <= 1e-8
    assert np.allclose(symbol_determinant(q1, frequency, 24), value.determinant(), atol=1e-9)


def test_coefficients_interpolate(q1):
    table = coeffs_dft(q1)
    assert table.n == 1024 and table.k[0] == -512 and table.k[-1] == 511
    residual = interpolation_residual(table, integer_samples(q1, 40))
    assert residual <= 1e-6
    assert table.error_bound == pytest.approx(table.epstein_term + table.truncation_term)
    with pytest.raises(IndexError):
        table.coefficient(600)


@pytest.mark.slow
def test_coefficients_interpolate_slow_order(q2):
    table = coeffs_dft(q2, 1024, 1024)
    assert interpolation_residual(table, integer_samples(q2, 40)) <= 1e-3


def test_coefficient_decay(q1, q2):
    for order in (q1, q2):
        report = coefficient_decay(coeffs_dft(order))
        assert report.passed
        assert report.bound_exponent == -math.floor(order.a) - 1 + 0.5


def test_self_consistency(q1):
    table = coeffs_dft(q1, 256)
    assert truncation_self_consistency(q1, 256, 64) <= 1e-10
    assert dft_self_consistency(q1, 256, 64) <= table.error_bound


def test_truncation_convergence_rate(q2):
    truncations = [32, 64, 128]
    errors = [truncation_self_consistency(q2, 256, m) for m in truncations]
    assert convergence_slope(truncations, errors) == pytest.approx(-(q2.a - 1.0), abs=0.3)


def test_dft_convergence_rate(q2):
    sizes = [32, 64, 128]
    errors = [dft_self_consistency(q2, n, 64) for n in sizes]
    assert convergence_slope(sizes, errors) <= -0.7
    bounds = [coeffs_dft(q2, n).error_bound for n in sizes]
    assert convergence_slope(sizes, bounds) == pytest.approx(-1.0, abs=0.3)


def test_convergence_slope():
    assert convergence_slope([1, 2, 4], [1.0, 0.5, 0.25]) == pytest.approx(-1.0)


# ---------------------------------------------------------------------- #
# Spline cơ bản
# ---------------------------------------------------------------------- #
def test_lq_hat(q2):
    frequency = np.array([0.5, 3.0, 20.0])
    product = lq_hat(q2, frequency) * filter_truncated(q2, frequency)
    assert product.isclose(bspline_hat(q2, frequency), tol=1e-13)


def test_fundamental_interpolates(fundamental_grid):
    _, grid = fundamental_grid
    m = np.arange(-20, 21).astype(float)
    values = grid.sample(m) - (m == 0).astype(float)
    assert np.max(values.norm()) <= 1e-3
    assert grid.step == pytest.approx(1.0 / 64.0)
    assert grid.n == 2 ** 16


def test_fundamental_decay(fundamental_grid):
    order, grid = fundamental_grid
    report = decay_check(grid, order)
    assert report.passed
    assert report.bound_exponent == -math.floor(order.a) + 0.5
    assert symmetry_defect(grid) > 0.0


def test_fundamental_shadow_route(fundamental_grid):
    order, grid = fundamental_grid
    x, shadow = lq_grid_shadow(order.w)
    assert np.allclose(x, grid.x)
    reference = AxialElement(order.axis, shadow.real, shadow.imag)
    assert np.max((grid.values - reference).norm()) <= 1e-8


def test_classical_fundamental_is_hat(linear):
    with pytest.warns(Warning):
        grid = lq_grid(linear)
    values = grid.sample(np.array([-1.5, -0.5, 0.0, 0.5, 1.5]))
    assert np.allclose(values.s.real, [0.0, 0.5, 1.0, 0.5, 0.0], atol=1e-2)


def test_alias_estimate(q2):
    assert alias_estimate(q2, 64.0 * math.pi, 0.7799) < 1e-3


def test_fft_layout_errors(q2):
    with pytest.raises(DomainError):
        lq_grid(q2, fft_size=1000)
    with pytest.raises(DomainError):
        lq_grid(q2, omega=3.0)
    with pytest.raises(DomainError):
        decay_check(lq_grid(q2, fft_size=1024), q2)
