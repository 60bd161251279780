# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from core.bspline import (
    GridFunction, binomial_series, bspline_hat, bspline_time, bspline_time_complex,
    bspline_time_shadow, complex_binomial, integer_samples, one_minus_exp,
    polynomial_first_moment, quat_binomial, xi
)
from core.errors import DomainError, GridMismatch
from core.quaternion import AxialElement, Axis, QuaternionicOrder


def test_xi_limit_and_identity():
    assert xi(0.0) == pytest.approx(1.0)
    frequency = np.array([0.3, 1.0, -2.5, 7.0])
    assert np.allclose(np.asarray(xi(frequency)) * 1j * frequency, one_minus_exp(frequency), atol=1e-15)
    assert np.allclose(one_minus_exp(frequency), 1.0 - np.exp(-1j * frequency), atol=1e-15)


def test_bspline_hat_at_origin(q1, q2):
    for order in (q1, q2):
        assert bspline_hat(order, 0.0).isclose(AxialElement.constant(order.axis, 1.0), tol=1e-15)


def test_bspline_hat_classical(linear):
    frequency = np.linspace(-10.0, 10.0, 41)
    expected = np.exp(-1j * frequency) * np.sinc(frequency / (2.0 * math.pi)) ** 2
    value = bspline_hat(linear, frequency)
    assert np.allclose(value.s, expected, atol=1e-14)
    assert np.allclose(value.u, 0.0)


def test_bspline_hat_domain():
    with pytest.raises(DomainError):
        bspline_hat(QuaternionicOrder.from_components(1.0, 0.5), 1.0)


def test_binomials_agree(q1, q2):
    for order in (q1, q2):
        series = binomial_series(order, 12)
        for k, direct in enumerate(series):
            assert direct.isclose(quat_binomial(order, k), tol=1e-10)
    assert complex_binomial(5.0, 2) == pytest.approx(10.0)
    with pytest.raises(DomainError):
        quat_binomial(q1, -1)


def test_linear_spline_is_hat(linear):
    t = np.array([-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5])
    values = bspline_time(linear, t)
    assert np.allclose(values.s, [0.0, 0.0, 0.5, 1.0, 0.5, 0.0, 0.0], atol=1e-12)
    assert np.allclose(values.u, 0.0)


def test_cubic_spline_values(cubic):
    values = bspline_time(cubic, np.array([1.0, 2.0, 3.0, 5.0]))
    assert np.allclose(values.s, [1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0, 0.0], atol=1e-12)


def test_scalar_argument_returns_scalar(q2):
    value = bspline_time(q2, 1.5)
    assert np.ndim(value.s) == 0
    assert value.isclose(bspline_time(q2, np.array([1.5]))[0])


def test_axial_and_shadow_routes_agree(q1, q2):
    t = np.linspace(0.0, 10.0, 401)
    for order in (q1, q2):
        difference = (bspline_time(order, t) - bspline_time_shadow(order, t)).norm()
        assert np.max(difference) <= 1e-10


def test_complex_spline_real_order(cubic):
    t = np.array([0.5, 1.5, 2.5])
    assert np.allclose(bspline_time_complex(4.0, t), bspline_time(cubic, t).s, atol=1e-13)


def test_causal_support(q1):
    values = bspline_time(q1, np.array([-3.0, -0.5, 0.0]))
    assert np.all(values.norm() == 0.0)


def test_truncation_too_small(q2):
    with pytest.raises(DomainError):
        bspline_time(q2, np.array([0.5, 6.5]), truncation=3)
    with pytest.raises(DomainError):
        bspline_time(QuaternionicOrder.from_components(0.8), 1.0)


def test_partition_of_unity_classical(cubic):
    for x in (0.0, 0.3, 0.7):
        total = bspline_time(cubic, x + np.arange(6, dtype=float)).sum()
        assert total.isclose(AxialElement.constant(cubic.axis, 1.0), tol=1e-12)


@pytest.mark.parametrize("preset, count, tolerance", [("q1", 40, 1e-6), ("q2", 200, 5e-6)])
def test_partition_of_unity(preset, count, tolerance, rng, request):
    order = request.getfixturevalue(preset)
    x = rng.uniform(0.0, 1.0, 100)
    values = bspline_time(order, x[:, None] + np.arange(count + 1, dtype=float))
    total = AxialElement(order.axis, values.s.sum(axis=1), values.u.sum(axis=1))
    assert np.max((total - 1.0).norm()) <= tolerance


def test_first_moment_reproduction(q1, cubic):
    x = 0.4
    for order, count in ((q1, 40), (cubic, 6)):
        j = np.arange(count + 1, dtype=float)
        weighted = (bspline_time(order, x + j) * (-j)).sum()
        expected = AxialElement.constant(order.axis, x) - polynomial_first_moment(order)
        assert weighted.isclose(expected, tol=1e-6)


@pytest.mark.parametrize("preset, span, step, tolerance", [
    ("q1", 40.0, 1e-3, 1e-6),
    ("q2", 200.0, 1.0 / 256.0, 2e-4),
])
def test_fourier_transform_matches_hat(preset, span, step, tolerance, request):
    order = request.getfixturevalue(preset)
    t = np.linspace(0.0, span, int(round(span / step)) + 1)
    values = bspline_time(order, t)
    for frequency in np.linspace(0.1, 2.0 * math.pi, 20):
        phase = np.exp(-1j * frequency * t)
        transform = AxialElement(
            order.axis, trapezoid(values.s * phase, t), trapezoid(values.u * phase, t)
        )
        assert transform.isclose(bspline_hat(order, frequency), tol=tolerance)


def test_algebraic_decay(q2):
    # |B_q(t)| ~ t^{−a−1}; cùng phần lẻ 0.5 để khử dao động tuần hoàn
    t = np.array([10.5, 20.5, 40.5, 80.5, 160.5])
    scaled = bspline_time(q2, t).norm() * t ** (math.floor(q2.a) + 1)
    assert np.all(scaled <= 2.0 * scaled[0])
    assert scaled[-1] < scaled[0]


def test_integer_samples(q1):
    symbol = integer_samples(q1, 40)
    assert symbol.truncation == 40
    assert np.all(symbol.b.norm()[symbol.k <= 0] == 0.0)
    assert symbol.total().isclose(AxialElement.constant(q1.axis, 1.0), tol=1e-6)
    assert symbol.evaluate(0.0).isclose(symbol.total(), tol=1e-12)
    assert symbol.tail_bound < 1e-6
    with pytest.raises(DomainError):
        integer_samples(q1, 0)


def test_grid_function_sampling_and_crop():
    axis = Axis.default()
    x = np.linspace(-1.0, 1.0, 201)
    grid = GridFunction(start=-1.0, step=0.01, values=AxialElement(axis, x ** 2, 2.0 * x))
    sampled = grid.sample(np.array([-0.5, 0.25, 3.0]))
    assert np.allclose(sampled.s, [0.25, 0.0625, 0.0], atol=1e-12)
    assert np.allclose(sampled.u, [-1.0, 0.5, 0.0], atol=1e-12)
    window = grid.crop(0.0, 0.5)
    assert window.n == 51
    assert window.start == pytest.approx(0.0, abs=1e-12)
    assert window.stop == pytest.approx(0.5)
    with pytest.raises(GridMismatch):
        grid.crop(5.0, 6.0)
    with pytest.raises(DomainError):
        GridFunction(start=0.0, step=-1.0, values=AxialElement(axis, x, x))
