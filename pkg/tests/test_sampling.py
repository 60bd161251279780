# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest

from config.settings import (
    DEFAULT_SIGNAL_SUPPORT, MONOTONE_SLACK, RECONSTRUCTION_FLOOR, RECONSTRUCTION_SIGNALS,
    RECONSTRUCTION_TERMS, SAMPLING_SPAN, SAMPLING_STEP
)
from core.bspline import GridFunction, bspline_time, integer_samples
from core.errors import DomainError, GridMismatch
from core.fundamental import coeffs_dft, lq_grid
from core.quaternion import AxialElement, Axis, star
from core.sampling import (
    SplineSignal, frame_bounds, l2_pairing, plancherel_energy, reconstruct,
    relative_l2_error, sample_signal, synthesize, to_bspline_basis, to_fundamental_basis
)


@pytest.fixture(scope="module", params=["q1", "q2"])
def fundamental_grid(request):
    order = request.getfixturevalue(request.param)
    return order, lq_grid(order)


def test_signal_validation(q1):
    axis = q1.axis
    with pytest.raises(DomainError):
        SplineSignal(q1, np.array([0, 1, 2]), AxialElement(axis, np.ones(2), np.zeros(2)))
    with pytest.raises(DomainError):
        SplineSignal(q1, np.array([0, 2]), AxialElement(axis, np.ones(2), np.zeros(2)))


def test_synthesize_delta_is_bspline(q2):
    x = np.linspace(-1.0, 9.0, 641)
    grid = synthesize(SplineSignal.delta(q2), x)
    assert grid.n == x.size
    assert np.max((grid.values - bspline_time(q2, x)).norm()) <= 1e-12


def test_synthesize_shift(q1):
    x = np.linspace(0.0, 12.0, 97)
    shifted = synthesize(SplineSignal.delta(q1, 3), x)
    assert np.max((shifted.values - bspline_time(q1, x - 3.0)).norm()) <= 1e-12


def test_samples_are_convolution(q2, rng):
    signal = SplineSignal.random(q2, 6, rng)
    m = np.arange(-10, 31)
    direct = synthesize(signal, m.astype(float)).values
    assert np.max((sample_signal(signal, m) - direct).norm()) <= 1e-8


def test_basis_round_trip(q1, rng):
    signal = SplineSignal.random(q1, 4, rng)
    symbol = integer_samples(q1, 40)
    index, coefficients = to_fundamental_basis(signal, symbol)
    back = to_bspline_basis(index, coefficients, coeffs_dft(q1))
    offset = int(signal.k[0] - back.k[0])
    recovered = back.d[offset:offset + len(signal.k)]
    assert np.max((recovered - signal.d).norm()) <= 1e-4


@pytest.mark.slow
def test_reconstruction_converges(fundamental_grid, rng):
    order, grid = fundamental_grid
    x = np.arange(-SAMPLING_SPAN, SAMPLING_SPAN + SAMPLING_STEP / 2, SAMPLING_STEP)
    for _ in range(RECONSTRUCTION_SIGNALS):
        signal = SplineSignal.random(order, DEFAULT_SIGNAL_SUPPORT, rng)
        original = synthesize(signal, x)
        errors = []
        for terms in RECONSTRUCTION_TERMS:
            index = np.arange(-terms, terms + 1)
            samples = sample_signal(signal, index)
            approximation = reconstruct(order, index, samples, x, terms, grid)
            errors.append(relative_l2_error(approximation, original))
        assert errors[-1] <= 1e-2
        for previous, current in zip(errors, errors[1:]):
            assert current <= max(MONOTONE_SLACK * previous, RECONSTRUCTION_FLOOR)


def test_frame_bounds_classical(linear):
    # Σ|sinc|⁴ = (2 + cos ξ)/3, |F| = 1
    bounds = frame_bounds(linear, points=1024, truncation=2048)
    assert bounds.lower == pytest.approx(1.0 / 3.0, abs=2e-3)
    assert bounds.upper == pytest.approx(1.0, abs=2e-3)
    assert bounds.resolution == pytest.approx(2.0 * math.pi / 1024)


def test_frame_bounds_order(q1):
    bounds = frame_bounds(q1, points=512)
    assert 0.0 < bounds.lower <= bounds.upper
    assert bounds.lower_estimate > 0.0
    assert bounds.truncation == 64


def test_plancherel(q2):
    step = 1.0 / 256.0
    x = np.arange(0.0, 40.0 + step / 2, step)
    grid = synthesize(SplineSignal.delta(q2), x)
    _, energy = l2_pairing(grid, grid)
    assert abs(energy.imag) <= 1e-12
    assert energy.real == pytest.approx(plancherel_energy(q2), rel=1e-3)


def test_pairing_requires_same_grid():
    axis = Axis.default()
    values = AxialElement(axis, np.ones(11), np.zeros(11))
    first = GridFunction(0.0, 0.1, values)
    second = GridFunction(0.5, 0.1, values)
    with pytest.raises(GridMismatch):
        l2_pairing(first, second)
    with pytest.raises(GridMismatch):
        relative_l2_error(first, second)
    assert relative_l2_error(first, first) == 0.0


def test_pairing_is_star_symmetric(q2, rng):
    x = np.arange(-2.0, 30.0, 1.0 / 64.0)
    f = synthesize(SplineSignal.random(q2, 8, rng), x)
    g = synthesize(SplineSignal.random(q2, 8, rng), x)
    forward, _ = l2_pairing(f, g)
    backward, _ = l2_pairing(g, f)
    assert forward.isclose(star(backward), tol=1e-12 * max(1.0, forward.norm()))


@pytest.mark.parametrize("preset", ["q1", "q2"])
def test_frame_lower_bound_dominates_estimate(preset, request):
    bounds = frame_bounds(request.getfixturevalue(preset), points=1024)
    assert bounds.lower >= bounds.lower_estimate
