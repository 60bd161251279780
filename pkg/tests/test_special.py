# -*- coding: utf-8 -*-
import math

import mpmath
import numpy as np
import pytest

from core.errors import DomainError
from core.quaternion import QuaternionicOrder, RealQuaternion, exp_axial, power_zq
from core.special import (
    gamma_complex, gamma_quadrature, gamma_quat, hurwitz_zeta_complex, hurwitz_zeta_direct,
    hurwitz_zeta_quat, inverse_gamma_quat, zeta_denominator
)


@pytest.mark.parametrize("z", [0.5, 1.0, 2.5 + 0.5j, 6.2 - 0.5j, 3.5 + 2.0j, 0.5 + 3.0j])
def test_gamma_against_mpmath(z):
    expected = complex(mpmath.gamma(z))
    assert abs(gamma_complex(z) - expected) <= 1e-11 * abs(expected)


def test_gamma_integers_and_vectorized():
    values = gamma_complex(np.array([1.0, 2.0, 5.0, 7.0]))
    assert np.allclose(values, [1.0, 1.0, 24.0, 720.0], rtol=1e-13)


def test_gamma_domain():
    with pytest.raises(DomainError):
        gamma_complex(-0.5 + 1j)
    with pytest.raises(DomainError):
        gamma_quat(QuaternionicOrder.from_components(0.0, 1.0))


def test_gamma_quat_inverse(q1, q2):
    for order in (q1, q2):
        product = gamma_quat(order) * inverse_gamma_quat(order)
        assert product.isclose(RealQuaternion(1.0), tol=1e-13)
    cubic = QuaternionicOrder.from_components(4.0)
    assert gamma_quat(cubic).isclose(RealQuaternion(6.0), tol=1e-12)


@pytest.mark.parametrize("s", [2.0, 3.5, 2.5 + 0.5j, 6.2 - 0.5j, 1.2 + 3.0j])
@pytest.mark.parametrize("a", [0.25, 1.0, 3.7])
def test_hurwitz_against_mpmath(s, a):
    expected = complex(mpmath.zeta(s, a))
    assert abs(hurwitz_zeta_complex(s, a) - expected) <= 1e-11 * max(1.0, abs(expected))


def test_hurwitz_basel():
    assert hurwitz_zeta_complex(2.0, 1.0) == pytest.approx(math.pi ** 2 / 6.0, rel=1e-14)


def test_hurwitz_array_argument():
    a = np.array([0.2, 0.5, 0.9])
    values = hurwitz_zeta_complex(2.5 + 0.5j, a)
    for alpha, value in zip(a, values):
        assert value == pytest.approx(complex(mpmath.zeta(2.5 + 0.5j, alpha)), rel=1e-11)


def test_hurwitz_domain():
    with pytest.raises(DomainError):
        hurwitz_zeta_complex(1.0 + 1j, 0.5)
    with pytest.raises(DomainError):
        hurwitz_zeta_complex(2.0, 0.0)


def test_hurwitz_quat_chi_coordinates(q2):
    value = hurwitz_zeta_quat(q2, 0.3)
    assert value.minus == pytest.approx(complex(mpmath.zeta(q2.w, 0.3)), rel=1e-11)
    assert value.plus == pytest.approx(complex(mpmath.zeta(np.conj(q2.w), 0.3)), rel=1e-11)


def test_zeta_denominator_is_two_sided_sum(q2):
    alpha = 0.37
    k = np.arange(-20000, 20001)
    direct = power_zq(k + alpha, q2.negated()).sum()
    assert (zeta_denominator(q2, alpha) - direct).norm() <= 1e-5


def test_zeta_denominator_branch(q2):
    alpha = 0.6
    plus_branch = zeta_denominator(q2, alpha)
    minus_branch = zeta_denominator(q2, alpha, negative_arg=-math.pi)
    base = hurwitz_zeta_quat(q2, alpha)
    mirror = hurwitz_zeta_quat(q2, 1.0 - alpha)
    # e^{−iπq} và e^{iπq} khác nhau khi q không nguyên
    assert not plus_branch.isclose(minus_branch, tol=1e-6)
    rotations = exp_axial(q2, -1j * math.pi) + exp_axial(q2, 1j * math.pi)
    assert (plus_branch + minus_branch).isclose(base * 2.0 + mirror * rotations, tol=1e-12)


def test_zeta_denominator_domain(q2):
    with pytest.raises(DomainError):
        zeta_denominator(q2, 0.0)
    with pytest.raises(DomainError):
        zeta_denominator(q2, np.array([0.5, 1.0]))


@pytest.mark.parametrize("preset", ["q1", "q2"])
@pytest.mark.parametrize("a", [0.25, 1.0, 2.5])
def test_hurwitz_quat_against_direct_sum(preset, a, request):
    order = request.getfixturevalue(preset)
    expected = hurwitz_zeta_quat(order, a)
    direct = hurwitz_zeta_direct(order, a)
    assert (expected - direct).norm() <= 1e-8 * max(1.0, expected.norm())


def test_hurwitz_direct_domain(q2):
    with pytest.raises(DomainError):
        hurwitz_zeta_direct(q2.shifted(-2.0), 1.0)
    with pytest.raises(DomainError):
        hurwitz_zeta_direct(q2, 0.0)


@pytest.mark.parametrize("preset", ["q1", "q2"])
def test_gamma_quat_against_quadrature(preset, request):
    order = request.getfixturevalue(preset)
    expected = gamma_quat(order)
    integral = gamma_quadrature(order)
    assert integral.isclose(expected, tol=1e-9 * expected.norm())


def test_gamma_quadrature_real_order():
    value = gamma_quadrature(QuaternionicOrder.from_components(4.0))
    assert value.isclose(RealQuaternion(6.0), tol=1e-9)
    with pytest.raises(DomainError):
        gamma_quadrature(QuaternionicOrder.from_components(-0.5, 0.1))
