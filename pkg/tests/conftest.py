# -*- coding: utf-8 -*-
"""
Fixture dùng chung cho bộ kiểm tra
"""

import os
import sys

import numpy as np
import pytest

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT_DIR)

from config.settings import DEFAULT_SEED, PRESETS
from core.quaternion import QuaternionicOrder


@pytest.fixture(scope="session")
def q1():
    return QuaternionicOrder.from_components(*PRESETS["q1"])


@pytest.fixture(scope="session")
def q2():
    return QuaternionicOrder.from_components(*PRESETS["q2"])


@pytest.fixture(scope="session")
def linear():
    """Bậc cổ điển q = 2 (spline tuyến tính)"""
    return QuaternionicOrder.from_components(2.0)


@pytest.fixture(scope="session")
def cubic():
    """Bậc cổ điển q = 4 (spline bậc ba)"""
    return QuaternionicOrder.from_components(4.0)


@pytest.fixture
def rng():
    return np.random.default_rng(DEFAULT_SEED)
