"""
Shared fixtures
"""

import numpy as np
import pytest

from charperiodic.modules.cases import remark1_alpha_for_shift, remark1_problem, remark2_problem
from charperiodic.modules.model import ProblemSpec


@pytest.fixture
def rng():
    """Seeded random generator"""
    return np.random.default_rng(20241019)


@pytest.fixture
def diagonal_spec():
    """Two uncoupled waves with lossy reflection (S0 * T0 = 0.25)"""
    return ProblemSpec.build(
        n=2,
        m=1,
        a=["-1", "1"],
        b={(0, 0): "0.3", (1, 1): "-0.2"},
        r={(0, 1): "0.5", (1, 0): "0.5"},
        f=["sin(t)", "cos(t + x)"],
    )


@pytest.fixture
def oscillating_spec():
    """Speed -1 + 0.1 sin t with smooth damping, single reflection pair"""
    return ProblemSpec.build(
        n=2,
        m=1,
        a=["-1 + 0.1*sin(t)", "1 + 0.2*cos(t) * x"],
        b={(0, 0): "0.5 + 0.1*cos(t + x)", (1, 1): "0.2*sin(t)"},
        r={(0, 1): "0.4", (1, 0): "0.5 + 0.1*sin(t)"},
    )


@pytest.fixture
def remark1_commensurate():
    """Round-trip shift pi: every pi-periodic boundary signal returns unchanged"""
    return remark1_problem(remark1_alpha_for_shift(np.pi))


@pytest.fixture
def remark1_incommensurate():
    """Round-trip shift 2, an irrational multiple of 2pi"""
    return remark1_problem(remark1_alpha_for_shift(2.0))


@pytest.fixture
def remark2():
    return remark2_problem()
