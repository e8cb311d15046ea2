"""
Tests for the built-in problems and manufactured right-hand sides
"""

import math

import numpy as np
import pytest

from charperiodic.core.exceptions import BoundaryConditionError, ProblemSpecError
from charperiodic.modules.cases import (
    boundary_shift,
    is_commensurate,
    manufactured,
    remark1_alpha_for_shift,
    remark1_problem,
    remark2_problem,
)
from charperiodic.modules.expr import evaluate, evaluate_array
from charperiodic.modules.model import ProblemSpec, validate


def _grid():
    xs = np.linspace(0, 1, 11)
    ts = np.linspace(0, 2 * math.pi, 13)
    return np.meshgrid(xs, ts, indexing="ij")


def test_remark1_data():
    """a = (alpha, -alpha), lossless reflection, constants as exact solution"""
    bundle = remark1_problem(0.5)
    spec = bundle.spec
    assert (spec.n, spec.m) == (2, 1)
    assert evaluate(spec.a[0], 0.3, 1.0) == 0.5
    assert evaluate(spec.a[1], 0.3, 1.0) == -0.5
    assert evaluate(spec.r[0][1], 0.0, 2.0) == 1.0
    assert spec.is_diagonal
    assert [evaluate(u, 0.2, 0.4) for u in bundle.exact] == [1.0, 1.0]
    assert bundle.shift == pytest.approx(4.0, abs=1e-12)
    assert "2/alpha" in bundle.notes


def test_remark1_needs_nonzero_speed():
    with pytest.raises(ProblemSpecError):
        remark1_problem(0.0)


def test_remark2_data():
    """b_21 = 3/2 is the only coupling; the exact family satisfies the reflections"""
    bundle = remark2_problem()
    spec = bundle.spec
    assert list(spec.coupling_pairs()) == [(1, 0)]
    assert evaluate(spec.b[1][0], 0.5, 0.5) == 1.5
    u1, u2 = bundle.exact
    for t in np.linspace(0, 2 * math.pi, 7):
        assert evaluate(u1, 0.0, t) == pytest.approx(0.5 * evaluate(u2, 0.0, t), abs=1e-14)
        assert evaluate(u2, 1.0, t) == pytest.approx(0.5 * evaluate(u1, 1.0, t), abs=1e-14)


def test_bundles_validate(remark1_commensurate, remark1_incommensurate, remark2):
    for bundle in (remark1_commensurate, remark1_incommensurate, remark2):
        assert validate(bundle.spec).passed


def test_boundary_shift_and_commensurability():
    """Round-trip shift is 2/alpha"""
    assert boundary_shift(remark1_problem(2 / math.pi).spec) == pytest.approx(math.pi, abs=1e-12)
    assert remark1_alpha_for_shift(math.pi) == pytest.approx(2 / math.pi)
    assert is_commensurate(math.pi)
    assert is_commensurate(2 * math.pi / 3)
    assert not is_commensurate(2.0)
    assert remark1_problem(remark1_alpha_for_shift(math.pi)).commensurate
    assert not remark1_problem(1.0).commensurate
    with pytest.raises(ValueError):
        remark1_alpha_for_shift(0.0)


def test_boundary_shift_needs_two_components():
    spec = ProblemSpec.build(n=3, m=1, a=["1", "-1", "-2"])
    with pytest.raises(ProblemSpecError):
        boundary_shift(spec)


def test_manufactured_zero_solution(diagonal_spec):
    """exact = 0 gives f = 0"""
    bundle = manufactured(diagonal_spec, [0, 0])
    assert all(f.is_zero for f in bundle.spec.f)


def test_manufactured_needs_two_samples(diagonal_spec):
    with pytest.raises(ProblemSpecError):
        manufactured(diagonal_spec, [0, 0], samples=0)


def test_manufactured_characteristic_wave():
    """Waves along constant speeds with a 2pi round trip: f reduces to the damping term"""
    skeleton = ProblemSpec.build(
        n=2, m=1, a=["1/pi", "-1/pi"], b={(0, 0): "0.3", (1, 1): "0.4"}, r={(0, 1): "1", (1, 0): "1"}
    )
    bundle = manufactured(skeleton, ["sin(t - pi*x)", "sin(t + pi*x)"], name="waves")
    assert bundle.name == "waves"
    X, T = _grid()
    for j, beta in enumerate((0.3, 0.4)):
        expected = beta * evaluate_array(bundle.exact[j], X, T)
        np.testing.assert_allclose(evaluate_array(bundle.spec.f[j], X, T), expected, atol=1e-8)


def test_manufactured_generic_forcing():
    """f = du/dt + a du/dx + b u for a smooth exact solution"""
    skeleton = ProblemSpec.build(
        n=2,
        m=1,
        a=["1 + 0.2*sin(t)", "-1"],
        b={(0, 0): "0.3", (0, 1): "0.2", (1, 0): "0.1"},
        r={(0, 1): "0.5", (1, 0): "0.5"},
    )
    bundle = manufactured(skeleton, ["(1 + x)*sin(t)", "(2 - x)*sin(t)"])
    X, T = _grid()
    u0, u1 = (1 + X) * np.sin(T), (2 - X) * np.sin(T)
    f0 = (1 + X) * np.cos(T) + (1 + 0.2 * np.sin(T)) * np.sin(T) + 0.3 * u0 + 0.2 * u1
    f1 = (2 - X) * np.cos(T) + np.sin(T) + 0.1 * u0
    np.testing.assert_allclose(evaluate_array(bundle.spec.f[0], X, T), f0, atol=1e-8)
    np.testing.assert_allclose(evaluate_array(bundle.spec.f[1], X, T), f1, atol=1e-8)
    assert bundle.spec.a == skeleton.a


def test_manufactured_rejects_boundary_violation(diagonal_spec):
    """u_0(0, t) = 1 but r_01 u_1(0, t) = 0"""
    with pytest.raises(BoundaryConditionError):
        manufactured(diagonal_spec, [1, 0])


def test_manufactured_rejects_non_periodic(diagonal_spec):
    with pytest.raises(BoundaryConditionError):
        manufactured(diagonal_spec, ["x*t", "2*x*t"])


def test_manufactured_checks_component_count(diagonal_spec):
    with pytest.raises(ProblemSpecError):
        manufactured(diagonal_spec, [0])
