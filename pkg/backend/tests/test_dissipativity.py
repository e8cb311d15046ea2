"""
Tests for the reflection profiles and dissipativity constants
"""

import numpy as np
import pytest

from charperiodic.modules.dissipativity import (
    DissipativityAnalyzer,
    constants,
    r0_profile,
    r1_profile,
    sufficient_conditions,
)
from charperiodic.modules.model import ProblemSpec


def _damped(beta: str = "2", r: str = "1") -> ProblemSpec:
    return ProblemSpec.build(
        n=2, m=1, a=["1", "-1"], b={(0, 0): beta}, r={(0, 1): r, (1, 0): "0.5"}
    )


def test_lossless_reflection(remark1_incommensurate):
    """remark1: every profile is identically one"""
    report = constants(remark1_incommensurate.spec, 16, 16, n_steps=64)
    for value in (report.S0, report.T0, report.S1, report.T1):
        assert value == pytest.approx(1.0, abs=1e-9)
    assert not report.cond_t8
    assert not report.cond_t81


def test_dissipative_but_degenerate(remark2):
    """remark2: S0 = T0 = 1/2 although the kernel is nontrivial"""
    report = constants(remark2.spec, 16, 16, n_steps=64)
    assert report.S0 == pytest.approx(0.5, abs=1e-9)
    assert report.T0 == pytest.approx(0.5, abs=1e-9)
    assert report.cond_t8 and report.cond_t81
    assert report.argmax_T0.j == 1
    assert report.grid_x == 16 and report.grid_t == 16


def test_no_reflection_gives_zero():
    """r_01 = 0 makes R0_0 vanish"""
    spec = ProblemSpec.build(n=2, m=1, a=["1", "-1"], r={(1, 0): "0.5"})
    report = constants(spec, 16, 16, n_steps=64)
    assert report.S0 == 0.0
    assert report.T0 == pytest.approx(0.5)
    assert report.cond_t8


def test_damped_profile():
    """a = 1, b = 2, r = 1: R0_0(x, t) = exp(-2x), maximal at x = 0"""
    spec = _damped()
    xs = np.array([0.0, 0.25, 0.5, 1.0])
    np.testing.assert_allclose(r0_profile(spec, 0, xs, 1.0, n_steps=64), np.exp(-2 * xs), rtol=1e-12)
    assert r0_profile(spec, 0, 0.5, 3.0, n_steps=64) == pytest.approx(np.exp(-1.0), rel=1e-12)

    report = constants(spec, 16, 16, n_steps=64)
    assert report.S0 == pytest.approx(1.0)
    assert report.argmax_S0.x == 0.0


def test_t_independent_speed_has_equal_profiles(oscillating_spec):
    """Without t in a_j, R1 = R0"""
    spec = _damped("0.5 + 0.3*sin(t + x)", "0.8 + 0.1*cos(t)")
    xs = np.linspace(0, 1, 5)
    np.testing.assert_array_equal(
        r1_profile(spec, 0, xs, 2.0, n_steps=64), r0_profile(spec, 0, xs, 2.0, n_steps=64)
    )
    # t-dependent speed: the two differ
    assert r1_profile(oscillating_spec, 0, 0.7, 1.0) != pytest.approx(
        r0_profile(oscillating_spec, 0, 0.7, 1.0)
    )


def test_profiles_scale_with_reflection():
    """r -> lambda r scales S0 by lambda"""
    base = constants(_damped("0.5", "0.4"), 16, 16, n_steps=64)
    scaled = constants(_damped("0.5", "1.2"), 16, 16, n_steps=64)
    assert scaled.S0 == pytest.approx(3 * base.S0, rel=1e-12)
    assert scaled.T0 == pytest.approx(base.T0, rel=1e-12)


def test_refinement_does_not_decrease(oscillating_spec):
    """Nested scan grids: the finer maximum is at least the coarser one"""
    coarse = constants(oscillating_spec, 16, 16, n_steps=64)
    fine = constants(oscillating_spec, 32, 32, n_steps=64)
    for name in ("S0", "T0", "S1", "T1"):
        assert getattr(fine, name) >= getattr(coarse, name) - 1e-12


def test_profile_shapes(oscillating_spec):
    """Analyzer profiles cover every component and grid node"""
    profiles = DissipativityAnalyzer(oscillating_spec, 16, 16, n_steps=64).profiles()
    assert profiles["R0"].shape == (2, 17, 16)
    assert profiles["R1"].shape == (2, 17, 16)
    assert np.all(profiles["R0"] >= 0)


def test_scan_grid_minimum(oscillating_spec):
    with pytest.raises(ValueError):
        constants(oscillating_spec, 8, 16)
    with pytest.raises(ValueError):
        constants(oscillating_spec, 0, 0)
    with pytest.raises(ValueError):
        constants(oscillating_spec, 16, 16, n_steps=0)


def test_sufficient_conditions():
    """Favourable damping signs and small reflection bound the constants"""
    spec = ProblemSpec.build(
        n=2,
        m=1,
        a=["1", "-1"],
        b={(0, 0): "0.3", (1, 1): "0.2"},
        r={(0, 1): "0.5", (1, 0): "0.5"},
    )
    result = sufficient_conditions(spec, samples=16)
    assert result.max_abs_r_first == pytest.approx(0.5)
    assert result.min_b_over_a_first == pytest.approx(0.3)
    assert result.max_b_over_a_second == pytest.approx(-0.2)
    assert result.reflection_product_below_one and result.damping_signs_ok and result.holds

    report = constants(spec, 16, 16, n_steps=64)
    assert report.S0 <= result.max_abs_r_first + 1e-12
    assert report.T0 <= result.max_abs_r_second + 1e-12


def test_sufficient_conditions_fail_on_wrong_sign(diagonal_spec):
    """b_00 / a_0 < 0 amplifies along the first block"""
    result = sufficient_conditions(diagonal_spec, samples=16)
    assert result.reflection_product_below_one
    assert not result.damping_signs_ok
    assert not result.holds


def test_sufficient_conditions_need_two_samples(diagonal_spec):
    with pytest.raises(ValueError):
        sufficient_conditions(diagonal_spec, samples=0)
