"""
Tests for problem data and validation
"""

import math

import numpy as np
import pytest

from charperiodic.core.exceptions import ProblemSpecError
from charperiodic.modules.expr import evaluate, evaluate_array
from charperiodic.modules.model import ProblemSpec, assemble_b_from_tilde, validate


def _minimal(a1="-1", a2="1", **kwargs):
    return ProblemSpec.build(n=2, m=1, a=[a1, a2], r={(0, 1): "0.5", (1, 0): "0.5"}, **kwargs)


def test_sizes_are_checked():
    """1 <= m < n is enforced"""
    with pytest.raises(ProblemSpecError):
        ProblemSpec.build(n=2, m=2, a=["1", "-1"])
    with pytest.raises(ProblemSpecError):
        ProblemSpec.build(n=2, m=0, a=["1", "-1"])
    with pytest.raises(ProblemSpecError):
        ProblemSpec.build(n=2, m=1, a=["1"])
    with pytest.raises(ProblemSpecError):
        ProblemSpec.build(n=2, m=1, a=["1", "-1"], b={(0, 2): "1"})


def test_constant_speeds_pass_validation():
    """Nonzero constant speeds with admissible data pass"""
    report = validate(_minimal())
    assert report.passed
    assert report.failures() == []
    assert report.samples_x == 64 and report.samples_t == 64


def test_sign_change_is_reported():
    """a_1 = x - 1/2 vanishes inside the domain"""
    report = validate(_minimal(a1="x - 1/2"))
    assert not report.passed
    failures = [c for c in report.failures() if c.name == "nonvanishing a"]
    assert [c.field for c in failures] == ["a[0]"]
    assert abs(failures[0].x - 0.5) < 0.02


def test_minimum_speed_is_measured():
    """min |a_1| of -1 + 0.1 sin t is 0.9 on the sample grid"""
    report = validate(_minimal(a1="-1 + 0.1*sin(t)"))
    assert report.passed
    check = next(c for c in report.checks if c.name == "nonvanishing a" and c.field == "a[0]")
    assert check.value == pytest.approx(0.9, abs=1e-12)
    assert check.t == pytest.approx(math.pi / 2)


def test_speed_below_floor_fails():
    """|a| below eps_a fails even without a sign change"""
    report = validate(_minimal(a1="1e-8"))
    assert not report.passed
    assert report.failures()[0].name == "nonvanishing a"


def test_non_periodic_field_is_reported():
    """A coefficient growing in t is not 2pi-periodic"""
    report = validate(_minimal(f=["t", "0"]))
    assert not report.passed
    failure = report.failures()[0]
    assert failure.name == "periodicity"
    assert failure.field == "f[0]"
    assert failure.value == pytest.approx(2 * math.pi)


def test_reflection_sparsity_is_checked():
    """r must couple the blocks and depend on t only"""
    bad_block = ProblemSpec.build(n=2, m=1, a=["-1", "1"], r={(0, 0): "0.5"})
    assert [c.name for c in validate(bad_block).failures()] == ["reflection sparsity"]

    x_dependent = ProblemSpec.build(n=2, m=1, a=["-1", "1"], r={(0, 1): "x"})
    assert [c.field for c in validate(x_dependent).failures()] == ["r[0][1]"]


def test_domain_error_becomes_failed_check():
    """Fields that cannot be evaluated are reported, not raised"""
    report = validate(_minimal(b={(0, 1): "1/x"}))
    assert not report.passed
    assert any(c.name == "finite" and c.field == "b[0][1]" for c in report.failures())


def test_validate_is_pure():
    """Repeated calls give identical reports"""
    spec = _minimal(a1="-1 + 0.1*sin(t)", f=["cos(t)", "x"])
    assert validate(spec) == validate(spec)


def test_validate_rejects_too_few_samples():
    """Zero or one sample per direction is an error, not a request for the default"""
    spec = _minimal()
    for samples_x, samples_t in [(0, 0), (0, 64), (64, 1)]:
        with pytest.raises(ProblemSpecError):
            validate(spec, samples_x, samples_t)


def test_remark_bundles_validate(remark1_commensurate, remark2):
    """Built-in problems satisfy the standing assumptions"""
    assert validate(remark1_commensurate.spec).passed
    assert validate(remark2.spec).passed


def test_b_from_tilde_constant():
    """tilde_b_12 = 1, a_1 = -1, a_2 = 1 gives b_12 = 2"""
    spec = ProblemSpec.build(
        n=2, m=1, a=["-1", "1"], tilde_b={(0, 1): "1", (1, 0): "0"}, b={(0, 0): "0.7"}
    )
    assembled = assemble_b_from_tilde(spec)
    assert evaluate(assembled.b[0][1], 0.3, 1.1) == pytest.approx(2.0)
    assert evaluate(assembled.b[1][0], 0.3, 1.1) == 0.0
    assert evaluate(assembled.b[0][0], 0.3, 1.1) == pytest.approx(0.7)


def test_b_from_tilde_equal_speeds():
    """Equal speeds kill the coupling whatever tilde_b is"""
    spec = ProblemSpec.build(n=2, m=1, a=["2", "2"], tilde_b={(0, 1): "sin(t)", (1, 0): "5"})
    assembled = assemble_b_from_tilde(spec)
    assert assembled.b[0][1].is_zero and assembled.b[1][0].is_zero


def test_b_from_tilde_pointwise():
    """tilde_b_12 = sin t with a_2 - a_1 = x gives b_12(0.5, pi/2) = 0.5"""
    spec = ProblemSpec.build(
        n=2, m=1, a=["-1", "x - 1"], tilde_b={(0, 1): "sin(t)", (1, 0): "1"}
    )
    assembled = assemble_b_from_tilde(spec)
    assert evaluate(assembled.b[0][1], 0.5, math.pi / 2) == pytest.approx(0.5)


def test_b_from_tilde_is_reproducible(rng):
    """Reassembling from the same tilde_b gives identical values"""
    spec = ProblemSpec.build(
        n=2, m=1, a=["-1 + 0.1*sin(t)", "1 + x"], tilde_b={(0, 1): "cos(t)", (1, 0): "x"}
    )
    xs, ts = rng.uniform(0, 1, 50), rng.uniform(0, 2 * math.pi, 50)
    first = assemble_b_from_tilde(spec)
    second = assemble_b_from_tilde(assemble_b_from_tilde(spec))
    for j, k in [(0, 1), (1, 0)]:
        np.testing.assert_allclose(
            evaluate_array(first.b[j][k], xs, ts), evaluate_array(second.b[j][k], xs, ts),
            rtol=0, atol=1e-15,
        )


def test_b_from_tilde_requires_all_entries():
    """A missing off-diagonal tilde_b entry is an error"""
    with pytest.raises(ProblemSpecError):
        assemble_b_from_tilde(ProblemSpec.build(n=2, m=1, a=["-1", "1"]))
    partial = ProblemSpec.build(n=3, m=1, a=["-1", "1", "2"], tilde_b={(0, 1): "1"})
    with pytest.raises(ProblemSpecError):
        assemble_b_from_tilde(partial)


def test_b_from_tilde_partial_keeps_plain_entries():
    """Pairs without tilde_b keep their b; equal speeds still give zero coupling"""
    spec = ProblemSpec.build(
        n=3,
        m=1,
        a=["-1", "2", "2"],
        b={(1, 0): "0.25", (2, 0): "x"},
        tilde_b={(0, 1): "3", (1, 2): "sin(t)", (2, 1): "7", (0, 2): "1"},
    )
    assembled = assemble_b_from_tilde(spec, partial=True)
    assert evaluate(assembled.b[0][1], 0.4, 0.2) == pytest.approx(9.0)
    assert evaluate(assembled.b[0][2], 0.4, 0.2) == pytest.approx(3.0)
    assert evaluate(assembled.b[1][0], 0.4, 0.2) == pytest.approx(0.25)
    assert evaluate(assembled.b[2][0], 0.4, 0.2) == pytest.approx(0.4)
    assert assembled.b[1][2].is_zero and assembled.b[2][1].is_zero


def test_spec_helpers():
    """Boundary, partners and coupling pairs follow the block structure"""
    spec = ProblemSpec.build(n=3, m=2, a=["-1", "-2", "1"], b={(2, 0): "1", (1, 1): "3"})
    assert spec.boundary(0) == 0.0 and spec.boundary(2) == 1.0
    assert list(spec.partners(1)) == [2]
    assert list(spec.partners(2)) == [0, 1]
    assert list(spec.coupling_pairs()) == [(2, 0)]
    assert not spec.is_diagonal
