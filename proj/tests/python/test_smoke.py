import math

import pytest

import qfourier as qf


@pytest.fixture(scope="module")
def ctx():
    return qf.QContext(0.5)


@pytest.fixture(scope="module")
def zeros(ctx):
    return qf.find_zeros(ctx, 12)


def test_series_values(ctx):
    assert qf.exp_q(0, ctx)["value"] == 1
    split = qf.exp_q(0.7j, ctx)["value"]
    assert abs(split - complex(qf.cq(0.7, ctx)["value"], qf.sq(0.7, ctx)["value"])) < 1e-12
    assert qf.cq(-1.3, ctx)["value"] == qf.cq(1.3, ctx)["value"]
    big = qf.cq(40.0, ctx, backend="multiprecision")
    assert big["backend"] == "multiprecision"
    assert qf.cq(40.0, ctx)["value"] == pytest.approx(big["value"], rel=1e-12)


def test_pochhammer():
    assert abs(qf.q_pochhammer_inf(0.5, 0.5) - 0.2887880950866024) < 1e-15
    assert qf.q_pochhammer(0.5, 0.5, 2) == pytest.approx(0.5 * 0.75)


def test_zeros(zeros):
    assert len(zeros) == 12
    lo, hi, valid = qf.theorem_a_bracket(0.5, 1)
    assert valid and lo < zeros.omega(1) < hi
    assert zeros.verify_brackets()
    assert 0.6 < qf.beta0() < 0.7


def test_expansion_of_abs(ctx, zeros):
    g = qf.stock_grid("abs", 0.5)
    fs = qf.compute_series(g, zeros, 8, ctx)
    cf = qf.closed_form_series("abs", zeros, 8)
    assert fs.a0 == pytest.approx(4 / 3, rel=1e-15)
    for a, b in zip(fs.a, cf.a):
        assert a == pytest.approx(b, rel=1e-8)
    assert all(b == 0 for b in fs.b)
    assert abs(fs(0.25) - 0.25) < 1e-3
    assert qf.sup_error_on_grid(cf, g, 8, 20) < qf.sup_error_on_grid(cf, g, 2, 20)


def test_step_constant_term(zeros):
    assert qf.step_index(0.5, 0.3) == 2
    assert qf.closed_form_series("step", zeros, 4, a=0.3).a0 == -0.5


def test_reports(ctx, zeros):
    h = qf.estimate_holder(qf.stock_grid("abs", 0.5))
    assert h["lambda_est"] == pytest.approx(1.0)
    assert qf.check_holder(qf.stock_grid("sign", 0.5), 1.0, 1.0)["limits_match"] is False
    assert qf.verify_orthogonality(zeros, 6, ctx)["passed"]
    d = qf.decay_diagnostics(qf.stock_grid("abs", 0.5), zeros, 12, ctx)
    assert d["c_lin_gt_1"]


def test_errors():
    with pytest.raises(qf.DomainError):
        qf.QContext(1.5)
    with pytest.raises(qf.Error):
        qf.step_index(0.5, 2.0)
    assert math.isfinite(qf.lemma_bound_B(0.5))
