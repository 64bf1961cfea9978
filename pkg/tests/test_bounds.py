import math
from fractions import Fraction as F

import pytest

from decaylab.bounds import (
    DmtQuery,
    approximation_quality,
    dmt_optimality,
    dmt_point_to_point,
    dmt_rS,
    dmt_threshold,
    fit_exponent,
    format_rational,
    golden_limit_constant,
    liouville_effective_constant,
    parse_rational,
    tau_convergents,
    verify_bounds,
)
from decaylab.decay_search import decay, decay_series
from decaylab.sequences import unbalanced_series


def fibonacci(limit):
    a, b = 1, 1
    while a <= limit:
        yield a, b
        a, b = b, a + b


def test_convergents_are_fibonacci():
    convs = tau_convergents(10**6)
    fib = list(fibonacci(10**6))[1:]  # skip the duplicate k = 1
    assert [(c.k, c.h) for c in convs] == fib
    assert convs[-1].k <= 10**6


def test_convergent_quality_sandwich():
    c_eff = liouville_effective_constant()
    assert c_eff == pytest.approx(0.30902, abs=1e-5)
    for c in tau_convergents(10**6):
        assert c_eff < c.quality < 1
    assert tau_convergents(10**6)[-1].quality == pytest.approx(golden_limit_constant(), abs=1e-9)


def test_quality_closed_form():
    # along (F_{n+1}, F_n) the quality is (1 - (-1)^n tau^{-2n}) / sqrt5
    tau = (1 + 5**0.5) / 2
    for n, c in enumerate(tau_convergents(10**9), start=2):
        expected = (1 - (-1) ** n * tau ** (-2 * n)) / 5**0.5
        assert c.quality == pytest.approx(expected, rel=1e-12)


def test_non_convergent_quality():
    assert approximation_quality(3, 1) == pytest.approx(3 - (1 + 5**0.5) / 2)
    with pytest.raises(ValueError):
        approximation_quality(1, 0)
    with pytest.raises(ValueError):
        tau_convergents(0)


@pytest.mark.parametrize("delta0", [0.0, 1.0, 5 / 3, 2.0])
def test_fit_recovers_synthetic_exponent(delta0):
    pts = [(n, 3.7 * n ** (-delta0)) for n in range(1, 30)]
    fit = fit_exponent(pts)
    assert abs(fit.delta - delta0) < 1e-10
    assert fit.constant == pytest.approx(3.7, rel=1e-9)
    assert fit.residual < 1e-10
    assert fit.sample_count == 29


def test_fit_validation():
    with pytest.raises(ValueError):
        fit_exponent([(1, 1.0)])
    with pytest.raises(ValueError):
        fit_exponent([(1, 1.0), (2, 0.0)])
    with pytest.raises(ValueError):
        fit_exponent([(2, 1.0), (2, 0.5)])


def test_verify_bounds_singleton():
    r = decay(1, 1)
    rep = verify_bounds([r])
    assert rep.k_emp == pytest.approx(r.decay_value)
    assert rep.k_emp_box == (1, 1)
    assert rep.all_positive
    assert rep.fixed_second_fit is None


def test_verify_bounds_series_and_witnesses():
    recs = decay_series(5, "fixed_second") + decay_series(2, "equal")[1:]
    ws = [(w.size1, w.size2, w.abs_det) for w in unbalanced_series(4)]
    rep = verify_bounds(recs, ws)
    assert rep.k_emp > 0
    assert rep.c_emp >= max(r.n1 * r.decay_value for r in recs if r.n2 == 1) - 1e-15
    assert rep.fixed_second_fit.sample_count == 5
    assert len(rep.witness_products) == 4
    d = rep.to_dict()
    assert d["k_emp_box"] == list(rep.k_emp_box)
    with pytest.raises(ValueError):
        verify_bounds([])


def test_point_to_point_closed_forms():
    for k in range(101):
        x = F(k, 100)
        assert dmt_point_to_point(1, 2, x) == 2 - 2 * x
        assert dmt_point_to_point(2, 2, x) == 4 - 3 * x
        y = 1 + x
        assert dmt_point_to_point(2, 2, y) == 2 - y
    assert dmt_point_to_point(3, 4, 0) == 12
    with pytest.raises(ValueError):
        dmt_point_to_point(1, 2, F(3, 2))


def test_point_to_point_convex_decreasing():
    xs = [F(k, 50) for k in range(101)]
    ys = [dmt_point_to_point(2, 2, x) for x in xs]
    assert all(b < a for a, b in zip(ys, ys[1:]))
    slopes = [(b - a) * 50 for a, b in zip(ys, ys[1:])]
    assert all(s2 >= s1 for s1, s2 in zip(slopes, slopes[1:]))


def test_rS():
    assert dmt_rS(0) == F(2, 3)
    assert dmt_rS(F(1, 2)) == 1
    assert dmt_rS(F(3, 4)) == F(3, 2)
    with pytest.raises(ValueError):
        dmt_rS(F(5, 4))


def test_dmt_examples():
    r = dmt_optimality(DmtQuery(F(1, 5)))
    assert (r.lhs, r.rhs, r.satisfied) == (F(4, 5), F(4, 5), True)
    assert str(r) == "4/5 ≤ 4/5 : optimal"
    r = dmt_optimality(DmtQuery(F(1, 10)))
    assert (r.lhs, r.rhs, r.satisfied) == (F(2, 5), F(11, 15), True)
    r = dmt_optimality(DmtQuery(F(1, 2)))
    assert (r.lhs, r.rhs, r.satisfied) == (F(2), F(1), False)
    assert str(r) == "2/1 > 1/1 : condition violated"


def test_dmt_threshold_and_monotonicity():
    t = dmt_threshold()
    assert t == F(1, 5) and isinstance(t, F)
    for k in range(0, 201):
        r = F(k, 200)
        assert dmt_optimality(DmtQuery(r)).satisfied == (r <= F(1, 5))
    assert dmt_threshold(0) == 1
    assert dmt_threshold(F(5, 3)) == F(2, 9)
    with pytest.raises(ValueError):
        dmt_threshold(-1)


def test_dmt_empirical_mode():
    q = DmtQuery(F(1, 5), "empirical", 1.0)
    assert q.delta == F(1, 5)
    assert dmt_optimality(q).satisfied
    with pytest.raises(ValueError):
        DmtQuery(F(1, 5), "empirical")
    with pytest.raises(ValueError):
        DmtQuery(F(6, 5))


def test_rational_text():
    assert parse_rational("1/5") == F(1, 5)
    assert parse_rational(" 0.25 ") == F(1, 4)
    assert format_rational(F(4, 5)) == "4/5"
    for bad in ("1/0", "one", "1//2"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_to_dict_renders_rationals():
    d = dmt_optimality(DmtQuery(F(1, 5))).to_dict()
    assert d["lhs"] == "4/5" and math.isclose(d["lhs_float"], 0.8)
