from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from f1hall.laurent import LaurentPoly
from f1hall.series import BadConstantTerm, FormalSeries, geometric, rational_series, series_exp, series_log
from f1hall.theta import alpha

from conftest import laurent

ONE = LaurentPoly.one()


def test_exp_of_zero():
    assert series_exp(FormalSeries("z", 5)) == FormalSeries("z", 5, [1])


def test_log_of_geometric():
    g = geometric("z", 3, ONE)
    assert series_log(g).coeffs == tuple(LaurentPoly.const(c) for c in (0, 1, Fraction(1, 2), Fraction(1, 3)))


def test_exp_second_coefficient():
    u = LaurentPoly.var("u1")
    e = series_exp(FormalSeries("w", 2, [0, alpha(1) * u]))
    assert e[2] == (alpha(1) * u) ** 2 * Fraction(1, 2)


def test_bad_constant_terms():
    with pytest.raises(BadConstantTerm):
        series_exp(FormalSeries("z", 2, [1, 1]))
    with pytest.raises(BadConstantTerm):
        series_log(FormalSeries("z", 2, [2, 1]))
    with pytest.raises(BadConstantTerm):
        FormalSeries("z", 2, [LaurentPoly.var("s") + 1]).inverse()


def test_no_coefficients_beyond_order():
    f = FormalSeries("z", 3, [1, 2, 3, 4, 5, 6])
    assert len(f.coeffs) == 4
    with pytest.raises(IndexError):
        f[4]


def test_rational_series():
    # 1/(1-z)^2 = sum (n+1) z^n
    r = rational_series("z", 6, [1], [1, -2, 1])
    assert r.coeffs == tuple(LaurentPoly.const(n + 1) for n in range(7))


def test_mixing_variables_rejected():
    with pytest.raises(ValueError):
        FormalSeries("z", 2, [1]) + FormalSeries("w", 2, [1])


series = st.lists(laurent(max_terms=2, bound=2), min_size=4, max_size=4)


@given(series)
def test_log_exp_round_trip(cs):
    f = FormalSeries("z", 3, [LaurentPoly.zero()] + cs[:3])
    assert series_log(series_exp(f)) == f


@given(series)
def test_exp_log_round_trip(cs):
    f = FormalSeries("z", 3, [ONE] + cs[:3])
    assert series_exp(series_log(f)) == f


@given(series, series)
def test_exp_is_multiplicative(a, b):
    f = FormalSeries("z", 3, [0] + a[:3])
    g = FormalSeries("z", 3, [0] + b[:3])
    assert series_exp(f + g) == series_exp(f) * series_exp(g)


@given(series)
def test_inverse(cs):
    f = FormalSeries("z", 3, [ONE] + cs[:3])
    assert f * f.inverse() == FormalSeries("z", 3, [1])
