import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from linnik.interval import CertifiedInterval, interval_sum, log2_interval

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)
positive = st.fractions(min_value=Fraction(1, 1000), max_value=1000, max_denominator=10**6)


def widen(q: Fraction) -> CertifiedInterval:
    """Drop the exact fast path so the rounded endpoint arithmetic is exercised."""
    iv = CertifiedInterval.point(q)
    return CertifiedInterval(iv._lo, iv._hi)


OPS = {
    "+": lambda u, v: u + v,
    "-": lambda u, v: u - v,
    "*": lambda u, v: u * v,
    "/": lambda u, v: u / v,
}


@settings(max_examples=1000)
@given(rationals, rationals, st.sampled_from(sorted(OPS)))
def test_rounded_arithmetic_encloses_exact(a, b, op):
    if op == "/" and b == 0:
        return
    f = OPS[op]
    exact = f(a, b)
    assert f(widen(a), widen(b)).contains(exact)
    fast = f(CertifiedInterval.point(a), b)
    assert fast.exact == exact and fast.contains(exact)


@given(positive)
def test_log_exp_roundtrip_encloses(q):
    iv = CertifiedInterval.point(q)
    back = iv.log().exp()
    assert back.contains(q)
    assert back.width() < Fraction(1, 10**30) * max(q, 1)


def test_log2_digits():
    iv = log2_interval()
    assert iv.lower_str(20) == "0.69314718055994530941"
    assert iv.upper_str(20) == "0.69314718055994530942"
    assert iv.lo < Fraction(math.log(2)) + Fraction(1, 10**15)


def test_directed_decimal_strings():
    iv = CertifiedInterval.point(Fraction(2, 3))
    assert iv.lower_str(4) == "0.6666"
    assert iv.upper_str(4) == "0.6667"
    neg = -iv
    assert neg.lower_str(4) == "-0.6667"
    assert neg.upper_str(4) == "-0.6666"
    rep = iv.report(4)
    assert rep["lower_rounding"] == "down" and rep["exact"] == "2/3"


def test_from_bounds_and_comparisons():
    a = CertifiedInterval.from_bounds("0.6601618158", "0.6601618159")
    assert a.contains("0.66016181585")
    assert not a.contains("0.66016181591")
    assert a.certainly_lt(1)
    assert not a.certainly_lt("0.66016181585")
    assert a.certainly_gt("0.66")


def test_division_by_interval_through_zero():
    with pytest.raises(ZeroDivisionError):
        CertifiedInterval.point(1) / CertifiedInterval.from_bounds(-1, 1)


def test_rejects_floats():
    with pytest.raises(TypeError):
        CertifiedInterval.point(0.1)


def test_power_enclosure():
    lam = widen(Fraction("0.862327"))
    assert (lam**9).contains(Fraction("0.862327") ** 9)
    assert (CertifiedInterval.point(Fraction(1, 2)) ** 3).exact == Fraction(1, 8)


def test_interval_sum_modes_agree():
    terms = [Fraction(1, n) for n in range(1, 200)]
    exact = interval_sum(terms)
    rounded = interval_sum(terms, exact=False)
    assert exact.exact == sum(terms)
    assert rounded.contains(exact.exact)
    assert rounded.width() < Fraction(1, 10**30)
