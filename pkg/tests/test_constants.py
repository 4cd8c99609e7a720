import math
from fractions import Fraction

import pytest

from linnik.constants import (
    C0,
    C2,
    PRESETS,
    REFERENCE_TABLE,
    ConstantSet,
    c2_partial_sum,
    c3_tail_bound,
    preset,
)
from linnik.interval import log2_interval
from linnik.ntcore import k_value, mult_order_2, odd_squarefree_upto


def test_embedded_enclosures():
    assert C0.contains("0.66016181585")
    assert C2.contains("1.9365")
    # C2 enclosure follows from the C2*C0 product bounds
    assert Fraction("1.2783521041") / Fraction("0.6601618159") > Fraction("1.93642")
    assert Fraction("1.2784421041") / Fraction("0.6601618158") < Fraction("1.93656")


def test_c2_examples():
    assert c2_partial_sum(1).contains(1)
    assert c2_partial_sum(2).contains(Fraction(3, 2))
    by_hand = 1 + Fraction(1, 2) + Fraction(1, 3) / 4 + Fraction(1, 5) / 3
    assert by_hand == Fraction(33, 20)
    iv = c2_partial_sum(4)
    assert iv.contains(Fraction(33, 20)) and iv.width() < Fraction(1, 10**30)


def test_c2_matches_exact_sum_small():
    exact = sum(k_value(n) / mult_order_2(n) for n in range(1, 400, 2))
    assert c2_partial_sum(200).contains(exact)


def test_c2_monotone_and_below_published():
    prev = c2_partial_sum(1)
    for m in (10, 100, 1000, 5000):
        cur = c2_partial_sum(m)
        assert cur.lo >= prev.lo
        assert cur.hi < Fraction("1.93656")
        prev = cur


def test_c2_rejects_zero():
    with pytest.raises(ValueError):
        c2_partial_sum(0)


def test_tail_examples():
    t = c3_tail_bound(40000)
    assert t.hi < Fraction("5.1e-5")
    assert t.lo > Fraction("4.9e-5")
    ln2 = log2_interval()
    assert (c3_tail_bound(4).lo, c3_tail_bound(4).hi) == (ln2.lo, ln2.hi)
    assert ln2.lo < Fraction(math.log(2)) < ln2.hi or abs(c3_tail_bound(4).mid() - math.log(2)) < 1e-16
    assert c3_tail_bound(10**6).hi < Fraction("2.1e-6")
    with pytest.raises(ValueError):
        c3_tail_bound(2)


def test_tail_equals_integral_by_quadrature():
    # 2 * int_D^inf dt/(t(t-2)), substituting t = D/u
    from scipy.integrate import quad

    D = 50
    val, err = quad(lambda u: 2 * D / ((D / u) * (D / u - 2)) / u**2, 0, 1)
    assert abs(val - c3_tail_bound(D).mid()) < 1e-10


def test_tail_strictly_decreasing():
    vals = [c3_tail_bound(D) for D in (3, 10, 100, 1000, 40000)]
    assert all(a.lo > b.hi for a, b in zip(vals, vals[1:]))


def test_tail_dominates_finite_tail():
    D, D2 = 1000, 10**5
    partial = sum(2 * k_value(d) / d for d in odd_squarefree_upto(D2) if d > D)
    assert c3_tail_bound(D).lo > partial


def test_presets_and_validation():
    assert set(PRESETS) == {"hbp-uncond", "hbp-grh", "new-uncond", "new-grh"}
    cs = preset("new-uncond")
    assert cs.C3.exact == Fraction("3.02858417")
    with pytest.raises(ValueError):
        preset("nope")
    with pytest.raises(ValueError):
        ConstantSet.build("3", "1.2", Fraction(1, 2))
    with pytest.raises(ValueError):
        ConstantSet.build("3", "0.8", Fraction(3, 2))


def test_reference_table_is_data():
    assert len(REFERENCE_TABLE) == 11
    g = [r for r in REFERENCE_TABLE if r.problem == "G"][0]
    assert (g.required_c, g.new_lambda, g.old_K, g.new_K) == (Fraction(109, 154), "0.8594000", 63, 62)
