import math
from decimal import Decimal, getcontext

import pytest

from kmodal.bounds import (Surd, ceil_sqrt, chung_upper, covering_bound_holds, gong_lower,
                           lb_rho, lb_rho_raw, m_lower, reference_bounds, ub_rho, ub_threshold)


def decimal_lb(n, k):
    """Independent oracle: ceil(sqrt((2k+1)(n - 1/4)) - k/2) at 60 digits."""
    getcontext().prec = 60
    v = Decimal((2 * k + 1) * (4 * n - 1)).sqrt() / 2 - Decimal(k) / 2
    return int(v.to_integral_value(rounding="ROUND_CEILING"))


def test_raw_matches_high_precision_oracle():
    bad = [(n, k) for k in range(11) for n in range(1, 2001) if lb_rho_raw(n, k) != decimal_lb(n, k)]
    assert bad == []


def test_lb_rho_is_floored_at_one():
    # the closed form dips below 1 only for n = 1, k >= 7
    low = [(n, k) for k in range(11) for n in range(1, 2001) if lb_rho_raw(n, k) < 1]
    assert low == [(1, k) for k in range(7, 11)]
    assert all(lb_rho(1, k) == 1 for k in range(50))


@pytest.mark.parametrize("n,k,expected", [(9, 0, 3), (10, 1, 5), (22, 1, 8), (80, 2, 19)])
def test_lb_examples(n, k, expected):
    assert lb_rho(n, k) == expected


@pytest.mark.parametrize("n,k,expected", [(10, 1, 6), (80, 2, 20), (270, 3, lb_rho(270, 3) + 1)])
def test_ub_examples(n, k, expected):
    assert ub_rho(n, k) == expected


def test_k0_is_ceil_sqrt():
    assert all(lb_rho(n, 0) == math.isqrt(n - 1) + 1 for n in range(1, 10001))
    assert all(ub_rho(n, 0) == lb_rho(n, 0) for n in range(1, 200))


def test_k1_unimodal_formula():
    # ceil(sqrt(3n - 3/4) - 1/2) = ceil((sqrt(12n - 3) - 1) / 2)
    getcontext().prec = 50
    for n in range(1, 10001):
        v = (Decimal(12 * n - 3).sqrt() - 1) / 2
        assert lb_rho(n, 1) == int(v.to_integral_value(rounding="ROUND_CEILING"))


def test_monotone_in_n():
    for k in range(11):
        for n in range(1, 2000):
            assert lb_rho(n, k) <= lb_rho(n + 1, k) <= n + 1


def test_monotone_in_k_when_n_at_least_k():
    for k in range(40):
        for n in range(max(k, 1), 2000):
            assert lb_rho(n, k) <= lb_rho(n, k + 1)


def test_k_monotonicity_breaks_only_below_n_equals_k():
    # the closed form is far below the trivial value n there, so it stays a valid lower bound
    drops = [(n, k) for k in range(40) for n in range(1, 3000) if lb_rho(n, k) > lb_rho(n, k + 1)]
    assert drops[0] == (2, 10) and lb_rho(2, 10) == 2 and lb_rho(2, 11) == 1
    assert all(n < k for n, k in drops)


def test_chung_and_gong_bracket_for_large_n():
    for k in range(1, 6):
        for n in range(10 * k ** 3, 10 * k ** 3 + 300):
            assert gong_lower(n, k) <= lb_rho(n, k) <= ub_rho(n, k) <= chung_upper(n, k) + 1


def test_ceil_sqrt():
    assert [ceil_sqrt(m) for m in range(10)] == [0, 1, 2, 2, 2, 3, 3, 3, 3, 3]
    big = 10 ** 40 + 1
    assert ceil_sqrt(big) == 10 ** 20 + 1


def test_surd_single_point_equality():
    s = m_lower(1, 1)
    assert s == 2 and s.ceil() == 2 and abs(float(s) - 2.0) < 1e-12
    assert covering_bound_holds(2, 1, 1) and not covering_bound_holds(1, 1, 1)


def test_surd_comparisons():
    s = m_lower(10, 2)  # sqrt(195/4) + 1 = 7.98...
    assert 7 < s < 8 and s.ceil() == 8
    assert Surd(2, 0) < 2 and Surd(4, 0) == 2


def test_threshold_and_record():
    assert ub_threshold(3) == 270
    rec = reference_bounds(10, 1)
    assert rec.as_row() == {"n": 10, "k": 1, "lb": 5, "ub": 6, "chung": 6, "gong": 4}
    assert rec.ub_certified and not reference_bounds(9, 1).ub_certified


@pytest.mark.parametrize("n,k", [(0, 1), (-3, 0), (5, -1)])
def test_domain_errors(n, k):
    with pytest.raises(ValueError):
        lb_rho(n, k)
