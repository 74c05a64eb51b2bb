import pytest

from kmodal.bounds import lb_rho, ub_rho
from kmodal.construct import (ThresholdError, block_lengths, build_ust, choose_params,
                              extremal_set, nearest_int, ust_cap, rich_block_diagnostic,
                              size_certificate, ust_size)
from kmodal.core import ne_less
from kmodal.solver import longest_modal


def test_ust_3_2():
    U = build_ust(3, 2)
    assert [len(b) for b in U.blocks] == [2, 3, 4, 4, 4, 3, 2]
    assert len(U.points) == 22 == ust_size(3, 2)
    assert longest_modal(U.points, 1).length == 8 == lb_rho(22, 1) == ust_cap(3, 2, 1)


def test_ust_1_1():
    assert block_lengths(1, 1) == [1, 2, 1] and len(build_ust(1, 1).points) == 4


@pytest.mark.parametrize("s,t", [(1, 1), (2, 3), (4, 2)])
def test_block_structure(s, t):
    U = build_ust(s, t)
    for b, blk in enumerate(U.blocks, start=1):
        assert all(b < p.x < b + 1 and b < p.y < b + 1 for p in blk)
        assert all(a.x < c.x and a.y > c.y for a, c in zip(blk, blk[1:]))
    for i in range(len(U.blocks)):
        for j in range(i + 1, len(U.blocks)):
            assert all(ne_less(p, q) for p in U.blocks[i] for q in U.blocks[j])
    assert len(U.points) == t * (2 * s + 3 * t - 1)


def test_build_ust_rejects_nonpositive():
    with pytest.raises(ValueError):
        build_ust(0, 2)


def test_ust_cap_and_rounding():
    assert ust_cap(3, 2, 1) == 8  # floor(8.5)
    assert ust_cap(1, 1, 0) == 3
    assert nearest_int(5, 2) == 3 and nearest_int(7, 3) == 2 and nearest_int(-1, 2) == 0


@pytest.mark.parametrize("n,k,expected", [(10, 1, (5, 7, 2, 1)), (80, 2, (19, 21, 4, 5))])
def test_choose_params_examples(n, k, expected):
    p = choose_params(n, k)
    assert (p.x, p.y, p.t, p.s) == expected and not p.adjusted and p.size >= n
    assert size_certificate(p)


def test_threshold():
    with pytest.raises(ThresholdError):
        choose_params(9, 1)
    with pytest.raises(ValueError):
        choose_params(100, 0)


def test_k1_needs_smaller_t_sometimes():
    p = choose_params(27, 1)
    assert p.adjusted and (p.t, p.s) == (3, 2) and p.size >= 27


@pytest.mark.parametrize("k", [1, 2, 3])
def test_params_valid_over_range(k):
    for n in range(10 * k ** 3, 10 * k ** 3 + 600):
        p = choose_params(n, k)
        assert p.s >= 1 and p.t >= 1 and p.size >= n
        assert ust_cap(p.s, p.t, k) == p.x + 1
        if not p.adjusted:
            assert size_certificate(p)


@pytest.mark.parametrize("n,k", [(10, 1), (80, 2), (270, 3)])
def test_extremal_examples(n, k):
    S = extremal_set(n, k)
    assert len(S) == n
    M = longest_modal(S, k).length
    assert lb_rho(n, k) <= M <= ub_rho(n, k)


def test_extremal_trims_largest_x():
    S = extremal_set(10, 1)
    U = build_ust(1, 2).points
    assert list(S) == list(U)[:10]


@pytest.mark.parametrize("s,t", [(1, 2), (3, 2), (2, 3), (5, 4)])
@pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
def test_ust_cap_and_block_diagnostic(s, t, k):
    U = build_ust(s, t)
    for sign in ("+", "-"):
        r = longest_modal(U.points, k, sign)
        assert r.length <= ust_cap(s, t, k)
        if k >= 1:
            assert rich_block_diagnostic(U, r.witness)["ok"]
    if k == 0:
        with pytest.raises(ValueError):
            rich_block_diagnostic(U, r.witness)
