from itertools import combinations, combinations_with_replacement, permutations

import pytest
from hypothesis import given, strategies as st

from kmodal.core import GenericPointSet, Point, Sign, from_sequence, reflect_y, validate_modal_path
from kmodal.rng import TrialRng
from kmodal.solver import (best_length, brute_longest, is_canonical, is_modal_sequence,
                           longest_modal, modal_dp, modal_length, points_of_permutation,
                           rho_exact, rho_sample)

from conftest import point_sets


def cut_oracle(seq, k, sign):
    """Try every split into k+1 consecutive, possibly empty, alternating monotone blocks."""
    n = len(seq)
    for cuts in combinations_with_replacement(range(n + 1), k):
        bounds = (0,) + cuts + (n,)
        ok = True
        for j in range(k + 1):
            block = seq[bounds[j]:bounds[j + 1]]
            up = sign.increasing(j)
            if any((b > a) != up for a, b in zip(block, block[1:])):
                ok = False
                break
        if ok:
            return True
    return False


def test_decreasing_example():
    S = from_sequence([5, 4, 3.14])
    assert longest_modal(S, 0, Sign.MINUS).length == 3
    assert longest_modal(S, 0, Sign.PLUS).length == 1


def test_empty_set():
    r = longest_modal(GenericPointSet(), 2)
    assert r.length == 0 and r.witness.is_empty()


def test_zigzag_example(zigzag):
    assert longest_modal(zigzag, 1).length == 3
    assert brute_longest(zigzag, 1) == 3


def test_small_sets_are_fully_modal():
    S = from_sequence([3, 1, 4, 2])
    for k in range(3, 6):
        assert longest_modal(S, k).length == 4 == brute_longest(S, k)


def test_increasing_brute():
    S = GenericPointSet(Point(i, i) for i in range(5))
    assert brute_longest(S, 0) == 5


def test_brute_guard():
    with pytest.raises(ValueError, match="limited"):
        brute_longest(GenericPointSet(Point(i, i) for i in range(17)), 1)


@given(st.integers(0, 8).flatmap(lambda n: st.permutations(range(n))), st.integers(0, 3))
def test_greedy_matches_cut_enumeration(seq, k):
    for sign in Sign:
        assert is_modal_sequence(seq, k, sign) == cut_oracle(list(seq), k, sign)


@given(point_sets(max_n=11), st.integers(0, 3))
def test_dp_matches_brute(S, k):
    r = longest_modal(S, k)
    assert r.length == brute_longest(S, k)
    assert validate_modal_path(r.witness, S) and len(r.witness) == r.length


@given(point_sets(max_n=14), st.integers(0, 4))
def test_length_only_variant_agrees(S, k):
    ys = [p.y for p in S]
    for sign in Sign:
        assert modal_length(ys, k, sign) == modal_dp(ys, k, sign)[0]


@given(point_sets(max_n=14), st.integers(0, 4))
def test_sign_symmetry(S, k):
    R = reflect_y(S)
    assert longest_modal(S, k, Sign.PLUS).length == longest_modal(R, k, Sign.MINUS).length
    assert longest_modal(S, k, Sign.MINUS).length == longest_modal(R, k, Sign.PLUS).length


@given(point_sets(min_n=1, max_n=12), st.integers(0, 3), st.data())
def test_monotone_in_k_and_deletion(S, k, data):
    M = longest_modal(S, k).length
    assert longest_modal(S, k + 1).length >= M
    drop = data.draw(st.integers(0, len(S) - 1))
    T = GenericPointSet(p for i, p in enumerate(S) if i != drop)
    assert longest_modal(T, k).length <= M


@pytest.mark.parametrize("n,k,expected", [(9, 0, 3), (4, 1, 3), (2, 3, 2), (0, 1, 0), (1, 0, 1)])
def test_rho_examples(n, k, expected):
    assert rho_exact(n, k).value == expected


def test_rho_is_n_when_n_at_most_k_plus_one():
    for k in range(4):
        for n in range(1, k + 3):
            assert rho_exact(n, k).value == n


def test_rho_witness_is_extremal():
    r = rho_exact(5, 1)
    assert longest_modal(points_of_permutation(r.witness_permutation), 1).length == r.value
    # lexicographically smallest permutation attaining the minimum
    best = min(p for p in permutations(range(1, 6)) if best_length(p, 1) == r.value)
    assert r.witness_permutation == best


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("k", [0, 1, 2])
def test_pruned_matches_unpruned(n, k):
    a, b = rho_exact(n, k), rho_exact(n, k, prune=False)
    assert a.value == b.value and a.witness_permutation == b.witness_permutation


def test_workers_agree():
    assert rho_exact(7, 1, workers=2) == rho_exact(7, 1)


def test_canonical_orbit_representatives():
    for n in range(1, 7):
        perms = list(permutations(range(n)))
        canon = [p for p in perms if is_canonical(p)]
        assert 4 * len(canon) >= len(perms)


def test_rho_guard_and_sample():
    with pytest.raises(ValueError, match="sample"):
        rho_exact(11, 1)
    r = rho_sample(6, 1, 200, TrialRng(1))
    assert r.value >= rho_exact(6, 1).value
    assert best_length([v - 1 for v in r.witness_permutation], 1) == r.value
    assert rho_sample(6, 1, 50, TrialRng(5)) == rho_sample(6, 1, 50, TrialRng(5))
