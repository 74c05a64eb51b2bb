from fractions import Fraction

import pytest
from hypothesis import given

from kmodal.core import (FineCovering, GenericPointSet, ModalPath, NonGenericError, Point, Sign,
                         from_sequence, ne_less, rank_normalize, reflect_path, se_less,
                         to_rational, to_sequence, validate_modal_path)
from kmodal.io import (covering_from_json, covering_to_json, dump_json, parse_points_csv,
                       path_from_json, path_to_json, points_csv, read_point_input)
from kmodal.solver import longest_modal

from conftest import point_sets


def test_rationals_are_exact():
    assert to_rational(3.14) == Fraction("3.14")
    assert to_rational("2/6") == Fraction(1, 3)
    assert Point(0.1, "1/2") == (Fraction("0.1"), Fraction(1, 2))


def test_from_sequence_empty():
    assert len(from_sequence([])) == 0


def test_from_sequence_decreasing_example():
    S = from_sequence([5, 4, 3.14])
    assert list(S) == [Point(1, 5), Point(2, 4), Point(3, Fraction("3.14"))]
    path = ModalPath(0, Sign.MINUS, (tuple(S),))
    assert validate_modal_path(path, S) and len(path) == 3


def test_from_sequence_duplicate_names_indices():
    with pytest.raises(NonGenericError, match="1 and 3"):
        from_sequence([7, 2, 7])


@pytest.mark.parametrize("pts", [[(1, 1), (1, 2)], [(1, 1), (2, 1)]])
def test_nongeneric_rejected(pts):
    with pytest.raises(NonGenericError):
        GenericPointSet(Point(*p) for p in pts)


def test_points_sorted_by_x():
    S = GenericPointSet([Point(3, 1), Point(1, 2), Point(2, 3)])
    assert [p.x for p in S] == [1, 2, 3]
    assert S.y_ranks() == [1, 2, 0]


def test_dominance_orders():
    p, q = Point(0, 0), Point(1, 1)
    assert ne_less(p, q) and not se_less(p, q)
    assert se_less(Point(0, 1), Point(1, 0))


def test_sign_parsing():
    assert Sign.parse("−") is Sign.MINUS
    assert Sign.parse("plus") is Sign.PLUS
    assert Sign.PLUS.increasing(0) and not Sign.PLUS.increasing(1)
    assert Sign.MINUS.flipped() is Sign.PLUS


def test_validate_examples():
    a, b = Point(1, 1), Point(2, 2)
    assert validate_modal_path(ModalPath(1, Sign.PLUS, ((a, b), ())))
    bad = validate_modal_path(ModalPath(1, Sign.PLUS, ((), (a, b))))
    assert not bad and bad.section == 1 and "decreasing" in bad.reason
    sep = validate_modal_path(ModalPath(1, Sign.PLUS, ((Point(3, 3),), (Point(1, 1),))))
    assert not sep and "x-separated" in sep.reason


def test_validate_membership_and_repeats():
    S = from_sequence([1, 2])
    assert not validate_modal_path(ModalPath(0, "+", ((Point(9, 9),),)), S)
    p = Point(1, 1)
    assert not validate_modal_path(ModalPath(1, "+", ((p,), (p,))))


def test_wrong_section_count():
    with pytest.raises(ValueError):
        ModalPath(2, Sign.PLUS, ((), ()))


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_one_point_per_section_valid_under_both_signs(k):
    pts = [Point(i, (-1) ** i * i) for i in range(k + 1)]
    for sign in Sign:
        path = ModalPath(k, sign, tuple((p,) for p in pts))
        assert validate_modal_path(path)


def test_rank_normalize_examples():
    S = GenericPointSet([Point(1, 5), Point(2, 4)])
    assert list(rank_normalize(S, 1)) == [Point(2, Fraction(2, 3)), Point(4, Fraction(1, 3))]
    assert list(rank_normalize(GenericPointSet([Point(7, -3)]), 2)) == [Point(3, Fraction(1, 2))]


@given(point_sets(max_n=12))
def test_rank_normalize_preserves_optimum(S):
    for k in (0, 1, 2):
        N = rank_normalize(S, k)
        assert N.y_ranks() == S.y_ranks()
        assert longest_modal(N, k).length == longest_modal(S, k).length


@given(point_sets(max_n=12))
def test_sequence_round_trip_preserves_order(S):
    T = from_sequence(to_sequence(S))
    assert T.y_ranks() == S.y_ranks()


def test_reflect_path_flips_sign():
    P = ModalPath(1, Sign.PLUS, ((Point(0, 0), Point(1, 1)), (Point(2, 3), Point(3, 2))))
    R = reflect_path(P)
    assert R.sign is Sign.MINUS and validate_modal_path(R)


def test_csv_round_trip(tmp_path):
    S = GenericPointSet([Point("1/3", "-2"), Point("0.5", 7)])
    assert parse_points_csv(points_csv(S)) == S
    with pytest.raises(ValueError):
        parse_points_csv("a,b\n1,2\n")
    f = tmp_path / "seq.txt"
    f.write_text("# comment\n3\n1\n2.5\n")
    assert to_sequence(read_point_input(f)) == [3, 1, Fraction(5, 2)]


def test_json_round_trip():
    S = from_sequence([2, 4, 1, 3])
    P = ModalPath(1, Sign.MINUS, ((S[0],), (S[1], S[2])))
    obj = path_to_json(P)
    assert obj["sign"] == "-"
    assert path_from_json(obj) == P
    obj["sign"] = "−"
    assert path_from_json(obj) == P
    C = FineCovering(1, Sign.MINUS, (P,), S)
    assert covering_from_json(covering_to_json(C)) == C
    assert dump_json(covering_to_json(C)) == dump_json(covering_to_json(C))
