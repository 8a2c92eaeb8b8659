import io
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mkpbound.errors import (
    DivisibilityViolation,
    EmptyInstance,
    InvalidInstance,
    NonPositiveValue,
)
from mkpbound.model import (
    BoundReport,
    BsmkpSolution,
    MkpSolution,
    check_chain,
    format_bsmkp,
    format_mkp,
    parse_bsmkp,
    parse_mkp,
    percent_gap,
    read_instance,
    render_decimal,
    validate_bsmkp,
    validate_mkp,
    write_instance,
)

positive = st.integers(min_value=1, max_value=10**6)
items_st = st.lists(st.tuples(positive, positive), min_size=1, max_size=12)
caps_st = st.lists(positive, min_size=1, max_size=6)


def test_validate_basic():
    inst = validate_mkp([(10, 5), (3, 2)], [7, 4], name="x")
    assert inst.n == 2 and inst.m == 2
    assert inst.profits == (10, 3)
    assert inst.weights == (5, 2)
    assert not inst.degenerate


def test_validate_reports_every_violation():
    with pytest.raises(NonPositiveValue) as err:
        validate_mkp([(0, 5), (3, -2)], [7, 0])
    assert err.value.violations == [
        ("non_positive", "profit", 0),
        ("non_positive", "weight", 1),
        ("non_positive", "capacity", 1),
    ]


@pytest.mark.parametrize("items,caps", [([], [3]), ([(1, 1)], [])])
def test_empty(items, caps):
    with pytest.raises(EmptyInstance):
        validate_mkp(items, caps)


def test_non_integer_rejected():
    with pytest.raises(InvalidInstance):
        validate_mkp([(1.5, 2)], [3])
    with pytest.raises(InvalidInstance):
        validate_mkp([(True, 2)], [3])


def test_oversized_items_are_kept():
    inst = validate_mkp([(5, 100), (1, 1)], [10])
    assert inst.n == 2
    assert validate_mkp([(5, 100)], [10]).degenerate


def test_errors_are_value_errors():
    assert issubclass(InvalidInstance, ValueError)


@given(items_st, caps_st)
def test_mkp_text_round_trip(items, caps):
    inst = validate_mkp(items, caps, name="round trip")
    assert parse_mkp(format_mkp(inst)) == inst


def test_file_round_trip(tmp_path):
    inst = validate_mkp([(4, 3), (9, 8)], [5, 11], name="f")
    path = tmp_path / "f.mkp"
    write_instance(inst, path)
    assert read_instance(path) == inst
    assert read_instance(io.StringIO(path.read_text())) == inst


def test_parse_counts_lines():
    with pytest.raises(InvalidInstance):
        parse_mkp("2 1\n1 1\n5\n")


def test_bsmkp_canonical_merge():
    inst = validate_bsmkp([(4, Fraction(3), 1), (1, 2, 2), (4, 3, 2), (2, Fraction(7, 2), 1)], [9])
    assert [(c.size, c.profit, c.bound) for c in inst.classes] == [(1, 2, 2), (2, Fraction(7, 2), 1), (4, 3, 3)]
    assert inst.sizes == (1, 2, 4)
    assert validate_bsmkp(inst.classes, inst.capacities) == inst


def test_bsmkp_chain_violation():
    with pytest.raises(DivisibilityViolation):
        validate_bsmkp([(2, 1, 1), (3, 1, 1)], [6])


@given(st.lists(st.tuples(st.sampled_from([1, 2, 4, 12]), st.fractions(min_value=0, max_denominator=50), st.integers(1, 9)), min_size=1, max_size=8), caps_st)
def test_bsmkp_text_round_trip(classes, caps):
    inst = validate_bsmkp(classes, caps, name="b")
    assert parse_bsmkp(format_bsmkp(inst)) == inst


def test_check_chain():
    assert check_chain([8, 1, 2, 8]) == (1, 2, 8)
    with pytest.raises(DivisibilityViolation):
        check_chain([1, 4, 6])


def test_solution_check():
    inst = validate_mkp([(4, 3), (9, 8)], [5, 11])
    MkpSolution((0, 1), 13).check(inst)
    with pytest.raises(AssertionError):
        MkpSolution((1, 0), 13).check(inst)
    assert MkpSolution((None, 1), 9).assigned_items == (1,)
    b = validate_bsmkp([(1, 2, 3)], [2, 1])
    BsmkpSolution(((2, 1),), Fraction(6)).check(b)
    with pytest.raises(AssertionError):
        BsmkpSolution(((2, 2),), Fraction(8)).check(b)


@pytest.mark.parametrize(
    "x,places,text",
    [
        (Fraction(249 - 216, 216) * 100, 2, "15.28"),
        (Fraction(1, 8), 2, "0.13"),
        (Fraction(-1, 8), 2, "-0.13"),
        (Fraction(-1, 1000), 2, "0.00"),
        (Fraction(7), 0, "7"),
        (Fraction(25, 2), 0, "13"),
        (Fraction(2117187500, 10**6), 6, "2117.187500"),
    ],
)
def test_render_decimal(x, places, text):
    assert render_decimal(x, places) == text


@given(st.fractions(max_denominator=10**6), st.integers(0, 8))
def test_render_decimal_within_half_unit(x, places):
    shown = Fraction(render_decimal(x, places))
    assert abs(shown - x) <= Fraction(1, 2 * 10**places)


def test_report_gaps_need_exact_opt():
    r = BoundReport(z_seq=Fraction(216), z_surr=243, z_lp=Fraction(249), opt=173, exact_opt=False)
    r.fill_gaps()
    assert r.gap_se is None and r.gap_su is None and r.gap_lp is None
    assert render_decimal(r.g_se_lp) == "15.28"
    r.exact_opt = True
    r.fill_gaps()
    assert r.gap_su == percent_gap(243, 173)
    assert percent_gap(5, 0) is None
