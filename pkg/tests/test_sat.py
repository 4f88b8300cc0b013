import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from semantrix.sat import DiffSAT, SummedAreaTable, build_diff_sat, build_sat
from oracles import rect_sum

# A matrix chosen so its prefix sums hit the textbook corner values
WORKED = [
    [3, 1, 2, 1],
    [3, 3, 2, 3],
    [2, 2, 3, 2],
    [3, 3, 2, 2],
    [2, 2, 2, 3],
    [3, 2, 2, 2],
    [3, 3, 2, 1],
]


def test_empty():
    assert build_sat(np.zeros((0, 0), dtype=int)).M.tolist() == [[0]]


def test_two_by_two():
    assert build_sat([[1, 2], [3, 4]]).M[2][2] == 10


def test_all_zero():
    assert not build_sat(np.zeros((4, 5), dtype=int)).M.any()


def test_negative_rejected():
    with pytest.raises(ValueError):
        build_sat([[1, -1]])


def test_worked_example():
    sat = build_sat(WORKED)
    assert (sat.cell(7, 4), sat.cell(7, 1), sat.cell(2, 4), sat.cell(2, 1)) == (64, 19, 18, 6)
    assert sat.count_range(3, 2, 7, 4) == 64 - 19 - 18 + 6 == 33
    assert rect_sum(WORKED, 3, 2, 7, 4) == 33


def test_single_cell_and_full():
    A = np.arange(12).reshape(3, 4)
    sat = build_sat(A)
    assert sat.count_range(2, 3, 2, 3) == A[1, 2]
    assert sat.count_range(1, 1, 3, 4) == sat.M[3][4] == A.sum()


@pytest.mark.parametrize("rect", [(0, 1, 1, 1), (2, 1, 1, 1), (1, 2, 1, 1), (1, 1, 8, 1), (1, 1, 1, 5)])
def test_bad_rectangles(rect):
    sat = build_sat(WORKED)
    with pytest.raises(IndexError):
        sat.count_range(*rect)
    with pytest.raises(IndexError):
        build_diff_sat(WORKED, 2).count_range(*rect)


def test_diff_period_validation():
    with pytest.raises(ValueError):
        build_diff_sat(WORKED, 0)


def test_diff_degenerate_period():
    d = build_diff_sat(WORKED, 1)
    assert d.widths == [0] * 7 and (d.to_prefix_sums() == build_sat(WORKED).M).all()


def test_diff_row_block():
    d = build_diff_sat([[1, 1], [1, 1], [1, 1]], 2)
    assert d.absolute.tolist() == [[0, 0, 0], [0, 1, 2], [0, 3, 6]]
    assert [d.cell(2, y) - d.cell(1, y) for y in (1, 2)] == [1, 2]


def test_diff_exhaustive():
    rng = np.random.default_rng(11)
    A = rng.integers(0, 2, (20, 100))
    plain, d = build_sat(A), build_diff_sat(A, 4)
    assert all(d.cell(x, y) == plain.cell(x, y) for x in range(21) for y in range(101))


def test_diff_sampled_rows_only():
    A = np.ones((9, 6), dtype=int)
    d = build_diff_sat(A, 4)
    # rows 1, 5, 9 are sampled; corner rows x1-1 = 0 and x2 = 5 avoid packed reads
    assert d.count_range(1, 2, 5, 4) == build_sat(A).count_range(1, 2, 5, 4) == 15


@settings(max_examples=40)
@given(arrays(np.int64, st.tuples(st.integers(1, 12), st.integers(1, 12)), elements=st.integers(0, 5)),
       st.sampled_from([1, 2, 3, 4, 8]), st.data())
def test_rectangles_against_brute_force(A, s, data):
    r, c = A.shape
    x1 = data.draw(st.integers(1, r)); x2 = data.draw(st.integers(x1, r))
    y1 = data.draw(st.integers(1, c)); y2 = data.draw(st.integers(y1, c))
    plain, d = build_sat(A), build_diff_sat(A, s)
    expected = rect_sum(A.tolist(), x1, y1, x2, y2)
    assert plain.count_range(x1, y1, x2, y2) == expected
    assert d.count_range(x1, y1, x2, y2) == expected
    # inclusion-exclusion self-consistency
    if x2 > x1:
        assert plain.count_range(x1, y1, x1, y2) + plain.count_range(x1 + 1, y1, x2, y2) == expected
    if y2 > y1:
        assert plain.count_range(x1, y1, x2, y1) + plain.count_range(x1, y1 + 1, x2, y2) == expected


@given(arrays(np.int64, st.tuples(st.integers(1, 10), st.integers(1, 10)), elements=st.integers(0, 3)))
def test_monotone_with_zero_border(A):
    M = build_sat(A).M
    assert not M[0].any() and not M[:, 0].any()
    assert (np.diff(M, axis=0) >= 0).all() and (np.diff(M, axis=1) >= 0).all()


@given(arrays(np.int64, st.tuples(st.integers(1, 17), st.integers(1, 9)), elements=st.integers(0, 1000)),
       st.integers(1, 6))
def test_serialization_round_trip(A, s):
    for table in (build_sat(A), build_diff_sat(A, s)):
        raw = table.to_bytes()
        assert len(raw) == table.nbytes
        back, end = type(table).from_buffer(memoryview(raw))
        assert end == len(raw)
        M = back.M if isinstance(back, SummedAreaTable) else back.to_prefix_sums()
        assert (M == build_sat(A).M).all()


def test_diff_is_smaller_when_widths_narrow():
    rng = np.random.default_rng(5)
    A = rng.integers(0, 2, (20, 500))
    d = build_diff_sat(A, 4)
    assert min(d.widths) < 64
    assert isinstance(d, DiffSAT) and d.nbytes < build_sat(A).nbytes
