import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semantrix import ActivityMatrix, build_semantrix
from semantrix.core import run_starts
from conftest import random_matrix
from oracles import rect_count, row_runs, run_pattern_occurrences


@pytest.fixture(params=["plain", "diff"])
def sx1(request, ex1):
    return build_semantrix(ex1, request.param)


def test_ex1_layout(sx1):
    assert sx1.B.to_numpy().tolist() == [1, 0, 1, 0, 0, 1, 1, 0, 1, 0]
    assert sx1.H.tolist() == [3, 7, 7, 1, 3]
    assert sx1.runs == 5 == sx1.B.rank1(10)
    assert sx1.fm.reconstruct().tolist() == [3, 7, 8, 7, 1, 3, 8]
    assert sx1.S[2].total() == 4


@pytest.mark.parametrize("obj, ivl, expected", [(2, 1, 7), (1, 4, 7), (1, 1, 3), (2, 5, 3)])
def test_activity_at(sx1, obj, ivl, expected):
    assert sx1.activity_at(obj, ivl) == expected


def test_activity_at_trace(ex1):
    sx = build_semantrix(ex1)
    assert sx.B.rank1(6) == 3 and sx.H[3 - 1] == 7


def test_constant_matrix():
    sx = build_semantrix(ActivityMatrix(np.full((3, 40), 2), sigma=4))
    assert sx.runs == 3
    assert {sx.activity_at(j, i) for j in range(1, 4) for i in range(1, 41)} == {2}


def test_activities_in_range(sx1):
    assert sx1.activities_in_range(2, 1, 5) == [(7, 1, 1), (1, 2, 3), (3, 4, 5)]
    assert sx1.activities_in_range(1, 2, 3) == [(3, 2, 2), (7, 3, 3)]
    assert sx1.activities_in_range(1, 4, 4) == [(7, 4, 4)]


@pytest.mark.parametrize("pattern, count", [([1, 3], 1), ([7, 7], 0), ([3], 2), ([7, 1, 3], 1), ([3, 7, 7], 0)])
def test_pattern_count(sx1, pattern, count):
    assert sx1.pattern_count(pattern) == count


@pytest.mark.parametrize("pattern, occ", [([1, 3], [(2, 2)]), ([3, 7], [(1, 1)]), ([7, 1], [(2, 1)]),
                                          ([3], [(1, 1), (2, 4)])])
def test_pattern_occurrences(sx1, pattern, occ):
    assert sx1.pattern_occurrences(pattern) == occ


def test_aggregates(sx1):
    assert sx1.aggregate_count(3, (1, 2), (4, 5)) == 2
    assert sx1.aggregate_count(7, (1, 1), (1, 5)) == 3
    assert sx1.aggregate_count(1, (1, 1), (1, 5)) == 0
    assert sx1.aggregate_duration(3, (1, 2), (4, 5)) == 10
    assert sx1.aggregate_duration(1, (1, 1), (1, 5)) == 0
    assert sx1.objects_performing(3, (1, 5)) == 2
    assert sx1.objects_performing(1, (1, 1)) == 0


def test_full_matrix_duration():
    m = ActivityMatrix(np.full((4, 6), 5), sigma=5, interval_len=5)
    assert build_semantrix(m, "diff").aggregate_duration(5, (1, 4), (1, 6)) == 4 * 6 * 5


def test_errors(sx1):
    with pytest.raises(IndexError):
        sx1.activity_at(3, 1)
    with pytest.raises(IndexError):
        sx1.activity_at(1, 6)
    with pytest.raises(IndexError):
        sx1.activities_in_range(1, 4, 2)
    with pytest.raises(ValueError):
        sx1.pattern_count([8])
    with pytest.raises(ValueError):
        sx1.pattern_count([])
    with pytest.raises(ValueError):
        sx1.aggregate_count(0, (1, 1), (1, 1))
    with pytest.raises(IndexError):
        sx1.aggregate_count(1, (2, 1), (1, 1))
    with pytest.raises(ValueError):
        build_semantrix(ActivityMatrix(np.ones((1, 1)), sigma=1), "sparse")


def test_matrix_validation():
    with pytest.raises(ValueError):
        ActivityMatrix(np.array([[0, 1]]), sigma=2)
    with pytest.raises(ValueError):
        ActivityMatrix(np.array([[3]]), sigma=2)
    with pytest.raises(ValueError):
        ActivityMatrix(np.zeros((0, 3)), sigma=2)
    with pytest.raises(ValueError):
        ActivityMatrix(np.ones((1, 1)), sigma=1, labels=("a", "b"))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 8), st.integers(1, 60), st.integers(1, 9), st.integers(0, 2**32), st.sampled_from(["plain", "diff"]))
def test_invariants(r, I, sigma, seed, agg):
    rng = np.random.default_rng(seed)
    m = random_matrix(rng, r, I, sigma)
    sx = build_semantrix(m, agg, diff_period=3, fm_sample_rate=4)
    os_seq = m.os
    # H[i] = OS[select1(B, i)] and o = rank1(B, rI)
    assert sx.runs == sx.B.rank1(r * I)
    assert [int(os_seq[sx.B.select1(k) - 1]) for k in range(1, sx.runs + 1)] == sx.H.tolist()
    assert all(sx.B.access((j - 1) * I + 1) == 1 for j in range(1, r + 1))
    assert (sx.to_matrix() == m.cells).all()
    assert int((sx.fm.reconstruct() == sigma + 1).sum()) == r
    assert sum(sx.S[a - 1].total() for a in range(1, sigma + 1)) == r * I
    for a in range(1, sigma + 1):
        assert sx.S[a - 1].total() == int((os_seq == a).sum())
        runs_of_a = sum(1 for row in m.cells for act, _ in row_runs(row) if act == a)
        assert sx.pattern_count([a]) == runs_of_a
    for j in range(1, r + 1):
        for i in range(1, I + 1):
            assert sx.activity_at(j, i) == m.cells[j - 1, i - 1]
    i_s = int(rng.integers(1, I + 1)); i_e = int(rng.integers(i_s, I + 1)); j = int(rng.integers(1, r + 1))
    runs = sx.activities_in_range(j, i_s, i_e)
    assert runs[0][1] == i_s and runs[-1][2] == i_e
    assert all(a[2] + 1 == b[1] and a[0] != b[0] for a, b in zip(runs, runs[1:]))
    assert [a for a, s, e in runs for _ in range(s, e + 1)] == m.cells[j - 1, i_s - 1:i_e].tolist()
    pat = rng.integers(1, sigma + 1, int(rng.integers(1, 4))).tolist()
    occ = run_pattern_occurrences(m.cells, pat)
    assert sx.pattern_count(pat) == len(occ)
    assert sx.pattern_occurrences(pat) == sorted(occ)
    for _ in range(20):
        a = int(rng.integers(1, sigma + 1))
        j1 = int(rng.integers(1, r + 1)); j2 = int(rng.integers(j1, r + 1))
        i1 = int(rng.integers(1, I + 1)); i2 = int(rng.integers(i1, I + 1))
        assert sx.aggregate_count(a, (j1, j2), (i1, i2)) == rect_count(m.cells, a, (j1, j2), (i1, i2))


def test_run_starts():
    cells = np.array([[1, 1, 2], [2, 2, 2]])
    assert run_starts(cells).tolist() == [1, 3, 4]


def test_round_trip_large():
    rng = np.random.default_rng(0)
    m = random_matrix(rng, 20, 1000)
    for agg in ("plain", "diff"):
        sx = build_semantrix(m, agg)
        assert (sx.to_matrix() == m.cells).all()
        probes = rng.integers(1, [21, 1001], (500, 2))
        assert all(sx.activity_at(j, i) == m.cells[j - 1, i - 1] for j, i in probes.tolist())


def test_space_breakdown(ex1):
    sizes = build_semantrix(ex1).space()
    assert set(sizes) == {"B", "H", "FM"} | {f"S{a}" for a in range(1, 8)}
    assert all(v > 0 for v in sizes.values())
