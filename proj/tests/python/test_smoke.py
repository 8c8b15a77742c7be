import bisect
import itertools
import random

import pytest

import monge


def brute(rows, i0, i1, j0, j1, first=None, last=None):
    best = None
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            if first is not None and not (first[i] <= j <= last[i]):
                continue
            if best is None or rows[i][j] > best:
                best = rows[i][j]
    return best


@pytest.mark.parametrize("kind", ["lines", "density", "product", "distance"])
def test_submatrix_index_matches_brute_force(kind):
    rows = monge.generate(3, 9, 11, kind)
    assert monge.is_monge(rows)
    for linear in (False, True):
        index = monge.SubmatrixIndex(rows, linear=linear)
        for i0, i1 in itertools.combinations_with_replacement(range(9), 2):
            for j0, j1 in itertools.combinations_with_replacement(range(11), 2):
                e = index.max(i0, i1, j0, j1)
                assert e.value == brute(rows, i0, i1, j0, j1)
                assert rows[e.row][e.col] == e.value


def test_subcolumn_and_column_maxima():
    rows = monge.generate(5, 12, 7, "density")
    r = monge.column_maxima(rows)
    assert r == sorted(r)
    index = monge.SubcolumnIndex(rows)
    for j in range(7):
        assert index.max(j, 0, 11).value == max(row[j] for row in rows)
        assert index.max(j, 3, 5).value == max(rows[i][j] for i in range(3, 6))


def test_staircase_and_partial_indexes():
    rows = monge.generate(8, 10, 10, "lines")
    first, last = monge.random_staircase(8, 10, 10, "lower-right")
    stair = monge.StaircaseIndex(rows, first, last)
    shape = monge.random_partial_shape(9, 10, 10)
    partial = monge.PartialIndex(rows, *shape)
    for i0, i1 in itertools.combinations_with_replacement(range(10), 2):
        for j0, j1 in itertools.combinations_with_replacement(range(10), 2):
            e = stair.max(i0, i1, j0, j1)
            want = brute(rows, i0, i1, j0, j1, first, last)
            assert (e.value if e else None) == want
            e = partial.max(i0, i1, j0, j1)
            want = brute(rows, i0, i1, j0, j1, *shape)
            assert (e.value if e else None) == want


def test_reduction_matrix_example_and_predecessor():
    keys = [3, 18, 21, 22, 42, 46, 57, 60]
    rm = monge.ReductionMatrix(keys, 8)
    table = rm.to_list()
    assert (rm.rows, rm.cols) == (17, 8)
    assert table[0] == [-48, -33, -18, -3, 12, 27, 42, 57]
    assert table[16] == [8, 7, 6, 5, 4, 3, 2, 1]
    assert monge.is_monge(table, min=True)
    p = monge.MongePredecessor(keys, 8)
    assert p.pred(20) == 18
    assert p.pred(0) is None
    for x in range(64):
        k = bisect.bisect_right(keys, x)
        assert p.pred(x) == (keys[k - 1] if k else None)


def test_universe_reduction():
    rng = random.Random(4)
    keys = sorted(rng.sample(range(16**4), 16))
    u = monge.UniverseReduction(keys, 4)
    for _ in range(2000):
        x = rng.randrange(16**4)
        k = bisect.bisect_right(keys, x)
        assert u.pred(x) == (keys[k - 1] if k else None)


def test_errors_surface_as_python_exceptions():
    with pytest.raises(IndexError):
        monge.SubmatrixIndex(monge.generate(1, 3, 3)).max(0, 5, 0, 0)
    with pytest.raises(ValueError):
        monge.ReductionMatrix([0, 1, 2], 2)
