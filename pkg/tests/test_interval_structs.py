import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sortedcontainers import SortedList

from services.interval_structs import BorderError, IntervalError, IntervalSplitFind, IntervalUnionFind


class NaivePartition:
    """Explicit sorted border set; the reference both structures are compared with"""

    def __init__(self, n, borders):
        self.n = n
        self.borders = SortedList(borders)

    def add(self, u):
        if u not in self.borders:
            self.borders.add(u)

    def discard(self, u):
        self.borders.discard(u)

    def find(self, u):
        index = self.borders.bisect_left(u)
        lo = self.borders[index - 1] + 1 if index > 0 else 1
        return lo, self.borders[index]


def test_split_find_examples():
    sf = IntervalSplitFind(10)
    assert sf.find(5) == (1, 10)
    sf.split(3)
    assert sf.find(3) == (1, 3)
    sf.split(7)
    assert sf.find(5) == (4, 7)
    assert sf.intervals() == [(1, 3), (4, 7), (8, 10)]


def test_split_existing_border_is_noop():
    sf = IntervalSplitFind(5)
    sf.split(2)
    sf.split(2)
    sf.split(5)
    assert sf.intervals() == [(1, 2), (3, 5)]


def test_union_find_examples():
    uf = IntervalUnionFind(5)
    assert uf.find(3) == (3, 3)
    uf.union(3)
    assert uf.find(3) == (3, 4)
    uf.union(2)
    assert uf.find(4) == (2, 4)
    assert uf.intervals() == [(1, 1), (2, 4), (5, 5)]


def test_union_on_non_border_raises():
    uf = IntervalUnionFind(5)
    uf.union(2)
    with pytest.raises(BorderError):
        uf.union(2)
    with pytest.raises(BorderError):
        uf.union(5)


def test_out_of_range():
    with pytest.raises(IntervalError):
        IntervalSplitFind(4).find(0)
    with pytest.raises(IntervalError):
        IntervalSplitFind(4).split(5)
    with pytest.raises(IntervalError):
        IntervalUnionFind(4).find(5)


@pytest.mark.parametrize("seed", range(1000))
def test_differential_random_sequences(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 200)
    sf, sf_ref = IntervalSplitFind(n), NaivePartition(n, [n])
    uf, uf_ref = IntervalUnionFind(n), NaivePartition(n, range(1, n + 1))
    for _ in range(rng.randint(0, 10 * n)):
        u = rng.randint(1, n)
        op = rng.randrange(4)
        if op == 0:
            sf.split(u)
            sf_ref.add(u)
        elif op == 1:
            if u < n and u in uf_ref.borders:
                uf.union(u)
                uf_ref.discard(u)
        elif op == 2:
            assert sf.find(u) == sf_ref.find(u)
        else:
            assert uf.find(u) == uf_ref.find(u)
    for u in range(1, n + 1):
        assert sf.find(u) == sf_ref.find(u)
        assert uf.find(u) == uf_ref.find(u)


@settings(max_examples=100, derandomize=True)
@given(st.integers(min_value=1, max_value=12).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(min_value=1, max_value=n), max_size=3 * n))
))
def test_widths_are_monotone(case):
    n, positions = case
    sf, uf = IntervalSplitFind(n), IntervalUnionFind(n)
    for u in positions:
        before_sf = [sf.find(v) for v in range(1, n + 1)]
        before_uf = [uf.find(v) for v in range(1, n + 1)]
        sf.split(u)
        if uf.is_border(u):
            uf.union(u)
        for v in range(1, n + 1):
            lo, hi = sf.find(v)
            assert before_sf[v - 1][0] <= lo and hi <= before_sf[v - 1][1]
            lo, hi = uf.find(v)
            assert lo <= before_uf[v - 1][0] and before_uf[v - 1][1] <= hi


@pytest.mark.parametrize("n", range(1, 13))
def test_every_border_set_up_to_twelve(n):
    rng = random.Random(n)
    for mask in range(1 << (n - 1)):
        chosen = [u for u in range(1, n) if mask >> (u - 1) & 1]
        rng.shuffle(chosen)
        sf, sf_ref = IntervalSplitFind(n), NaivePartition(n, [n])
        uf, uf_ref = IntervalUnionFind(n), NaivePartition(n, range(1, n + 1))
        for u in chosen:
            sf.split(u)
            sf_ref.add(u)
            uf.union(u)
            uf_ref.discard(u)
            v = rng.randint(1, n)
            assert sf.find(v) == sf_ref.find(v)
            assert uf.find(v) == uf_ref.find(v)
        assert [sf.find(v) for v in range(1, n + 1)] == [sf_ref.find(v) for v in range(1, n + 1)]
        assert [uf.find(v) for v in range(1, n + 1)] == [uf_ref.find(v) for v in range(1, n + 1)]
        assert len(sf) == len(chosen) + 1


@pytest.mark.parametrize("order", ["ascending", "descending", "shuffled", "halving"])
def test_split_relabel_work_is_n_log_n(order):
    n = 1 << 14
    positions = list(range(1, n))
    if order == "descending":
        positions.reverse()
    elif order == "shuffled":
        random.Random(3).shuffle(positions)
    elif order == "halving":
        positions = []
        step = n
        while step > 1:
            positions.extend(range(step // 2, n, step))
            step //= 2
    sf = IntervalSplitFind(n)
    for u in positions:
        sf.split(u)
    assert sf.intervals() == [(u, u) for u in range(1, n + 1)]
    assert sf.relabeled <= n * math.log2(n)
