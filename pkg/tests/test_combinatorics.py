import pytest
from hypothesis import given
from hypothesis import strategies as st

from wpcl.combinatorics import bell, restricted_growth_strings, set_partitions

KNOWN_BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


def test_bell_values():
    assert [bell(n) for n in range(len(KNOWN_BELL))] == KNOWN_BELL


@pytest.mark.parametrize("n", range(0, 9))
def test_partition_count_matches_bell(n):
    assert sum(1 for _ in set_partitions(range(n))) == bell(n)


def test_small_partitions():
    got = {frozenset(frozenset(b) for b in p) for p in set_partitions("abc")}
    assert len(got) == 5
    assert frozenset({frozenset("abc")}) in got
    assert frozenset(frozenset(x) for x in "abc") in got


@given(st.integers(1, 7))
def test_growth_strings_are_restricted(n):
    seen = set()
    for a in restricted_growth_strings(n):
        assert a[0] == 0
        for i in range(1, n):
            assert a[i] <= 1 + max(a[:i])
        seen.add(tuple(a))
    assert len(seen) == bell(n)


@given(st.sets(st.integers(0, 50), min_size=1, max_size=6))
def test_partitions_cover_disjointly(items):
    distinct = set()
    for blocks in set_partitions(sorted(items)):
        assert all(blocks)
        flat = [x for b in blocks for x in b]
        assert sorted(flat) == sorted(items)
        distinct.add(frozenset(frozenset(b) for b in blocks))
    assert len(distinct) == bell(len(items))
