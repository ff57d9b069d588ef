from math import comb

import pytest
from hypothesis import given, strategies as st

from eqschub.partitions import (
    GrassmannShape, Partition, add_box_successors, bar, conjugate, contains,
    enumerate_partitions, format_partition, parse_partition, partition_key, rim_minus,
)

partitions = st.lists(st.integers(1, 8), max_size=8).map(lambda xs: Partition(sorted(xs, reverse=True)))


@st.composite
def shape_and_partition(draw):
    p = draw(st.integers(1, 4))
    m = draw(st.integers(p + 1, p + 5))
    shape = GrassmannShape(p, m)
    lam = draw(st.sampled_from(enumerate_partitions(shape)))
    return shape, lam


def test_partition_normalizes():
    assert Partition([2, 1, 0, 0]) == Partition([2, 1])
    assert Partition().weight == 0
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, 0, 1])
    assert Partition([3, 1]).fits(2, 3) and not Partition([3, 1]).fits(1, 3)


def test_shape_validation():
    with pytest.raises(ValueError):
        GrassmannShape(0, 2)
    with pytest.raises(ValueError):
        GrassmannShape(3, 3)


def test_conjugate_examples():
    assert conjugate(()) == Partition()
    assert conjugate((2, 2)) == Partition((2, 2))
    assert conjugate((4, 2, 1)) == Partition((3, 2, 1, 1))


@given(partitions)
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).weight == lam.weight


def test_add_box_examples():
    s = GrassmannShape(2, 4)
    assert add_box_successors((), s) == [Partition((1,))]
    assert set(add_box_successors((1,), s)) == {Partition((2,)), Partition((1, 1))}
    assert add_box_successors((2, 2), s) == []
    assert Partition((3, 2)) in add_box_successors((2, 2), s, bounded=False)


@given(shape_and_partition())
def test_add_box_successors_are_one_box_larger(data):
    shape, lam = data
    for bounded in (True, False):
        for mu in add_box_successors(lam, shape, bounded):
            assert mu.weight == lam.weight + 1 and contains(mu, lam) and len(mu) <= shape.p
            if bounded:
                assert shape.contains(mu)


def test_rim_minus_examples():
    assert rim_minus((4, 2, 1), GrassmannShape(3, 7)) == Partition((1,))
    assert rim_minus((1,), GrassmannShape(1, 2)) == Partition()
    assert rim_minus((1,), GrassmannShape(2, 4)) is None


@given(shape_and_partition())
def test_rim_minus_removes_a_rim(data):
    shape, lam = data
    minus = rim_minus(lam, shape)
    if minus is None:
        assert lam.part(1) != shape.k or lam.part(shape.p) == 0
        return
    assert lam.weight - minus.weight == shape.m - 1
    assert contains(lam, minus)
    skew = {(i, j) for i in range(len(lam)) for j in range(minus.part(i + 1), lam[i])}
    assert not any({(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)} <= skew for i, j in skew)


def test_bar_examples():
    assert bar((1,), GrassmannShape(1, 2)) == Partition((2,))
    assert bar((2,), GrassmannShape(2, 4)) == Partition((3,))
    assert bar((2, 2), GrassmannShape(2, 4)) == Partition((3, 2))
    with pytest.raises(ValueError):
        bar((1,), GrassmannShape(2, 4))


def test_enumerate_examples():
    assert enumerate_partitions(GrassmannShape(1, 2)) == [Partition(), Partition((1,))]
    assert [tuple(x) for x in enumerate_partitions(GrassmannShape(2, 4))] == [
        (), (1,), (2,), (1, 1), (2, 1), (2, 2)]
    long = enumerate_partitions(GrassmannShape(2, 4), "length", max_weight=4)
    assert Partition((4,)) in long and Partition((3, 1)) in long
    assert all(len(x) <= 2 and x.weight <= 4 for x in long)


@pytest.mark.parametrize("p,m", [(1, 2), (2, 4), (2, 5), (3, 6), (3, 7), (4, 8)])
def test_rectangle_count_and_order(p, m):
    parts = enumerate_partitions(GrassmannShape(p, m))
    assert len(parts) == comb(m, p) == len(set(parts))
    assert [partition_key(x) for x in parts] == sorted(partition_key(x) for x in parts)


@given(partitions)
def test_text_format_round_trip(lam):
    assert parse_partition(format_partition(lam)) == lam


def test_text_format_empty_spellings():
    for text in ("0", "", "[]", " "):
        assert parse_partition(text) == Partition()
    assert parse_partition("4,2,1") == Partition((4, 2, 1))
    with pytest.raises(ValueError):
        parse_partition("1,x")
    with pytest.raises(ValueError):
        parse_partition("1,2")
