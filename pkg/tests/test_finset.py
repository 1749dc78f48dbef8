import pytest
from hypothesis import given, strategies as st

from barrierlab.finset import (EVENS, NATURALS, ODDS, InfSetWindow, ElementNotInM, check_finset,
                               comes_before, every, finset, is_initial_segment, nth, position,
                               shift_down, take, transfer_map)


def test_finset_sorts_and_dedups():
    assert finset([3, 1, 3, 2]) == (1, 2, 3)


def test_check_finset_rejects_unsorted():
    with pytest.raises(ValueError):
        check_finset((2, 1))


def test_window_normalizes_prefix_into_tail():
    assert InfSetWindow((1, 3), 5, 2) == ODDS


def test_window_elements_and_index():
    W = InfSetWindow((2, 7), 10, 3)
    assert W.take(5) == (2, 7, 10, 13, 16)
    assert W.index(13) == 4
    with pytest.raises(ElementNotInM):
        W.index(11)


def test_every_residue_class():
    assert take(every(NATURALS, 3, 2), 3) == (2, 5, 8)
    assert take(every(EVENS, 2, 1), 3) == (2, 6, 10)


def test_transfer_map_between_sets():
    assert transfer_map((1, 3), NATURALS, EVENS) == (2, 6)
    assert transfer_map((2, 6), EVENS, ODDS) == (1, 5)


def test_order_relations():
    assert comes_before((1, 2), (3,))
    assert not comes_before((1, 3), (3,))
    assert is_initial_segment((1, 2), (1, 2, 5))
    assert shift_down((4, 6), 3) == (1, 3)


@given(st.lists(st.integers(1, 30), unique=True, max_size=6), st.integers(31, 40),
       st.integers(1, 4), st.integers(1, 20))
def test_window_nth_position_roundtrip(prefix, start, stride, k):
    W = InfSetWindow(tuple(sorted(prefix)), start, stride)
    x = nth(W, k)
    assert x in W and position(W, x) == k
    assert take(W, k) == tuple(sorted(take(W, k)))
