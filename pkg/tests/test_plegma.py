import itertools

import pytest
from hypothesis import given, settings, strategies as st

from barrierlab import barrier as br
from barrierlab.finset import EVENS, NATURALS, take
from barrierlab.plegma import (GapTooSmall, NotDecomposable, construct_plegma,
                               decompose, decomposition_domain, enumerate_plegma,
                               extend_plegma, is_plegma, plegma_refine, union)

C2 = br.Cube(2)


def test_is_plegma_examples():
    assert is_plegma(((1, 3), (2, 4)))
    assert is_plegma(((), (), ()))
    assert not is_plegma(((1, 4), (2, 3)))


def test_enumerate_small():
    assert enumerate_plegma(C2, 2, range(1, 5)) == [((1, 3), (2, 4))]


def test_construct_on_evens():
    assert construct_plegma([C2, C2], EVENS) == ((2, 6), (4, 8))


def test_construct_mixed_ranks():
    t = construct_plegma([br.Cube(1), br.Schreier(), br.Schreier()], NATURALS)
    assert is_plegma(t)
    assert br._member(br.Cube(1), t[0]) and br._member(br.Schreier(), t[2])


def test_extend_plegma_pads_rows():
    assert extend_plegma(((4,), (6,)), NATURALS, NATURALS) == ((4,), (6,))
    t = extend_plegma(((3,), (4, 8)), NATURALS, NATURALS)
    assert t == ((3, 5), (4, 8)) and is_plegma(t)


def test_extend_plegma_gap_too_small():
    with pytest.raises(GapTooSmall):
        extend_plegma(((3,), (4, 5)), EVENS, NATURALS)


def test_decompose_examples():
    assert decompose(C2, (10, 20), 2) == ((9, 19), (10, 20))
    assert decompose(br.Cube(1), (5,), 1) == ((5,),)


def test_decompose_schreier():
    parts = decompose(br.Schreier(), (4, 7, 9, 11), 2)
    assert parts == ((3, 6, 8), (4, 7, 9, 11))
    assert is_plegma(parts)


def test_decompose_rejects_small_start():
    with pytest.raises(NotDecomposable):
        decompose(br.Cube(1), (3, 5, 7), 3)


def test_decomposition_domain():
    assert take(decomposition_domain(br.Cube(1), (3,), 5, NATURALS), 3) == (12, 16, 20)


def test_plegma_refine_projects_to_plegma():
    L0 = br.embed_prefix(C2, br.Schreier(), NATURALS, NATURALS, 100)
    s, psi = plegma_refine(C2, br.Schreier(), NATURALS, L0, 3)
    assert is_plegma(s) and is_plegma(psi)
    assert all(br._member(br.Schreier(), x) for x in s)
    assert all(br._member(C2, x) for x in psi)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([br.Cube(1), C2, br.Schreier()]), st.integers(1, 3), st.integers(5, 8))
def test_enumeration_matches_product_filter(B, n, size):
    window = range(1, size + 1)
    members = br.front(B, window)
    brute = sorted(t for t in itertools.product(members, repeat=n) if is_plegma(t))
    got = sorted(enumerate_plegma(B, n, window))
    assert got == brute
    assert all(max(union(t), default=0) <= size for t in got)
