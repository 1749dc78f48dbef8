import pytest
from hypothesis import given, settings, strategies as st

from barrierlab import barrier as br
from barrierlab.finset import EVENS, NATURALS, ODDS, InfSetWindow
from barrierlab.ordinal import OrdinalCNF

TERMS = [br.Cube(1), br.Cube(2), br.Cube(3), br.Schreier(), br.Sum(br.Cube(1), br.Schreier()),
         br.Sum(br.Schreier(), br.Cube(2))]


def test_ranks():
    assert br.rank(br.Cube(3)) == OrdinalCNF.finite(3)
    assert br.rank(br.Schreier()) == OrdinalCNF.omega_power(1)
    assert br.rank(br.Sum(br.Cube(1), br.Schreier())) == OrdinalCNF.omega_power(1) + OrdinalCNF.finite(1)


def test_rank_by_sections_agrees():
    for B in TERMS:
        assert br.rank_by_sections(B) == br.rank(B)


def test_schreier_front():
    assert br.front(br.Schreier(), range(1, 6)) == [(1,), (2, 3), (2, 4), (2, 5), (3, 4, 5)]


def test_membership():
    assert br.contains(br.Schreier(), (3, 4, 9))
    assert not br.contains(br.Schreier(), (3, 4))
    assert br.contains(br.Sum(br.Cube(1), br.Schreier()), (1, 2, 3))


@pytest.mark.parametrize("B", TERMS)
def test_front_is_thin_and_spreading(B):
    assert br.is_thin(br.front(B, range(1, 9)))
    assert br.is_spreading(B, range(1, 9))


def test_section_of_schreier():
    S = br.section(br.Schreier(), 3)
    assert br.front(S, range(1, 7)) == [(4, 5), (4, 6), (5, 6)]


def test_restrict_to_odds():
    R = br.restrict(br.Cube(2), ODDS)
    assert br.front(R, range(1, 6)) == [(1, 3), (1, 5), (3, 5)]


def test_embedding_closure_and_projection():
    F, G = br.Cube(2), br.Schreier()
    L = br.embed_prefix(F, G, ODDS, NATURALS, 6)
    ok, checked, failures = br.check_embedding(F, G, ODDS, L, 12)
    assert ok and checked > 0 and not failures
    assert br.project(F, G, ODDS, L, (L[0], L[1])) == (1, 3)


def test_embed_needs_rank_order():
    with pytest.raises(br.BarrierError):
        br.embed_prefix(br.Schreier(), br.Cube(2), NATURALS, NATURALS, 3)


def test_json_roundtrip():
    for B in TERMS + [br.section(br.Schreier(), 2), br.Transfer(br.Cube(2), NATURALS, EVENS)]:
        assert br.term_from_json(br.term_to_json(B)) == B


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(TERMS), st.lists(st.integers(1, 40), min_size=12, max_size=12, unique=True))
def test_initial_member_is_a_member(B, elems):
    A = tuple(sorted(elems))
    W = InfSetWindow(A, A[-1] + 1, 1)
    s = br.initial_member(B, W)
    assert br._member(B, s) and W.take(len(s)) == s


def test_project_into_cube1():
    # {3} is the first element of N/2, which the transfer sends to the first element of N
    L = NATURALS.tail(2)
    assert br.project(br.Cube(1), br.Schreier(), NATURALS, L, (3, 5, 6)) == (1,)
