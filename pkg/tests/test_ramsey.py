import itertools
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from barrierlab import barrier as br
from barrierlab import normspace as ns
from barrierlab.ramsey import (Coloring, Schedule, TargetUnreachable, WindowExhausted,
                               homogenize, is_monochromatic, oscillation_stable_subset,
                               ramsey_roundtrip, stabilize_front, tuple_level)


def parity(window):
    return Coloring.from_function(2, 2, lambda s: (s[0] + s[1]) % 2, window)


def test_parity_coloring():
    assert homogenize(parity(range(1, 7)), range(1, 7), 3) == (0, (1, 3, 5))


def test_one_dimensional_colorings():
    C = Coloring.from_function(1, 3, lambda s: s[0] % 3, range(1, 11))
    assert homogenize(C, range(1, 11), 4) == (1, (1, 4, 7, 10))
    const = Coloring.from_function(2, 2, lambda s: 1, range(1, 9))
    assert homogenize(const, range(1, 9), 4) == (1, (1, 2, 3, 4))


def test_target_unreachable():
    with pytest.raises(TargetUnreachable):
        homogenize(parity(range(1, 4)), range(1, 4), 5)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_homogeneous_against_brute_force(seed):
    window = tuple(range(1, 11))
    C = Coloring.random(2, window, seed)
    color, H = homogenize(C, window, 3)
    assert all(C(s) == color for s in itertools.combinations(H, 2))


def test_coloring_json_roundtrip():
    C = Coloring.random(3, range(1, 8), 5)
    assert Coloring.from_json(C.to_json()).table == C.table


def test_schedule_rules():
    s = Schedule.geometric(Q(1, 2), Q(1, 2), 3)
    assert s.at(1) == Q(1, 2) and s.at(9) == Q(1, 8)
    with pytest.raises(ValueError):
        Schedule((Q(1, 2), Q(1, 2)))


def test_tuple_level():
    M = (2, 4, 6, 8)
    assert tuple_level(M, ((2,),)) == 1
    assert tuple_level(M, ((6,), (8,))) == 2


def test_oscillation_stable_subsets():
    assert oscillation_stable_subset([ns.e(i) for i in range(1, 9)], ns.L1(), 2, Q(1, 2), 5) == \
        (1, 2, 3, 4, 5)
    H = oscillation_stable_subset([ns.e(i) for i in range(1, 9)], ns.SchreierNorm(), 2, Q(1, 2), 5)
    assert H == (2, 3, 4, 5, 6)


@pytest.mark.parametrize("seed", range(5))
def test_roundtrip_matches_oracle(seed):
    C = Coloring.random(2, range(1, 13), seed)
    rep = ramsey_roundtrip(C, range(1, 13))
    assert rep.verdict and rep.matches and len(rep.M) >= 4
    assert is_monochromatic(C, rep.M) == rep.color


def test_stabilize_constant_function():
    res = stabilize_front(lambda t: ns.span_seminorm(ns.L1(), [ns.e(1), ns.e(2)]),
                          br.Cube(1), 2, Schedule.geometric(Q(1, 2), Q(1, 2), 3), range(1, 9))
    assert res.M == tuple(range(1, 9)) and ns.is_l1(res.center)


def test_stabilize_schreier_unit_vectors():
    W = ns.SchreierNorm()
    res = stabilize_front(lambda t: ns.seminorm_point(W, (t[0][1], t[0][1] + 1)), br.Cube(2), 1,
                          Schedule((Q(1, 2),)), range(1, 9))
    assert ns.is_l1(res.center) and len(res.M) >= 6


def test_stabilize_empty_window():
    with pytest.raises(WindowExhausted):
        stabilize_front(lambda t: ns.l1_point(1), br.Cube(3), 1, Schedule((Q(1, 2),)), (1, 2))
