import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from barrierlab import normspace as ns


def vec(*c):
    return ns.Vector(list(c))


def test_w_n_on_ones():
    assert ns.norm(ns.w_n(5), vec(1, 1)) == Q(1, 5)


def test_basic_norms():
    x = vec(1, -2, 3)
    assert ns.norm(ns.L1(), x) == 6
    assert ns.norm(ns.Sup(), x) == 3


def test_schreier_norm():
    x = ns.e(3) + ns.e(5) + ns.e(9)
    assert ns.norm(ns.SchreierNorm(), x) == 3
    assert ns.norm(ns.SchreierNorm(), ns.e(1) + ns.e(2)) == 1


def test_empty_norming_set_warns():
    with pytest.warns(ns.EmptyNormingSet):
        assert ns.norm(ns.Extensional(), vec(1)) == 0


def test_extensional_matches_definition():
    funcs = (ns.Functional({1: 1, 3: Q(-1, 2)}), ns.Functional({2: 2}))
    W = ns.Extensional(funcs, True)
    x = vec(Q(1, 3), -1, 4)
    assert ns.norm(W, x) == max(abs(f(x)) for f in funcs + tuple(ns.estar(i) for i in (1, 2, 3)))


def test_seminorm_points():
    assert ns.is_l1(ns.seminorm_point(ns.SchreierNorm(), (3, 5, 9)))
    assert ns.is_linf(ns.seminorm_point(ns.Sup(), (1, 2, 3)))
    with pytest.raises(ns.NotNormalized):
        ns.seminorm_point(ns.Extensional((ns.Functional({1: 2}),)), (1,))


def test_distance_l1_linf():
    iv = ns.distance(ns.l1_point(2), ns.linf_point(2), Q(1, 8))
    assert iv.lo == 1 and iv.hi == Q(9, 8)


def test_distance_identical_is_zero():
    assert ns.distance(ns.l1_point(3), ns.l1_point(3)).to_json() == ["0", "0"]


def test_distance_w5_w10():
    r5 = ns.span_seminorm(ns.w_n(5), [ns.e(1), ns.e(2)])
    r10 = ns.span_seminorm(ns.w_n(10), [ns.e(1), ns.e(2)])
    iv = ns.distance(r5, r10, Q(1, 8))
    assert iv.lo == Q(1, 10) and iv.hi == Q(1, 10) + Q(1, 8)


def test_float_path_brackets_exact_path():
    rng = random.Random(1)
    for _ in range(5):
        a = ns.random_extensional_norm(3, rng)
        b = ns.random_extensional_norm(3, rng)
        ex = ns.distance(a, b, Q(1, 16), exact=True)
        fl = ns.distance(a, b, Q(1, 16), exact=False)
        assert fl.lo <= ex.lo <= fl.hi and ex.hi <= fl.hi


def test_kernel_of_degenerate_seminorm():
    rho = ns.SeminormPoint(2, rows=((Q(1), Q(-1)),))
    assert ns.kernel(rho) and not ns.is_norm(rho)
    assert ns.is_norm(ns.l1_point(2))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=3, max_size=3),
       st.lists(st.integers(-4, 4), min_size=3, max_size=3))
def test_span_rows_match_direct_norm(a, b):
    W = ns.SchreierNorm()
    rho = ns.seminorm_point(W, (2, 4, 7))
    x = ns.combination(a, [ns.e(2), ns.e(4), ns.e(7)])
    assert rho(tuple(a)) == ns.norm(W, x)
    # triangle inequality, exact
    assert rho(tuple(p + q for p, q in zip(a, b))) <= rho(tuple(a)) + rho(tuple(b))


def test_seminorm_axioms_on_samples():
    rho = ns.span_seminorm(ns.L1(), [vec(Q(1, 2), Q(1, 2)), vec(0, 1)])
    pts = [(1, 0), (0, 1), (Q(1, 2), -1), (2, 3)]
    samples = [(a, b, lam) for a in pts for b in pts for lam in (Q(-3, 2), 2)]
    assert ns.check_seminorm_axioms(rho, samples)


def test_random_norms_are_normalized():
    rng = random.Random(0)
    for _ in range(10):
        rho = ns.random_extensional_norm(3, rng)
        assert all(rho(tuple(1 if j == i else 0 for j in range(3))) == 1 for i in range(3))


@pytest.mark.parametrize("k,eps", [(2, Q(1)), (2, Q(1, 2)), (3, Q(1))])
def test_net_covers(k, eps):
    net = ns.epsilon_net(k, eps)
    rng = random.Random(99)
    for _ in range(20):
        _, iv, _ = net.cover(ns.random_extensional_norm(k, rng))
        assert iv.hi < eps
    assert net.guarantee < eps


def test_basic_constant_and_unconditional():
    bc = ns.basic_constant([ns.e(1), ns.e(1) - ns.e(2)], ns.Sup())
    assert bc.lower == 1 and bc.estimate == 2
    assert ns.is_unconditional([ns.e(i) for i in (2, 3, 4)], ns.SchreierNorm(), 1)
    assert not ns.is_unconditional([ns.e(1), ns.e(1) + ns.e(2)], ns.Sup(), 1)
