from fractions import Fraction as Q

import pytest

from barrierlab import barrier as br
from barrierlab import models as md
from barrierlab import normspace as ns
from barrierlab.ramsey import Schedule

SCHED = Schedule.geometric(Q(1, 2), Q(1, 2), 4)


def shifted(host=None, stride=8):
    return md.MatrixSource(br.Cube(1), host or ns.L1(), lambda row, s: ns.e(stride * s[0] + row))


def test_psi_rejects_non_plegma_and_non_members():
    mx = shifted()
    with pytest.raises(md.NotPlegma):
        md.psi_n(mx, ((3,), (2,)))
    with pytest.raises(md.NotMember):
        md.psi_n(md.MatrixSource(br.Cube(2), ns.L1(), lambda r, s: ns.e(1)), ((1,), (2,)))


def test_psi_values():
    rho = md.psi_n(shifted(ns.Sup()), ((1,), (2,)))
    assert ns.is_linf(rho)


@pytest.mark.parametrize("host,check", [(ns.L1(), ns.is_l1), (ns.Sup(), ns.is_linf),
                                        (ns.SchreierNorm(), ns.is_l1)])
def test_spreading_models_of_unit_basis(host, check):
    rep = md.spreading_model(md.unit_basis(12), host, 4, SCHED)
    assert all(check(r) for r in rep.rhos) and len(rep.rhos) == 4
    assert all(0 in iv for iv in rep.compat_defects.values())
    assert all(rep.is_norm)


def test_stabilize_matrix_reports_partial_when_window_runs_out():
    rep = md.stabilize_matrix(shifted(), 4, SCHED, range(1, 4))
    assert rep.partial and 1 <= len(rep.rhos) < 4


def test_check_normalized():
    bad = md.MatrixSource(br.Cube(1), ns.L1(), lambda r, s: ns.e(1) + ns.e(2))
    assert md.MatrixSource.check_normalized(bad, 1, range(1, 3)) == [(1, (1,)), (1, (2,))]


def test_sum_matrix_chain_gives_l1():
    inner = md.constant_rows(br.Cube(1), ns.SchreierNorm(), lambda s: ns.e(max(s)))
    rep = md.stabilize_matrix(md.build_sum_matrix(inner), 3, SCHED, range(1, 13),
                              admissible=lambda t, n: min(md.union(t)) >= n)
    assert [ns.is_l1(r) for r in rep.rhos] == [True, True, True]


def test_sum_matrix_entries():
    inner = shifted()
    summed = md.build_sum_matrix(inner)
    assert summed(1, (3, 5)) == inner(3, (5,))
    assert summed(2, (3, 5)) == summed(1, (3, 5))


def test_plegma_block_detection():
    assert md.is_plegma_block(shifted(), 2, range(1, 7)) == (True, 0)
    const = md.MatrixSource(br.Cube(1), ns.L1(), lambda r, s: ns.e(1))
    assert md.is_plegma_block(const, 2, range(1, 7)) == (False, ((1,), (2,)))


def test_lifted_matrix_normalizes_and_flags_fallback():
    inner = shifted()
    lifted = md.lift_block_matrix(lambda t, j: ((1, 2), {1: 1, 2: 1}), 1, inner)
    z = lifted(1, (1, 5, 9))
    assert ns.norm(ns.L1(), z) == 1
    assert lifted.uses_fallback(1, (1, 2)) and lifted(1, (1, 2)) == ns.e(1)


def test_gliding_hump_bounds():
    x = md.random_null_matrix(3, 3, 10)
    g = md.gliding_hump(x, ns.L1(), 3, 5, 10)
    assert g.bound_ok()
    assert md.is_plegma_block(g.matrix, 2, range(1, 6))[0]
    assert g.telescoped((1, 2)) <= Q(1, 2)


def test_gliding_hump_on_perturbed_basis():
    x = lambda n, i: ns.e(i) + Q(1, 2 ** (i + 9)) * ns.e(1)
    g = md.gliding_hump(x, ns.L1(), 1, 4, 8)
    assert g.k == (1, 2, 3, 4)
    assert g.matrix(1, (2,)) == ns.e(2)


def test_gliding_hump_needs_null_columns():
    with pytest.raises(md.NotCoordinatewiseNull):
        md.gliding_hump(lambda n, i: ns.e(1) + ns.e(i + 1), ns.L1(), 1, 3, 6)
