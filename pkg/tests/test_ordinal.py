from barrierlab.ordinal import OrdinalCNF

W = OrdinalCNF.omega_power(1)


def test_addition_absorbs_finite_on_the_left():
    assert OrdinalCNF.finite(2) + W == W
    assert W + OrdinalCNF.finite(2) != W


def test_order_and_predecessor():
    assert OrdinalCNF.finite(3) < W < W + OrdinalCNF.finite(1)
    assert (W + OrdinalCNF.finite(1)).predecessor() == W
    assert W.is_limit and not W.is_finite


def test_str():
    assert str(W) == "ω"
    assert str(OrdinalCNF.finite(4)) == "4"
