import math

import pytest

from oracles import (LHS_1_0_M1, LHS_TERMS_1_0_M1, WIN_1_0, WIN_1_0_M1, brute_force_lhs,
                     brute_force_win_prob, logistic)


def test_frozen_values_match_brute_force():
    assert brute_force_win_prob([1, 0, -1]) == pytest.approx(WIN_1_0_M1, abs=1e-15)
    assert brute_force_win_prob([1, 0]) == pytest.approx(WIN_1_0, abs=1e-15)
    lhs, terms = brute_force_lhs([1, 0, -1])
    assert lhs == pytest.approx(LHS_1_0_M1, abs=1e-15)
    assert terms == pytest.approx(LHS_TERMS_1_0_M1, abs=1e-15)


def test_hand_enumeration_of_the_six_reveal_orders():
    # x = (1, 0, -1); each reveal order written out by hand as
    # stage-1 probability times stage-2 probability
    e = math.e
    z1 = lambda v: 1 + math.exp(v)
    z2 = lambda a, b: 1 + math.exp(a) + math.exp(b)
    orders = [
        # ranks revealed: (1,2,3): codes 0,1,2
        (e / z1(1)) * (math.exp(0) / z2(1, 0)),
        # (1,3,2): codes 0,1,1
        (e / z1(1)) * (e / z2(1, -1)),
        # (2,1,3): codes 0,0,2
        (1 / z1(0)) * (1 / z2(1, 0)),
        # (2,3,1): codes 0,1,0
        (1 / z1(0)) * (1 / z2(0, -1)),
        # (3,1,2): codes 0,0,1
        (1 / z1(-1)) * (e / z2(1, -1)),
        # (3,2,1): codes 0,0,0
        (1 / z1(-1)) * (1 / z2(0, -1)),
    ]
    assert sum(orders) / 6 == pytest.approx(WIN_1_0_M1, abs=1e-15)


def test_n2_closed_form_in_oracle():
    assert WIN_1_0 == pytest.approx(0.5 + (logistic(1) - logistic(0)) / 2, abs=1e-15)
