import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from griddom.border import (LossEvaluator, PeriodicLoss, border_loss_min, gamma_lower_bound,
                            loss_json, loss_periodicity)
from griddom.columns import build_border_system
from griddom.fixed_height import gamma_row
from griddom.tropical import mat_mul, mat_power


def closed_form(n, m):
    return (n + 2) * (m + 2) // 3 - 6


@pytest.fixture(scope="module")
def two_dom_h6():
    return build_border_system(6, "2dom")


def test_thirteen_square(two_dom_h6):
    loss = border_loss_min(13, 13, two_dom_h6)
    assert loss == 76
    assert gamma_lower_bound(13, 13, system=two_dom_h6) == 69
    assert gamma_lower_bound(13, 14, system=two_dom_h6) == 74 == closed_form(13, 14)


def test_evaluator_agrees_with_direct(two_dom_h6):
    ev = LossEvaluator(two_dom_h6)
    for n, m in [(13, 13), (13, 17), (16, 15), (20, 14)]:
        assert ev.loss(n, m) == border_loss_min(n, m, two_dom_h6)
        assert ev.loss(n, m) >= 0


def test_size_check(two_dom_h6):
    with pytest.raises(ValueError):
        border_loss_min(12, 20, two_dom_h6)
    with pytest.raises(ValueError):
        gamma_lower_bound(13, 13, variant="roman", system=two_dom_h6)


@pytest.mark.parametrize("variant,h", [("2dom", 2), ("2dom", 3), ("roman", 2), ("dom", 2),
                                       ("dom", 3)])
def test_soundness_small_h(variant, h):
    system = build_border_system(h, variant)
    ev = LossEvaluator(system)
    lo = 2 * h + 1
    for n in range(lo, 10):
        row = gamma_row(n, 14, variant)
        for m in range(max(n, lo), 15):
            assert ev.lower_bound(n, m) <= row[m - 1]


def test_periodic_extension(two_dom_h6):
    period = loss_periodicity(two_dom_h6)
    t = two_dom_h6.transfer
    e = period.r0
    diff = mat_power(t, e + period.k) - mat_power(t, e)
    finite = mat_power(t, e) < 2 ** 59
    assert (diff[finite] == period.p).all()
    pl = PeriodicLoss(two_dom_h6, period)
    ev = LossEvaluator(two_dom_h6)
    for n, m in [(13, 60), (40, 41), (55, 70)]:
        assert pl.loss(n, m) == ev.loss(n, m)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12))
def test_power_law(a, b):
    t = build_border_system(3, "2dom").transfer
    assert (mat_power(t, a + b) == mat_mul(mat_power(t, a), mat_power(t, b))).all()


def test_json(two_dom_h6):
    record = json.loads(loss_json(13, 13, two_dom_h6))
    assert record == {"variant": "2dom", "h": 6, "n": 13, "m": 13, "loss": 76,
                      "lower_bound": 69}


def test_roman_fourteen():
    assert gamma_lower_bound(14, 14, "roman") == 88
