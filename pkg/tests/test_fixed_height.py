import pytest

from griddom.columns import CapacityError
from griddom.fixed_height import (HorizonExceeded, Recurrence, detect_recurrence, gamma,
                                  gamma_auto, gamma_large_m, gamma_row)
from griddom.oracle import brute_force_min


def test_examples():
    assert gamma(1, 5, "2dom") == 3
    assert gamma(2, 5, "roman") == 6
    assert gamma(1, 1, "2dom") == 1
    assert gamma(3, 3, "2dom") == 4


def test_four_by_eight():
    # The oracle gives 8 on the 4 x 4 grid and the n = 4 relation adds 7
    # per four columns, so 4 x 8 needs 15 stones (not 13).
    assert brute_force_min(4, 4, "2dom")[0] == 8
    rec = detect_recurrence(4, "2dom")
    assert (rec.r, rec.p) == (4, 7)
    assert gamma(4, 8, "2dom") == 15


@pytest.mark.parametrize("variant", ["2dom", "roman", "dom"])
def test_transpose_symmetry(variant):
    rows = {n: gamma_row(n, 8, variant) for n in range(1, 9)}
    for n in range(1, 9):
        for m in range(1, 9):
            assert rows[n][m - 1] == rows[m][n - 1]


def test_errors():
    with pytest.raises(ValueError):
        gamma(3, 0, "2dom")
    with pytest.raises(CapacityError):
        gamma(99, 3, "2dom")
    with pytest.raises(HorizonExceeded):
        detect_recurrence(7, "2dom", m_max=10)


@pytest.mark.parametrize("n,m0,r,p", [(1, 3, 2, 1), (6, 20, 11, 28), (7, 31, 18, 53)])
def test_recurrence_examples(n, m0, r, p):
    rec = detect_recurrence(n, "2dom")
    assert (rec.m0, rec.r, rec.p) == (m0, r, p)


def test_gamma_large_m():
    rec = detect_recurrence(5, "2dom")
    assert gamma_large_m(rec, 14) == gamma(5, 7, "2dom") + 15 == 31
    rec1 = detect_recurrence(1, "2dom")
    assert gamma_large_m(rec1, 10 ** 9) == (10 ** 9 + 2) // 2
    for m, value in enumerate(rec.base, start=1):
        assert gamma_large_m(rec, m) == value


@pytest.mark.parametrize("variant,n", [("2dom", 5), ("roman", 4), ("dom", 6)])
def test_recurrence_agrees_with_iteration(variant, n):
    rec = detect_recurrence(n, variant)
    row = gamma_row(n, 200, variant)
    assert all(gamma_large_m(rec, m) == row[m - 1] for m in range(1, 201))
    assert gamma_auto(n, 150, variant) == row[149]


def test_recurrence_json_round_trip():
    rec = detect_recurrence(3, "roman")
    assert Recurrence.from_json(rec.to_json()) == rec
