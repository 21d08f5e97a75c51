import itertools

import numpy as np
import pytest

from griddom.variants import (CLASSICAL, NEED_ONE, OK, ROMAN, STONE, TWO_DOM, TWO_STONES,
                              almost_dominated, almost_valid, cell_waste, column_cost,
                              column_images, compatible, get_variant, is_dominated, is_first,
                              is_valid)
from griddom.witness import GridAssignment, validate

ALL = (TWO_DOM, ROMAN, CLASSICAL)


def test_is_valid_examples():
    assert is_valid((STONE,), TWO_DOM)
    assert not is_valid((OK,), TWO_DOM)
    assert not is_valid((STONE, STONE), ROMAN)


def test_is_first_examples():
    assert is_first((STONE,), TWO_DOM)
    assert not is_first((STONE, NEED_ONE, STONE), TWO_DOM)
    assert not is_first((STONE, OK, STONE), ROMAN)


def test_is_dominated_examples():
    assert is_dominated((STONE, STONE, STONE), TWO_DOM)
    assert not is_dominated((STONE, NEED_ONE), TWO_DOM)
    assert is_dominated((STONE, OK), TWO_DOM)


def test_compatible_examples():
    assert not compatible((NEED_ONE, STONE), (OK, STONE), TWO_DOM)
    assert not compatible((STONE, STONE), (OK, OK), TWO_DOM)
    assert compatible((STONE, STONE), (NEED_ONE, NEED_ONE), TWO_DOM)
    with pytest.raises(ValueError):
        compatible((STONE,), (STONE, STONE), TWO_DOM)


def test_almost_examples():
    assert almost_dominated((NEED_ONE,), TWO_DOM)
    assert not almost_dominated((OK, NEED_ONE), TWO_DOM)
    for h in range(1, 5):
        for word in ROMAN.words(h):
            assert almost_valid(word, ROMAN) == is_valid(word, ROMAN)


def test_column_cost():
    assert column_cost((OK, OK, OK), TWO_DOM) == 0
    assert column_cost((STONE, OK, STONE), TWO_DOM) == 2
    assert column_cost((TWO_STONES, STONE), ROMAN) == 3


@pytest.mark.parametrize("variant", ALL)
def test_encoding_round_trip(variant):
    for h in range(1, 5):
        for k, word in enumerate(variant.words(h)):
            assert variant.encode(word) == k
            assert variant.decode(k, h) == word


def test_get_variant():
    assert get_variant("2DOM") is TWO_DOM
    with pytest.raises(ValueError):
        get_variant("total")


def _assignments(n, m, values):
    for flat in itertools.product(values, repeat=n * m):
        yield np.array(flat, dtype=np.int64).reshape(n, m)


def _walk_loss(cells, variant):
    """Sum of per-cell creation and completion losses along the columns."""
    cols = column_images(cells, variant)
    n = cells.shape[0]
    total = 0
    for j, col in enumerate(cols):
        prev = cols[j - 1] if j else None
        for i in range(n):
            up = col[i - 1] if i else None
            down = col[i + 1] if i + 1 < n else None
            total += variant.creation(prev[i] if prev else None, col[i], up, down)
            if prev:
                total += variant.completion(prev[i], col[i])
    total += sum(variant.completion(c, None) for c in cols[-1])
    return total


SHAPES_2 = [(n, m) for n in range(1, 5) for m in range(n, 5) if n * m <= 16]
SHAPES_3 = [(n, m) for n in range(1, 4) for m in range(n, 5) if n * m <= 9]


@pytest.mark.parametrize("n,m", SHAPES_2)
@pytest.mark.parametrize("variant", [TWO_DOM, CLASSICAL], ids=["2dom", "dom"])
def test_loss_identity_exhaustive(variant, n, m):
    influence = variant.influence
    for cells in _assignments(n, m, (0, 1)):
        if not validate(GridAssignment(n, m, cells), variant):
            continue
        stones = int(cells.sum())
        loss = variant.grid_loss(cells)
        assert loss == influence * stones - variant.demand_weight * n * m
        assert int(cell_waste(cells, variant).sum()) == loss
        assert (cell_waste(cells, variant) >= 0).all()
        assert _walk_loss(cells, variant) == loss


@pytest.mark.parametrize("n,m", SHAPES_3)
def test_roman_loss_inversion(n, m):
    for cells in _assignments(n, m, (0, 1, 2)):
        if not validate(GridAssignment(n, m, cells), ROMAN):
            continue
        loss = ROMAN.grid_loss(cells)
        assert (loss + 2 * n * m) % 5 == 0
        assert (loss + 2 * n * m) // 5 == int(cells.sum())
        assert int(cell_waste(cells, ROMAN).sum()) == loss


def _roman_pruned(cells):
    """No single stone next to any stone: the normal form the states assume."""
    padded = np.pad(cells, 1)
    nbr = [padded[:-2, 1:-1], padded[2:, 1:-1], padded[1:-1, :-2], padded[1:-1, 2:]]
    return not any(((cells == 1) & (x > 0)).any() for x in nbr)


@pytest.mark.parametrize("variant", ALL, ids=lambda v: v.key)
def test_column_images_respect_rules(variant):
    values = (0, 1, 2) if variant is ROMAN else (0, 1)
    for n, m in [(1, 3), (2, 3), (3, 3), (2, 4)]:
        for cells in _assignments(n, m, values):
            if not validate(GridAssignment(n, m, cells), variant):
                continue
            if variant is ROMAN and not _roman_pruned(cells):
                continue
            cols = column_images(cells, variant)
            assert all(is_valid(c, variant) for c in cols)
            assert is_first(cols[0], variant)
            assert is_dominated(cols[-1], variant)
            assert all(compatible(a, b, variant) for a, b in zip(cols, cols[1:]))
