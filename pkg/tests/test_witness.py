import numpy as np
import pytest

from griddom.witness import (GridAssignment, build_2dom_witness, cost, optimize_frame,
                             target_2dom, undominated, validate)


def test_validate_examples():
    for variant in ("2dom", "roman", "dom"):
        assert validate(GridAssignment(3, 4, np.ones((3, 4))), variant)
    assert not validate(GridAssignment.empty(1, 1), "2dom")
    assert not validate(GridAssignment(1, 1, [[2]]), "2dom")
    assert validate(GridAssignment(1, 3, [[0, 2, 0]]), "roman")
    assert not validate(GridAssignment(1, 3, [[0, 1, 0]]), "roman")
    assert undominated(GridAssignment(1, 3, [[0, 1, 0]]), "dom").sum() == 0


def test_cost_examples():
    assert cost(GridAssignment.empty(4, 4), "2dom") == 0
    assert cost(GridAssignment(1, 1, [[2]]), "roman") == 2
    assert cost(GridAssignment(1, 2, [[2, 1]]), "roman") == 3


def test_shape_checks():
    with pytest.raises(ValueError):
        GridAssignment(2, 2, np.zeros((2, 3)))
    with pytest.raises(ValueError):
        GridAssignment(1, 1, [[3]])
    with pytest.raises(ValueError):
        build_2dom_witness(13, 20)


@pytest.mark.parametrize("n,m,size", [(18, 30, 207), (15, 15, 90), (14, 16, 90)])
def test_sizes(n, m, size):
    w = build_2dom_witness(n, m)
    assert validate(w, "2dom")
    assert cost(w, "2dom") == size == target_2dom(n, m)
    assert w.meta["shortfall"] == 0


def test_interior_is_lattice():
    w = build_2dom_witness(20, 23)
    name = w.meta["pattern"]
    i, j = np.indices((20, 23))
    a = int(name[-1])
    lattice = ((i + j) % 3 == a) if name.startswith("sum") else ((i - j) % 3 == a)
    inner = (slice(6, -6), slice(6, -6))
    assert (w.cells[inner] == lattice[inner]).all()


def test_optimize_frame_keeps_interior():
    i, j = np.indices((16, 17))
    base = ((i + j) % 3 == 1).astype(np.int64)
    out = optimize_frame(base)
    assert validate(GridAssignment(16, 17, out), "2dom")
    assert (out[3:-3, 3:-3] == base[3:-3, 3:-3]).all()


def test_text_round_trip(tmp_path):
    w = build_2dom_witness(14, 15)
    text = w.to_text("2dom")
    assert GridAssignment.from_text(text) == w
    path = tmp_path / "w.txt"
    w.save(path)
    assert GridAssignment.load(path) == w
    with pytest.raises(ValueError):
        GridAssignment.from_text('{"n": 1, "m": 1}\nx\n')
