import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from griddom.tropical import (INF, add, asmatrix, asvector, dot, identity, mat_mul,
                              mat_power, mul, normalize, primitivity_exponent, vec_apply)


def naive_mul(a, b):
    n, k = a.shape
    out = np.full((n, b.shape[1]), INF, dtype=np.int64)
    for i in range(n):
        for j in range(b.shape[1]):
            for t in range(k):
                out[i, j] = min(out[i, j], min(a[i, t] + b[t, j], INF))
    return out


@st.composite
def matrices(draw, rows=None, cols=None, size=st.integers(1, 5)):
    r = rows if rows is not None else draw(size)
    c = cols if cols is not None else draw(size)
    entry = st.one_of(st.just(None), st.integers(0, 50))
    return asmatrix([[draw(entry) for _ in range(c)] for _ in range(r)])


def test_examples():
    a = asmatrix([[1, 2], [3, 0]])
    assert mat_mul(a, asmatrix([[0, 4], [1, 1]])).tolist() == [[1, 3], [1, 1]]
    b = asmatrix([[5, 2], [1, 3]])
    assert (mat_mul(identity(2), b) == b).all()
    assert (mat_power(a, 0) == identity(2)).all()
    assert (mat_power(a, 1) == a).all()
    assert (mat_power(a, 2) == mat_mul(a, a)).all()
    assert vec_apply(a, asvector([0, 0])).tolist() == [1, 0]
    assert (vec_apply(np.full((2, 2), INF), asvector([0, 0])) == INF).all()


def test_primitivity_examples():
    assert primitivity_exponent(identity(3), 5) is None
    assert primitivity_exponent(np.zeros((4, 4), dtype=np.int64), 5) == 1
    cycle = asmatrix([[None, 0], [0, None]])
    assert primitivity_exponent(cycle, 10) is None


def test_inf_saturates():
    a = asmatrix([[None, 1]])
    b = asmatrix([[None], [None]])
    assert mat_mul(a, b)[0, 0] == INF
    assert mul(INF, INF) == INF
    assert dot(asvector([None]), asvector([None])) == INF


def test_errors():
    with pytest.raises(ValueError):
        mat_mul(identity(2), identity(3))
    with pytest.raises(ValueError):
        mat_power(np.zeros((2, 3), dtype=np.int64), 2)
    with pytest.raises(ValueError):
        mat_power(identity(2), -1)
    with pytest.raises(OverflowError):
        asmatrix([[-1]])


def test_normalize():
    norm, c = normalize(asmatrix([[3, None], [5, 4]]))
    assert c == 3
    assert norm.tolist() == [[0, INF], [2, 1]]


PROPS = settings(max_examples=1000, deadline=None)


@PROPS
@given(st.data())
def test_mat_mul_matches_naive(data):
    a = data.draw(matrices())
    b = data.draw(matrices(rows=a.shape[1]))
    assert (mat_mul(a, b) == naive_mul(a, b)).all()


@PROPS
@given(st.data())
def test_semiring_axioms(data):
    n = data.draw(st.integers(1, 4))
    a, b, c = (data.draw(matrices(n, n)) for _ in range(3))
    assert (mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))).all()
    assert (mat_mul(a, add(b, c)) == add(mat_mul(a, b), mat_mul(a, c))).all()
    assert (mat_mul(add(a, b), c) == add(mat_mul(a, c), mat_mul(b, c))).all()
    assert (add(a, b) == add(b, a)).all()
    assert (mat_mul(identity(n), a) == a).all() and (mat_mul(a, identity(n)) == a).all()
    zero = np.full((n, n), INF, dtype=np.int64)
    assert (add(a, zero) == a).all()
    assert (mat_mul(a, zero) == zero).all()


@PROPS
@given(st.data())
def test_power_addition_law(data):
    a = data.draw(matrices(size=st.integers(1, 4)).filter(lambda m: m.shape[0] == m.shape[1]))
    i, j = data.draw(st.integers(0, 7)), data.draw(st.integers(0, 7))
    assert (mat_power(a, i + j) == mat_mul(mat_power(a, i), mat_power(a, j))).all()


@PROPS
@given(st.data())
def test_vec_matrix_consistency(data):
    a = data.draw(matrices())
    b = data.draw(matrices(rows=a.shape[1]))
    v = b[:, 0]
    assert (vec_apply(a, v) == mat_mul(a, b)[:, 0]).all()
    assert dot(a[0], v) == mat_mul(a[:1], v[:, None])[0, 0]
