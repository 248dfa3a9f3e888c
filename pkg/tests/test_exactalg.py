from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cpnet.exactalg import (DimensionError, NotSkewError, RatMatrix, SingularityError, SkewMatrix,
                            det, effective_resistance, format_matrix, parse_matrix, pfaffian,
                            schur_complement)
from cpnet.network import response_matrix, single_edge, star
from conftest import rand_matrix

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_det_small_cases():
    assert det(RatMatrix.zeros(0)) == 1
    assert det(RatMatrix.from_rows([[2, 0], [0, 3]])) == 6
    assert det(RatMatrix.from_rows([[-2, 1], [1, -2]])) == 3


def test_det_rejects_rectangular():
    with pytest.raises(DimensionError):
        det(RatMatrix.zeros(2, 3))


def test_pfaffian_values():
    assert pfaffian(SkewMatrix.from_upper(2, {(0, 1): 5})) == 5
    up = {(0, 1): 40, (0, 2): 45, (0, 3): 5, (1, 2): 0, (1, 3): 4, (2, 3): 6}
    assert pfaffian(SkewMatrix.from_upper(4, up)) == 60
    assert pfaffian(SkewMatrix.from_upper(3, {(0, 1): 1, (0, 2): 2, (1, 2): 3})) == 0
    assert pfaffian(SkewMatrix.from_upper(0, {})) == 1


def test_pfaffian_four_by_four_expansion():
    a, b, c, d, e, f = 40, 45, 5, 0, 4, 6
    up = {(0, 1): a, (0, 2): b, (0, 3): c, (1, 2): d, (1, 3): e, (2, 3): f}
    assert pfaffian(SkewMatrix.from_upper(4, up)) == a * f - b * e + c * d


def test_skew_check():
    with pytest.raises(NotSkewError):
        SkewMatrix(RatMatrix.from_rows([[0, 1], [1, 0]]))


@given(st.integers(0, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(rats, min_size=n * n, max_size=n * n))))
def test_pfaffian_squared_is_det(arg):
    n, vals = arg
    s = SkewMatrix.from_upper(n, lambda i, j: vals[i * n + j])
    assert pfaffian(s) ** 2 == det(s.entries)


def test_det_multiplicative(rng):
    for n in range(1, 7):
        a, b = rand_matrix(rng, n), rand_matrix(rng, n)
        assert det(a @ b) == det(a) * det(b)


def test_schur_keep_all_and_star(rng):
    m = rand_matrix(rng, 4, symmetric=True)
    assert schur_complement(m, range(4)) == m
    tri = RatMatrix.from_rows([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])
    assert response_matrix(star([3, 3, 3])).m == tri
    k = RatMatrix.from_rows([[-3, 0, 0, 3], [0, -3, 0, 3], [0, 0, -3, 3], [3, 3, 3, -9]])
    assert schur_complement(k, [0, 1, 2]) == tri


def test_schur_singular_block():
    k = RatMatrix.from_rows([[-1, 1, 0], [1, -1, 0], [0, 0, 0]])
    with pytest.raises(SingularityError):
        schur_complement(k, [0, 1])


def test_schur_transitive(rng):
    for _ in range(10):
        m = rand_matrix(rng, 6, lo=1, hi=30, symmetric=True)
        once = schur_complement(m, [0, 1, 2])
        twice = schur_complement(schur_complement(m, [0, 1, 2, 4]), [0, 1, 2])
        assert once == twice


def test_effective_resistance():
    assert effective_resistance(response_matrix(single_edge(F(7))), 0, 1) == F(1, 7)
    tri = RatMatrix.from_rows([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])
    assert effective_resistance(tri, 0, 1) == F(2, 3)
    assert effective_resistance(tri, 2, 2) == 0


def test_resistance_symmetric(rng, five_node_l):
    for i in range(5):
        for j in range(5):
            assert effective_resistance(five_node_l, i, j) == effective_resistance(five_node_l, j, i)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(rats, min_size=n * n, max_size=n * n).map(
    lambda v: RatMatrix(n, n, v))))
def test_matrix_text_roundtrip(m):
    text = format_matrix(m)
    assert parse_matrix(text) == m
    assert format_matrix(parse_matrix(text)) == text
