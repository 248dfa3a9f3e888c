from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cpnet.exactalg import RatMatrix
from cpnet.medial import well_connected_matching
from cpnet.minors import (LaurentPoly, MinorSpec, TadRegion, all_noninterlaced,
                          central_spec, contiguous_spec, desnanot_jacobi,
                          evaluate_tad, is_well_connected, jaw_evaluate, jaw_move, locate_region,
                          offcenter_condensation, orient_noninterlaced, small_central_labels,
                          small_central_minors, tad_count, tad_laurent, tad_target, tad_tilings)
from cpnet.network import PreconditionError, contract_edge, delete_edge
from conftest import rand_matrix, random_standard


def well_connected(rng, n):
    g, _ = random_standard(rng, well_connected_matching(n))
    return g, g.response_matrix().m


def test_central_labels():
    assert len(small_central_labels(7, True)) == 21
    assert sum(1 for x, y in small_central_labels(7, True) if 2 * y < 7) == 21
    for n in range(2, 10):
        assert len(small_central_labels(n, True)) == n * (n - 1) // 2


def test_central_specs():
    assert str(central_spec(7, 1, 1)) == "7/3"
    assert str(central_spec(7, 1, 2)) == "6/4,7/3"
    assert str(central_spec(6, 1, 1)) == "6/2"
    assert str(contiguous_spec(5, 4, 1, 3)) == "4/3,5/2,1/1"


def test_well_connected(rng):
    for n in range(3, 8):
        g, l = well_connected(rng, n)
        ok, witness = is_well_connected(l)
        assert ok and witness is None
        assert all(v > 0 for *_, v in small_central_minors(l))


def test_not_well_connected():
    l = RatMatrix.from_rows([[-1, 1, 0], [1, -1, 0], [0, 0, 0]])
    ok, witness = is_well_connected(l)
    assert not ok and witness is not None


def test_noninterlaced_positive(rng):
    for n in range(3, 7):
        _, l = well_connected(rng, n)
        for spec in all_noninterlaced(n):
            v = spec.value(l)
            assert v > 0
            assert jaw_evaluate(l, spec)[0] == v


def test_orientation():
    s = orient_noninterlaced(6, {5, 6}, {2, 3})
    assert s.rows == (5, 6) and s.cols == (3, 2)
    with pytest.raises(PreconditionError):
        orient_noninterlaced(4, {1, 3}, {2, 4})


def test_delete_contract_breaks(rng):
    for n in (3, 4, 5):
        g, _ = well_connected(rng, n)
        for e in g.edges:
            for op in (delete_edge, contract_edge):
                try:
                    h = op(g, e.id)
                except PreconditionError:
                    continue
                assert not is_well_connected(h.response_matrix().m)[0]


def test_aztec_counts():
    assert [tad_count(TadRegion(0, 0, k)) for k in range(6)] == [1, 2, 8, 64, 1024, 32768]
    assert [len(tad_tilings(TadRegion(0, 0, k))) for k in range(4)] == [1, 2, 8, 64]
    for k in range(4):
        assert len(tad_laurent(TadRegion(0, 0, k))) == 2 ** (k * (k + 1) // 2)


def test_laurent_display():
    p = tad_laurent(TadRegion(2, 1, 1, 7))
    assert len(p) == 2
    assert str(tad_target(TadRegion(2, 1, 1, 7))) == "1/3"
    assert len(tad_tilings(TadRegion(2, 1, 2, 7))) == 6
    assert str(tad_target(TadRegion(2, 1, 2, 7))) == "6/5"


def test_laurent_properties():
    for ell in range(4):
        p = tad_laurent(TadRegion(3, 2, ell, 5))
        assert p.positive() and p.exponents_in_unit_range()
        assert p.variables() <= set(TadRegion(3, 2, ell, 5).variables())


def test_laurent_arithmetic():
    x = LaurentPoly.monomial({(1, 1): 1})
    y = LaurentPoly.monomial({(2, 1): -1})
    assert str(x * y) == "v[1,1]/v[2,1]"
    assert (x + x).evaluate(lambda a, b: F(3)) == 6
    assert len(x + y) == 2


def test_kuo_untruncated():
    P = lambda x, y, l: tad_laurent(TadRegion(x, y, l))  # noqa: E731
    for l in (1, 2, 3):
        assert P(0, 0, l + 1) * P(0, 0, l - 1) == \
            P(-1, 0, l) * P(1, 0, l) + P(0, -1, l) * P(0, 1, l)


def test_kuo_in_range(rng):
    n = 6
    _, l = well_connected(rng, n)
    E = lambda x, y, k: evaluate_tad(l, TadRegion(x, y, k, n))  # noqa: E731
    for k in (1, 2):
        for y in range(1, n - k):
            for x in range(1, 2 * n + 1):
                assert E(x, y, k + 1) * E(x, y, k - 1) == \
                    E(x - 1, y, k) * E(x + 1, y, k) + E(x, y - 1, k) * E(x, y + 1, k)


@pytest.mark.parametrize("n", [5, 6])
def test_domino_formula(rng, n):
    for sym in (True, False):
        l = rand_matrix(rng, n, symmetric=sym)
        if any(v == 0 for *_, v in small_central_minors(l, symmetric=False)):
            continue
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                for y in range(1, n // 2 + 1):
                    spec = contiguous_spec(n, a, b, y)
                    if not spec.disjoint():
                        continue
                    r = locate_region(n, a, b, y)
                    if r.ell <= 2:
                        assert evaluate_tad(l, r) == spec.value(l)


@given(st.integers(2, 5), st.data())
def test_desnanot_jacobi(k, data):
    import random
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    m = rand_matrix(rng, k)
    a, b = sorted(rng.sample(range(1, k + 1), 2))
    c, d = sorted(rng.sample(range(1, k + 1), 2))
    lhs, rhs = desnanot_jacobi(m, a, b, c, d)
    assert lhs == rhs


@given(st.integers(2, 5), st.data())
def test_jaw(k, data):
    import random
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    m = rand_matrix(rng, k, k + 1)
    a, b, c = sorted(rng.sample(range(1, k + 2), 3))
    d = rng.randint(1, k)
    assert jaw_move(m, a, b, c, d).holds
    assert jaw_move(m.transpose(), a, b, c, d).holds


def test_offcenter_n8(rng):
    _, l = well_connected(rng, 8)
    direct, via = offcenter_condensation(l, 1, 6, 2)
    assert direct == via


def test_minor_spec_checks():
    with pytest.raises(PreconditionError):
        MinorSpec(4, (1, 2), (3,))
    with pytest.raises(PreconditionError):
        jaw_move(rand_matrix(__import__("random").Random(0), 3), 1, 2, 3, 1)
