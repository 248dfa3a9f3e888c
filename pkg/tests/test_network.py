from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cpnet.exactalg import RatMatrix, SingularityError, effective_resistance, det
from cpnet.minors import all_noninterlaced
from cpnet.network import (Network, NetworkError, PreconditionError, Transformation, applicable_sites,
                           apply_transformation, contract_edge, delete_edge, dual_network,
                           format_network, glue_nodes, laplacian, parse_network, response_matrix,
                           single_edge, star)
from conftest import decorate, nondegenerate, random_standard

TRI = RatMatrix.from_rows([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])


def test_laplacian_examples():
    assert laplacian(single_edge(7)) == RatMatrix.from_rows([[7, -7], [-7, 7]])
    par = Network(2, 0, [(1, 1, 2, 1), (2, 1, 2, 2)], {1: [1, 2], 2: [2, 1]})
    assert laplacian(par) == RatMatrix.from_rows([[3, -3], [-3, 3]])
    lap = laplacian(star([3, 3, 3]))
    assert [lap[i, i] for i in range(4)] == [3, 3, 3, 9]


def test_response_examples():
    assert response_matrix(single_edge(7)).m == RatMatrix.from_rows([[-7, 7], [7, -7]])
    assert response_matrix(star([3, 3, 3])).m == TRI


def test_disconnected_internal_component():
    edges = [(1, 1, 2, 1), (2, 3, 4, 1)]
    rot = {1: [1], 2: [1], 3: [2], 4: [2]}
    with pytest.raises(NetworkError):
        Network(2, 2, edges, rot)
    g = Network(2, 2, edges, rot, check=False)
    with pytest.raises(SingularityError):
        response_matrix(g)


def test_response_invariants(rng):
    for _ in range(20):
        m = rng.choice(nondegenerate(rng.randint(2, 5)))
        g, _ = random_standard(rng, m)
        lm = response_matrix(g).m
        n = lm.rows
        assert lm == lm.transpose()
        assert all(sum(lm.row(i)) == 0 for i in range(n))
        assert all(lm[i, j] >= 0 for i in range(n) for j in range(n) if i != j)
        neg = -lm
        for mask in range(1, 1 << n):
            idx = [i for i in range(n) if mask >> i & 1]
            assert det(neg.submatrix(idx, idx)) >= 0


def test_noninterlaced_minors_nonnegative(rng):
    for _ in range(15):
        m = rng.choice(nondegenerate(rng.randint(3, 5)))
        g, _ = random_standard(rng, m)
        lm = response_matrix(g).m
        assert all(s.value(lm) >= 0 for s in all_noninterlaced(lm.rows))


def test_dual_single_edge():
    d = dual_network(single_edge(F(7)))
    assert [e.c for e in d.edges] == [F(1, 7)]


def test_dual_edge_count_and_involution(rng):
    for _ in range(20):
        m = rng.choice(nondegenerate(rng.randint(2, 5)))
        g, _ = random_standard(rng, m)
        try:
            dd = dual_network(dual_network(g))
        except PreconditionError:
            continue
        assert len(dual_network(g).edges) == len(g.edges)
        a, b = response_matrix(g).m, response_matrix(dd).m
        n = a.rows
        assert all(b[i, j] == a[(i + 1) % n, (j + 1) % n] for i in range(n) for j in range(n))


def test_dual_resistance_relation(rng):
    seen = 0
    while seen < 12:
        n = rng.randint(2, 5)
        g, _ = random_standard(rng, rng.choice(nondegenerate(n)))
        if len(g.edges) > 8:
            continue
        try:
            ld = response_matrix(dual_network(g)).m
        except PreconditionError:
            continue
        seen += 1
        lm = response_matrix(g).m
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                side = set(range(i + 1, j + 1))
                cut = sum(lm[a - 1, b - 1] for a in side for b in range(1, n + 1) if b not in side)
                assert effective_resistance(ld, i - 1, j - 1) == cut


def test_transformation_examples():
    path = Network(2, 1, [(1, 1, 3, 2), (2, 3, 2, 2)], {1: [1], 2: [2], 3: [1, 2]})
    merged = apply_transformation(path, Transformation("series-merge", vertex=3))
    assert [e.c for e in merged.edges] == [1]
    y = star([3, 3, 3])
    d = apply_transformation(y, Transformation("y-delta", vertex=4))
    assert sorted(e.c for e in d.edges) == [1, 1, 1]
    assert response_matrix(d).m == TRI == response_matrix(y).m
    ids = tuple(sorted(e.id for e in d.edges))
    back = apply_transformation(d, Transformation("delta-y", edges=ids))
    assert sorted(e.c for e in back.edges) == [3, 3, 3]


def test_series_at_node_rejected():
    with pytest.raises(PreconditionError):
        apply_transformation(single_edge(1), Transformation("series-merge", vertex=1))


def test_transformations_preserve_response(rng):
    kinds = set()
    for _ in range(30):
        g, _ = random_standard(rng, rng.choice(nondegenerate(rng.randint(2, 5))))
        g = decorate(rng, g, 5)
        lm = response_matrix(g).m
        for site in applicable_sites(g):
            assert response_matrix(apply_transformation(g, site)).m == lm
            kinds.add(site.kind)
    assert len(kinds) == 6


def test_glue_nodes_five_node(five_node_l):
    g34 = RatMatrix.from_rows([[-100, 40, 55, 5], [40, -88, 44, 4], [55, 44, -115, 16], [5, 4, 16, -25]])
    g23 = RatMatrix.from_rows([[-100, 85, 10, 5], [85, -115, 20, 10], [10, 20, -40, 10], [5, 10, 10, -25]])
    assert glue_nodes(five_node_l, 3, 4) == g34
    assert glue_nodes(five_node_l, 2, 3) == g23


def test_delete_and_contract_keep_planarity(rng):
    g, _ = random_standard(rng, rng.choice(nondegenerate(4)))
    for e in g.edges:
        delete_edge(g, e.id).response_matrix()
        if not (g.is_node(e.u) and g.is_node(e.v)):
            assert contract_edge(g, e.id).nv == g.nv - 1


@given(st.integers(0, 10 ** 6))
def test_network_text_roundtrip(seed):
    import random
    rng = random.Random(seed)
    g, _ = random_standard(rng, rng.choice(nondegenerate(rng.randint(1, 4))))
    g = decorate(rng, g, 2)
    text = format_network(g)
    assert format_network(parse_network(text)) == text


def test_parse_error_has_line_number():
    with pytest.raises(ValueError, match="line 2"):
        parse_network("cpn 2 0\nedge 1 1 x 3\n")
