from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from cpnet.dyck import rect_strand_diagram, standard_network
from cpnet.exactalg import RatMatrix
from cpnet.groves import grove_sum, uncrossing_sum
from cpnet.medial import StrandMatching, strand_matching
from cpnet.reconstruct import (NotInCellError, comb, comb_partition, connection_pattern,
                               exterior_partition, find_matching, reconstruct_standard,
                               tripod_plans, tripod_variables)
from conftest import FIVE_NODE_PAIRS, nondegenerate, random_standard

FIVE_NODE_M = StrandMatching.from_pairs(FIVE_NODE_PAIRS)


def test_five_node_tripods(five_node_l):
    tv = tripod_variables(five_node_l, FIVE_NODE_M)
    assert sorted(tv.values.values()) == [4, 10, 60, 300, 390, 600, 765]
    assert tv.exterior == 5
    assert len(tv) == 8


def test_five_node_network(five_node_l):
    g = reconstruct_standard(five_node_l, FIVE_NODE_M)
    assert g.response_matrix().m == five_node_l
    assert sorted(e.c for e in g.edges) == sorted(
        [F(150), F(120), F(1530), F(153), F(1530, 13), F(60), F(30)])


def test_five_node_search(five_node_l):
    m, g = find_matching(five_node_l)
    assert m == FIVE_NODE_M
    assert g.response_matrix().m == five_node_l


def test_tripods_are_grove_ratios(rng):
    for n in (3, 4, 5):
        for m in rng.sample(nondegenerate(n), 3):
            g, d = random_standard(rng, m)
            tv = tripod_variables(g.response_matrix(), m)
            zu = uncrossing_sum(g)
            for k, plan in tv.plans.items():
                assert tv.get(None if k == "-" else k) == grove_sum(g, plan.partition) / zu


def test_comb_partition_members():
    d = rect_strand_diagram(FIVE_NODE_M)
    for c in d.crossings:
        cb = comb(d, c.id)
        assert cb.base == c.id and c.id in cb.members
        tau, _ = comb_partition(d, c.id)
        assert tau.is_planar()
    assert exterior_partition(d)[0].is_planar()


def test_plans_are_cached():
    assert tripod_plans(FIVE_NODE_M) is tripod_plans(FIVE_NODE_M)


@given(st.data())
def test_round_trip(data):
    import random
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    n = data.draw(st.integers(2, 5))
    m = rng.choice(nondegenerate(n))
    g, _ = random_standard(rng, m)
    g2 = reconstruct_standard(g.response_matrix(), m)
    assert {e.id: e.c for e in g2.edges} == {e.id: e.c for e in g.edges}


def test_search_recovers_matching(rng):
    for _ in range(10):
        m = rng.choice(nondegenerate(rng.randint(2, 5)))
        g, _ = random_standard(rng, m)
        found, g2 = find_matching(g.response_matrix())
        assert found == m == strand_matching(g2)


def test_not_in_cell():
    # a positive off-diagonal entry is outside every cell
    l = RatMatrix.from_rows([[-1, 2, -1], [2, -3, 1], [-1, 1, 0]])
    assert find_matching(l) is None
    g, _ = standard_network(StrandMatching.from_pairs([(1, 4), (2, 5), (3, 6)]))
    with pytest.raises(NotInCellError):
        reconstruct_standard(l, strand_matching(g))


def test_wrong_matching_fails(rng):
    g, _ = random_standard(rng, StrandMatching.from_pairs([(1, 4), (2, 5), (3, 6)]))
    other = StrandMatching.from_pairs([(1, 4), (2, 6), (3, 5)])
    with pytest.raises(NotInCellError):
        reconstruct_standard(g.response_matrix(), other)


def test_pattern_distinguishes_cells(rng):
    seen = {}
    for m in nondegenerate(4):
        g, _ = standard_network(m)
        pat = connection_pattern(g.response_matrix())
        assert seen.setdefault(pat, m) == m
