from fractions import Fraction as F

import pytest

from cpnet.bvars import (b_assignment, cube_recurrence, cube_step, diagram_cells, format_bvars,
                         inside, left_region, network_cells)
from cpnet.dyck import standard_network
from cpnet.medial import StrandMatching, strand_matching
from cpnet.network import PreconditionError, applicable_sites, parse_network, star
from conftest import DATA, nondegenerate, random_standard


def cube_sites(g):
    return [s for s in applicable_sites(g) if s.kind in ("y-delta", "delta-y")]


def test_inside():
    assert inside((1, 4), 2) and not inside((1, 4), 4) and not inside((1, 4), 0.5)


def test_edge_bvars():
    g = parse_network(open(f"{DATA}/edge7.cpn").read())
    b = b_assignment(g)
    assert b.violations() == []
    assert b.biratio(1) == 7


def test_star_bvars():
    g = star([F(2), F(3), F(5)])
    b = b_assignment(g)
    assert b.violations() == []
    assert "vertex 4" in format_bvars(b)


def test_not_minimal():
    g = parse_network(open(f"{DATA}/parallel.cpn").read())
    with pytest.raises(PreconditionError):
        b_assignment(g)


def test_cells_match_diagram():
    for n in (3, 4, 5):
        for m in nondegenerate(n):
            g, _ = standard_network(m)
            assert set(network_cells(g).values()) == set(diagram_cells(m))


def test_bbbb_all_standard(rng):
    for n in (2, 3, 4, 5):
        for m in rng.sample(nondegenerate(n), min(8, len(nondegenerate(n)))):
            g, _ = random_standard(rng, m)
            assert b_assignment(g).violations() == []


def test_left_region():
    m = StrandMatching.from_pairs([(1, 4), (2, 5), (3, 6)])
    reg = left_region(m, (1, 4), (2, 5))
    assert reg and all(k[0] and not k[1] for k in reg)
    with pytest.raises(PreconditionError):
        left_region(m, (1, 4), (1, 5))


def test_gauge_preserves_biratios(rng):
    g, _ = random_standard(rng, nondegenerate(4)[3])
    b = b_assignment(g)
    for chord in b.chords:
        assert b.gauge(chord, F(7, 3)).violations() == []


def test_cube_recurrence():
    assert cube_recurrence(2, [(1, 2), (3, 4), (5, 6)]) == 22


def test_cube_steps(rng):
    count = undone = 0
    for n in (3, 4, 5):
        for m in rng.sample(nondegenerate(n), min(10, len(nondegenerate(n)))):
            g, _ = random_standard(rng, m)
            b = b_assignment(g)
            for _ in range(4):
                sites = cube_sites(b.network)
                if not sites:
                    break
                site = rng.choice(sites)
                b2 = cube_step(b, site)
                assert b2.violations() == []
                assert strand_matching(b2.network) == strand_matching(g)
                assert len(set(b2.values) - set(b.values)) == 1
                for s in cube_sites(b2.network):
                    b3 = cube_step(b2, s)
                    if set(b3.values) == set(b.values):
                        assert b3.values == b.values
                        undone += 1
                b = b2
                count += 1
    assert count > 20 and undone == count


def test_cube_step_wrong_kind(rng):
    g, _ = random_standard(rng, nondegenerate(3)[0])
    sites = [s for s in applicable_sites(g) if s.kind not in ("y-delta", "delta-y")]
    for s in sites:
        with pytest.raises(PreconditionError):
            cube_step(b_assignment(g), s)
