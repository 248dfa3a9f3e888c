import functools
import os
import random
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, settings

from cpnet.dyck import DegenerateMatchingError, all_matchings, standard_network
from cpnet.exactalg import RatMatrix

settings.register_profile("repo", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

DATA = os.path.join(os.path.dirname(__file__), "data")

FIVE_NODE_L = [[-100, 40, 45, 10, 5],
           [40, -88, 36, 8, 4],
           [45, 36, -99, 12, 6],
           [10, 8, 12, -40, 10],
           [5, 4, 6, 10, -25]]
FIVE_NODE_PAIRS = [(1, 4), (2, 6), (3, 8), (5, 9), (7, 10)]


def rand_rat(rng, top=20):
    return F(rng.randint(1, top), rng.randint(1, top))


def rand_matrix(rng, rows, cols=None, lo=-9, hi=9, symmetric=False):
    cols = rows if cols is None else cols
    a = [[F(rng.randint(lo, hi), rng.randint(1, 5)) for _ in range(cols)] for _ in range(rows)]
    if symmetric:
        for i in range(rows):
            for j in range(i):
                a[i][j] = a[j][i]
    return RatMatrix.from_rows(a)


@functools.lru_cache(maxsize=None)
def _nondegenerate(n):
    out = []
    for m in all_matchings(n):
        try:
            standard_network(m)
        except DegenerateMatchingError:
            continue
        out.append(m)
    return tuple(out)


def nondegenerate(n):
    return list(_nondegenerate(n))


def random_standard(rng, m, top=20):
    g, d = standard_network(m)
    g, d = standard_network(m, {e.id: rand_rat(rng, top) for e in g.edges})
    return g, d


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def five_node_l():
    return RatMatrix.from_rows(FIVE_NODE_L)


def decorate(rng, g, steps=4):
    """Add series splits, parallel copies, pendant vertices and loops to g."""
    from cpnet.network import Edge, Network
    for _ in range(steps):
        edges = {e.id: e for e in g.edges}
        rot = {v: list(r) for v, r in g.rotation.items()}
        new_id = max(edges, default=0) + 1
        w = g.nv + 1
        kind = rng.choice(["series", "parallel", "pendant", "loop"])
        if kind in ("series", "parallel") and not edges:
            kind = "pendant"
        if kind == "series":
            e = edges[rng.choice(sorted(edges))]
            if e.u == e.v:
                continue
            edges[e.id] = Edge(e.id, e.u, w, rand_rat(rng))
            edges[new_id] = Edge(new_id, w, e.v, rand_rat(rng))
            k = rot[e.v].index(e.id)
            rot[e.v][k] = new_id
            rot[w] = [e.id, new_id]
            g = Network(g.n, g.internals + 1, list(edges.values()), rot)
        elif kind == "parallel":
            e = edges[rng.choice(sorted(edges))]
            if e.u == e.v:
                continue
            edges[new_id] = Edge(new_id, e.u, e.v, rand_rat(rng))
            ku = rot[e.u].index(e.id)
            rot[e.u].insert(ku + 1, new_id)
            kv = rot[e.v].index(e.id)
            rot[e.v].insert(kv, new_id)
            g = Network(g.n, g.internals, list(edges.values()), rot)
        elif kind == "pendant":
            u = rng.randint(1, g.nv)
            edges[new_id] = Edge(new_id, u, w, rand_rat(rng))
            rot[u].insert(rng.randint(0, len(rot[u])), new_id)
            rot[w] = [new_id]
            g = Network(g.n, g.internals + 1, list(edges.values()), rot)
        else:
            if g.internals == 0:
                continue
            u = rng.randint(g.n + 1, g.nv)
            edges[new_id] = Edge(new_id, u, u, rand_rat(rng))
            k = rng.randint(0, len(rot[u]))
            rot[u][k:k] = [new_id, new_id]
            g = Network(g.n, g.internals, list(edges.values()), rot)
    return g
