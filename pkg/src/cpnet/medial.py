"""Medial graph, strands, strand matching and the minimality test.

A medial vertex sits on every network edge.  Medial half-edges ("ports")
are named by a dart of the boundary-augmented map plus a side: side +1 is
the corner between the dart and its counterclockwise successor at its
tail vertex, side -1 the corner with its predecessor.  A strand crosses an
edge by going from port (d, s) to port (reverse(d), s).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .network import Network


@dataclass(frozen=True)
class MedialGraph:
    vertices: tuple          # edge ids
    arcs: tuple              # pairs of ports joined through a face corner
    stubs: dict              # stub label (1..2n) -> port
    _succ: dict              # port -> port across the corner (or stub label)

    @property
    def n(self) -> int:
        return len(self.stubs) // 2


@dataclass(frozen=True)
class StrandMatching:
    """Fixed-point-free involution on 1..2n, stored as sorted pairs."""
    n: int
    pairs: tuple

    def __post_init__(self):
        seen = sorted(x for p in self.pairs for x in p)
        if seen != list(range(1, 2 * self.n + 1)):
            raise ValueError("not a perfect matching of 1..2n")
        if any(a == b for a, b in self.pairs):
            raise ValueError("fixed point in matching")

    @classmethod
    def from_pairs(cls, pairs) -> "StrandMatching":
        ps = tuple(sorted(tuple(sorted(p)) for p in pairs))
        return cls(len(ps), ps)

    def partner(self, k: int) -> int:
        for a, b in self.pairs:
            if a == k:
                return b
            if b == k:
                return a
        raise KeyError(k)

    def as_dict(self) -> dict:
        d = {}
        for a, b in self.pairs:
            d[a], d[b] = b, a
        return d

    def crossing_pairs(self) -> list:
        """Pairs of chords ((i1, j1), (i2, j2)) with i1 < i2 < j1 < j2."""
        return [(p, q) for p, q in combinations(self.pairs, 2) if chords_cross(p, q)]

    def __str__(self) -> str:
        return "{" + ",".join("{%d,%d}" % p for p in self.pairs) + "}"


def chords_cross(p, q) -> bool:
    (a, b), (c, d) = sorted(p), sorted(q)
    if a > c:
        (a, b), (c, d) = (c, d), (a, b)
    return a < c < b < d


def well_connected_matching(n: int) -> StrandMatching:
    return StrandMatching.from_pairs([(i, i + n) for i in range(1, n + 1)])


def medial_graph(g: Network) -> MedialGraph:
    rot, _ = g._augmented()
    succ = {}
    stubs = {}
    arcs = []
    for v, ds in rot.items():
        k = len(ds)
        for j in range(k):
            d, d2 = ds[j], ds[(j + 1) % k]
            p, q = (d, 1), (d2, -1)
            if isinstance(d[0], tuple) and isinstance(d2[0], tuple):
                # corner between the two boundary directions: outside, or an
                # isolated node whose two stubs join directly
                if d[0][1] == v and d[1] == 0 and k == 2:
                    i = v
                    stubs[2 * i] = p
                    stubs[2 * i - 1] = q
                    succ[p], succ[q] = q, p
                continue
            succ[p], succ[q] = q, p
            if isinstance(d[0], tuple):
                stubs[2 * v] = p
            elif isinstance(d2[0], tuple):
                stubs[2 * v - 1] = q
            else:
                arcs.append((p, q))
    return MedialGraph(tuple(e.id for e in g.edges), tuple(arcs), stubs, succ)


def _opposite(port):
    (eid, end), s = port
    return ((eid, 1 - end), s)


def strands(mg: MedialGraph):
    """Trace all strands.

    Returns (open_strands, closed_strands).  An open strand is
    (stub_a, stub_b, [edge ids crossed in order]); a closed strand is a
    list of edge ids.
    """
    stub_of = {p: k for k, p in mg.stubs.items()}
    used = set()
    opened = []
    for k in sorted(mg.stubs):
        p = mg.stubs[k]
        if p in used:
            continue
        path = []
        used.add(p)
        q = mg._succ[p]
        while q not in stub_of:
            used.add(q)
            path.append(q[0][0])
            o = _opposite(q)
            used.add(o)
            q = mg._succ[o]
        used.add(q)
        opened.append((k, stub_of[q], path))
    closed = []
    for p in mg._succ:
        if p in used or isinstance(p[0][0], tuple):
            continue
        path = []
        q = p
        while q not in used:
            used.add(q)
            path.append(q[0][0])
            o = _opposite(q)
            used.add(o)
            q = mg._succ[o]
        closed.append(path)
    return opened, closed


def strand_matching(g: Network) -> StrandMatching:
    opened, _ = strands(medial_graph(g))
    return StrandMatching.from_pairs([(a, b) for a, b, _ in opened])


@dataclass(frozen=True)
class MinimalityCertificate:
    minimal: bool
    reason: str = ""
    witness: tuple = ()

    def __bool__(self) -> bool:
        return self.minimal


def is_minimal(g: Network) -> MinimalityCertificate:
    opened, closed = strands(medial_graph(g))
    if closed:
        return MinimalityCertificate(False, "closed strand", tuple(closed[0]))
    for a, b, path in opened:
        if len(set(path)) != len(path):
            return MinimalityCertificate(False, "strand crosses itself", ((a, b),))
    for (a1, b1, p1), (a2, b2, p2) in combinations(opened, 2):
        if len(set(p1) & set(p2)) > 1:
            return MinimalityCertificate(False, "strands cross twice", ((a1, b1), (a2, b2)))
    return MinimalityCertificate(True)


def format_matching(m: StrandMatching) -> str:
    return "\n".join([f"matching {m.n}"] + [f"pair {a} {b}" for a, b in m.pairs]) + "\n"


def parse_matching(text: str) -> StrandMatching:
    n = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        toks = ln.split()
        try:
            if toks[0] == "matching":
                n = int(toks[1])
            elif toks[0] == "pair":
                pairs.append((int(toks[1]), int(toks[2])))
            else:
                raise ValueError(f"unknown record {toks[0]!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    m = StrandMatching.from_pairs(pairs)
    if n is not None and m.n != n:
        raise ValueError(f"header says {n} nodes but {m.n} pairs given")
    return m
