"""Circular planar networks: data model, Laplacian, response matrix, dual
network and the electrical transformations.

Vertices are numbered 1..n (boundary nodes, counterclockwise) and
n+1..n+k (internal vertices).  The embedding is a rotation system: for
every vertex the counterclockwise cyclic order of its incident edge ids.
For a boundary node the list starts just after the boundary direction
towards node i+1 and ends just before the direction towards node i-1.
A self-loop appears twice in the rotation of its vertex; the first
occurrence is taken as its end 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exactalg import RatMatrix, SingularityError, fmt_rat, rat, schur_complement


class NetworkError(ValueError):
    """Invalid network data (bad rotation system, non-planar, ...)."""


class PreconditionError(ValueError):
    """An operation was asked to act where it does not apply."""


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    c: Fraction

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u


# A dart is (edge id, end) with end 0 at edge.u and end 1 at edge.v.
Dart = tuple


class Network:
    """An embedded circular planar network with exact conductances."""

    def __init__(self, n: int, internals: int, edges: Iterable, rotation: dict | None = None,
                 *, check: bool = True):
        self.n = n
        self.internals = internals
        es = []
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(int(e[0]), int(e[1]), int(e[2]), rat(e[3]))
            es.append(e)
        self.edges: tuple[Edge, ...] = tuple(es)
        self._by_id = {e.id: e for e in self.edges}
        if len(self._by_id) != len(self.edges):
            raise NetworkError("duplicate edge id")
        if rotation is None:
            rotation = self._default_rotation()
        self.rotation = {v: tuple(rotation.get(v, ())) for v in self.vertices}
        if check:
            self._validate()

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> range:
        return range(1, self.n + self.internals + 1)

    @property
    def nv(self) -> int:
        return self.n + self.internals

    def edge(self, eid: int) -> Edge:
        return self._by_id[eid]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def is_node(self, v: int) -> bool:
        return 1 <= v <= self.n

    def _default_rotation(self) -> dict:
        # only meaningful for trees/stars; callers with real embeddings pass one
        rot = {v: [] for v in self.vertices}
        for e in self.edges:
            rot[e.u].append(e.id)
            rot[e.v].append(e.id)
        return rot

    def __eq__(self, other) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return (self.n, self.internals, self.edges, self.rotation) == (
            other.n, other.internals, other.edges, other.rotation)

    def __repr__(self) -> str:
        return f"Network(n={self.n}, internals={self.internals}, edges={len(self.edges)})"

    def with_conductances(self, cond: dict) -> "Network":
        es = [Edge(e.id, e.u, e.v, rat(cond.get(e.id, e.c))) for e in self.edges]
        return Network(self.n, self.internals, es, self.rotation, check=False)

    # -- combinatorial map --------------------------------------------------
    def _darts_at(self) -> dict:
        """Rotation expressed with darts: vertex -> list of (edge id, end)."""
        out = {}
        for v in self.vertices:
            seen = {}
            ds = []
            for eid in self.rotation[v]:
                e = self._by_id[eid]
                if e.u == e.v:
                    end = seen.get(eid, 0)
                    seen[eid] = end + 1
                else:
                    end = 0 if e.u == v else 1
                ds.append((eid, end))
            out[v] = ds
        return out

    def _augmented(self):
        """Darts and rotation with the boundary cycle added.

        Boundary edge ('b', i) runs from node i (end 0) to node i+1 (end 1).
        """
        rot = self._darts_at()
        n = self.n
        for i in range(1, n + 1):
            prev = n if i == 1 else i - 1
            rot[i] = [(("b", i), 0)] + rot[i] + [(("b", prev), 1)]
        ends = {}
        for e in self.edges:
            ends[e.id] = (e.u, e.v)
        for i in range(1, n + 1):
            ends[("b", i)] = (i, i % n + 1)
        return rot, ends

    def faces(self):
        """Faces of the boundary-augmented map, each as a list of darts.

        Faces are traced with the face on the left.  The outer face (outside
        the disk) is returned first; the remaining faces are disk faces.
        """
        rot, ends = self._augmented()
        pos = {}
        for v, ds in rot.items():
            for k, d in enumerate(ds):
                pos[d] = (v, k)
        seen = set()
        faces = []
        # deterministic: boundary darts first (in node order), then edges by id
        bdarts = [(("b", i), s) for i in range(1, self.n + 1) for s in (1, 0)]
        edarts = [(e.id, s) for e in sorted(self.edges, key=lambda e: e.id) for s in (0, 1)]
        for d0 in bdarts + edarts:
            if d0 in seen or d0 not in pos:
                continue
            face = []
            d = d0
            while d not in seen:
                seen.add(d)
                face.append(d)
                eid, end = d
                rev = (eid, 1 - end)
                v, k = pos[rev]
                ds = rot[v]
                d = ds[(k - 1) % len(ds)]
            faces.append(face)
        return faces

    def _validate(self):
        for e in self.edges:
            if e.c <= 0:
                raise NetworkError(f"edge {e.id} has nonpositive conductance")
            for w in (e.u, e.v):
                if w not in self.vertices:
                    raise NetworkError(f"edge {e.id} has bad endpoint {w}")
        if self.n < 1:
            raise NetworkError("a network needs at least one node")
        for v in self.vertices:
            want = sorted(eid for e in self.edges for eid in
                          ([e.id, e.id] if e.u == e.v == v else [e.id] if v in (e.u, e.v) else []))
            if sorted(self.rotation[v]) != want:
                raise NetworkError(f"rotation at vertex {v} does not list its incident edges")
        rot, ends = self._augmented()
        faces = self.faces()
        nd = sum(len(ds) for ds in rot.values())
        ne = nd // 2
        # components of the augmented graph
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for u, v in ends.values():
            parent[find(u)] = find(v)
        comps = len({find(v) for v in self.vertices})
        if self.nv - ne + len(faces) != 1 + comps:
            raise NetworkError("rotation system is not a planar disk embedding")
        outer = faces[0]
        want = {(("b", i), 1) for i in range(1, self.n + 1)}
        if set(outer) != want:
            raise NetworkError("boundary nodes are not on the outer face in circular order")

    # -- matrices -------------------------------------------------------------
    def laplacian(self) -> RatMatrix:
        """Kirchhoff matrix (positive diagonal) indexed by vertices 1..n+k."""
        m = [[Fraction(0)] * self.nv for _ in range(self.nv)]
        for e in self.edges:
            if e.u == e.v:
                continue
            a, b = e.u - 1, e.v - 1
            m[a][a] += e.c
            m[b][b] += e.c
            m[a][b] -= e.c
            m[b][a] -= e.c
        return RatMatrix.from_rows(m)

    def response_matrix(self) -> "ResponseMatrix":
        lap = self.laplacian()
        try:
            s = schur_complement(lap, list(range(self.n)))
        except SingularityError as exc:
            raise SingularityError("an internal component is not connected to any node") from exc
        return ResponseMatrix(-s)


def laplacian(g: Network) -> RatMatrix:
    return g.laplacian()


def response_matrix(g: Network) -> "ResponseMatrix":
    return g.response_matrix()


class ResponseMatrix:
    """Symmetric n x n matrix with zero row sums (the Dirichlet-to-Neumann map)."""

    __slots__ = ("m",)

    def __init__(self, m, *, check: bool = True):
        if not isinstance(m, RatMatrix):
            m = RatMatrix.from_rows(m)
        if check:
            if not m.is_symmetric():
                raise ValueError("response matrix must be symmetric")
            for i in range(m.rows):
                if sum(m.row(i)) != 0:
                    raise ValueError(f"row {i + 1} of the response matrix does not sum to 0")
        self.m = m

    @property
    def n(self) -> int:
        return self.m.rows

    def __getitem__(self, ij) -> Fraction:
        """1-based access L[i, j]."""
        i, j = ij
        return self.m[i - 1, j - 1]

    def __eq__(self, other) -> bool:
        if isinstance(other, ResponseMatrix):
            return self.m == other.m
        if isinstance(other, RatMatrix):
            return self.m == other
        return NotImplemented

    def __hash__(self):
        return hash(self.m)

    def __repr__(self) -> str:
        return f"ResponseMatrix({self.m!r})"


def glue_nodes(l: ResponseMatrix | RatMatrix, i: int, j: int) -> RatMatrix:
    """Glue 1-based nodes i and j (infinite-conductance limit of an edge).

    Rows and columns i and j are summed into position min(i, j); the other
    index is removed.  Works on any square matrix so it can be chained.
    """
    m = l.m if isinstance(l, ResponseMatrix) else l
    a, b = sorted((i - 1, j - 1))
    rows = m.tolist()
    for c in range(m.cols):
        rows[a][c] += rows[b][c]
    del rows[b]
    for r in rows:
        r[a] += r[b]
        del r[b]
    return RatMatrix.from_rows(rows)


def insert_node(m: RatMatrix, pos: int) -> RatMatrix:
    """Insert an isolated node so that it gets 1-based index ``pos``."""
    k = pos - 1
    rows = m.tolist()
    for r in rows:
        r.insert(k, Fraction(0))
    rows.insert(k, [Fraction(0)] * (m.cols + 1))
    return RatMatrix.from_rows(rows)


def internalize_node(m: RatMatrix, i: int) -> RatMatrix:
    """Demote 1-based node i to an internal vertex (Schur reduction)."""
    keep = [k for k in range(m.rows) if k != i - 1]
    return -schur_complement(-m, keep)


def adjoin_edge(m: RatMatrix, i: int, j: int, c) -> RatMatrix:
    c = rat(c)
    rows = m.tolist()
    a, b = i - 1, j - 1
    rows[a][b] += c
    rows[b][a] += c
    rows[a][a] -= c
    rows[b][b] -= c
    return RatMatrix.from_rows(rows)


# ---------------------------------------------------------------------------
# dual network

def dual_network(g: Network) -> Network:
    """Planar dual inside the disk; dual node i lies between nodes i and i+1."""
    faces = g.faces()[1:]
    face_of = {}
    for k, f in enumerate(faces):
        for d in f:
            face_of[d] = k
    node_face = {}
    for i in range(1, g.n + 1):
        k = face_of[(("b", i), 0)]
        if k in node_face.values():
            other = next(j for j, kk in node_face.items() if kk == k)
            raise PreconditionError(f"dual nodes {other} and {i} are glued; dual is a cactus")
        node_face[i] = k
    label = {k: i for i, k in node_face.items()}
    nxt = g.n + 1
    for k in range(len(faces)):
        if k not in label:
            label[k] = nxt
            nxt += 1
    edges = []
    for e in g.edges:
        left = label[face_of[(e.id, 0)]]
        right = label[face_of[(e.id, 1)]]
        edges.append(Edge(e.id, left, right, 1 / e.c))
    rot = {}
    for k, f in enumerate(faces):
        v = label[k]
        ds = [d for d in f if not isinstance(d[0], tuple)]
        if v <= g.n:
            # start right after the boundary dart of this dual node
            bpos = f.index((("b", v), 0))
            ds = [d for d in f[bpos + 1:] + f[:bpos] if not isinstance(d[0], tuple)]
        rot[v] = [eid for eid, _ in ds]
    return Network(g.n, nxt - 1 - g.n, edges, rot)


# ---------------------------------------------------------------------------
# electrical transformations

@dataclass(frozen=True)
class Transformation:
    """Descriptor for one electrical transformation.

    kind is one of remove-dead-branch (vertex), remove-self-loop (edges[0]),
    series-merge (vertex), parallel-merge (edges[0:2]), y-delta (vertex),
    delta-y (edges[0:3]).
    """
    kind: str
    vertex: int | None = None
    edges: tuple = field(default_factory=tuple)


KINDS = ("remove-dead-branch", "remove-self-loop", "series-merge", "parallel-merge",
         "y-delta", "delta-y")


def _rebuild(g: Network, edges: list, rot: dict, removed_vertex: int | None = None) -> Network:
    """Assemble a new network, dropping an internal vertex and renumbering."""
    internals = g.internals
    if removed_vertex is not None:
        internals -= 1

        def rn(v):
            return v - 1 if v > removed_vertex else v
        edges = [Edge(e.id, rn(e.u), rn(e.v), e.c) for e in edges]
        rot = {rn(v): r for v, r in rot.items() if v != removed_vertex}
    return Network(g.n, internals, edges, rot)


def _replace_in(seq, old, new: list):
    k = seq.index(old)
    return list(seq[:k]) + new + list(seq[k + 1:])


def apply_transformation(g: Network, t: Transformation) -> Network:
    rot = {v: list(r) for v, r in g.rotation.items()}
    edges = {e.id: e for e in g.edges}
    next_id = max(edges, default=0) + 1
    kind = t.kind
    if kind == "remove-dead-branch":
        v = t.vertex
        if v is None or g.is_node(v) or g.degree(v) != 1:
            raise PreconditionError("dead branch needs an internal vertex of degree 1")
        eid = rot[v][0]
        w = edges[eid].other(v)
        rot[w].remove(eid)
        del edges[eid]
        return _rebuild(g, list(edges.values()), rot, v)
    if kind == "remove-self-loop":
        (eid,) = t.edges[:1]
        e = edges.get(eid)
        if e is None or e.u != e.v:
            raise PreconditionError("not a self-loop")
        rot[e.u] = [x for x in rot[e.u] if x != eid]
        del edges[eid]
        return _rebuild(g, list(edges.values()), rot)
    if kind == "series-merge":
        v = t.vertex
        if v is None or g.is_node(v) or g.degree(v) != 2:
            raise PreconditionError("series merge needs an internal vertex of degree 2")
        e1, e2 = (edges[x] for x in rot[v])
        if e1.id == e2.id or e1.u == e1.v:
            raise PreconditionError("series merge through a self-loop")
        a, b = e1.other(v), e2.other(v)
        c = e1.c * e2.c / (e1.c + e2.c)
        new = Edge(next_id, a, b, c)
        rot[a] = _replace_in(rot[a], e1.id, [next_id])
        rot[b] = _replace_in(rot[b], e2.id, [next_id])
        del edges[e1.id], edges[e2.id]
        edges[next_id] = new
        return _rebuild(g, list(edges.values()), rot, v)
    if kind == "parallel-merge":
        i1, i2 = t.edges[:2]
        e1, e2 = edges.get(i1), edges.get(i2)
        if e1 is None or e2 is None or i1 == i2 or {e1.u, e1.v} != {e2.u, e2.v} or e1.u == e1.v:
            raise PreconditionError("parallel merge needs two distinct edges with the same ends")
        if not any(sorted(map(str, (d[0] for d in f))) == sorted(map(str, (i1, i2)))
                   for f in g.faces()[1:]):
            raise PreconditionError("the two edges do not bound a common digon face")
        rot[e1.u].remove(i2)
        rot[e1.v].remove(i2)
        del edges[i2]
        edges[i1] = Edge(i1, e1.u, e1.v, e1.c + e2.c)
        return _rebuild(g, list(edges.values()), rot)
    if kind == "y-delta":
        v = t.vertex
        if v is None or g.is_node(v) or g.degree(v) != 3:
            raise PreconditionError("Y-Delta needs an internal vertex of degree 3")
        legs = [edges[x] for x in rot[v]]
        ends = [e.other(v) for e in legs]
        if len({e.id for e in legs}) != 3 or any(e.u == e.v for e in legs) or len(set(ends)) != 3:
            raise PreconditionError("Y-Delta legs must go to three distinct vertices")
        ca, cb, cc = (e.c for e in legs)
        s = ca + cb + cc
        a, b, c = ends
        ab, bc, ca_id = next_id, next_id + 1, next_id + 2
        new = [Edge(ab, a, b, ca * cb / s), Edge(bc, b, c, cb * cc / s),
               Edge(ca_id, c, a, cc * ca / s)]
        rot[a] = _replace_in(rot[a], legs[0].id, [ab, ca_id])
        rot[b] = _replace_in(rot[b], legs[1].id, [bc, ab])
        rot[c] = _replace_in(rot[c], legs[2].id, [ca_id, bc])
        for e in legs:
            del edges[e.id]
        for e in new:
            edges[e.id] = e
        return _rebuild(g, list(edges.values()), rot, v)
    if kind == "delta-y":
        ids = list(t.edges[:3])
        face = next((f for f in g.faces()[1:]
                     if len(f) == 3 and sorted(map(str, (d[0] for d in f))) == sorted(map(str, ids))), None)
        if face is None:
            raise PreconditionError("Delta-Y needs three edges bounding a triangular face")
        # walk order around the face is counterclockwise
        verts = []
        for eid, end in face:
            e = edges[eid]
            verts.append(e.u if end == 0 else e.v)
        if len(set(verts)) != 3:
            raise PreconditionError("degenerate triangle")
        a, b, c = verts
        eab, ebc, eca = (edges[d[0]] for d in face)
        p, q, r = eab.c, ebc.c, eca.c
        num = p * q + q * r + r * p
        v = g.nv + 1
        la, lb, lc = next_id, next_id + 1, next_id + 2
        new = [Edge(la, v, a, num / q), Edge(lb, v, b, num / r), Edge(lc, v, c, num / p)]

        def swap_pair(seq, x, y, z):
            # x and y are cyclically adjacent in seq; replace the pair by z
            s = list(seq)
            k = len(s)
            for j in range(k):
                if {s[j], s[(j + 1) % k]} == {x, y}:
                    if j + 1 < k:
                        return s[:j] + [z] + s[j + 2:]
                    return [z] + s[1:j]
            raise PreconditionError("triangle edges are not adjacent in the rotation")
        rot[a] = swap_pair(rot[a], eab.id, eca.id, la)
        rot[b] = swap_pair(rot[b], eab.id, ebc.id, lb)
        rot[c] = swap_pair(rot[c], ebc.id, eca.id, lc)
        rot[v] = [la, lb, lc]
        for e in (eab, ebc, eca):
            del edges[e.id]
        for e in new:
            edges[e.id] = e
        return Network(g.n, g.internals + 1, list(edges.values()), rot)
    raise PreconditionError(f"unknown transformation {kind!r}")


def delete_edge(g: Network, eid: int) -> Network:
    g.edge(eid)
    rot = {v: [x for x in r if x != eid] for v, r in g.rotation.items()}
    return Network(g.n, g.internals, [e for e in g.edges if e.id != eid], rot)


def contract_edge(g: Network, eid: int) -> Network:
    """Merge the ends of a non-loop edge; at least one end must be internal."""
    e = g.edge(eid)
    u, v = e.u, e.v
    if u == v:
        raise PreconditionError("cannot contract a self-loop")
    if g.is_node(v) and g.is_node(u):
        raise PreconditionError("contracting an edge between two nodes would glue them")
    if g.is_node(v):
        u, v = v, u
    ru, rv = list(g.rotation[u]), list(g.rotation[v])
    k = rv.index(eid)
    splice = rv[k + 1:] + rv[:k]
    rot = {w: list(r) for w, r in g.rotation.items()}
    rot[u] = _replace_in(ru, eid, splice)
    del rot[v]
    edges = []
    for f in g.edges:
        if f.id == eid:
            continue
        edges.append(Edge(f.id, u if f.u == v else f.u, u if f.v == v else f.v, f.c))
    return _rebuild(g, edges, rot, v)


def applicable_sites(g: Network) -> list[Transformation]:
    """Every transformation that applies somewhere in g (deterministic order)."""
    out = []
    for v in range(g.n + 1, g.nv + 1):
        d = g.degree(v)
        if d == 1:
            out.append(Transformation("remove-dead-branch", vertex=v))
        elif d == 2:
            r = g.rotation[v]
            if r[0] != r[1]:
                out.append(Transformation("series-merge", vertex=v))
        elif d == 3:
            legs = [g.edge(x) for x in g.rotation[v]]
            ends = {e.other(v) for e in legs}
            if len(ends) == 3 and all(e.u != e.v for e in legs) and len({e.id for e in legs}) == 3:
                out.append(Transformation("y-delta", vertex=v))
    for e in g.edges:
        if e.u == e.v:
            out.append(Transformation("remove-self-loop", edges=(e.id,)))
    for f in g.faces()[1:]:
        ids = [d[0] for d in f]
        if any(isinstance(x, tuple) for x in ids):
            continue
        if len(f) == 2 and ids[0] != ids[1] and all(g.edge(x).u != g.edge(x).v for x in ids):
            out.append(Transformation("parallel-merge", edges=tuple(sorted(ids))))
        if len(f) == 3 and len(set(ids)) == 3:
            vs = set()
            for eid in ids:
                vs |= {g.edge(eid).u, g.edge(eid).v}
            if len(vs) == 3:
                out.append(Transformation("delta-y", edges=tuple(sorted(ids))))
    return out


# ---------------------------------------------------------------------------
# text format "cpn v1"

def format_network(g: Network) -> str:
    lines = [f"cpn {g.n} {g.internals}"]
    for e in g.edges:
        lines.append(f"edge {e.id} {e.u} {e.v} {fmt_rat(e.c)}")
    for v in g.vertices:
        lines.append("rot " + " ".join(str(x) for x in [v, *g.rotation[v]]))
    return "\n".join(lines) + "\n"


def parse_network(text: str) -> Network:
    n = k = None
    edges = []
    rot = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        toks = ln.split()
        try:
            if toks[0] == "cpn":
                n, k = int(toks[1]), int(toks[2])
            elif toks[0] == "edge":
                edges.append(Edge(int(toks[1]), int(toks[2]), int(toks[3]), Fraction(toks[4])))
            elif toks[0] == "rot":
                rot[int(toks[1])] = [int(x) for x in toks[2:]]
            else:
                raise ValueError(f"unknown record {toks[0]!r}")
        except (IndexError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise ValueError("line 1: missing 'cpn <n> <k>' header")
    try:
        return Network(n, k, edges, rot)
    except NetworkError as exc:
        raise ValueError(str(exc)) from exc


# ---------------------------------------------------------------------------
# small constructors used in tests and docs

def single_edge(c=1) -> Network:
    return Network(2, 0, [Edge(1, 1, 2, rat(c))], {1: [1], 2: [1]})


def star(legs: Sequence) -> Network:
    """Star with one internal center joined to each node 1..len(legs)."""
    n = len(legs)
    center = n + 1
    edges = [Edge(i, i, center, rat(c)) for i, c in enumerate(legs, start=1)]
    rot = {i: [i] for i in range(1, n + 1)}
    rot[center] = list(range(1, n + 1))
    return Network(n, 1, edges, rot)


def cycle_on_nodes(cs: Sequence) -> Network:
    """Edges i -- i+1 around the boundary (a triangle for three nodes)."""
    n = len(cs)
    edges = [Edge(i, i, i % n + 1, rat(c)) for i, c in enumerate(cs, start=1)]
    rot = {}
    for i in range(1, n + 1):
        prev = n if i == 1 else i - 1
        rot[i] = [i, prev]
    return Network(n, 0, edges, rot)
