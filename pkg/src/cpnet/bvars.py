"""B variables: one positive rational per cell of a minimal strand diagram.

A cell is a vertex or a disk face of the network.  Each cell is keyed by
its sign vector: for every strand, whether the cell lies strictly between
the strand's two stubs (going counterclockwise from the smaller stub).
Stub k sits at boundary position k; node k is at 2k - 1/2 and the face
just after it (dual node k) at 2k + 1/2.

For a crossing of strands (i1, j1), (i2, j2) with i1 < i2 < j1 < j2 the
left region holds the cells between stubs i1 and i2, i.e. inside the
first chord and outside the second.  B of a cell is the product of the
horizontal conductances of the crossings whose left region contains it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .exactalg import Rat, fmt_rat
from .medial import StrandMatching, _opposite, chords_cross, is_minimal, medial_graph
from .network import Network, PreconditionError, Transformation, apply_transformation

SignVector = tuple


def inside(chord, position) -> bool:
    a, b = chord
    return a < position < b


def _ordered_pair(s, t):
    """Return the crossing chords as (i1, j1), (i2, j2) with i1 < i2 < j1 < j2."""
    if not chords_cross(s, t):
        raise PreconditionError(f"strands {s} and {t} do not cross")
    return (s, t) if s[0] < t[0] else (t, s)


def left_cells(cells: dict, chords: tuple, s, t) -> set:
    """Keys of cells in the left region of the crossing of chords s and t."""
    (c1, c2) = _ordered_pair(s, t)
    k1, k2 = chords.index(c1), chords.index(c2)
    return {key for key in cells if key[k1] and not key[k2]}


def right_cells(cells: dict, chords: tuple, s, t) -> set:
    (c1, c2) = _ordered_pair(s, t)
    k1, k2 = chords.index(c1), chords.index(c2)
    return {key for key in cells if key[k2] and not key[k1]}


def diagram_cells(m: StrandMatching) -> dict:
    """Sign vectors of the cells of the rectilinear diagram of m.

    Cell (p, q) of the grid is the unit square [p, p+1] x [q, q+1] in the
    (u, v) plane; strand (i, j) bounds the region i < u, v < j.
    """
    from .dyck import rect_strand_diagram

    d = rect_strand_diagram(m)
    chords = tuple(m.pairs)
    out = {}
    for (p, q), cid in d.cell_of.items():
        key = tuple(i <= p and q < j for i, j in chords)
        out.setdefault(key, cid)
    return out


def left_region(m: StrandMatching, s, t) -> set:
    """Sign vectors of the left region of the crossing of chords s and t."""
    chords = tuple(m.pairs)
    for c in (s, t):
        if tuple(c) not in chords:
            raise PreconditionError(f"{c} is not a strand of {m}")
    return left_cells(diagram_cells(m), chords, tuple(s), tuple(t))


# -- cells of an embedded network --------------------------------------------

@dataclass
class _CellMap:
    chords: tuple           # strands as sorted stub pairs, in matching order
    port_strand: dict       # medial port -> index into chords
    face_of: dict           # dart -> face index
    faces: list
    key_of: dict            # ("v", w) or ("f", k) -> sign vector
    cell_of: dict           # sign vector -> ("v", w) or ("f", k)


def _trace_ports(g: Network):
    mg = medial_graph(g)
    stub_of = {p: k for k, p in mg.stubs.items()}
    port_chord = {}
    for k in sorted(mg.stubs):
        p = mg.stubs[k]
        if p in port_chord:
            continue
        ports = [p]
        q = mg._succ[p]
        while q not in stub_of:
            ports.append(q)
            o = _opposite(q)
            ports.append(o)
            q = mg._succ[o]
        ports.append(q)
        chord = (min(k, stub_of[q]), max(k, stub_of[q]))
        for x in ports:
            port_chord[x] = chord
    return port_chord


def _cell_map(g: Network) -> _CellMap:
    port_chord = _trace_ports(g)
    chords = tuple(sorted(set(port_chord.values())))
    index = {c: k for k, c in enumerate(chords)}
    port_strand = {p: index[c] for p, c in port_chord.items()}
    faces = g.faces()
    face_of = {d: k for k, f in enumerate(faces) for d in f}
    rot, _ = g._augmented()
    # each medial corner separates a vertex from a face
    adj = {}
    for v, ds in rot.items():
        for j, d in enumerate(ds):
            p = (d, 1)
            if p not in port_strand:
                continue
            a, b = ("v", v), ("f", face_of[d])
            adj.setdefault(a, []).append((b, port_strand[p]))
            adj.setdefault(b, []).append((a, port_strand[p]))
    start = ("v", 1)
    key_of = {start: tuple(inside(c, 2 * 1 - 0.5) for c in chords)}
    todo = deque([start])
    while todo:
        x = todo.popleft()
        for y, s in adj.get(x, ()):
            key = list(key_of[x])
            key[s] = not key[s]
            key = tuple(key)
            if y in key_of:
                if key_of[y] != key:
                    raise PreconditionError("inconsistent strand sides; network is not minimal")
                continue
            key_of[y] = key
            todo.append(y)
    cell_of = {}
    for x, key in key_of.items():
        if key in cell_of:
            raise PreconditionError("two cells share a sign vector; network is not minimal")
        cell_of[key] = x
    return _CellMap(chords, port_strand, face_of, faces, key_of, cell_of)


def network_cells(g: Network) -> dict:
    """Map ("v", w) / ("f", face index) to the cell's sign vector."""
    return dict(_cell_map(g).key_of)


def _edge_strands(cm: _CellMap, eid: int):
    s = cm.chords[cm.port_strand[((eid, 0), 1)]]
    t = cm.chords[cm.port_strand[((eid, 0), -1)]]
    return s, t


# -- the assignment ----------------------------------------------------------

@dataclass
class BAssignment:
    network: Network
    chords: tuple
    values: dict            # sign vector -> Rat

    def __post_init__(self):
        self._cm = _cell_map(self.network)
        if self._cm.chords != self.chords:
            raise PreconditionError("strand set does not match the network")

    def cell_value(self, cell) -> Rat:
        return self.values[self._cm.key_of[cell]]

    def vertex(self, w: int) -> Rat:
        return self.cell_value(("v", w))

    def face(self, k: int) -> Rat:
        return self.cell_value(("f", k))

    def biratio(self, eid: int) -> Rat:
        """B_v B_v' / (B_f B_f') around edge eid."""
        e = self.network.edge(eid)
        fa = self._cm.face_of[(eid, 0)]
        fb = self._cm.face_of[(eid, 1)]
        return self.vertex(e.u) * self.vertex(e.v) / (self.face(fa) * self.face(fb))

    def violations(self) -> list:
        """Edges where the biratio differs from the conductance."""
        return [e.id for e in self.network.edges if self.biratio(e.id) != e.c]

    def gauge(self, chord, factor) -> "BAssignment":
        """Scale every cell inside the given strand by factor."""
        k = self.chords.index(tuple(chord))
        factor = Rat(factor)
        vals = {key: (v * factor if key[k] else v) for key, v in self.values.items()}
        return BAssignment(self.network, self.chords, vals)

    def table(self) -> list:
        rows = []
        for cell, key in sorted(self._cm.key_of.items(), key=lambda kv: (kv[0][0] != "v", kv[0][1])):
            rows.append((cell, key, self.values[key]))
        return rows


def horizontal_conductance(cm: _CellMap, g: Network, eid: int) -> Rat:
    s, t = _edge_strands(cm, eid)
    (c1, c2) = _ordered_pair(s, t)
    k1, k2 = cm.chords.index(c1), cm.chords.index(c2)
    e = g.edge(eid)
    sides = []
    for w in (e.u, e.v):
        key = cm.key_of[("v", w)]
        sides.append("L" if key[k1] and not key[k2] else "R" if key[k2] and not key[k1] else "-")
    if sorted(sides) == ["L", "R"]:
        return e.c
    return 1 / e.c


def b_assignment(g: Network) -> BAssignment:
    cert = is_minimal(g)
    if not cert.minimal:
        raise PreconditionError(f"network is not minimal ({cert.reason})")
    cm = _cell_map(g)
    vals = {key: Rat(1) for key in cm.cell_of}
    for e in g.edges:
        h = horizontal_conductance(cm, g, e.id)
        s, t = _edge_strands(cm, e.id)
        for key in left_cells(cm.cell_of, cm.chords, s, t):
            vals[key] *= h
    return BAssignment(g, cm.chords, vals)


# -- cube recurrence -----------------------------------------------------------

def cube_recurrence(far, pairs) -> Rat:
    """(B1 B4 + B2 B5 + B3 B6) / B_far."""
    return sum((Rat(x) * Rat(y) for x, y in pairs), Rat(0)) / Rat(far)


def _flip(key, idxs):
    key = list(key)
    for k in idxs:
        key[k] = not key[k]
    return tuple(key)


def cube_step(b: BAssignment, site: Transformation) -> BAssignment:
    """Move b across a Y-Delta or Delta-Y site; only the center cell changes."""
    g, cm = b.network, b._cm
    if site.kind == "y-delta":
        v0 = site.vertex
        if v0 is None or g.is_node(v0) or g.degree(v0) != 3:
            raise PreconditionError("Y-Delta needs an internal vertex of degree 3")
        rot, _ = g._augmented()
        darts = rot[v0]
        ends = [g.edge(d[0]).other(v0) for d in darts]
        pairs = [(b.vertex(ends[k]), b.face(cm.face_of[darts[(k + 1) % 3]])) for k in range(3)]
        old = cm.key_of[("v", v0)]
        flips = {cm.port_strand[(d, 1)] for d in darts}
    elif site.kind == "delta-y":
        ids = sorted(map(str, site.edges[:3]))
        tri = next((k for k, f in enumerate(cm.faces) if k and len(f) == 3
                    and sorted(str(d[0]) for d in f) == ids), None)
        if tri is None:
            raise PreconditionError("Delta-Y needs three edges bounding a triangular face")
        face = cm.faces[tri]
        # face darts run a->b, b->c, c->a; vertex a sits opposite edge bc
        tails = []
        for eid, end in face:
            e = g.edge(eid)
            tails.append(e.u if end == 0 else e.v)
        pairs = []
        for k in range(3):
            eid, end = face[(k + 1) % 3]
            pairs.append((b.vertex(tails[k]), b.face(cm.face_of[(eid, 1 - end)])))
        old = cm.key_of[("f", tri)]
        flips = {cm.port_strand[(d, 1)] for d in face}
    else:
        raise PreconditionError(f"cube step needs a Y-Delta or Delta-Y site, not {site.kind}")
    if len(flips) != 3:
        raise PreconditionError("site is not crossed by three distinct strands")
    g2 = apply_transformation(g, site)
    vals = dict(b.values)
    far = vals.pop(old)
    vals[_flip(old, flips)] = cube_recurrence(far, pairs)
    return BAssignment(g2, b.chords, vals)


def format_bvars(b: BAssignment) -> str:
    lines = []
    for (kind, x), key, val in b.table():
        sides = "".join("1" if s else "0" for s in key)
        name = f"vertex {x}" if kind == "v" else f"face {x}"
        lines.append(f"{name:<10} {sides}  {fmt_rat(val)}")
    return "\n".join(lines)
