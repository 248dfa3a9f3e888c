"""Dyck paths, cover-inclusive Dyck tilings and standard networks.

Squares of the Dyck lattice are named by their centers (col, row); the
square centered at (c, r) has its bottom corner at (c, r - 1).

The strand diagram used for standard networks lives in rotated
coordinates u = x + y, v = x - y.  Stub k sits at (k, k) on the line
u = v, the disk is u <= v, and the strand (i, j), i < j, runs down the
line u = i from v = i to v = j and then along v = j back up to u = j.
Two crossing strands (i1, j1), (i2, j2) with i1 < i2 < j1 < j2 meet at
the single point (i2, j1).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .medial import StrandMatching
from .network import Network, NetworkError


class DegenerateMatchingError(NetworkError):
    """The matching's network glues boundary nodes together."""

    def __init__(self, msg, glued=()):
        super().__init__(msg)
        self.glued = glued


# --------------------------------------------------------------- paths ----

@dataclass(frozen=True)
class DyckPath:
    steps: str

    def __post_init__(self):
        h = 0
        for s in self.steps:
            if s not in "UD":
                raise ValueError(f"bad step {s!r}")
            h += 1 if s == "U" else -1
            if h < 0:
                raise ValueError("path goes below the axis")
        if h:
            raise ValueError("path does not return to the axis")

    @property
    def n(self) -> int:
        return len(self.steps) // 2

    def heights(self) -> list:
        hs = [0]
        for s in self.steps:
            hs.append(hs[-1] + (1 if s == "U" else -1))
        return hs

    def dominates(self, other: "DyckPath") -> bool:
        return len(self.steps) == len(other.steps) and all(
            a >= b for a, b in zip(self.heights(), other.heights()))

    def __str__(self) -> str:
        return self.steps


def matching_path(m: StrandMatching) -> DyckPath:
    """U at the smaller end of each chord, D at the larger."""
    openers = {a for a, _ in m.pairs}
    return DyckPath("".join("U" if k in openers else "D" for k in range(1, 2 * m.n + 1)))


@dataclass(frozen=True)
class DyckTiling:
    lower: DyckPath
    upper: DyckPath
    tiles: tuple = ()        # each tile: tuple of (col, row) sorted by col

    def region(self) -> set:
        lo, hi = self.lower.heights(), self.upper.heights()
        sq = set()
        for c in range(1, len(lo) - 1):
            for r in range(lo[c] + 1, hi[c], 2):
                sq.add((c, r))
        return sq

    def validate(self) -> None:
        if not self.upper.dominates(self.lower):
            raise ValueError("upper path does not dominate lower path")
        covered = [s for t in self.tiles for s in t]
        if len(covered) != len(set(covered)) or set(covered) != self.region():
            raise ValueError("tiles do not partition the skew region")
        where = {}
        for k, t in enumerate(self.tiles):
            cols = [c for c, _ in t]
            if cols != list(range(cols[0], cols[0] + len(t))) or len(t) % 2 == 0:
                raise ValueError(f"tile {k} is not a fattened Dyck path")
            base = t[0][1]
            for c, r in t:
                if r < base:
                    raise ValueError(f"tile {k} dips below its ends")
            if t[-1][1] != base:
                raise ValueError(f"tile {k} ends at a different height")
            for s in t:
                where[s] = k
        for (c, r), k in where.items():
            above = where.get((c, r + 2))
            if above is not None and above != k:
                lo = {x for x, _ in self.tiles[k]}
                hi = {x for x, _ in self.tiles[above]}
                if not hi <= lo:
                    raise ValueError("tiling is not cover-inclusive")


# ---------------------------------------------------- matching <-> tiling ----

def _deconstruct(m: StrandMatching) -> list:
    """Moves that rebuild m from nothing, in construction order.

    ("insert", p): new strand on stubs p+1, p+2, later stubs shift by 2.
    ("cross", i): strands (a, i), (i+1, b) become (a, i+1), (i, b).
    """
    mate = m.as_dict()
    moves = []
    while mate:
        size = len(mate)
        i = next(k for k in range(1, size) if mate[k] > k and mate[k + 1] < k + 1)
        if mate[i] == i + 1:
            moves.append(("insert", i - 1))
            mate = {(a if a < i else a - 2): (b if b < i else b - 2)
                    for a, b in mate.items() if a not in (i, i + 1)}
        else:
            a, b = mate[i + 1], mate[i]
            moves.append(("cross", i))
            mate[a], mate[i] = i, a
            mate[i + 1], mate[b] = b, i + 1
    moves.reverse()
    return moves


def _build_matching(moves) -> StrandMatching:
    mate = {}
    for kind, x in moves:
        if kind == "insert":
            mate = {(a if a <= x else a + 2): (b if b <= x else b + 2) for a, b in mate.items()}
            mate[x + 1], mate[x + 2] = x + 2, x + 1
        else:
            i = x
            a, b = mate[i], mate[i + 1]
            mate[a], mate[i + 1] = i + 1, a
            mate[i], mate[b] = b, i
    return StrandMatching.from_pairs({tuple(sorted(p)) for p in mate.items()})


def matching_to_tiling(m: StrandMatching) -> DyckTiling:
    lower, upper = "", ""
    tiles = []
    for kind, x in _deconstruct(m):
        if kind == "insert":
            p = x
            lower = lower[:p] + "UD" + lower[p:]
            upper = upper[:p] + "UD" + upper[p:]
            grown = []
            for t in tiles:
                nt = []
                for c, r in t:
                    if c < p:
                        nt.append((c, r))
                    elif c > p:
                        nt.append((c + 2, r))
                    else:
                        nt += [(p, r), (p + 1, r + 1), (p + 2, r)]
                grown.append(tuple(sorted(nt)))
            tiles = grown
        else:
            i = x
            h = DyckPath(upper).heights()[i]
            tiles.append(((i, h + 1),))
            upper = upper[:i - 1] + "UD" + upper[i + 1:]
    return DyckTiling(DyckPath(lower), DyckPath(upper), tuple(sorted(tiles)))


def tiling_to_matching(t: DyckTiling) -> StrandMatching:
    t.validate()
    lower, upper = t.lower.steps, t.upper.steps
    tiles = [list(x) for x in t.tiles]
    moves = []
    while upper:
        i = next(k for k in range(1, len(upper)) if upper[k - 1] == "U" and upper[k] == "D")
        h = DyckPath(upper).heights()[i]
        below = (i, h - 1)
        single = [k for k, x in enumerate(tiles) if x == [below]]
        if single:
            del tiles[single[0]]
            upper = upper[:i - 1] + "DU" + upper[i + 1:]
            moves.append(("cross", i))
            continue
        p = i - 1
        if lower[p:p + 2] != "UD":
            raise ValueError("tiling is not reachable by the inductive moves")
        lower = lower[:p] + lower[p + 2:]
        upper = upper[:p] + upper[p + 2:]
        shrunk = []
        for x in tiles:
            cells = {s for s in x}
            nt = []
            for c, r in x:
                if c < p or c == p:
                    nt.append((c, r))
                elif c == p + 1:
                    if (p, r - 1) not in cells or (p + 2, r - 1) not in cells:
                        raise ValueError("tent is not closed")
                elif c > p + 2:
                    nt.append((c - 2, r))
            shrunk.append(sorted(nt))
        tiles = shrunk
        moves.append(("insert", p))
    moves.reverse()
    return _build_matching(moves)


# ------------------------------------------------------ strand diagram ----

@dataclass(frozen=True)
class Crossing:
    id: int
    a: int                   # u coordinate
    b: int                   # v coordinate
    ascending: tuple         # the strand (i1, j1)
    descending: tuple        # the strand (i2, j2)
    vertical: bool           # primal edge joins the north and south cells
    cells: dict              # "N", "S", "W", "E" -> cell id

    @property
    def strands(self) -> tuple:
        return (self.ascending, self.descending)


@dataclass
class RectStrandDiagram:
    matching: StrandMatching
    crossings: list
    cell_of: dict            # grid point (p, q) -> cell id
    primal: dict             # cell id -> True when the cell is primal
    node_cell: dict          # node i -> cell id
    dual_cell: dict          # dual node i -> cell id
    vertex_of: dict = field(default_factory=dict)   # primal cell -> network vertex
    glued_primal: list = field(default_factory=list)
    glued_dual: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.matching.n

    def at(self, a: int, b: int):
        return self._by_pos.get((a, b))

    def __post_init__(self):
        self._by_pos = {(c.a, c.b): c for c in self.crossings}

    def degeneracy_report(self) -> str:
        lines = []
        for g in self.glued_primal:
            lines.append("glued nodes " + " ".join(map(str, g)))
        for g in self.glued_dual:
            lines.append("glued dual nodes " + " ".join(map(str, g)))
        return "\n".join(lines)


def _cells(m: StrandMatching):
    n2 = 2 * m.n
    end_of = dict(m.pairs)
    start_of = {b: a for a, b in m.pairs}
    pts = [(p, q) for q in range(n2 + 1) for p in range(q + 1)]
    parent = {x: x for x in pts}
    parity = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    adj = {x: [] for x in pts}
    for p, q in pts:
        if p + 1 <= q:
            cut = end_of.get(p + 1, -1) >= q + 1
            adj[(p, q)].append(((p + 1, q), cut))
            adj[(p + 1, q)].append(((p, q), cut))
            if not cut:
                parent[find((p, q))] = find((p + 1, q))
        if q + 1 <= n2:
            cut = start_of.get(q + 1, n2 + 1) <= p
            adj[(p, q)].append(((p, q + 1), cut))
            adj[(p, q + 1)].append(((p, q), cut))
            if not cut:
                parent[find((p, q))] = find((p, q + 1))
    parity[(1, 1)] = 0
    todo = [(1, 1)]
    while todo:
        x = todo.pop()
        for y, cut in adj[x]:
            want = parity[x] ^ cut
            if y not in parity:
                parity[y] = want
                todo.append(y)
            elif parity[y] != want:
                raise AssertionError("strand arrangement is not 2-colorable")
    roots = sorted({find(x) for x in pts}, key=lambda r: min(x for x in pts if find(x) == r))
    cid = {r: k for k, r in enumerate(roots)}
    cell_of = {x: cid[find(x)] for x in pts}
    primal = {cell_of[x]: parity[x] == 0 for x in pts}
    return cell_of, primal


def _cell_walk(squares: set, start=None) -> list:
    """Corner points of a polyomino boundary, counterclockwise in (u, v)."""
    nxt = {}
    for p, q in squares:
        for (dp, dq), a, b in (((0, -1), (p, q), (p + 1, q)),
                               ((1, 0), (p + 1, q), (p + 1, q + 1)),
                               ((0, 1), (p + 1, q + 1), (p, q + 1)),
                               ((-1, 0), (p, q + 1), (p, q))):
            if (p + dp, q + dq) not in squares:
                if a in nxt:
                    raise AssertionError("cell boundary pinches")
                nxt[a] = b
    if start is None:
        start = min(nxt)
    out = [start]
    x = nxt[start]
    while x != start:
        out.append(x)
        x = nxt[x]
    return out


def rect_strand_diagram(m: StrandMatching) -> RectStrandDiagram:
    cell_of, primal = _cells(m)
    n = m.n
    node_cell = {i: cell_of[(2 * i - 1, 2 * i - 1)] for i in range(1, n + 1)}
    dual_cell = {i: cell_of[(2 * i, 2 * i)] for i in range(1, n + 1)}
    crossings = []
    for p1, p2 in combinations(m.pairs, 2):
        (i1, j1), (i2, j2) = sorted((p1, p2))
        if i1 < i2 < j1 < j2:
            crossings.append(((i2, j1), (i1, j1), (i2, j2)))
    crossings.sort()
    cx = []
    for k, ((a, b), asc, desc) in enumerate(crossings, start=1):
        cells = {"N": cell_of[(a, b - 1)], "S": cell_of[(a - 1, b)],
                 "W": cell_of[(a - 1, b - 1)], "E": cell_of[(a, b)]}
        cx.append(Crossing(k, a, b, asc, desc, primal[cells["N"]], cells))

    def groups(cells_by_label):
        inv = {}
        for lab, c in cells_by_label.items():
            inv.setdefault(c, []).append(lab)
        return [tuple(v) for v in inv.values() if len(v) > 1]

    return RectStrandDiagram(m, cx, cell_of, primal, node_cell, dual_cell,
                             glued_primal=groups(node_cell), glued_dual=groups(dual_cell))


def standard_network(m: StrandMatching, conductances=None):
    """Standard network of m with its strand diagram.

    conductances maps crossing id (= edge id) to a positive value; the
    default is 1 everywhere.  Raises DegenerateMatchingError when boundary
    nodes are glued; glued dual nodes are recorded on the diagram.
    """
    d = rect_strand_diagram(m)
    if d.glued_primal:
        raise DegenerateMatchingError(d.degeneracy_report(), tuple(d.glued_primal))
    n = m.n
    squares = {}
    for x, c in d.cell_of.items():
        squares.setdefault(c, set()).add(x)
    vertex_of = {c: i for i, c in d.node_cell.items()}
    inner = sorted((c for c, pr in d.primal.items() if pr and c not in vertex_of),
                   key=lambda c: min(squares[c]))
    for k, c in enumerate(inner, start=1):
        vertex_of[c] = n + k
    d.vertex_of = vertex_of
    cond = conductances or {}
    edges = []
    touching = {}
    for x in d.crossings:
        u, v = (x.cells["N"], x.cells["S"]) if x.vertical else (x.cells["W"], x.cells["E"])
        edges.append((x.id, vertex_of[u], vertex_of[v], cond.get(x.id, 1)))
        touching.setdefault(u, {})[(x.a, x.b)] = x.id
        touching.setdefault(v, {})[(x.a, x.b)] = x.id
    rotation = {}
    for c, vid in vertex_of.items():
        if vid <= n:
            k = 2 * vid - 1
            walk = _cell_walk(squares[c], start=(k + 1, k + 1))
        else:
            walk = _cell_walk(squares[c])
        hits = touching.get(c, {})
        rotation[vid] = [hits[pt] for pt in walk if pt in hits]
    return Network(n, len(inner), edges, rotation), d


# --------------------------------------------------------- text format ----

def format_tiling(t: DyckTiling) -> str:
    out = [f"lower {t.lower.steps}", f"upper {t.upper.steps}"]
    for tile in t.tiles:
        out.append("tile " + " ".join(f"({c},{r})" for c, r in tile))
    return "\n".join(out) + "\n"


def parse_tiling(text: str) -> DyckTiling:
    lower = upper = None
    tiles = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        key, _, rest = ln.partition(" ")
        try:
            if key == "lower":
                lower = DyckPath(rest.strip())
            elif key == "upper":
                upper = DyckPath(rest.strip())
            elif key == "tile":
                sq = []
                for tok in rest.replace(" ", "").split(")"):
                    if tok:
                        c, r = tok.lstrip("(").split(",")
                        sq.append((int(c), int(r)))
                tiles.append(tuple(sorted(sq)))
            else:
                raise ValueError(f"unknown record {key!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    if lower is None or upper is None:
        raise ValueError("tiling needs both a lower and an upper path")
    t = DyckTiling(lower, upper, tuple(sorted(tiles)))
    t.validate()
    return t


def all_matchings(n: int):
    """All perfect matchings of 1..2n (crossing or not)."""
    def rec(rest):
        if not rest:
            yield []
            return
        a = rest[0]
        for k in range(1, len(rest)):
            for tail in rec(rest[1:k] + rest[k + 1:]):
                yield [(a, rest[k])] + tail
    for ps in rec(list(range(1, 2 * n + 1))):
        yield StrandMatching.from_pairs(ps)
