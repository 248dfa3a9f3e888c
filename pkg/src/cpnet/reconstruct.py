"""Tripod variables of standard networks and exact conductance recovery.

Every crossing chi of the strand diagram gets a comb: the spine runs
up-left from chi and a tooth runs up-right from every spine crossing.
Resolving the comb vertically and everything else horizontally gives one
grove, of partition tau_chi.  Its normalized weight Z_tau / Z_unc is read
off the response matrix by extending the network (internalize some nodes,
glue cyclic runs of the rest) until tau maps to a tripod or dual-tripod
partition that no other partition carrying a grove maps to.  One Pfaffian
then gives the value.  The extension depends only on the matching and is
cached.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .dyck import RectStrandDiagram, rect_strand_diagram, standard_network
from .exactalg import RatMatrix, SingularityError, det, schur_complement
from .groves import NodePartition, partition_pf, spec_for_partition
from .kernels import grove_partitions
from .medial import StrandMatching
from .network import (Network, NetworkError, PreconditionError, ResponseMatrix,
                      adjoin_edge, glue_nodes, insert_node, internalize_node,
                      response_matrix)


class NotInCellError(NetworkError):
    """The matrix is not the response matrix of a network with this matching."""


# ----------------------------------------------------------------- combs ----

@dataclass(frozen=True)
class Comb:
    base: int                # crossing id
    spine: tuple             # crossing ids up-left from the base, base first
    teeth: tuple             # per spine crossing, the crossing ids up-right of it

    @property
    def members(self) -> frozenset:
        return frozenset(self.spine) | frozenset(x for t in self.teeth for x in t)


def _crossing(d: RectStrandDiagram, cid: int):
    return d.crossings[cid - 1]


def up_left(d: RectStrandDiagram, cid: int):
    """Next crossing on the strand leaving cid up and to the left, or None."""
    x = _crossing(d, cid)
    vs = [c.b for c in d.crossings if c.a == x.a and c.b < x.b]
    return d.at(x.a, max(vs)).id if vs else None


def up_right(d: RectStrandDiagram, cid: int):
    x = _crossing(d, cid)
    us = [c.a for c in d.crossings if c.b == x.b and c.a > x.a]
    return d.at(min(us), x.b).id if us else None


def comb(d: RectStrandDiagram, cid: int) -> Comb:
    spine = []
    k = cid
    while k is not None:
        spine.append(k)
        k = up_left(d, k)
    teeth = []
    for s in spine:
        row = []
        k = up_right(d, s)
        while k is not None:
            row.append(k)
            k = up_right(d, k)
        teeth.append(tuple(row))
    return Comb(cid, tuple(spine), tuple(teeth))


def resolution_grove(d: RectStrandDiagram, vertical) -> frozenset:
    """Edge ids (= crossing ids) of the grove: vertical at the given crossings."""
    vertical = set(vertical)
    return frozenset(c.id for c in d.crossings if (c.id in vertical) == c.vertical)


def _partition_from(d: RectStrandDiagram, vertical):
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    vertical = set(vertical)
    for c in d.crossings:
        if c.id in vertical:
            pair = (c.cells["N"], c.cells["S"])
        else:
            pair = (c.cells["W"], c.cells["E"])
        parent[find(pair[0])] = find(pair[1])
    n = d.n
    primal = NodePartition.from_labels([find(d.node_cell[i]) for i in range(1, n + 1)])
    dual = NodePartition.from_labels([find(d.dual_cell[i]) for i in range(1, n + 1)])
    return primal, dual


def comb_partition(d: RectStrandDiagram, cid: int):
    """(tau_chi, dual tau_chi) for the comb based at crossing cid."""
    return _partition_from(d, comb(d, cid).members)


def exterior_partition(d: RectStrandDiagram):
    return _partition_from(d, ())


# ------------------------------------------------------------ extensions ----

def extend_response(l, steps) -> RatMatrix:
    """Apply extension steps to a response matrix (1-based node indices).

    Steps: ("adjoin", i, j, c), ("glue", i, j), ("insert", pos),
    ("internalize", i).  A glue is the infinite-conductance limit of adjoin.
    """
    m = l.m if isinstance(l, ResponseMatrix) else l
    for st in steps:
        kind = st[0]
        if kind == "adjoin":
            m = adjoin_edge(m, st[1], st[2], st[3])
        elif kind == "glue":
            m = glue_nodes(m, st[1], st[2])
        elif kind == "insert":
            m = insert_node(m, st[1])
        elif kind == "internalize":
            m = internalize_node(m, st[1])
        else:
            raise PreconditionError(f"unknown extension step {kind!r}")
    return m


@dataclass(frozen=True)
class Plan:
    """How to evaluate Z_tau / Z_unc for one partition tau.

    Nodes in `internal` are internalized, then each group of `groups`
    (cyclic runs of the remaining nodes, in matrix order) is glued into
    one node.  On the result `glued` is a tripod or dual-tripod partition
    whose only preimage with a grove is tau, and

        Z_tau / Z_unc = Pf(extended L) * det(-L[internal, internal]).
    """
    partition: NodePartition
    internal: tuple
    groups: tuple
    glued: NodePartition

    @property
    def steps(self) -> tuple:
        """The same extension as a sequence of extend_response steps."""
        out = []
        alive = list(range(1, self.partition.n + 1))
        for k in self.internal:
            out.append(("internalize", alive.index(k) + 1))
            alive.remove(k)
        cur = [[x] for x in alive]
        for grp in self.groups:
            for x in grp[1:]:
                a = next(t for t, c in enumerate(cur, start=1) if grp[0] in c)
                b = next(t for t, c in enumerate(cur, start=1) if x in c)
                lo, hi = min(a, b), max(a, b)
                out.append(("glue", lo, hi))
                cur[lo - 1] += cur[hi - 1]
                del cur[hi - 1]
        return tuple(out)

    def extend(self, l) -> RatMatrix:
        m = l.m if isinstance(l, ResponseMatrix) else l
        n = m.rows
        keep = [i for i in range(n) if i + 1 not in self.internal]
        if self.internal:
            m = -schur_complement(-m, keep)
        pos = {node: t for t, node in enumerate(i + 1 for i in keep)}
        k = len(self.groups)
        member = [[0] * k for _ in keep]
        for g, grp in enumerate(self.groups):
            for x in grp:
                member[pos[x]][g] = 1
        s = RatMatrix.from_rows(member)
        return s.transpose() @ m @ s

    def evaluate(self, l) -> Fraction:
        m = l.m if isinstance(l, ResponseMatrix) else l
        scale = Fraction(1)
        if self.internal:
            idx = [k - 1 for k in self.internal]
            scale = det(-m.submatrix(idx, idx))
        return partition_pf(self.extend(m), self.glued) * scale


def _states(n: int):
    """All (internal, groups) pairs, cheapest first."""
    out = []
    for r in range(0, n - 1):
        for internal in combinations(range(1, n + 1), r):
            rest = [i for i in range(1, n + 1) if i not in internal]
            q = len(rest)
            for cutmask in range(1, 1 << q):
                cuts = [t for t in range(q) if cutmask >> t & 1]   # cut before rest[t]
                groups = []
                for a, b in zip(cuts, cuts[1:] + [cuts[0] + q]):
                    groups.append(tuple(rest[t % q] for t in range(a, b)))
                # matrix order: rotate so the group holding rest[0] comes first
                first = next(t for t, g in enumerate(groups) if rest[0] in g)
                groups = groups[first:] + groups[:first]
                cost = r + sum(len(g) - 1 for g in groups)
                out.append((cost, internal, tuple(groups)))
    out.sort(key=lambda x: x[0])
    return [(i, g) for _, i, g in out]


def _image(blocks, internal, groups):
    """Partition of the glued nodes that a grove of type `blocks` becomes,
    or None when it does not survive the extension."""
    where = {x: t for t, g in enumerate(groups) for x in g}
    parent = list(range(len(groups)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for b in blocks:
        gs = [where[x] for x in b if x not in internal]
        if not gs or len(set(gs)) != len(gs):
            return None
        for g in gs[1:]:
            ra, rb = find(gs[0]), find(g)
            if ra == rb:
                return None
            parent[rb] = ra
    return NodePartition.from_labels([find(t) for t in range(len(groups))])


def grove_support(m: StrandMatching) -> set:
    """Partitions carrying at least one grove in the standard network of m."""
    g, _ = standard_network(m)
    keys = grove_partitions(g.nv, g.n, [e.u - 1 for e in g.edges], [e.v - 1 for e in g.edges])
    return {NodePartition.from_labels(k) for k in keys}


def plan_partition(tau: NodePartition, support, states=None) -> Plan:
    states = states if states is not None else _states(tau.n)
    for internal, groups in states:
        sigma = _image(tau.blocks, internal, groups)
        if sigma is None or spec_for_partition(sigma) is None:
            continue
        if any(t != tau and _image(t.blocks, internal, groups) == sigma for t in support):
            continue
        return Plan(tau, internal, groups, sigma)
    raise PreconditionError(f"no tripod extension found for partition {tau}")


# -------------------------------------------------------- tripod values ----

@dataclass
class TripodVariableSet:
    values: dict             # crossing id -> Z_tau_chi / Z_unc
    exterior: Fraction       # Z_tau_- / Z_unc
    plans: dict = field(default_factory=dict)   # crossing id or "-" -> Plan

    def __len__(self) -> int:
        return len(self.values) + 1

    def get(self, cid):
        return self.exterior if cid is None else self.values[cid]


_PLAN_CACHE: dict = {}


def tripod_plans(m: StrandMatching) -> dict:
    if m in _PLAN_CACHE:
        return _PLAN_CACHE[m]
    d = rect_strand_diagram(m)
    support = grove_support(m)
    states = _states(m.n)
    plans = {"-": plan_partition(exterior_partition(d)[0], support, states)}
    for c in d.crossings:
        plans[c.id] = plan_partition(comb_partition(d, c.id)[0], support, states)
    _PLAN_CACHE[m] = plans
    return plans


def tripod_variables(l, m: StrandMatching) -> TripodVariableSet:
    l = l if isinstance(l, ResponseMatrix) else ResponseMatrix(l)
    if l.n != m.n:
        raise PreconditionError("matrix size and matching size differ")
    plans = tripod_plans(m)
    try:
        vals = {k: p.evaluate(l) for k, p in plans.items()}
    except SingularityError as exc:
        raise NotInCellError(str(exc)) from exc
    ext = vals.pop("-")
    return TripodVariableSet(vals, ext, plans)


def biratio_neighbors(d: RectStrandDiagram, cid: int):
    """(a, b, f) of a crossing; None marks a missing crossing."""
    a = up_left(d, cid)
    b = up_right(d, cid)
    f = up_left(d, b) if b is not None else None
    return a, b, f


def conductances_from_tripods(tv: TripodVariableSet, d: RectStrandDiagram) -> dict:
    out = {}
    for c in d.crossings:
        a, b, f = biratio_neighbors(d, c.id)
        num = tv.get(c.id) * tv.get(f)
        den = tv.get(a) * tv.get(b)
        if den == 0 or num == 0:
            raise NotInCellError(f"degenerate biratio at crossing {c.id}")
        vert = num / den
        out[c.id] = vert if c.vertical else 1 / vert
    return out


def reconstruct_standard(l, m: StrandMatching) -> Network:
    l = l if isinstance(l, ResponseMatrix) else ResponseMatrix(l)
    tv = tripod_variables(l, m)
    bad = [k for k, v in tv.values.items() if v <= 0]
    if tv.exterior <= 0:
        bad.append("-")
    if bad:
        k = bad[0]
        where = "exterior" if k == "-" else f"crossing {k}"
        raise NotInCellError(f"Pfaffian for {tv.plans[k].partition} ({where}) is not positive")
    _, d = standard_network(m)
    cond = conductances_from_tripods(tv, d)
    g, _ = standard_network(m, cond)
    if response_matrix(g).m != l.m:
        raise NotInCellError("reconstructed network does not reproduce the matrix")
    return g


_PATTERNS: dict = {}


def connection_pattern(l) -> frozenset:
    """Noninterlaced minors of l that vanish, as (rows, cols) pairs."""
    from .minors import all_noninterlaced
    m = l.m if isinstance(l, ResponseMatrix) else l
    n = m.shape[0]
    return frozenset((s.rows, s.cols) for s in all_noninterlaced(n) if s.value(m) == 0)


def _patterns(n: int) -> dict:
    if n not in _PATTERNS:
        from .dyck import DegenerateMatchingError, all_matchings
        table = {}
        for m in all_matchings(n):
            try:
                g, _ = standard_network(m)
            except DegenerateMatchingError:
                continue
            table.setdefault(connection_pattern(g.response_matrix()), []).append(m)
        _PATTERNS[n] = table
    return _PATTERNS[n]


def find_matching(l, max_n: int = 6):
    """Strand matching of the cell containing l, with its standard network.

    Which noninterlaced minors vanish narrows the candidates; each is then
    confirmed by an exact round trip.  Returns None when no candidate
    reproduces l.
    """
    from .dyck import DegenerateMatchingError
    l = l if isinstance(l, ResponseMatrix) else ResponseMatrix(l)
    if l.n > max_n:
        raise PreconditionError(f"matching search is limited to n <= {max_n}")
    for m in _patterns(l.n).get(connection_pattern(l), ()):
        try:
            return m, reconstruct_standard(l, m)
        except (NotInCellError, DegenerateMatchingError):
            continue
    return None
