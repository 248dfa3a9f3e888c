"""Grove partition sums and Pfaffian formulas for tripod partitions."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import RatMatrix, SkewMatrix, effective_resistance, pfaffian, solve
from .kernels import enumerate_groves
from .network import Network, PreconditionError, ResponseMatrix

GROVE_EDGE_CAP = 14


class CapacityError(ValueError):
    pass


# ------------------------------------------------------------ partitions ----

@dataclass(frozen=True)
class NodePartition:
    n: int
    blocks: tuple            # tuple of sorted tuples, ordered by minimum

    def __post_init__(self):
        flat = sorted(x for b in self.blocks for x in b)
        if flat != list(range(1, self.n + 1)):
            raise ValueError("blocks must partition 1..n")

    @classmethod
    def of(cls, n: int, blocks) -> "NodePartition":
        bs = [tuple(sorted(b)) for b in blocks]
        seen = {x for b in bs for x in b}
        bs += [(i,) for i in range(1, n + 1) if i not in seen]
        return cls(n, tuple(sorted(bs)))

    @classmethod
    def from_labels(cls, labels) -> "NodePartition":
        groups = {}
        for i, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(i)
        return cls.of(len(labels), groups.values())

    def labels(self) -> tuple:
        lab = [0] * self.n
        for k, b in enumerate(self.blocks):
            for x in b:
                lab[x - 1] = k
        return tuple(lab)

    def is_planar(self) -> bool:
        """Non-crossing test: scan nodes, keeping a stack of open blocks."""
        where = {x: k for k, b in enumerate(self.blocks) for x in b}
        last = {k: b[-1] for k, b in enumerate(self.blocks)}
        stack = []
        for i in range(1, self.n + 1):
            k = where[i]
            if stack and stack[-1] == k:
                pass
            elif k in stack:
                return False
            else:
                stack.append(k)
            if last[k] == i:
                stack.pop()
        return True

    def __str__(self) -> str:
        return ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)


def dual_partition(p: NodePartition) -> NodePartition:
    """Partition of the dual nodes complementary to a planar p.

    Dual node i sits between nodes i and i+1.  Dual nodes i < j share a
    block when no block of p has members on both sides of the chord
    joining them.
    """
    if not p.is_planar():
        raise PreconditionError("only planar partitions have a dual")
    n = p.n
    lab = list(range(n))

    def find(x):
        while lab[x] != x:
            x = lab[x]
        return x
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            inside = set(range(i + 1, j + 1))
            if all(set(b) <= inside or not set(b) & inside for b in p.blocks):
                lab[find(j - 1)] = find(i - 1)
    return NodePartition.from_labels([find(k) for k in range(n)])


def format_partition(p: NodePartition) -> str:
    return f"partition {p.n}: {p}"


def parse_partition(text: str) -> NodePartition:
    m = re.fullmatch(r"\s*partition\s+(\d+)\s*:\s*(.*?)\s*", text)
    if not m:
        raise ValueError("expected 'partition <n>: {..},{..}'")
    blocks = [[int(x) for x in b.split(",") if x.strip()]
              for b in re.findall(r"\{([^}]*)\}", m.group(2))]
    return NodePartition(int(m.group(1)), tuple(sorted(tuple(sorted(b)) for b in blocks)))


# ---------------------------------------------------------------- groves ----

def _grove_table(g: Network):
    if len(g.edges) > GROVE_EDGE_CAP:
        raise CapacityError(f"{len(g.edges)} edges exceeds the enumeration cap {GROVE_EDGE_CAP}")
    eu = [e.u - 1 for e in g.edges]
    ev = [e.v - 1 for e in g.edges]
    return enumerate_groves(g.nv, g.n, eu, ev)


def _weight(g: Network, mask: int) -> Fraction:
    w = Fraction(1)
    for k, e in enumerate(g.edges):
        if mask >> k & 1:
            w *= e.c
    return w


def grove_sums(g: Network) -> dict:
    """NodePartition -> weighted grove count, for every partition that occurs."""
    out = {}
    for key, masks in _grove_table(g).items():
        out[NodePartition.from_labels(key)] = sum((_weight(g, m) for m in masks), Fraction(0))
    return out


def grove_sum(g: Network, tau: NodePartition) -> Fraction:
    if tau.n != g.n:
        raise PreconditionError("partition and network have different node counts")
    masks = _grove_table(g).get(tau.labels(), [])
    return sum((_weight(g, m) for m in masks), Fraction(0))


def uncrossing_sum(g: Network) -> Fraction:
    return grove_sum(g, NodePartition.of(g.n, []))


def tree_sum(g: Network) -> Fraction:
    return grove_sum(g, NodePartition.of(g.n, [range(1, g.n + 1)]))


# --------------------------------------------------------- tripod specs ----

_ORDER = {"R": 0, "RG": 1, "G": 2, "GB": 3, "B": 4, "BR": 5}
_NEXT = {"R": "G", "G": "B", "B": "R"}
_OPPOSITE = {"R": "GB", "G": "BR", "B": "RG"}


@dataclass(frozen=True)
class TripodSpec:
    """Coloring of the nodes by circular arcs.

    colors[i-1] is "R", "G" or "B" for a node on an arc, or one of
    "RG", "GB", "BR" for a singleton sitting between two arcs.
    """
    kind: str                # "tripod" or "dual-tripod"
    colors: tuple

    def __post_init__(self):
        if self.kind not in ("tripod", "dual-tripod"):
            raise PreconditionError(f"unknown kind {self.kind!r}")
        if any(c not in _ORDER for c in self.colors):
            raise PreconditionError("colors must be R, G, B, RG, GB or BR")
        pos = [_ORDER[c] for c in self.colors]
        k = len(pos)
        if sum(pos[(i + 1) % k] < pos[i] for i in range(k)) > 1:
            raise PreconditionError("arcs are not contiguous in R, G, B order")
        self._parts()      # raises when no parallel partition exists

    @property
    def n(self) -> int:
        return len(self.colors)

    @classmethod
    def from_string(cls, kind: str, s: str) -> "TripodSpec":
        """Colors separated by spaces or commas, e.g. "BR R RG G GB B"."""
        return cls(kind, tuple(t for t in re.split(r"[,\s]+", s.strip().upper()) if t))

    def ordered(self) -> list:
        """Arc nodes in cyclic order starting from the first red node."""
        k = self.n
        pos = [_ORDER[c] for c in self.colors]
        start = next((i + 1 for i in range(k) if pos[(i + 1) % k] < pos[i]), 0) % k
        seq = [(start + t) % k + 1 for t in range(k)]
        return [i for i in seq if len(self.colors[i - 1]) == 1]

    def arcs(self) -> dict:
        out = {"R": [], "G": [], "B": []}
        for i in self.ordered():
            out[self.colors[i - 1]].append(i)
        return out

    def singletons(self, label: str) -> list:
        return [i for i, c in enumerate(self.colors, start=1) if c == label]

    def _parts(self):
        a = self.arcs()
        r, g, b = len(a["R"]), len(a["G"]), len(a["B"])
        t = 1 if self.kind == "tripod" else 0
        s = r + g + b - 3 * t
        if s % 2 or min(r, g, b) < t:
            raise PreconditionError("colour counts admit no parallel partition")
        x, y, z = (r + g - b - t) // 2, (g + b - r - t) // 2, (b + r - g - t) // 2
        if min(x, y, z) < 0:
            raise PreconditionError("colour counts admit no parallel partition")
        parts = []
        # x red-green pairs nest around the red/green boundary, etc.
        for k in range(x):
            parts.append((a["R"][r - 1 - k], a["G"][k]))
        for k in range(y):
            parts.append((a["G"][g - 1 - k], a["B"][k]))
        for k in range(z):
            parts.append((a["B"][b - 1 - k], a["R"][k]))
        if t:
            parts.append((a["R"][z], a["G"][x], a["B"][y]))
        return parts

    def partition(self) -> NodePartition:
        return NodePartition.of(self.n, self._parts())


def _restrict(l, n):
    if isinstance(l, ResponseMatrix):
        l = l.m
    if l.rows != n:
        raise PreconditionError("response matrix and coloring sizes differ")
    return lambda i, j: l[i - 1, j - 1]


def dual_tripod_pf(l, spec: TripodSpec) -> Fraction:
    if spec.kind != "dual-tripod":
        raise PreconditionError("expected a dual-tripod coloring")
    L = _restrict(l, spec.n)
    idx = spec.ordered()
    col = {i: spec.colors[i - 1] for i in idx}
    k = len(idx)
    ent = {(p, q): (L(idx[p], idx[q]) if col[idx[p]] != col[idx[q]] else 0)
           for p in range(k) for q in range(p + 1, k)}
    return pfaffian(SkewMatrix.from_upper(k, ent))


def tripod_pf(l, spec: TripodSpec) -> Fraction:
    if spec.kind != "tripod":
        raise PreconditionError("expected a tripod coloring")
    L = _restrict(l, spec.n)
    idx = spec.ordered()
    col = {i: spec.colors[i - 1] for i in idx}
    k = len(idx)
    ent = {}
    for p in range(k):
        i = idx[p]
        for q in range(p + 1, k):
            j = idx[q]
            if col[i] == col[j]:
                ent[(p, q)] = 0
            elif col[i] == "R" and col[j] == "B":
                ent[(p, q)] = -L(i, j)
            else:
                ent[(p, q)] = L(i, j)
        last = sum((L(i, j) for j in idx if col[j] == _NEXT[col[i]]), Fraction(0))
        for s in spec.singletons(_OPPOSITE[col[i]]):
            last += L(i, s)
        ent[(p, k)] = last
    return pfaffian(SkewMatrix.from_upper(k + 1, ent))


def pairwise_resistance(l, i: int, j: int) -> Fraction:
    m = l.m if isinstance(l, ResponseMatrix) else l
    return effective_resistance(m, i - 1, j - 1)


def dual_tripod_via_resistance(l, spec: TripodSpec) -> Fraction:
    """Z_tau / Z_tree from pairwise resistances.

    Entries across colors are t - R_ij / 2; the answer is the coefficient
    of t in the Pfaffian, recovered by exact interpolation in t.
    """
    if spec.kind != "dual-tripod" or any(len(c) == 2 for c in spec.colors):
        raise PreconditionError("needs a dual-tripod coloring without singletons")
    idx = spec.ordered()
    col = {i: spec.colors[i - 1] for i in idx}
    k = len(idx)
    half = {(p, q): pairwise_resistance(l, idx[p], idx[q]) / 2
            for p in range(k) for q in range(p + 1, k) if col[idx[p]] != col[idx[q]]}

    def pf_at(t):
        ent = {(p, q): (t - half[(p, q)] if (p, q) in half else 0)
               for p in range(k) for q in range(p + 1, k)}
        return pfaffian(SkewMatrix.from_upper(k, ent))

    deg = k // 2
    xs = list(range(deg + 1))
    ys = [pf_at(Fraction(x)) for x in xs]
    coeffs = _interpolate(xs, ys)
    return coeffs[1] if len(coeffs) > 1 else Fraction(0)


def _interpolate(xs, ys) -> list:
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(xs)
    v = RatMatrix.from_rows([[Fraction(x) ** p for p in range(n)] for x in xs])
    return list(solve(v, [Fraction(y) for y in ys]))


_SPEC_CACHE: dict = {}
_BETWEEN = {("R", "G"): "RG", ("G", "B"): "GB", ("B", "R"): "BR",
            ("R", "B"): "RG", ("G", "R"): "GB", ("B", "G"): "BR"}


def spec_for_partition(tau: NodePartition):
    """A coloring whose parallel partition is tau, or None.

    Non-singleton nodes are cut into three cyclic arcs colored R, G, B;
    each singleton takes the label of the arc boundary it sits on.  The
    first coloring (in a fixed scan order) reproducing tau is returned.
    """
    key = (tau.n, tau.blocks)
    if key in _SPEC_CACHE:
        return _SPEC_CACHE[key]
    found = None
    sizes = [len(b) for b in tau.blocks]
    if max(sizes) <= 3 and sizes.count(3) <= 1:
        kind = "tripod" if 3 in sizes else "dual-tripod"
        single = {b[0] for b in tau.blocks if len(b) == 1}
        ns = [i for i in range(1, tau.n + 1) if i not in single]
        q = len(ns)
        if q == 0:
            found = TripodSpec(kind, ("RG",) * tau.n) if kind == "dual-tripod" else None
        cuts = [(a, b, c) for a in range(q) for b in range(a, q + 1) for c in range(b, q + 1)]
        for a, b, c in cuts if q else []:
            color = {}
            for t in range(q):
                k = (t - a) % q
                color[ns[(a + k) % q]] = "R" if k < b - a else ("G" if k < c - a else "B")
            labs = []
            for i in range(1, tau.n + 1):
                if i in color:
                    labs.append(color[i])
                    continue
                prev = next(color[(i - t - 1) % tau.n + 1] for t in range(tau.n)
                            if (i - t - 1) % tau.n + 1 in color)
                nxt = next(color[(i + t) % tau.n + 1] for t in range(tau.n)
                           if (i + t) % tau.n + 1 in color)
                if prev == nxt:
                    labs = None
                    break
                labs.append(_BETWEEN[(prev, nxt)])
            if labs is None:
                continue
            try:
                spec = TripodSpec(kind, tuple(labs))
            except PreconditionError:
                continue
            if spec.partition() == tau:
                found = spec
                break
    _SPEC_CACHE[key] = found
    return found


def partition_pf(l, tau: NodePartition) -> Fraction:
    """Z_tau / Z_unc for a tripod or dual-tripod partition tau."""
    spec = spec_for_partition(tau)
    if spec is None:
        raise PreconditionError(f"{tau} is neither a tripod nor a dual-tripod partition")
    return tripod_pf(l, spec) if spec.kind == "tripod" else dual_tripod_pf(l, spec)
