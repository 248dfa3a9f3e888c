"""Contiguous and central minors, Aztec diamond Laurent polynomials,
condensation identities and the well-connectedness test.

Matrix indices are 1-based and read modulo n (0 maps to n).  A minor
is always taken with its rows listed counterclockwise and its columns
clockwise, which makes the chords row[k] -> col[k] nested.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .exactalg import Rat, RatMatrix, det, fmt_rat
from .network import PreconditionError, ResponseMatrix


class EvaluationError(ZeroDivisionError):
    """A central minor in a denominator vanished."""

    def __init__(self, x, y):
        super().__init__(f"central minor CM[{x},{y}] is zero")
        self.where = (x, y)


def _wrap(i: int, n: int) -> int:
    return (i - 1) % n + 1


def _as_matrix(m) -> RatMatrix:
    return m.m if isinstance(m, ResponseMatrix) else m


@dataclass(frozen=True)
class MinorSpec:
    n: int
    rows: tuple
    cols: tuple

    def __post_init__(self):
        if len(self.rows) != len(self.cols):
            raise PreconditionError("a minor needs as many rows as columns")

    @property
    def size(self) -> int:
        return len(self.rows)

    def disjoint(self) -> bool:
        return not set(self.rows) & set(self.cols)

    def value(self, m) -> Rat:
        return minor(m, self.rows, self.cols)

    def __str__(self):
        return ",".join(f"{r}/{c}" for r, c in zip(self.rows, self.cols)) or "()"


def minor(m, rows, cols) -> Rat:
    """det of the submatrix with the given 1-based rows and cols, in order."""
    m = _as_matrix(m)
    if not rows:
        return Rat(1)
    return det(m.submatrix([r - 1 for r in rows], [c - 1 for c in cols]))


def contiguous_spec(n: int, a: int, b: int, y: int) -> MinorSpec:
    if not 0 <= y <= n:
        raise PreconditionError(f"minor size {y} outside 0..{n}")
    rows = tuple(_wrap(a + k, n) for k in range(y))
    cols = tuple(_wrap(b + y - 1 - k, n) for k in range(y))
    return MinorSpec(n, rows, cols)


def contiguous_minor(m, a: int, b: int, y: int) -> Rat:
    m = _as_matrix(m)
    return contiguous_spec(m.shape[0], a, b, y).value(m)


def central_ab(n: int, x: int, y: int) -> tuple[int, int]:
    a = (x - y) // 2
    b = (x - y + n - (n - 1) % 2) // 2
    return a, b


def central_spec(n: int, x: int, y: int) -> MinorSpec:
    a, b = central_ab(n, x, y)
    return contiguous_spec(n, a, b, y)


def central_minor(m, x: int, y: int) -> Rat:
    m = _as_matrix(m)
    return central_spec(m.shape[0], x, y).value(m)


def small_central_labels(n: int, symmetric: bool) -> list[tuple[int, int]]:
    xs = range(1, n + 1) if symmetric else range(1, 2 * n + 1)
    out = []
    for x in xs:
        for y in range(1, n // 2 + 1):
            if 2 * y < n or (2 * y == n and (x + y) % 2 == 1):
                out.append((x, y))
    return out


def small_central_minors(m, symmetric: bool | None = None) -> list:
    """[(x, y, MinorSpec, value)] over the small central minors of m."""
    m = _as_matrix(m)
    n = m.shape[0]
    if symmetric is None:
        symmetric = m.is_symmetric()
    out = []
    for x, y in small_central_labels(n, symmetric):
        s = central_spec(n, x, y)
        out.append((x, y, s, s.value(m)))
    return out


def is_well_connected(l) -> tuple[bool, tuple | None]:
    """Positivity of the n(n-1)/2 small central minors; witness is (x, y)."""
    for x, y, _, v in small_central_minors(l, symmetric=True):
        if v <= 0:
            return False, (x, y)
    return True, None


# -- Laurent polynomials -------------------------------------------------------

class LaurentPoly:
    """Integer combination of monomials in variables v[x,y].

    A monomial is a sorted tuple of ((x, y), exponent) with nonzero
    exponents.
    """

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, exps: dict, coeff: int = 1) -> "LaurentPoly":
        return cls({_mono(exps): coeff})

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return LaurentPoly(t)

    def __mul__(self, other):
        t = {}
        for k1, c1 in self.terms.items():
            e1 = dict(k1)
            for k2, c2 in other.terms.items():
                e = dict(e1)
                for v, p in k2:
                    e[v] = e.get(v, 0) + p
                k = _mono(e)
                t[k] = t.get(k, 0) + c1 * c2
        return LaurentPoly(t)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def variables(self) -> set:
        return {v for k in self.terms for v, _ in k}

    def exponents_in_unit_range(self) -> bool:
        return all(abs(p) <= 1 for k in self.terms for _, p in k)

    def positive(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def evaluate(self, value) -> Rat:
        """Substitute v[x,y] := value(x, y)."""
        cache = {}
        total = Rat(0)
        for k, c in self.terms.items():
            t = Rat(c)
            for v, p in k:
                if v not in cache:
                    cache[v] = Rat(value(*v))
                if cache[v] == 0 and p < 0:
                    raise EvaluationError(*v)
                t *= cache[v] ** p
            total += t
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            num = [f"v[{x},{y}]" for (x, y), p in k if p > 0 for _ in range(p)]
            den = [f"v[{x},{y}]" for (x, y), p in k if p < 0 for _ in range(-p)]
            s = "*".join(num) or "1"
            if c != 1:
                s = f"{c}*{s}"
            if den:
                s += "/" + ("*".join(den) if len(den) == 1 else "(" + "*".join(den) + ")")
            parts.append(s)
        return " + ".join(parts)


def _mono(exps: dict) -> tuple:
    return tuple(sorted((v, p) for v, p in exps.items() if p))


# -- truncated Aztec diamonds ----------------------------------------------------

@dataclass(frozen=True)
class TadRegion:
    """Aztec diamond of order ell centred at (x0, y0), cut to the band 0..n.

    n=None leaves the diamond untruncated.  A square is named by its lower
    left corner (i, j); its centre is (i + 1/2, j + 1/2).
    """
    x0: int
    y0: int
    ell: int
    n: int | None = None

    def __post_init__(self):
        if self.ell < 0:
            raise PreconditionError("order must be nonnegative")

    def _in_band(self, y) -> bool:
        return self.n is None or 0 <= y <= self.n

    def squares(self) -> frozenset:
        out = set()
        r = self.ell
        for i in range(self.x0 - r - 1, self.x0 + r + 1):
            for j in range(self.y0 - r - 1, self.y0 + r + 1):
                if abs(2 * i + 1 - 2 * self.x0) + abs(2 * j + 1 - 2 * self.y0) <= 2 * r \
                        and self._in_band(j) and self._in_band(j + 1):
                    out.add((i, j))
        return frozenset(out)

    def variables(self) -> list:
        r = self.ell
        return [(x, y) for x in range(self.x0 - r, self.x0 + r + 1)
                for y in range(self.y0 - r, self.y0 + r + 1)
                if abs(x - self.x0) + abs(y - self.y0) <= r and self._in_band(y)]


def _domino_weight(a, b) -> dict:
    """Exponents of the weight of the domino covering squares a and b."""
    (i, j), (i2, j2) = sorted((a, b))
    if j == j2:
        # horizontal, centred at (i+1, j+1/2)
        return {(i + 1, j): -1, (i + 1, j + 1): -1}
    return {(i, j + 1): -1, (i + 1, j + 1): -1}


def _tilings(squares: frozenset):
    if not squares:
        yield ()
        return
    i, j = min(squares, key=lambda s: (s[1], s[0]))
    rest = squares - {(i, j)}
    for nb in ((i + 1, j), (i, j + 1)):
        if nb in rest:
            for t in _tilings(rest - {nb}):
                yield (((i, j), nb),) + t


def tad_tilings(r: TadRegion) -> list:
    """All domino tilings, each a tuple of (square, square) pairs."""
    return list(_tilings(r.squares()))


@lru_cache(maxsize=None)
def _count(squares: frozenset) -> int:
    if not squares:
        return 1
    i, j = min(squares, key=lambda s: (s[1], s[0]))
    rest = squares - {(i, j)}
    return sum(_count(rest - {nb}) for nb in ((i + 1, j), (i, j + 1)) if nb in rest)


def tad_count(r: TadRegion) -> int:
    """Number of domino tilings, without building the polynomial."""
    return _count(r.squares())


@lru_cache(maxsize=None)
def _weight_sum(squares: frozenset) -> LaurentPoly:
    if not squares:
        return LaurentPoly({(): 1})
    i, j = min(squares, key=lambda s: (s[1], s[0]))
    rest = squares - {(i, j)}
    total = LaurentPoly()
    for nb in ((i + 1, j), (i, j + 1)):
        if nb in rest:
            w = LaurentPoly.monomial(_domino_weight((i, j), nb))
            total = total + w * _weight_sum(rest - {nb})
    return total


def tad_laurent(r: TadRegion) -> LaurentPoly:
    """P(TAD): the weighted tiling sum times the region's monomial factor."""
    factor = LaurentPoly.monomial({v: 1 for v in r.variables()})
    return _weight_sum(r.squares()) * factor


def evaluate_tad(m, r: TadRegion) -> Rat:
    m = _as_matrix(m)
    return tad_laurent(r).evaluate(lambda x, y: central_minor(m, x, y))


def tad_target(r: TadRegion) -> MinorSpec:
    """The contiguous minor that P(TAD) evaluates to.

    The rightmost central minor supplies whichever index set differs from
    its left neighbour; the leftmost supplies the other one.
    """
    if r.n is None:
        raise PreconditionError("the target minor needs the band width n")
    n, y = r.n, r.y0
    right = central_spec(n, r.x0 + r.ell, y)
    if r.ell == 0:
        return right
    inner = central_spec(n, r.x0 + r.ell - 1, y)
    left = central_spec(n, r.x0 - r.ell, y)
    if set(right.rows) != set(inner.rows):
        return MinorSpec(n, right.rows, left.cols)
    return MinorSpec(n, left.rows, right.cols)


def locate_region(n: int, a: int, b: int, y: int) -> TadRegion:
    """Smallest-order region whose evaluation is CM[a,b,y]."""
    want = contiguous_spec(n, a, b, y)
    for ell in range(0, n + 1):
        for x0 in range(1, 2 * n + 1):
            r = TadRegion(x0, y, ell, n)
            if tad_target(r) == want:
                return r
    raise PreconditionError(f"no region found for {want}")


# -- condensation --------------------------------------------------------------

def desnanot_jacobi(m, a: int, b: int, c: int, d: int) -> tuple[Rat, Rat]:
    """Both sides of the Desnanot-Jacobi identity for square m.

    a < b are row positions, c < d column positions (1-based).
    """
    m = _as_matrix(m)
    k = m.shape[0]
    if not (a < b and c < d) or not all(1 <= i <= k for i in (a, b, c, d)):
        raise PreconditionError("need a < b and c < d inside the matrix")

    def sub(dr, dc):
        return minor(m, [i for i in range(1, k + 1) if i not in dr],
                     [j for j in range(1, k + 1) if j not in dc])
    lhs = sub({a}, {c}) * sub({b}, {d})
    rhs = sub(set(), set()) * sub({a, b}, {c, d}) + sub({b}, {c}) * sub({a}, {d})
    return lhs, rhs


@dataclass(frozen=True)
class JawTerms:
    """det M_b . det M_ac^d = det M_a . det M_bc^d + det M_c . det M_ab^d."""
    target: Rat         # det M_b
    den: Rat            # det M_ac^d
    num: tuple          # ((det M_a, det M_bc^d), (det M_c, det M_ab^d))

    @property
    def holds(self) -> bool:
        return self.target * self.den == sum((p * q for p, q in self.num), Rat(0))


def jaw_move(m, a: int, b: int, c: int, d: int) -> JawTerms:
    """Jaw identity for a k x (k+1) matrix.

    a < b < c are positions on the long side, d a position on the short
    side (1-based).  A (k+1) x k matrix is read transposed.
    """
    m = _as_matrix(m)
    rows, cols = m.shape
    if rows == cols + 1:
        m = m.transpose()
        rows, cols = cols, rows
    if cols != rows + 1:
        raise PreconditionError("jaw move needs a k x (k+1) matrix")
    if not a < b < c or c > cols or a < 1 or not 1 <= d <= rows:
        raise PreconditionError("jaw indices collide or fall outside the matrix")

    def sub(dc, dr=()):
        return minor(m, [i for i in range(1, rows + 1) if i not in dr],
                     [j for j in range(1, cols + 1) if j not in dc])
    return JawTerms(sub({b}), sub({a, c}, {d}),
                    ((sub({a}), sub({b, c}, {d})), (sub({c}), sub({a, b}, {d}))))


def offcenter_condensation(m, a: int, b: int, y: int) -> tuple[Rat, Rat]:
    """CM[a,b,y] directly and through its neighbours.

    CM[a,b,y] = (CM[a,b-1,y] CM[a+1,b,y] + CM[a+1,b,y-1] CM[a,b-1,y+1]) / CM[a+1,b-1,y]
    """
    m = _as_matrix(m)
    cm = lambda p, q, s: contiguous_minor(m, p, q, s)  # noqa: E731
    den = cm(a + 1, b - 1, y)
    if den == 0:
        raise ZeroDivisionError("vanishing denominator")
    via = (cm(a, b - 1, y) * cm(a + 1, b, y) + cm(a + 1, b, y - 1) * cm(a, b - 1, y + 1)) / den
    return cm(a, b, y), via


# -- noninterlaced minors --------------------------------------------------------

def orient_noninterlaced(n: int, A, B) -> MinorSpec:
    """Order A counterclockwise and B clockwise; error if they interlace."""
    A, B = set(A), set(B)
    if len(A) != len(B) or A & B or not A:
        raise PreconditionError("need disjoint nonempty sets of equal size")
    seq = sorted(A | B)
    is_a = [x in A for x in seq]
    starts = [k for k in range(len(seq)) if is_a[k] and not is_a[k - 1]]
    if len(starts) != 1:
        raise PreconditionError(f"{sorted(A)} and {sorted(B)} interlace")
    s = starts[0]
    seq = seq[s:] + seq[:s]
    k = len(A)
    return MinorSpec(n, tuple(seq[:k]), tuple(reversed(seq[k:])))


def all_noninterlaced(n: int) -> list[MinorSpec]:
    out = []
    nodes = range(1, n + 1)
    for k in range(1, n // 2 + 1):
        for A in combinations(nodes, k):
            rest = [x for x in nodes if x not in A]
            for B in combinations(rest, k):
                try:
                    out.append(orient_noninterlaced(n, A, B))
                except PreconditionError:
                    pass
    return out


def _interspersed(n: int, side: tuple) -> list:
    """Nodes strictly inside the counterclockwise hull of side but not in it."""
    first, last = side[0], side[-1]
    span = (last - first) % n
    hull = [_wrap(first + t, n) for t in range(1, span)]
    return [v for v in hull if v not in side]


def _ccw_sorted(n: int, first: int, items) -> tuple:
    return tuple(sorted(items, key=lambda v: (v - first) % n))


def jaw_evaluate(m, spec: MinorSpec, leaf=None) -> tuple[Rat, int]:
    """Evaluate a noninterlaced minor by repeated jaw moves.

    Contiguous minors are leaves, evaluated by leaf(spec) (default: direct
    determinant).  Returns (value, number of jaw moves).
    """
    m = _as_matrix(m)
    n = spec.n
    leaf = leaf or (lambda s: s.value(m))
    memo = {}
    moves = [0]

    def ev(rows, cols):
        key = (rows, cols)
        if key in memo:
            return memo[key]
        if not rows:
            return Rat(1)
        gap_r = _interspersed(n, rows)
        gap_c = _interspersed(n, tuple(reversed(cols)))
        if not gap_r and not gap_c:
            val = leaf(MinorSpec(n, rows, cols))
        elif gap_r:
            big = _ccw_sorted(n, rows[0], rows + (gap_r[0],))
            val = _jaw_step(big, cols, gap_r[0], rows_side=True)
        else:
            big = tuple(reversed(_ccw_sorted(n, cols[-1], cols + (gap_c[0],))))
            val = _jaw_step(big, rows, gap_c[0], rows_side=False)
        memo[key] = val
        return val

    def _jaw_step(big, short, b, rows_side):
        moves[0] += 1
        a, c, d = big[0], big[-1], short[0]

        def term(drop_long, drop_short=()):
            lo = tuple(v for v in big if v not in drop_long)
            sh = tuple(v for v in short if v not in drop_short)
            return ev(lo, sh) if rows_side else ev(sh, lo)
        den = term({a, c}, {d})
        return (term({a}) * term({b, c}, {d}) + term({c}) * term({a, b}, {d})) / den

    return ev(spec.rows, spec.cols), moves[0]


def format_minor_table(rows) -> str:
    lines = []
    for x, y, s, v in rows:
        lines.append(f"CM[{x},{y}]  {str(s):<20} {fmt_rat(v)}")
    return "\n".join(lines)
