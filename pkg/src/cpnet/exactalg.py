"""Exact rational linear algebra.

Everything here works over :class:`fractions.Fraction`; no floating point
is ever introduced.  Matrices are small (desk scale), so plain Gaussian
elimination with exact pivoting is used throughout.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction


class DimensionError(ValueError):
    pass


class SingularityError(ArithmeticError):
    pass


class NotSkewError(ValueError):
    pass


def rat(x) -> Fraction:
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, str or Fraction")
    return Fraction(x)


class RatMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        e = tuple(rat(x) for x in entries)
        if len(e) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(e)}")
        self.rows = rows
        self.cols = cols
        self._e = e

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RatMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self._e[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self._e[i * self.cols:(i + 1) * self.cols])

    def tolist(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix(len(rows), len(cols), [self[i, j] for i in rows for j in cols])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise DimensionError("shape mismatch in product")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                out.append(sum((r[k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in sum")
        return RatMatrix(self.rows, self.cols, [a + b for a, b in zip(self._e, other._e)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in difference")
        return RatMatrix(self.rows, self.cols, [a - b for a, b in zip(self._e, other._e)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(self.rows, self.cols, [-a for a in self._e])

    def scale(self, c) -> "RatMatrix":
        c = rat(c)
        return RatMatrix(self.rows, self.cols, [c * a for a in self._e])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._e))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fmt_rat(x) for x in self.row(i)) for i in range(self.rows))
        return f"RatMatrix({self.rows}x{self.cols}: {body})"


class SkewMatrix:
    """A skew-symmetric RatMatrix (checked at construction)."""

    __slots__ = ("entries",)

    def __init__(self, m: RatMatrix):
        if not m.is_square():
            raise NotSkewError("skew matrix must be square")
        n = m.rows
        for i in range(n):
            if m[i, i] != 0:
                raise NotSkewError(f"nonzero diagonal at {i}")
            for j in range(i):
                if m[i, j] != -m[j, i]:
                    raise NotSkewError(f"entries ({i},{j}) and ({j},{i}) are not opposite")
        self.entries = m

    @classmethod
    def from_upper(cls, n: int, upper) -> "SkewMatrix":
        """Build from a callable or dict giving entry (i, j) for i < j."""
        get = upper if callable(upper) else (lambda i, j: upper.get((i, j), 0))
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                v = rat(get(i, j))
                rows[i][j] = v
                rows[j][i] = -v
        return cls(RatMatrix.from_rows(rows))

    @property
    def dim(self) -> int:
        return self.entries.rows


def _as_rows(m) -> list[list[Fraction]]:
    if isinstance(m, RatMatrix):
        return m.tolist()
    if isinstance(m, SkewMatrix):
        return m.entries.tolist()
    return [[rat(x) for x in r] for r in m]


def det(m) -> Fraction:
    """Exact determinant by Gaussian elimination with nonzero pivoting."""
    a = _as_rows(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionError("determinant of a non-square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = a[r][c]
            if f:
                f /= piv
                row_r, row_c = a[r], a[c]
                for k in range(c + 1, n):
                    row_r[k] -= f * row_c[k]
    return result * sign


def pfaffian(m) -> Fraction:
    """Exact Pfaffian with the convention Pf([[0, a], [-a, 0]]) = a.

    Skew-symmetric elimination: pivot on a nonzero entry in the first row,
    swap it into position (0, 1), eliminate rows/columns 2.. against it.
    """
    if not isinstance(m, SkewMatrix):
        m = SkewMatrix(m if isinstance(m, RatMatrix) else RatMatrix.from_rows(m))
    a = m.entries.tolist()
    n = len(a)
    if n % 2:
        return Fraction(0)
    result = Fraction(1)
    for k in range(0, n - 1, 2):
        p = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k + 1:
            # simultaneous row/column swap flips the sign of the Pfaffian
            a[k + 1], a[p] = a[p], a[k + 1]
            for r in a:
                r[k + 1], r[p] = r[p], r[k + 1]
            result = -result
        piv = a[k][k + 1]
        result *= piv
        # clear entries (k, j) and (k+1, j) for j > k+1 by congruence
        for j in range(k + 2, n):
            alpha = a[k][j] / piv      # multiple of column k+1 to subtract
            beta = a[k + 1][j] / piv   # multiple of column k to add
            if alpha or beta:
                for r in range(n):
                    a[r][j] += beta * a[r][k] - alpha * a[r][k + 1]
                for c in range(n):
                    a[j][c] += beta * a[k][c] - alpha * a[k + 1][c]
    return result


def solve(m, b: Sequence) -> list[Fraction]:
    """Solve the square nonsingular system m x = b exactly."""
    a = _as_rows(m)
    n = len(a)
    x = [rat(v) for v in b]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise SingularityError("singular system")
        a[c], a[p] = a[p], a[c]
        x[c], x[p] = x[p], x[c]
        piv = a[c][c]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c] / piv
                for k in range(c, n):
                    a[r][k] -= f * a[c][k]
                x[r] -= f * x[c]
    return [x[i] / a[i][i] for i in range(n)]


def inverse(m) -> RatMatrix:
    a = _as_rows(m)
    n = len(a)
    cols = [solve(a, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return RatMatrix(n, n, [cols[j][i] for i in range(n) for j in range(n)])


def schur_complement(m: RatMatrix, keep: Sequence[int]) -> RatMatrix:
    """Return M_kk - M_ke M_ee^{-1} M_ek, eliminating every index not in keep.

    Rows/columns of the result follow the order of ``keep``.
    """
    if not m.is_square():
        raise DimensionError("Schur complement needs a square matrix")
    keep = list(keep)
    elim = [i for i in range(m.rows) if i not in set(keep)]
    if not elim:
        return m.submatrix(keep, keep)
    a = m.tolist()
    # Gaussian elimination of the eliminated block, one pivot at a time.
    alive = set(range(m.rows))
    for e in elim:
        piv = a[e][e]
        if piv == 0:
            # pivot inside the remaining eliminated block
            cand = next((r for r in elim if r in alive and r != e and a[r][e] != 0), None)
            if cand is None:
                raise SingularityError("eliminated block is singular")
            # add row/col cand to row/col e; Schur complement is unchanged
            for k in range(m.rows):
                a[e][k] += a[cand][k]
            for k in range(m.rows):
                a[k][e] += a[k][cand]
            piv = a[e][e]
            if piv == 0:
                raise SingularityError("eliminated block is singular")
        alive.discard(e)
        for r in alive:
            f = a[r][e]
            if f:
                f /= piv
                for c in alive:
                    a[r][c] -= f * a[e][c]
    return RatMatrix.from_rows([[a[i][j] for j in keep] for i in keep])


def effective_resistance(l, i: int, j: int) -> Fraction:
    """Effective resistance between 0-based nodes i and j from a response matrix.

    Works with -L, which is a Laplacian: ground node j, inject unit current
    at i, read the potential at i.
    """
    m = l.m if hasattr(l, "m") else l
    if i == j:
        return Fraction(0)
    n = m.rows
    idx = [k for k in range(n) if k != j]
    lap = [[-m[r, c] for c in idx] for r in idx]
    rhs = [1 if k == i else 0 for k in idx]
    x = solve(lap, rhs)
    return x[idx.index(i)]


def fmt_rat(x: Fraction) -> str:
    x = rat(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_matrix(m: RatMatrix) -> str:
    lines = [f"{m.rows} {m.cols}"]
    for i in range(m.rows):
        lines.append(" ".join(fmt_rat(x) for x in m.row(i)))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> RatMatrix:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        rows, cols = (int(t) for t in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"line 1: bad header {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != rows:
        raise ValueError(f"expected {rows} rows, found {len(body)}")
    entries = []
    for k, ln in enumerate(body, start=2):
        toks = ln.split()
        if len(toks) != cols:
            raise ValueError(f"line {k}: expected {cols} entries")
        try:
            entries.extend(Fraction(t) for t in toks)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {k}: bad rational") from exc
    return RatMatrix(rows, cols, entries)
