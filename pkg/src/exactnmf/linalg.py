"""Exact rational dense matrices and elimination-based linear algebra.

Every entry is a ``fractions.Fraction``; there is no floating point
anywhere.  Pivoting is deterministic (first nonzero), so ranks, solutions
and column bases are reproducible byte for byte across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DimensionError

ScalarLike = Union[Fraction, int, str]


def as_scalar(value) -> Fraction:
    """Coerce a value to an exact rational.

    Accepts Fraction, int, "p/q" / decimal strings, and floats (a float is
    converted to its exact binary value).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, (int, str, float)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class Matrix:
    """Immutable dense matrix of exact rationals, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries: Iterable[Iterable[ScalarLike]]):
        data = tuple(tuple(as_scalar(x) for x in row) for row in entries)
        if not data:
            raise DimensionError("use Matrix.zeros(rows, cols) for empty shapes")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise DimensionError("rows have unequal lengths")
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "data", data)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        if rows < 0 or cols < 0:
            raise DimensionError("negative dimensions")
        zero = Fraction(0)
        return cls._raw(tuple((zero,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return cls._raw(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
            n,
            n,
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[ScalarLike]]) -> "Matrix":
        if not columns:
            raise DimensionError("use Matrix.zeros(rows, 0) for empty shapes")
        return cls(zip(*columns))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.data)

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def tolist(self):
        return [list(row) for row in self.data]

    def transpose(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.data)), self.cols, self.rows) \
            if self.rows and self.cols else Matrix.zeros(self.cols, self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.rows,
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)),
            self.rows,
            self.cols,
        )

    def scale(self, factor: ScalarLike) -> "Matrix":
        f = as_scalar(factor)
        return Matrix._raw(
            tuple(tuple(f * x for x in row) for row in self.data), self.rows, self.cols
        )

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zeros(self.rows, other.cols)
        zero = Fraction(0)
        bt = tuple(zip(*other.data))
        out = tuple(
            tuple(sum((a * b for a, b in zip(arow, bcol)), zero) for bcol in bt)
            for arow in self.data
        )
        return Matrix._raw(out, self.rows, other.cols)

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for row in self.data for x in row)

    def first_negative_entry(self):
        """Return ((i, j), value) of the first negative entry, or None."""
        for i, row in enumerate(self.data):
            for j, x in enumerate(row):
                if x < 0:
                    return (i, j), x
        return None

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"


@dataclass(frozen=True)
class Inconsistency:
    """Report that a linear system has no solution.

    ``row`` is the 0-based index of an input equation that reduced to
    0 = nonzero during elimination.
    """

    row: int


def _eliminate(data, track_columns=False):
    """Row-reduce a mutable list-of-lists in place.

    Returns (pivot_columns, row_origins) where row_origins maps the final
    row position to the original row index.
    """
    rows = len(data)
    cols = len(data[0]) if rows else 0
    origins = list(range(rows))
    pivot_cols = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if data[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            data[r], data[pivot] = data[pivot], data[r]
            origins[r], origins[pivot] = origins[pivot], origins[r]
        pivot_cols.append(c)
        lead = data[r][c]
        for i in range(r + 1, rows):
            if data[i][c] != 0:
                f = data[i][c] / lead
                row_i, row_r = data[i], data[r]
                for j in range(c, cols):
                    row_i[j] -= f * row_r[j]
        r += 1
        if r == rows:
            break
    return pivot_cols, origins


def rank(m: Matrix) -> int:
    """Exact rank by rational Gaussian elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    work = [list(row) for row in m.data]
    pivot_cols, _ = _eliminate(work)
    return len(pivot_cols)


def det3(m: Matrix) -> Fraction:
    """Exact determinant of a 3x3 matrix by cofactor expansion."""
    if m.shape != (3, 3):
        raise DimensionError(f"det3 needs a 3x3 matrix, got {m.shape}")
    (a, b, c), (d, e, f), (g, h, i) = m.data
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def solve(a: Matrix, b: Sequence[ScalarLike]):
    """Solve a x = b exactly.

    Returns one solution (free variables set to 0) as a list of Fractions,
    or an :class:`Inconsistency` naming an input row that cannot be
    satisfied.  Pivoting is first-nonzero, so the returned solution is
    deterministic.
    """
    rhs = [as_scalar(x) for x in b]
    if len(rhs) != a.rows:
        raise DimensionError(f"matrix has {a.rows} rows but rhs has {len(rhs)}")
    work = [list(row) + [rhs[i]] for i, row in enumerate(a.data)]
    if a.rows == 0:
        return [Fraction(0)] * a.cols
    pivot_cols, origins = _eliminate(work)
    n = a.cols
    # A pivot in the appended column means some equation reduced to 0 = c.
    if n in pivot_cols:
        bad = len(pivot_cols) - 1
        return Inconsistency(row=origins[bad])
    solution = [Fraction(0)] * n
    for r in range(len(pivot_cols) - 1, -1, -1):
        c = pivot_cols[r]
        s = work[r][n]
        row = work[r]
        for j in range(c + 1, n):
            if row[j] != 0:
                s -= row[j] * solution[j]
        solution[c] = s / row[c]
    return solution


def column_space_basis(m: Matrix) -> Matrix:
    """Columns of ``m`` at its pivot positions: a basis of the column space."""
    if m.rows == 0 or m.cols == 0:
        return Matrix.zeros(m.rows, 0)
    work = [list(row) for row in m.data]
    pivot_cols, _ = _eliminate(work)
    if not pivot_cols:
        return Matrix.zeros(m.rows, 0)
    return Matrix.from_columns([m.column(j) for j in pivot_cols])


def from_columns_or_empty(columns: Sequence[Sequence[ScalarLike]], rows: int) -> Matrix:
    """Like Matrix.from_columns but returns a rows x 0 matrix for no columns."""
    if not columns:
        return Matrix.zeros(rows, 0)
    return Matrix.from_columns(columns)


def hstack(left: Matrix, right: Matrix) -> Matrix:
    if left.rows != right.rows:
        raise DimensionError("hstack needs equal row counts")
    if left.cols == 0:
        return right
    if right.cols == 0:
        return left
    return Matrix._raw(
        tuple(l + r for l, r in zip(left.data, right.data)),
        left.rows,
        left.cols + right.cols,
    )


def vstack(top: Matrix, bottom: Matrix) -> Matrix:
    if top.cols != bottom.cols:
        raise DimensionError("vstack needs equal column counts")
    if top.rows == 0:
        return bottom
    if bottom.rows == 0:
        return top
    return Matrix._raw(top.data + bottom.data, top.rows + bottom.rows, top.cols)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    """Block-diagonal assembly; off-diagonal blocks are zero."""
    total_rows = sum(b.rows for b in blocks)
    total_cols = sum(b.cols for b in blocks)
    out = [[Fraction(0)] * total_cols for _ in range(total_rows)]
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.data):
            out[r0 + i][c0 : c0 + b.cols] = list(row)
        r0 += b.rows
        c0 += b.cols
    if total_rows == 0 or total_cols == 0:
        return Matrix.zeros(total_rows, total_cols)
    return Matrix(out)
