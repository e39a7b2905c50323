"""Input coercion and validation helpers for the public surface."""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionError
from .linalg import Matrix


def as_matrix(data) -> Matrix:
    """Coerce array-like input (nested sequences, numpy arrays, Matrix)
    to an exact :class:`Matrix`.

    Entries may be Fractions, ints, "p/q" or decimal strings, or floats
    (floats contribute their exact binary value).
    """
    if isinstance(data, Matrix):
        return data
    if hasattr(data, "tolist"):
        data = data.tolist()
    rows = list(data)
    if not rows:
        raise DimensionError("matrix input is empty")
    if not all(hasattr(r, "__iter__") and not isinstance(r, str) for r in rows):
        raise DimensionError("matrix input must be two-dimensional")
    return Matrix(rows)


def check_nonnegative(m: Matrix, name: str = "matrix") -> Matrix:
    """Raise ValueError if any entry of ``m`` is negative."""
    hit = m.first_negative_entry()
    if hit is not None:
        (i, j), value = hit
        raise ValueError(f"{name} has negative entry {value} at ({i}, {j})")
    return m


def check_shape(m: Matrix, rows=None, cols=None, name: str = "matrix") -> Matrix:
    if rows is not None and m.rows != rows:
        raise DimensionError(f"{name} must have {rows} rows, got {m.rows}")
    if cols is not None and m.cols != cols:
        raise DimensionError(f"{name} must have {cols} columns, got {m.cols}")
    return m


def as_point(value) -> tuple:
    """Coerce a 2-sequence to an exact point (pair of Fractions)."""
    pair = list(value)
    if len(pair) != 2:
        raise DimensionError(f"expected a 2-coordinate point, got {value!r}")
    return (Fraction(pair[0]), Fraction(pair[1]))
