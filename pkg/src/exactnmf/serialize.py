"""Bit-exact file formats: matrices, polygons, certificates, formulations.

Rationals travel as strings "p/q" in canonical form ("/q" omitted when
the denominator is 1).  Decimal literals in input files are parsed
exactly (a finite decimal becomes the rational it denotes), so reading
back a written file always reproduces the original values.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .driver import Factorization
from .errors import ParseError
from .linalg import Matrix
from .polygon import ExtendedFormulation, Polygon, polygon_from_points


def format_scalar(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(token) -> Fraction:
    """Parse "p/q", integer, or decimal tokens to an exact rational."""
    if isinstance(token, Fraction):
        return token
    if isinstance(token, bool):
        raise ParseError(f"boolean {token!r} is not a number")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, float):
        # floats only appear when a caller bypassed exact JSON loading
        raise ParseError(f"refusing inexact float {token!r}; write it as a string")
    try:
        return Fraction(str(token).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"cannot parse {token!r} as a rational: {exc}") from None


def matrix_to_jsonable(m: Matrix) -> dict:
    return {
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[format_scalar(x) for x in row] for row in m.data],
    }


def matrix_from_jsonable(obj) -> Matrix:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError('matrix object needs an "entries" field')
    entries = obj["entries"]
    if not isinstance(entries, list) or not entries:
        raise ParseError("matrix entries must be a non-empty list of rows")
    data = [[parse_scalar(x) for x in row] for row in entries]
    m = Matrix(data)
    for name, value in (("rows", m.rows), ("cols", m.cols)):
        declared = obj.get(name)
        if declared is not None and declared != value:
            raise ParseError(f'declared "{name}" = {declared} but entries give {value}')
    return m


def matrix_to_csv(m: Matrix) -> str:
    return "\n".join(",".join(format_scalar(x) for x in row) for row in m.data) + "\n"


def matrix_from_csv(text: str) -> Matrix:
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        rows.append([parse_scalar(tok) for tok in line.split(",")])
    if not rows:
        raise ParseError("CSV input contains no rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ParseError(f"CSV rows have unequal lengths {sorted(widths)}")
    return Matrix(rows)


def polygon_to_jsonable(poly: Polygon) -> dict:
    return {
        "vertices": [[format_scalar(x), format_scalar(y)] for (x, y) in poly.vertices]
    }


def polygon_from_jsonable(obj) -> Polygon:
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise ParseError('polygon object needs a "vertices" field')
    points = []
    for entry in obj["vertices"]:
        pair = list(entry)
        if len(pair) != 2:
            raise ParseError(f"vertex {entry!r} is not a coordinate pair")
        points.append((parse_scalar(pair[0]), parse_scalar(pair[1])))
    return polygon_from_points(points)


def certificate_to_jsonable(fact: Factorization) -> dict:
    return {
        "left": matrix_to_jsonable(fact.left),
        "right": matrix_to_jsonable(fact.right),
        "inner_dim": fact.inner_dim,
        "bound": fact.bound,
        "trace": list(fact.trace),
    }


def certificate_from_jsonable(obj) -> Factorization:
    if not isinstance(obj, dict) or "left" not in obj or "right" not in obj:
        raise ParseError('certificate object needs "left" and "right" matrices')
    left = matrix_from_jsonable(obj["left"])
    right = matrix_from_jsonable(obj["right"])
    inner_dim = obj.get("inner_dim", left.cols)
    bound = obj.get("bound")
    if bound is None:
        raise ParseError('certificate object needs a "bound" field')
    trace = tuple(obj.get("trace", ()))
    if not isinstance(inner_dim, int) or not isinstance(bound, int):
        raise ParseError('"inner_dim" and "bound" must be integers')
    return Factorization(left, right, inner_dim, bound, trace)


def formulation_to_jsonable(ef: ExtendedFormulation) -> dict:
    return {
        "k": ef.k,
        "T": matrix_to_jsonable(ef.T),
        "C": matrix_to_jsonable(ef.C),
        "beta": [format_scalar(x) for x in ef.beta],
        "lifts": matrix_to_jsonable(ef.lifts),
    }


def formulation_from_jsonable(obj) -> ExtendedFormulation:
    required = ("k", "T", "C", "beta", "lifts")
    if not isinstance(obj, dict) or any(key not in obj for key in required):
        raise ParseError(f"formulation object needs fields {required}")
    if not isinstance(obj["k"], int):
        raise ParseError('"k" must be an integer')
    return ExtendedFormulation(
        k=obj["k"],
        T=matrix_from_jsonable(obj["T"]),
        C=matrix_from_jsonable(obj["C"]),
        beta=tuple(parse_scalar(x) for x in obj["beta"]),
        lifts=matrix_from_jsonable(obj["lifts"]),
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def load_json(path: str):
    """Load a JSON file with floats parsed exactly as decimals."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle, parse_float=lambda s: Fraction(s))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from None


def load_matrix_file(path: str, fmt: str = "auto") -> Matrix:
    if fmt == "auto":
        fmt = "csv" if path.lower().endswith(".csv") else "json"
    if fmt == "csv":
        try:
            with open(path, "r", encoding="utf-8") as handle:
                return matrix_from_csv(handle.read())
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc}") from None
    return matrix_from_jsonable(load_json(path))


def save_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)
