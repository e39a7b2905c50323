"""Sectioning the standard simplex by a rank-3 column space.

For a nonnegative 7xn matrix of rank 3, the column space meets the
standard simplex in a polygon with at most 7 vertices.  Writing every
normalized column as a convex combination of those vertices factors the
matrix through them; a 7-vertex section carries the cyclic zero pattern
and factors further down to inner dimension 6.  Rank 0, 1 and 2 inputs
factor directly at their rank.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .cyclic import factor_cyclic
from .errors import (
    DegenerateSection,
    DimensionError,
    InternalError,
    OutsidePolygon,
    RankError,
    TangencyError,
)
from .linalg import Inconsistency, Matrix, from_columns_or_empty, rank, solve

SIZE = 7


@dataclass(frozen=True)
class SectionVertex:
    chart: Tuple[Fraction, Fraction]
    ambient: Tuple[Fraction, ...]
    tight: Tuple[int, ...]  # 0-based coordinates that vanish here


@dataclass(frozen=True)
class SectionPolygon:
    """Polygon cut out of the simplex by the column space, in an exact
    rational 2-D chart.  Vertices are counterclockwise in the chart."""

    chart_origin: Tuple[Fraction, ...]
    chart_u: Tuple[Fraction, ...]
    chart_v: Tuple[Fraction, ...]
    vertices: Tuple[SectionVertex, ...]
    vertex_matrix: Matrix  # ambient vertex coordinates as columns, 7 x k

    @property
    def k(self) -> int:
        return len(self.vertices)

    def to_ambient(self, chart_point) -> Tuple[Fraction, ...]:
        x, y = chart_point
        return tuple(
            o + x * u + y * v
            for o, u, v in zip(self.chart_origin, self.chart_u, self.chart_v)
        )


def normalize_columns(a: Matrix):
    """Scale every nonzero column to unit coordinate sum.

    Returns (normalized, column_sums, zero_columns): zero columns are
    recorded by index and dropped; ``column_sums`` lists the positive sum
    of each kept column in order, so the original matrix is the
    normalized one times diag(column_sums) with zero columns reinserted.
    """
    kept, sums, zero_cols = [], [], []
    for j in range(a.cols):
        col = a.column(j)
        total = sum(col, Fraction(0))
        if all(x == 0 for x in col):
            zero_cols.append(j)
        else:
            sums.append(total)
            kept.append(tuple(x / total for x in col))
    return from_columns_or_empty(kept, a.rows), tuple(sums), tuple(zero_cols)


def _check_seven_rows_rank3(a: Matrix):
    if a.rows != SIZE:
        raise DimensionError(f"expected 7 rows, got {a.rows}")
    hit = a.first_negative_entry()
    if hit is not None:
        (i, j), x = hit
        raise ValueError(f"matrix must be nonnegative; entry ({i}, {j}) is {x}")
    r = rank(a)
    if r != 3:
        raise RankError(f"sectioning requires rank 3, got {r}")


def _proportional_groups(a: Matrix):
    """Indices of the first row of each proportionality class, in order.

    Zero rows carry no constraint (their coordinate vanishes identically
    on the column space) and are excluded.
    """
    reps = []
    for i in range(a.rows):
        row = a.row(i)
        if all(x == 0 for x in row):
            continue
        duplicate = False
        for r in reps:
            ref = a.row(r)
            p = next(k for k, x in enumerate(ref) if x != 0)
            lam = row[p] / ref[p]
            if all(row[k] == lam * ref[k] for k in range(a.cols)):
                duplicate = True
                break
        if not duplicate:
            reps.append(i)
    return reps


def _angular_ccw_sort(points):
    """Sort chart points counterclockwise around their centroid using only
    exact sign tests; starts just above the positive-x direction."""
    n = len(points)
    cx = sum((p[0] for p in points), Fraction(0)) / n
    cy = sum((p[1] for p in points), Fraction(0)) / n

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def compare(p, q):
        hp, hq = half(p), half(q)
        if hp != hq:
            return -1 if hp < hq else 1
        px, py = p[0] - cx, p[1] - cy
        qx, qy = q[0] - cx, q[1] - cy
        cross = px * qy - py * qx
        if cross == 0:
            raise InternalError("two section vertices share a centroid ray")
        return -1 if cross > 0 else 1

    return sorted(points, key=functools.cmp_to_key(compare))


def section_polygon(a: Matrix) -> SectionPolygon:
    """Intersect the unit-sum nonnegative orthant slice with the column
    space of ``a`` (7 rows, nonnegative, rank 3).

    The polygon is computed in an exact affine chart of the intersection
    plane: every pair of distinct constraint lines is intersected, points
    satisfying all constraints are kept and ordered counterclockwise.
    Zero rows and proportional rows contribute no constraint line of
    their own, so a 7-vertex section always has 7 genuinely distinct
    constraints.
    """
    _check_seven_rows_rank3(a)
    normalized, _, _ = normalize_columns(a)

    origin = normalized.column(0)
    axis_u = None
    for j in range(1, normalized.cols):
        d = tuple(x - o for x, o in zip(normalized.column(j), origin))
        if any(x != 0 for x in d):
            axis_u = d
            break
    if axis_u is None:
        raise RankError("columns are all equal after normalization")
    pivot = next(k for k, x in enumerate(axis_u) if x != 0)
    axis_v = None
    for j in range(1, normalized.cols):
        d = tuple(x - o for x, o in zip(normalized.column(j), origin))
        lam = d[pivot] / axis_u[pivot]
        residual = tuple(x - lam * u for x, u in zip(d, axis_u))
        if any(x != 0 for x in residual):
            axis_v = d
            break
    if axis_v is None:
        raise RankError("normalized columns span only a line")

    # Constraint i: origin[i] + x*axis_u[i] + y*axis_v[i] >= 0.
    reps = _proportional_groups(a)
    lines = [(axis_u[i], axis_v[i], origin[i]) for i in reps]

    candidates = []
    for s in range(len(lines)):
        u1, v1, o1 = lines[s]
        for t in range(s + 1, len(lines)):
            u2, v2, o2 = lines[t]
            det = u1 * v2 - u2 * v1
            if det == 0:
                continue
            x = (-o1 * v2 + o2 * v1) / det
            y = (-u1 * o2 + u2 * o1) / det
            if all(o + x * u + y * v >= 0 for (u, v, o) in lines):
                point = (x, y)
                if point not in candidates:
                    candidates.append(point)

    if len(candidates) < 3:
        raise DegenerateSection(
            f"section has only {len(candidates)} extreme points; "
            "expected a two-dimensional polygon"
        )
    base = candidates[0]
    d0 = None
    flat = True
    for p in candidates[1:]:
        d = (p[0] - base[0], p[1] - base[1])
        if d0 is None:
            d0 = d
        elif d0[0] * d[1] - d0[1] * d[0] != 0:
            flat = False
            break
    if flat:
        raise DegenerateSection("section degenerates to a segment")

    ordered = _angular_ccw_sort(candidates)

    vertices = []
    columns = []
    for chart_point in ordered:
        ambient = tuple(
            o + chart_point[0] * u + chart_point[1] * v
            for o, u, v in zip(origin, axis_u, axis_v)
        )
        if any(x < 0 for x in ambient):
            raise InternalError("section vertex has a negative coordinate")
        if sum(ambient, Fraction(0)) != 1:
            raise InternalError("section vertex does not sum to one")
        tight = tuple(i for i, x in enumerate(ambient) if x == 0)
        vertices.append(SectionVertex(chart=chart_point, ambient=ambient, tight=tight))
        columns.append(ambient)

    if len(vertices) > SIZE:
        raise InternalError(
            f"section produced {len(vertices)} vertices; at most 7 are possible"
        )
    if len(vertices) == SIZE:
        for t, vert in enumerate(vertices):
            if len(vert.tight) != 2:
                raise TangencyError(
                    f"vertex {t} of a 7-vertex section has {len(vert.tight)} "
                    "tight constraints; exactly 2 are possible"
                )

    return SectionPolygon(
        chart_origin=tuple(origin),
        chart_u=axis_u,
        chart_v=axis_v,
        vertices=tuple(vertices),
        vertex_matrix=Matrix.from_columns(columns),
    )


def _orient(p, q, r):
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def convex_coefficients(poly: SectionPolygon, point: Sequence) -> Tuple[Fraction, ...]:
    """Express an ambient point of the polygon as an exact convex
    combination of its vertices (at most three nonzero coefficients,
    located by fan triangulation from vertex 0)."""
    target = tuple(Fraction(x) for x in point)
    if len(target) != len(poly.chart_origin):
        raise DimensionError("point dimension does not match the section")
    rhs = [x - o for x, o in zip(target, poly.chart_origin)]
    chart = solve(Matrix.from_columns([poly.chart_u, poly.chart_v]), rhs)
    if isinstance(chart, Inconsistency):
        raise OutsidePolygon("point does not lie in the section plane")
    px, py = chart

    verts = [v.chart for v in poly.vertices]
    k = len(verts)
    for t in range(1, k - 1):
        a, b, c = verts[0], verts[t], verts[t + 1]
        if (
            _orient(a, b, (px, py)) >= 0
            and _orient(b, c, (px, py)) >= 0
            and _orient(c, a, (px, py)) >= 0
        ):
            system = Matrix(
                [
                    (Fraction(1), Fraction(1), Fraction(1)),
                    (a[0], b[0], c[0]),
                    (a[1], b[1], c[1]),
                ]
            )
            bary = solve(system, [Fraction(1), px, py])
            if isinstance(bary, Inconsistency):
                raise InternalError("barycentric system unsolvable in a fan triangle")
            if any(x < 0 for x in bary):
                raise InternalError("negative barycentric coordinate inside a triangle")
            coeffs = [Fraction(0)] * k
            for idx, lam in zip((0, t, t + 1), bary):
                coeffs[idx] += lam
            reproduced = tuple(
                sum((coeffs[s] * poly.vertices[s].ambient[i] for s in range(k)), Fraction(0))
                for i in range(len(target))
            )
            if reproduced != target:
                raise InternalError("convex combination does not reproduce the point")
            return tuple(coeffs)
    raise OutsidePolygon(f"point {target} lies outside the section polygon")


def factor_seven_by_n(a: Matrix):
    """Factor a nonnegative rank-3 matrix with 7 rows through its section
    polygon.  Returns (left, right, info) with left and right nonnegative,
    left @ right == a exactly, and inner dimension at most 6.

    A section with k <= 6 vertices yields inner dimension k directly; a
    7-vertex section is factored once more through its cyclic pattern.
    """
    _check_seven_rows_rank3(a)
    normalized, sums, zero_cols = normalize_columns(a)
    poly = section_polygon(a)

    weight_cols = []
    for j in range(normalized.cols):
        coeffs = convex_coefficients(poly, normalized.column(j))
        weight_cols.append(tuple(c * sums[j] for c in coeffs))
    right = Matrix.from_columns(weight_cols)
    right = _reinsert_zero_columns(right, zero_cols, a.cols)

    if poly.k <= 6:
        left = poly.vertex_matrix
        info = {"method": "section", "vertices": poly.k, "inner_dim": poly.k}
    else:
        cert = factor_cyclic(poly.vertex_matrix)
        left = cert.left
        right = cert.right @ right
        info = {
            "method": "section+cyclic",
            "vertices": poly.k,
            "inner_dim": 6,
            "search_steps": cert.steps_taken,
            "mirrored": cert.used_reversal,
        }
    if left @ right != a:
        raise InternalError("seven-row factorization failed to reproduce the input")
    return left, right, info


def factor_low_rank(a: Matrix):
    """Exact nonnegative factorization of a rank <= 2 nonnegative matrix
    with inner dimension equal to its rank."""
    hit = a.first_negative_entry()
    if hit is not None:
        (i, j), x = hit
        raise ValueError(f"matrix must be nonnegative; entry ({i}, {j}) is {x}")
    r = rank(a)
    if r > 2:
        raise RankError(f"low-rank factorization requires rank <= 2, got {r}")

    if r == 0:
        return Matrix.zeros(a.rows, 0), Matrix.zeros(0, a.cols), {"method": "zero", "inner_dim": 0}

    if r == 1:
        pivot_col = next(
            j for j in range(a.cols) if any(x != 0 for x in a.column(j))
        )
        base = a.column(pivot_col)
        p = next(i for i, x in enumerate(base) if x != 0)
        ratios = []
        for j in range(a.cols):
            lam = a.data[p][j] / base[p]
            if any(a.data[i][j] != lam * base[i] for i in range(a.rows)):
                raise InternalError("rank-1 matrix has a non-proportional column")
            ratios.append(lam)
        left = Matrix.from_columns([base])
        right = Matrix([ratios])
        return left, right, {"method": "single-column", "inner_dim": 1}

    normalized, sums, zero_cols = normalize_columns(a)
    origin = normalized.column(0)
    direction = None
    for j in range(1, normalized.cols):
        d = tuple(x - o for x, o in zip(normalized.column(j), origin))
        if any(x != 0 for x in d):
            direction = d
            break
    if direction is None:
        raise InternalError("rank-2 matrix has a single normalized column")
    p = next(i for i, x in enumerate(direction) if x != 0)

    positions = []
    for j in range(normalized.cols):
        col = normalized.column(j)
        t = (col[p] - origin[p]) / direction[p]
        if any(col[i] != origin[i] + t * direction[i] for i in range(a.rows)):
            raise InternalError("normalized columns of a rank-2 matrix left their line")
        positions.append(t)
    t_min, t_max = min(positions), max(positions)
    j_min = positions.index(t_min)
    j_max = positions.index(t_max)
    end_low = normalized.column(j_min)
    end_high = normalized.column(j_max)
    span = t_max - t_min

    weight_cols = []
    for j, t in enumerate(positions):
        mu = (t_max - t) / span
        weight_cols.append((mu * sums[j], (1 - mu) * sums[j]))
    right = _reinsert_zero_columns(Matrix.from_columns(weight_cols), zero_cols, a.cols)
    left = Matrix.from_columns([end_low, end_high])
    if left @ right != a:
        raise InternalError("rank-2 factorization failed to reproduce the input")
    return left, right, {"method": "segment", "inner_dim": 2}


def _reinsert_zero_columns(right: Matrix, zero_cols, total_cols: int) -> Matrix:
    if not zero_cols:
        return right
    zero_set = set(zero_cols)
    out_cols = []
    src = 0
    for j in range(total_cols):
        if j in zero_set:
            out_cols.append((Fraction(0),) * right.rows)
        else:
            out_cols.append(right.column(src))
            src += 1
    return from_columns_or_empty(out_cols, right.rows)
