"""Polygons, slack matrices, and lifted descriptions."""

from fractions import Fraction

import pytest

from exactnmf.errors import CollinearVertices, DuplicateVertices, NotConvex
from exactnmf.generate import random_convex_polygon
from exactnmf.linalg import Matrix, rank
from exactnmf.polygon import (
    ExtendedFormulation,
    build_extension,
    polygon_from_points,
    slack_matrix,
    verify_extension,
)
from exactnmf.rng import SplitMix64

SQUARE = [(0, 0), (1, 0), (1, 1), (0, 1)]


class TestPolygonFromPoints:
    def test_square_facets(self):
        poly = polygon_from_points(SQUARE)
        assert set(poly.facets) == {
            (Fraction(0), Fraction(1), Fraction(0)),      # y >= 0
            (Fraction(-1), Fraction(0), Fraction(-1)),    # -x >= -1
            (Fraction(0), Fraction(-1), Fraction(-1)),    # -y >= -1
            (Fraction(1), Fraction(0), Fraction(0)),      # x >= 0
        }

    def test_h7_cross_products_positive(self, h7_polygon):
        assert h7_polygon.n == 7
        verts = h7_polygon.vertices
        for i in range(7):
            o, a, b = verts[i], verts[(i + 1) % 7], verts[(i + 2) % 7]
            cross = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
            assert cross > 0

    def test_clockwise_input_reversed(self):
        poly = polygon_from_points(list(reversed(SQUARE)))
        verts = poly.vertices
        for i in range(4):
            o, a, b = verts[i], verts[(i + 1) % 4], verts[(i + 2) % 4]
            assert (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]) > 0

    def test_collinear_rejected(self):
        with pytest.raises(CollinearVertices):
            polygon_from_points([(0, 0), (1, 0), (2, 0), (0, 1)])

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateVertices):
            polygon_from_points([(0, 0), (1, 0), (1, 0), (0, 1)])

    def test_nonconvex_rejected(self):
        with pytest.raises(NotConvex):
            polygon_from_points([(0, 0), (4, 0), (1, 1), (0, 4)])

    def test_star_walk_rejected(self):
        # pentagram order: every turn has the same sign but the walk wraps twice
        pts = [(0, 10), (6, -8), (-9, 3), (9, 3), (-6, -8)]
        with pytest.raises(NotConvex):
            polygon_from_points(pts)

    def test_rational_vertices(self):
        poly = polygon_from_points([("1/2", 0), ("3/2", "1/3"), (1, 2)])
        assert poly.n == 3


class TestSlackMatrix:
    def test_zero_pattern_square(self):
        poly = polygon_from_points(SQUARE)
        s = slack_matrix(poly).matrix
        for i in range(4):
            for t in range(4):
                expected_zero = t == i or t == (i + 1) % 4
                assert (s[i, t] == 0) == expected_zero

    def test_h7_rank_three(self, h7_slack):
        assert rank(h7_slack) == 3

    def test_square_rank_three(self):
        s = slack_matrix(polygon_from_points(SQUARE))
        assert s.rank == 3 and s.matrix.shape == (4, 4)

    def test_nonnegative_everywhere(self):
        rng = SplitMix64(71)
        for n in (3, 5, 9):
            s = slack_matrix(random_convex_polygon(rng, n)).matrix
            assert s.is_nonnegative()


class TestBuildExtension:
    def test_heptagon_six_inequalities(self, h7_polygon):
        ef = build_extension(h7_polygon)
        assert ef.k <= 6

    def test_square_trivial_branch(self):
        ef = build_extension(polygon_from_points(SQUARE))
        assert ef.k <= 4

    def test_fourteen_gon(self):
        rng = SplitMix64(72)
        poly = random_convex_polygon(rng, 14)
        ef = build_extension(poly)
        assert ef.k <= 12

    def test_verifies_for_random_ngons(self):
        rng = SplitMix64(73)
        for n in (3, 4, 6, 7, 8, 11, 13, 20):
            poly = random_convex_polygon(rng, n)
            ef = build_extension(poly)
            report = verify_extension(poly, ef)
            assert report.ok, (n, report.failures)
            if n >= 7:
                assert ef.k < n


class TestVerifyExtension:
    def test_all_checks_pass_on_h7(self, h7_polygon):
        ef = build_extension(h7_polygon)
        assert verify_extension(h7_polygon, ef).ok

    def test_negated_lift_entry_named(self, h7_polygon):
        ef = build_extension(h7_polygon)
        rows = ef.lifts.tolist()
        found = None
        for r, row in enumerate(rows):
            for t, x in enumerate(row):
                if x > 0:
                    rows[r][t] = -x
                    found = t
                    break
            if found is not None:
                break
        tampered = ExtendedFormulation(
            ef.k, ef.T, ef.C, ef.beta, Matrix(rows)
        )
        report = verify_extension(h7_polygon, tampered)
        assert not report.ok
        assert any(
            f"vertex {found}" in failure and "negative" in failure
            for failure in report.failures
        )

    def test_inequality_count_check(self, h7_polygon):
        # claim k = n by padding with zero columns: check 4 must fail for n >= 7
        ef = build_extension(h7_polygon)
        n = h7_polygon.n
        pad = n - ef.k
        t_cols = ef.T.columns() + [(Fraction(0),) * n] * pad
        lift_rows = ef.lifts.tolist() + [[Fraction(0)] * n] * pad
        padded = ExtendedFormulation(
            n,
            Matrix.from_columns(t_cols),
            ef.C,
            ef.beta,
            Matrix(lift_rows),
        )
        report = verify_extension(h7_polygon, padded)
        assert not report.ok
        assert any("exceed the bound" in f for f in report.failures)

    def test_broken_reconstruction_named(self, h7_polygon):
        ef = build_extension(h7_polygon)
        rows = ef.T.tolist()
        rows[0][0] = rows[0][0] + 1
        tampered = ExtendedFormulation(ef.k, Matrix(rows), ef.C, ef.beta, ef.lifts)
        report = verify_extension(h7_polygon, tampered)
        assert not report.ok
        assert any("reconstruction" in f for f in report.failures)
