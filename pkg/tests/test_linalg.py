"""Exact linear algebra kernel: rank, determinants, solves, column bases."""

from fractions import Fraction

import pytest

from exactnmf.errors import DimensionError
from exactnmf.linalg import (
    Inconsistency,
    Matrix,
    block_diag,
    column_space_basis,
    det3,
    rank,
    solve,
)
from exactnmf.rng import SplitMix64


def leibniz_det3(m):
    """Independent 6-term permutation-sum determinant."""
    d = m.data
    return (
        d[0][0] * d[1][1] * d[2][2]
        - d[0][0] * d[1][2] * d[2][1]
        - d[0][1] * d[1][0] * d[2][2]
        + d[0][1] * d[1][2] * d[2][0]
        + d[0][2] * d[1][0] * d[2][1]
        - d[0][2] * d[1][1] * d[2][0]
    )


def reference_rank(m):
    """Independent rank oracle: full reduced row echelon from scratch."""
    work = [[Fraction(x) for x in row] for row in m.data]
    rows, cols = len(work), len(work[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        lead = work[r][c]
        work[r] = [x / lead for x in work[r]]
        for i in range(rows):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        r += 1
    return sum(1 for row in work if any(x != 0 for x in row))


def random_matrix(rng, rows, cols, span=64):
    return Matrix(
        [
            [Fraction(rng.below(2 * span + 1) - span, rng.below(8) + 1) for _ in range(cols)]
            for _ in range(rows)
        ]
    )


class TestScalarCanonicalForm:
    def test_arithmetic_keeps_reduced_positive_denominator(self):
        import math

        rng = SplitMix64(10)
        for _ in range(300):
            x = Fraction(rng.below(401) - 200, rng.below(99) + 1)
            y = Fraction(rng.below(401) - 200, rng.below(99) + 1)
            results = [x + y, x - y, x * y]
            if y != 0:
                results.append(x / y)
            for r in results:
                assert r.denominator > 0
                assert math.gcd(abs(r.numerator), r.denominator) == 1


class TestMatrix:
    def test_rectangular_enforced(self):
        with pytest.raises(DimensionError):
            Matrix([[1, 2], [3]])

    def test_entries_canonical(self):
        m = Matrix([["2/4", "0.5"], [3, "-6/4"]])
        assert m[0, 0] == Fraction(1, 2)
        assert m[0, 1] == Fraction(1, 2)
        assert m[1, 1] == Fraction(-3, 2)

    def test_matmul_shapes(self):
        a = Matrix([[1, 2, 3]])
        b = Matrix([[1], [1], [1]])
        assert (a @ b)[0, 0] == 6
        with pytest.raises(DimensionError):
            b @ b

    def test_empty_inner_dimension_product_is_zero(self):
        left = Matrix.zeros(3, 0)
        right = Matrix.zeros(0, 4)
        product = left @ right
        assert product.shape == (3, 4)
        assert all(x == 0 for row in product.data for x in row)

    def test_block_diag(self):
        m = block_diag([Matrix([[1]]), Matrix([[2, 3]])])
        assert m == Matrix([[1, 0, 0], [0, 2, 3]])


class TestRank:
    def test_identity(self):
        assert rank(Matrix.identity(3)) == 3

    def test_zero(self):
        assert rank(Matrix.zeros(4, 5)) == 0

    def test_h7_slack_rank_3(self, h7_slack):
        assert rank(h7_slack) == 3
        assert reference_rank(h7_slack) == 3

    def test_matches_reference_oracle(self):
        rng = SplitMix64(11)
        for _ in range(200):
            m = random_matrix(rng, rng.below(5) + 1, rng.below(5) + 1, span=4)
            assert rank(m) == reference_rank(m)

    def test_rank_equals_rank_of_transpose(self):
        rng = SplitMix64(12)
        for _ in range(200):
            m = random_matrix(rng, rng.below(6) + 1, rng.below(6) + 1, span=3)
            assert rank(m) == rank(m.transpose())


class TestDet3:
    def test_identity(self):
        assert det3(Matrix.identity(3)) == 1

    def test_repeated_rows(self):
        m = Matrix([[1, 2, 3], [4, 5, 6], [1, 2, 3]])
        assert det3(m) == 0

    def test_dimension_error(self):
        with pytest.raises(DimensionError):
            det3(Matrix.identity(4))

    def test_leibniz_oracle_1000(self):
        rng = SplitMix64(13)
        for _ in range(1000):
            m = random_matrix(rng, 3, 3)
            assert det3(m) == leibniz_det3(m)


class TestSolve:
    def test_identity(self):
        b = [Fraction(5), Fraction(-1, 3), Fraction(0)]
        assert solve(Matrix.identity(3), b) == b

    def test_zero_matrix_inconsistent(self):
        result = solve(Matrix.zeros(3, 3), [0, 2, 0])
        assert isinstance(result, Inconsistency)
        assert result.row == 1

    def test_barycentric_coefficients_sum_to_one(self):
        # point strictly inside the triangle (0,0), (4,0), (0,4)
        system = Matrix([[1, 1, 1], [0, 4, 0], [0, 0, 4]])
        coeffs = solve(system, [1, 1, 2])
        assert sum(coeffs) == 1
        assert all(c >= 0 for c in coeffs)
        for i in range(3):
            got = sum(system.data[i][j] * coeffs[j] for j in range(3))
            assert got == [1, 1, 2][i]

    def test_substitution_property(self):
        rng = SplitMix64(14)
        for _ in range(200):
            rows, cols = rng.below(5) + 1, rng.below(5) + 1
            a = random_matrix(rng, rows, cols, span=5)
            b = [Fraction(rng.below(11) - 5) for _ in range(rows)]
            x = solve(a, b)
            if isinstance(x, Inconsistency):
                assert 0 <= x.row < rows
            else:
                for i in range(rows):
                    assert sum(a.data[i][j] * x[j] for j in range(cols)) == b[i]

    def test_underdetermined_consistent(self):
        a = Matrix([[1, 1, 1]])
        x = solve(a, [7])
        assert sum(x) == 7


class TestColumnSpaceBasis:
    def test_identity(self):
        m = Matrix.identity(4)
        assert column_space_basis(m) == m

    def test_rank_one_all_ones(self):
        m = Matrix([[1, 1], [1, 1], [1, 1]])
        basis = column_space_basis(m)
        assert basis == Matrix([[1], [1], [1]])

    def test_h7_every_column_in_basis_span(self, h7_slack):
        basis = column_space_basis(h7_slack)
        assert basis.cols == 3
        for j in range(h7_slack.cols):
            x = solve(basis, h7_slack.column(j))
            assert not isinstance(x, Inconsistency)
            for i in range(7):
                got = sum(basis.data[i][t] * x[t] for t in range(3))
                assert got == h7_slack[i, j]
