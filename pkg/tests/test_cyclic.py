"""Relabeling, rescaling and factoring of cyclic-patterned 7x7 matrices."""

from fractions import Fraction

import pytest

from exactnmf.canonical import CanonicalParams, MonomialMatrix, canonical_matrix, is_admissible
from exactnmf.cyclic import (
    detect_cyclic_labeling,
    factor_cyclic,
    scale_to_canonical,
)
from exactnmf.errors import DimensionError, PatternError, RankError
from exactnmf.generate import random_admissible_params, random_convex_polygon
from exactnmf.linalg import Matrix
from exactnmf.polygon import polygon_from_points, slack_matrix
from exactnmf.rng import SplitMix64

from conftest import H7_COL_CONSTANTS, H7_VERTICES


def shift_rows(m: Matrix, k: int) -> Matrix:
    return Matrix([m.row((i + k) % m.rows) for i in range(m.rows)])


class TestDetectLabeling:
    def test_canonical_pattern_gives_identity(self, h7_params):
        v = canonical_matrix(h7_params)
        labeling = detect_cyclic_labeling(v)
        assert labeling.is_identity

    def test_cyclic_row_shift_is_undone(self, h7_params):
        v = canonical_matrix(h7_params)
        shifted = shift_rows(v, 3)
        labeling = detect_cyclic_labeling(shifted)
        relabeled = labeling.apply(shifted)
        for j in range(1, 8):
            assert relabeled[(j - 1) % 7, j - 1] == 0
            assert relabeled[(j - 2) % 7, j - 1] == 0

    def test_clockwise_heptagon_gets_valid_relabeling(self):
        clockwise = [H7_VERTICES[0]] + H7_VERTICES[:0:-1]
        s = slack_matrix(polygon_from_points(clockwise)).matrix
        labeling = detect_cyclic_labeling(s)
        relabeled = labeling.apply(s)
        for i in range(1, 8):
            for j in range(1, 8):
                expected_zero = i % 7 == j % 7 or i % 7 == (j - 1) % 7
                assert (relabeled[i - 1, j - 1] == 0) == expected_zero

    def test_wrong_shape_rejected(self):
        with pytest.raises(DimensionError):
            detect_cyclic_labeling(Matrix.identity(6))

    def test_wrong_zero_count_rejected(self):
        with pytest.raises(PatternError):
            detect_cyclic_labeling(Matrix.identity(7))

    def test_negative_entry_rejected(self, h7_slack):
        rows = h7_slack.tolist()
        rows[0][3] = -rows[0][3]
        with pytest.raises(PatternError):
            detect_cyclic_labeling(Matrix(rows))

    def test_two_short_cycles_rejected(self):
        # rows pair columns as a 3-cycle (0,1,2) and a 4-cycle (3,4,5,6)
        pairs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]
        rows = []
        for z1, z2 in pairs:
            row = [Fraction(1)] * 7
            row[z1] = row[z2] = Fraction(0)
            rows.append(row)
        with pytest.raises(PatternError):
            detect_cyclic_labeling(Matrix(rows))


class TestScaleToCanonical:
    def test_canonical_input_is_fixed_point(self, h7_params):
        v = canonical_matrix(h7_params)
        reduction = scale_to_canonical(v)
        assert reduction.params == h7_params
        assert all(c == 1 for c in reduction.col_constants)
        assert all(s == 1 for s in reduction.row_scale.scales)
        assert all(s == 1 for s in reduction.col_scale.scales)

    def test_h7_slack_reduction(self, h7_slack, h7_params):
        reduction = scale_to_canonical(h7_slack)
        assert reduction.params == h7_params
        assert reduction.col_constants == H7_COL_CONSTANTS

    def test_middle_constants_are_one(self):
        rng = SplitMix64(41)
        for _ in range(10):
            s = slack_matrix(random_convex_polygon(rng, 7)).matrix
            labeling = detect_cyclic_labeling(s)
            reduction = scale_to_canonical(labeling.apply(s))
            assert reduction.col_constants[2:5] == (1, 1, 1)
            assert all(c > 0 for c in reduction.col_constants)

    def test_reconstruction_identity_all_entries(self, h7_slack):
        reduction = scale_to_canonical(h7_slack)
        lhs = (
            reduction.row_scale.to_matrix()
            @ h7_slack
            @ reduction.col_scale.to_matrix()
        )
        rhs = canonical_matrix(reduction.params) @ MonomialMatrix.diagonal(
            reduction.col_constants
        ).to_matrix()
        assert lhs == rhs

    def test_rank_enforced(self, h7_params):
        v = canonical_matrix(h7_params)
        # wipe the parameter rows' contribution: a generic positive
        # perturbation of one entry raises the rank above 3
        rows = v.tolist()
        rows[0][2] = rows[0][2] + 1
        with pytest.raises(RankError):
            scale_to_canonical(Matrix(rows))

    def test_pattern_enforced(self, h7_slack):
        rows = h7_slack.tolist()
        rows[0][0] = Fraction(1)  # structural zero overwritten
        with pytest.raises(PatternError):
            scale_to_canonical(Matrix(rows))


class TestFactorCyclic:
    def test_canonical_matrix_input(self, h7_params):
        from exactnmf.canonical import factor_canonical

        v = canonical_matrix(h7_params)
        cert = factor_cyclic(v)
        assert cert.left @ cert.right == v
        assert cert.left.is_nonnegative() and cert.right.is_nonnegative()
        assert cert.left.shape == (7, 6) and cert.right.shape == (6, 7)
        # a matrix already in canonical form reduces with unit scalings,
        # so the certificate coincides with the direct one
        direct = factor_canonical(h7_params)
        assert cert.left == direct.left and cert.right == direct.right

    def test_h7_slack(self, h7_slack):
        cert = factor_cyclic(h7_slack)
        assert cert.left @ cert.right == h7_slack
        assert cert.left.is_nonnegative() and cert.right.is_nonnegative()

    def test_relabeled_input(self, h7_slack):
        shifted = shift_rows(h7_slack, 2)
        cert = factor_cyclic(shifted)
        assert cert.left @ cert.right == shifted

    def test_random_heptagons(self):
        rng = SplitMix64(42)
        for _ in range(20):
            s = slack_matrix(random_convex_polygon(rng, 7)).matrix
            cert = factor_cyclic(s)
            assert cert.left @ cert.right == s
            assert cert.left.is_nonnegative() and cert.right.is_nonnegative()

    def test_monomial_conjugation_preserves_certificates(self, h7_slack):
        cert = factor_cyclic(h7_slack)
        rng = SplitMix64(43)
        perm = sorted(range(7), key=lambda _: rng.next_u64())
        scales = [Fraction(rng.below(20) + 1, rng.below(7) + 1) for _ in range(7)]
        left_mono = MonomialMatrix(perm, scales).to_matrix()
        right_mono = MonomialMatrix.diagonal(
            [Fraction(rng.below(20) + 1, rng.below(7) + 1) for _ in range(7)]
        ).to_matrix()
        conjugated = left_mono @ h7_slack @ right_mono
        new_left = left_mono @ cert.left
        new_right = cert.right @ right_mono
        assert new_left @ new_right == conjugated
        assert new_left.is_nonnegative() and new_right.is_nonnegative()
        assert new_left.cols == 6

    def test_random_canonical_matrices(self):
        rng = SplitMix64(44)
        for _ in range(10):
            p = random_admissible_params(rng)
            v = canonical_matrix(p)
            cert = factor_cyclic(v)
            assert cert.left @ cert.right == v

    def test_large_entry_sizes(self):
        # nothing in the pipeline may assume small numerators or denominators
        rng = SplitMix64(45)
        den = 1 << 40
        while True:
            xs = sorted(rng.below(den - 1) + 1 for _ in range(3))
            ys = sorted(rng.below(den - 1) + 1 for _ in range(3))
            p = CanonicalParams(
                Fraction(xs[2], den), Fraction(xs[1], den), Fraction(xs[0], den),
                Fraction(ys[0], den), Fraction(ys[1], den), Fraction(ys[2], den),
            )
            if is_admissible(p):
                break
        v = canonical_matrix(p)
        cert = factor_cyclic(v)
        assert cert.left @ cert.right == v
        assert cert.left.is_nonnegative() and cert.right.is_nonnegative()
