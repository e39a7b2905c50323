"""Seeded property suites for every module, runnable from the CLI.

Each check draws its instances from a child of one splitmix64 stream, so
identical (seed, iterations) arguments print identical output.  Heavy
checks run a documented fraction of the requested iterations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Tuple

from . import canonical
from .canonical import CanonicalParams
from .cyclic import detect_cyclic_labeling, factor_cyclic, scale_to_canonical
from .driver import nn_factor, verify_factorization
from .generate import (
    random_admissible_params,
    random_convex_polygon,
    random_nonnegative_matrix,
    random_rank3_seven_by_n,
    random_rank_one,
    random_rank_two,
)
from .linalg import Matrix, det3, rank, solve
from .polygon import build_extension, slack_matrix, verify_extension
from .rng import SplitMix64
from .section import factor_low_rank, factor_seven_by_n
from .serialize import (
    certificate_from_jsonable,
    certificate_to_jsonable,
    matrix_from_csv,
    matrix_from_jsonable,
    matrix_to_csv,
    matrix_to_jsonable,
)


def _leibniz_det3(m: Matrix) -> Fraction:
    d = m.data
    return (
        d[0][0] * d[1][1] * d[2][2]
        - d[0][0] * d[1][2] * d[2][1]
        - d[0][1] * d[1][0] * d[2][2]
        + d[0][1] * d[1][2] * d[2][0]
        + d[0][2] * d[1][0] * d[2][1]
        - d[0][2] * d[1][1] * d[2][0]
    )


def _random_signed_matrix(rng: SplitMix64, rows: int, cols: int) -> Matrix:
    return Matrix(
        [
            [Fraction(rng.below(129) - 64, rng.below(16) + 1) for _ in range(cols)]
            for _ in range(rows)
        ]
    )


def check_det3_leibniz(rng, iterations):
    for _ in range(iterations):
        m = _random_signed_matrix(rng, 3, 3)
        assert det3(m) == _leibniz_det3(m)
    return iterations


def check_rank_transpose(rng, iterations):
    for _ in range(iterations):
        m = _random_signed_matrix(rng, rng.below(5) + 1, rng.below(5) + 1)
        assert rank(m) == rank(m.transpose())
    return iterations


def check_solve_substitution(rng, iterations):
    from .linalg import Inconsistency

    for _ in range(iterations):
        rows, cols = rng.below(4) + 2, rng.below(4) + 2
        a = _random_signed_matrix(rng, rows, cols)
        b = [Fraction(rng.below(33) - 16) for _ in range(rows)]
        x = solve(a, b)
        if isinstance(x, Inconsistency):
            assert 0 <= x.row < rows
        else:
            for i in range(rows):
                lhs = sum((a.data[i][j] * x[j] for j in range(cols)), Fraction(0))
                assert lhs == b[i]
    return iterations


def check_canonical_entries(rng, iterations):
    for _ in range(iterations):
        p = random_admissible_params(rng)
        v = canonical.canonical_matrix(p)
        assert v.data[1][3] == 1 and v.data[1][4] == 1 and v.data[3][2] == 1
        assert v.data[3][1] == 1 - p.b3
        assert v.data[5][2] == p.a1 and v.data[6][2] == p.a2 and v.data[0][2] == p.a3
        for i in range(1, 8):
            for j in range(1, 8):
                if canonical.is_structural_zero(i, j):
                    assert v.data[i - 1][j - 1] == 0
    return iterations


def check_reversal(rng, iterations):
    for _ in range(iterations):
        p = random_admissible_params(rng)
        mirror, row_perm, col_perm = canonical.reversal(p)
        assert canonical.is_admissible(mirror)
        lhs = row_perm.to_matrix() @ canonical.canonical_matrix(mirror) @ col_perm.to_matrix()
        assert lhs == canonical.canonical_matrix(p)
        back, _, _ = canonical.reversal(mirror)
        assert back == p
    return iterations


def check_step_conjugation(rng, iterations):
    for _ in range(iterations):
        p = random_admissible_params(rng)
        nxt, q1, q2 = canonical.step(p)
        lhs = q1.to_matrix() @ canonical.canonical_matrix(nxt) @ q2.to_matrix()
        assert lhs == canonical.canonical_matrix(p)
    return iterations


def check_orbit_period(rng, iterations):
    for _ in range(iterations):
        p = random_admissible_params(rng)
        assert canonical.orbit(p, 7) == p
    return iterations


def check_sign_identities(rng, iterations):
    for _ in range(iterations):
        p = random_admissible_params(rng)
        a1, a2, a3, b1, b2, b3 = p.astuple()
        vm = canonical.canonical_matrix(p)
        v = lambda i, j: vm.data[i - 1][j - 1]  # noqa: E731
        s1 = canonical.orbit(p, 1)
        s2 = canonical.orbit(p, 2)
        s6 = canonical.orbit(p, 6)
        assert s2.a2 + s2.b2 - s2.a1 - s2.b1 == (
            (-a3 + a2 * (1 - b3)) * v(3, 2) * v(2, 1)
        ) / (v(3, 1) * v(7, 3) * v(4, 2) * v(5, 2))
        assert s6.a3 + s6.b3 - s6.a2 - s6.b2 == (
            v(4, 6) * (-a3 + a1 * (1 - b3))
        ) / (v(1, 5) * v(3, 6))
        assert s1.a2 + s1.b2 - s1.a1 - s1.b1 == (
            v(1, 3) * (b1 + (a1 - 1) * b3)
        ) / (v(6, 3) * v(4, 2))
    return iterations


def check_factor_search(rng, iterations):
    for _ in range(iterations):
        p = random_admissible_params(rng)
        cert = factor_canonical_checked(p)
        assert cert.steps_taken < canonical.MAX_SEARCH_STEPS
    return iterations


def factor_canonical_checked(p: CanonicalParams):
    cert = canonical.factor_canonical(p)
    v = canonical.canonical_matrix(p)
    assert cert.left @ cert.right == v
    assert cert.left.is_nonnegative() and cert.right.is_nonnegative()
    assert cert.left.shape == (7, 6) and cert.right.shape == (6, 7)
    return cert


def check_heptagon_slack_factors(rng, iterations):
    runs = max(1, iterations // 10)
    for _ in range(runs):
        poly = random_convex_polygon(rng, 7)
        s = slack_matrix(poly).matrix
        detect_cyclic_labeling(s)
        cert = factor_cyclic(s)
        assert cert.left @ cert.right == s
        assert cert.left.is_nonnegative() and cert.right.is_nonnegative()
    return runs


def check_scaling_reduction(rng, iterations):
    runs = max(1, iterations // 10)
    for _ in range(runs):
        poly = random_convex_polygon(rng, 7)
        s = slack_matrix(poly).matrix
        labeling = detect_cyclic_labeling(s)
        reduction = scale_to_canonical(labeling.apply(s))
        c3, c4, c5 = reduction.col_constants[2:5]
        assert c3 == 1 and c4 == 1 and c5 == 1
        assert all(c > 0 for c in reduction.col_constants)
    return runs


def check_low_rank(rng, iterations):
    runs = max(1, iterations // 5)
    for _ in range(runs):
        rows, cols = rng.below(6) + 2, rng.below(6) + 2
        m1 = random_rank_one(rng, rows, cols)
        left, right, _ = factor_low_rank(m1)
        assert left @ right == m1 and left.cols == 1
        m2 = random_rank_two(rng, rows + 1, cols + 1)
        left, right, _ = factor_low_rank(m2)
        assert left @ right == m2 and left.cols == 2
        assert left.is_nonnegative() and right.is_nonnegative()
    return runs


def check_seven_by_n(rng, iterations):
    runs = max(1, iterations // 20)
    for _ in range(runs):
        m = random_rank3_seven_by_n(rng, rng.below(10) + 8)
        left, right, _ = factor_seven_by_n(m)
        assert left @ right == m
        assert left.cols <= 6
        assert left.is_nonnegative() and right.is_nonnegative()
    return runs


def check_full_driver(rng, iterations):
    runs = max(1, iterations // 20)
    for _ in range(runs):
        n = rng.below(8) + 7
        poly = random_convex_polygon(rng, n)
        s = slack_matrix(poly).matrix
        fact = nn_factor(s)
        assert verify_factorization(s, fact).ok
        assert fact.inner_dim <= fact.bound
    return runs


def check_extension(rng, iterations):
    runs = max(1, iterations // 20)
    for _ in range(runs):
        n = rng.below(8) + 5
        poly = random_convex_polygon(rng, n)
        ef = build_extension(poly)
        assert verify_extension(poly, ef).ok
        if n >= 7:
            assert ef.k < n
    return runs


def check_serialization(rng, iterations):
    runs = max(1, iterations // 5)
    for _ in range(runs):
        # at most 3 rows keeps the rank within nn_factor's scope
        m = random_nonnegative_matrix(rng, rng.below(3) + 1, rng.below(5) + 1, 97)
        assert matrix_from_jsonable(matrix_to_jsonable(m)) == m
        assert matrix_from_csv(matrix_to_csv(m)) == m
        fact = nn_factor(m)
        back = certificate_from_jsonable(certificate_to_jsonable(fact))
        assert back.left == fact.left and back.right == fact.right
        assert back.inner_dim == fact.inner_dim and back.bound == fact.bound
    return runs


CHECKS: List[Tuple[str, Callable]] = [
    ("det3-vs-leibniz", check_det3_leibniz),
    ("rank-transpose", check_rank_transpose),
    ("solve-substitution", check_solve_substitution),
    ("canonical-entries", check_canonical_entries),
    ("reversal-relabeling", check_reversal),
    ("step-conjugation", check_step_conjugation),
    ("orbit-period-7", check_orbit_period),
    ("sign-identities", check_sign_identities),
    ("factor-search", check_factor_search),
    ("heptagon-slack", check_heptagon_slack_factors),
    ("scaling-reduction", check_scaling_reduction),
    ("low-rank", check_low_rank),
    ("seven-by-n", check_seven_by_n),
    ("full-driver", check_full_driver),
    ("extension", check_extension),
    ("serialization", check_serialization),
]


def run_selftest(seed: int = 0, iterations: int = 200, emit=print) -> bool:
    """Run every seeded suite; prints one line per check and a summary.

    Output is a pure function of (seed, iterations).
    """
    root = SplitMix64(seed)
    streams = [SplitMix64(root.next_u64()) for _ in CHECKS]
    failures = 0
    for (name, fn), stream in zip(CHECKS, streams):
        try:
            cases = fn(stream, iterations)
            emit(f"{name}: pass ({cases} cases)")
        except AssertionError as exc:
            failures += 1
            emit(f"{name}: FAIL ({exc})")
        except Exception as exc:  # noqa: BLE001 - selftest reports, never crashes
            failures += 1
            emit(f"{name}: ERROR ({type(exc).__name__}: {exc})")
    emit(
        f"selftest: {len(CHECKS) - failures}/{len(CHECKS)} checks passed "
        f"(seed={seed}, iterations={iterations})"
    )
    return failures == 0
