"""Factor any rank <= 3 nonnegative matrix with a certified inner
dimension of at most ceil(6 * min(m, n) / 7).

Rows are chunked into groups of seven along the short side; each group
factors through its simplex section (inner dimension <= 6 per group) and
the blocks assemble into one certificate.  Every certificate carries the
exact factors plus a provenance trace and can be re-verified entry by
entry.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from .errors import InternalError, RankError
from .linalg import Matrix, block_diag, from_columns_or_empty, rank, vstack
from .section import factor_low_rank, factor_seven_by_n
from .validation import as_matrix, check_nonnegative

log = logging.getLogger("exactnmf")


def inner_dimension_bound(rows: int, cols: int) -> int:
    """ceil(6 * min(rows, cols) / 7)."""
    m = min(rows, cols)
    return -(-6 * m // 7)


@dataclass(frozen=True)
class Factorization:
    """Certificate: ``left @ right`` equals the input exactly, both factors
    are entrywise nonnegative, and ``inner_dim <= bound``."""

    left: Matrix
    right: Matrix
    inner_dim: int
    bound: int
    trace: Tuple[dict, ...]


@dataclass
class VerificationReport:
    """Outcome of re-checking a certificate; ``failures`` lists every
    violated check with its first offending entry."""

    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self) -> str:
        if self.ok:
            return "all checks passed"
        return "; ".join(self.failures)


def _strip_zero_lines(a: Matrix):
    zero_rows = [i for i in range(a.rows) if all(x == 0 for x in a.row(i))]
    zero_cols = [j for j in range(a.cols) if all(x == 0 for x in a.column(j))]
    keep_rows = [i for i in range(a.rows) if i not in set(zero_rows)]
    keep_cols = [j for j in range(a.cols) if j not in set(zero_cols)]
    if not keep_rows or not keep_cols:
        return None, zero_rows, zero_cols
    core = Matrix([[a.data[i][j] for j in keep_cols] for i in keep_rows])
    return core, zero_rows, zero_cols


def _reinsert_rows(m: Matrix, zero_rows, total_rows: int) -> Matrix:
    if not zero_rows:
        return m
    zero_set = set(zero_rows)
    rows, src = [], 0
    for i in range(total_rows):
        if i in zero_set:
            rows.append((Fraction(0),) * m.cols)
        else:
            rows.append(m.data[src])
            src += 1
    return Matrix(rows)


def _reinsert_cols(m: Matrix, zero_cols, total_cols: int) -> Matrix:
    if not zero_cols:
        return m
    zero_set = set(zero_cols)
    cols, src = [], 0
    for j in range(total_cols):
        if j in zero_set:
            cols.append((Fraction(0),) * m.rows)
        else:
            cols.append(m.column(src))
            src += 1
    return from_columns_or_empty(cols, m.rows)


def _factor_chunk(chunk: Matrix, row_start: int):
    """Factor one row chunk (7 rows, or the final remainder)."""
    r = rank(chunk)
    if chunk.rows == 7 and r == 3:
        left, right, info = factor_seven_by_n(chunk)
    elif r <= 2:
        left, right, info = factor_low_rank(chunk)
    else:
        # remainder of fewer than 7 rows with rank 3
        left = Matrix.identity(chunk.rows)
        right = chunk
        info = {"method": "identity", "inner_dim": chunk.rows}
    record = dict(info)
    record["rows"] = [row_start, row_start + chunk.rows]
    return left, right, record


def nn_factor(a) -> Factorization:
    """Factor a nonnegative matrix of rank at most 3 exactly.

    Returns a :class:`Factorization` with nonnegative factors whose
    product reconstructs the input bit for bit and whose inner dimension
    is at most ceil(6 * min(m, n) / 7).  Inputs of rank 4 or more are
    rejected with :class:`RankError`: no comparable bound exists for them
    here.
    """
    a = as_matrix(a)
    check_nonnegative(a, "input matrix")
    bound = inner_dimension_bound(a.rows, a.cols)
    trace: List[dict] = []

    core, zero_rows, zero_cols = _strip_zero_lines(a)
    if zero_rows or zero_cols:
        log.debug("stripped zero rows %s and zero columns %s", zero_rows, zero_cols)
        trace.append(
            {"method": "strip-zeros", "zero_rows": zero_rows, "zero_cols": zero_cols}
        )
    if core is None:
        left = Matrix.zeros(a.rows, 0)
        right = Matrix.zeros(0, a.cols)
        trace.append({"method": "zero", "inner_dim": 0})
        return Factorization(left, right, 0, bound, tuple(trace))

    transposed = core.rows > core.cols
    if transposed:
        core = core.transpose()
        log.debug("working on the transpose: %s rows", core.rows)
        trace.append({"method": "transpose"})

    r = rank(core)
    if r > 3:
        raise RankError(f"input has rank {r}; only ranks 0..3 are supported")

    if r <= 2:
        left, right, info = factor_low_rank(core)
        trace.append(dict(info, rows=[0, core.rows]))
    elif core.rows <= 6:
        left, right = Matrix.identity(core.rows), core
        trace.append({"method": "identity", "inner_dim": core.rows, "rows": [0, core.rows]})
    else:
        lefts, rights = [], []
        full, remainder = divmod(core.rows, 7)
        position = 0
        for g in range(full):
            chunk = Matrix(core.data[position : position + 7])
            cl, cr, record = _factor_chunk(chunk, position)
            lefts.append(cl)
            rights.append(cr)
            trace.append(record)
            log.info("chunk %s: %s", record["rows"], record["method"])
            position += 7
        if remainder:
            chunk = Matrix(core.data[position:])
            cl, cr, record = _factor_chunk(chunk, position)
            lefts.append(cl)
            rights.append(cr)
            trace.append(record)
            log.info("chunk %s: %s", record["rows"], record["method"])
        left = block_diag(lefts)
        right = rights[0]
        for extra in rights[1:]:
            right = vstack(right, extra)

    if transposed:
        left, right = right.transpose(), left.transpose()

    left = _reinsert_rows(left, zero_rows, a.rows)
    right = _reinsert_cols(right, zero_cols, a.cols)
    fact = Factorization(left, right, left.cols, bound, tuple(trace))
    report = verify_factorization(a, fact)
    if not report.ok:
        raise InternalError(f"internal certificate verification failed: {report}")
    return fact


def verify_factorization(a, fact: Factorization) -> VerificationReport:
    """Re-check a certificate against a matrix, exactly.

    Checks shapes, entrywise nonnegativity of both factors, the product
    identity, and the inner-dimension bound; each violation is reported
    with the first offending entry.
    """
    a = as_matrix(a)
    report = VerificationReport()
    left, right = fact.left, fact.right
    shapes_ok = True
    if left.rows != a.rows:
        shapes_ok = False
        report.failures.append(
            f"left factor has {left.rows} rows, input has {a.rows}"
        )
    if right.cols != a.cols:
        shapes_ok = False
        report.failures.append(
            f"right factor has {right.cols} columns, input has {a.cols}"
        )
    if left.cols != right.rows:
        shapes_ok = False
        report.failures.append(
            f"inner dimensions disagree: left is {left.shape}, right is {right.shape}"
        )
    if fact.inner_dim != left.cols:
        report.failures.append(
            f"declared inner dimension {fact.inner_dim} differs from left factor shape {left.shape}"
        )
    hit = left.first_negative_entry()
    if hit is not None:
        (i, j), x = hit
        report.failures.append(f"left factor has negative entry {x} at ({i}, {j})")
    hit = right.first_negative_entry()
    if hit is not None:
        (i, j), x = hit
        report.failures.append(f"right factor has negative entry {x} at ({i}, {j})")
    if shapes_ok:
        product = left @ right
        if product != a:
            for i in range(a.rows):
                for j in range(a.cols):
                    if product.data[i][j] != a.data[i][j]:
                        report.failures.append(
                            f"product disagrees with input at ({i}, {j}): "
                            f"{product.data[i][j]} != {a.data[i][j]}"
                        )
                        break
                else:
                    continue
                break
    expected_bound = inner_dimension_bound(a.rows, a.cols)
    if fact.bound != expected_bound:
        report.failures.append(
            f"declared bound {fact.bound} differs from ceil(6*min(m,n)/7) = {expected_bound}"
        )
    if fact.inner_dim > expected_bound:
        report.failures.append(
            f"inner dimension {fact.inner_dim} exceeds the bound {expected_bound}"
        )
    return report
