"""Rank conditions for independent partial transversals over fields.

Over a field, a partition ``B_1..B_n`` of the columns of ``M`` admits a
partial transversal ``P`` of size ``k`` with ``rank M[rows, P] = k`` exactly
when every subfamily ``Theta`` of blocks satisfies

    rank M[rows, union(Theta)] >= k + |Theta| - n.

:func:`rado_condition` checks all ``2^n`` subfamilies and independently
searches for a witness transversal, so both directions are exercised.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import UnsupportedRingError
from .matrices import IndexedMatrix
from .transversal import ColumnPartition


@dataclass(frozen=True)
class RadoReport:
    k: int
    holds: bool
    violating_family: Optional[tuple[int, ...]] = None  # block indices
    witness_transversal: Optional[tuple[int, ...]] = None  # column labels


def _require_field(M: IndexedMatrix):
    if not M.ring.is_field:
        raise UnsupportedRingError(f"{M.ring} is not a field")


def _row_reduce(M: IndexedMatrix) -> tuple[list, list, list]:
    """Gauss-Jordan elimination; returns (rows of RREF, transform rows, pivot positions)."""
    ring = M.ring
    p = len(M.rows)
    work = [list(r) for r in M.data]
    Q = [[ring.one if i == j else ring.zero for j in range(p)] for i in range(p)]
    pivots = []
    r = 0
    for j in range(len(M.cols)):
        piv = next((i for i in range(r, p) if work[i][j] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        Q[r], Q[piv] = Q[piv], Q[r]
        inv = ring.inverse(work[r][j])
        work[r] = [ring.mul(inv, x) for x in work[r]]
        Q[r] = [ring.mul(inv, x) for x in Q[r]]
        for i in range(p):
            f = work[i][j]
            if i != r and f != 0:
                work[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(work[i], work[r])]
                Q[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(Q[i], Q[r])]
        pivots.append(j)
        r += 1
        if r == p:
            break
    return work, Q, pivots


def field_rank(M: IndexedMatrix) -> int:
    _require_field(M)
    return len(_row_reduce(M)[2])


def _union(partition: ColumnPartition, family) -> tuple[int, ...]:
    return tuple(sorted(c for i in family for c in partition.block(i)))


def _rank_of_columns(M: IndexedMatrix, cols) -> int:
    if not cols:
        return 0
    return len(_row_reduce(M.submatrix(None, cols))[2])


def violating_families(M: IndexedMatrix, partition: ColumnPartition, k: int) -> list[tuple]:
    """``(surplus, family)`` for every subfamily with negative rank surplus."""
    n = partition.n
    out = []
    for size in range(n + 1):
        for family in combinations(partition.indices(), size):
            surplus = _rank_of_columns(M, _union(partition, family)) - (k + size - n)
            if surplus < 0:
                out.append((surplus, family))
    return out


def independent_transversal(M: IndexedMatrix, partition: ColumnPartition, k: int) -> Optional[tuple]:
    """First size-``k`` partial transversal whose columns have rank ``k``."""
    for cols in partition.partial_transversals(k):
        if _rank_of_columns(M, cols) == k:
            return cols
    return None


def rado_condition(M: IndexedMatrix, partition: ColumnPartition, k: int) -> RadoReport:
    """Check the rank condition for size ``k``.

    The reported violating family minimizes the rank surplus, ties broken
    lexicographically.  When the condition holds a witness transversal is
    searched for independently; disagreement raises ``AssertionError``.
    """
    _require_field(M)
    partition.check_covers(M.cols)
    if k < 0:
        raise ValueError("k must be non-negative")
    bad = violating_families(M, partition, k)
    witness = independent_transversal(M, partition, k)
    if bad:
        if witness is not None:
            raise AssertionError(f"rank condition fails but {witness} is independent")
        _, family = min(bad)
        return RadoReport(k, False, violating_family=family)
    if witness is None:
        raise AssertionError("rank condition holds but no independent transversal exists")
    return RadoReport(k, True, witness_transversal=witness)


@dataclass(frozen=True)
class NullRowForm:
    Q: IndexedMatrix
    m: int
    family: tuple[int, ...]  # the violating subfamily used
    nonnull_blocks: tuple[int, ...]  # blocks with a non-zero entry in the last m rows


def corollary_nullrow_form(M: IndexedMatrix, partition: ColumnPartition) -> Optional[NullRowForm]:
    """Invertible ``Q`` whose last ``m`` rows of ``QM`` vanish outside at most ``m - 1`` blocks.

    Returns ``None`` when some square transversal submatrix is invertible.
    """
    _require_field(M)
    p = len(M.rows)
    report = rado_condition(M, partition, p)
    if report.holds:
        return None
    family = report.violating_family
    cols = _union(partition, family)
    ring = M.ring
    if cols:
        # Gauss-Jordan leaves the zero rows of M[rows, cols] at the bottom
        _, qrows, pivots = _row_reduce(M.submatrix(None, cols))
        rho = len(pivots)
        Q = IndexedMatrix(ring, M.rows, M.rows, tuple(tuple(r) for r in qrows), _trusted=True)
    else:
        rho = 0
        Q = IndexedMatrix.identity(ring, M.rows)
    m = p - rho
    QM = Q @ M
    last = M.rows[p - m:]
    nonnull = tuple(
        i for i in partition.indices()
        if any(QM[r, c] != 0 for r in last for c in partition.block(i))
    )
    return NullRowForm(Q, m, family, nonnull)


def check_nullrow_form(M: IndexedMatrix, partition: ColumnPartition, form: NullRowForm) -> bool:
    """Independent validity check of a null-row form."""
    p = len(M.rows)
    if not 1 <= form.m <= p or not form.Q.is_invertible():
        return False
    QM = form.Q @ M
    last = M.rows[p - form.m:]
    nonnull = [
        i for i in partition.indices()
        if any(QM[r, c] != 0 for r in last for c in partition.block(i))
    ]
    return len(nonnull) <= form.m - 1
