"""Reduced echelon form in the extremal sense.

A matrix ``M`` is in reduced echelon form when no invertible ``Q`` makes
``QM`` show more distinct standard unit vectors among its columns than ``M``
already does.  Over a commutative ring, ``QM`` can carry distinct unit vectors
in a column set ``C`` exactly when ``M[rows, C]`` extends to a basis of
``R^p``, i.e. when its ``|C| x |C|`` minors generate the unit ideal:

* fields: some minor is non-zero (so the capacity is the rank);
* ``Z``: the gcd of the minors is 1;
* ``Z/n``: the gcd of the lifted minors together with ``n`` is 1.

The capacity is found by exhaustive search over column subsets, largest first
and lexicographically smallest first, which is exact at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import UnsupportedRingError
from .matrices import IndexedMatrix, determinant_of
from .rings import Ring, extended_gcd


@dataclass(frozen=True)
class EchelonResult:
    Q: IndexedMatrix
    reduced: IndexedMatrix
    t: int
    pivot_assignment: dict  # column label -> pivot row label

    @property
    def rows_without_units(self) -> tuple[int, ...]:
        return rows_without_units(self.reduced)


def _supported(ring: Ring):
    if not isinstance(ring, Ring):
        raise UnsupportedRingError(f"not a ring descriptor: {ring!r}")


def count_unit_columns(M: IndexedMatrix) -> int:
    """Number of distinct standard unit vectors among the columns of ``M``."""
    return len(unit_columns(M))


def unit_columns(M: IndexedMatrix) -> dict:
    """Map pivot row -> first column equal to the standard unit vector of that row."""
    one = M.ring.one
    found = {}
    for b in M.cols:
        col = M.column(b)
        nz = [i for i, x in enumerate(col) if x != 0]
        if len(nz) == 1 and col[nz[0]] == one:
            found.setdefault(M.rows[nz[0]], b)
    return found


def rows_without_units(M: IndexedMatrix) -> tuple[int, ...]:
    ring = M.ring
    return tuple(a for a in M.rows if not any(ring.is_unit(x) for x in M.row(a)))


def extends_to_basis(M: IndexedMatrix, cols) -> bool:
    """True iff the columns ``cols`` of ``M`` can be made distinct unit vectors."""
    ring = M.ring
    t = len(cols)
    if t == 0:
        return True
    if t > len(M.rows):
        return False
    sub = M.submatrix(None, cols).data
    minors = (
        determinant_of(ring, [sub[i] for i in rsel])
        for rsel in combinations(range(len(sub)), t)
    )
    return ring.generates_unit_ideal(minors)


def _field_rank(M: IndexedMatrix) -> int:
    ring = M.ring
    m = [list(r) for r in M.data]
    rank = 0
    ncols = len(M.cols)
    for j in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][j] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = ring.inverse(m[rank][j])
        for i in range(rank + 1, len(m)):
            f = ring.mul(m[i][j], inv)
            if f != 0:
                m[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def best_unit_column_set(M: IndexedMatrix) -> tuple[int, ...]:
    """Lexicographically smallest column set of maximum size that extends to a basis."""
    _supported(M.ring)
    upper = min(len(M.rows), len(M.cols))
    if M.ring.is_field:
        upper = _field_rank(M)
    for t in range(upper, 0, -1):
        for cols in combinations(M.cols, t):
            if extends_to_basis(M, cols):
                return cols
    return ()


def unit_column_capacity(M: IndexedMatrix) -> int:
    """Maximum number of distinct unit-vector columns of ``QM`` over invertible ``Q``."""
    return len(best_unit_column_set(M))


def _combine_rows(ring, work, Q, k, i, s, t, u, v):
    """Replace rows k, i by (s*row_k + t*row_i, u*row_k + v*row_i)."""
    for mat in (work, Q):
        rk, ri = mat[k], mat[i]
        mat[k] = [ring.add(ring.mul(s, x), ring.mul(t, y)) for x, y in zip(rk, ri)]
        mat[i] = [ring.add(ring.mul(u, x), ring.mul(v, y)) for x, y in zip(rk, ri)]


def _realize(M: IndexedMatrix, cols) -> tuple[list, list]:
    """Row-reduce so column ``cols[k]`` becomes the unit vector of the k-th row.

    Returns the transformed rows and the accumulated transform ``Q`` as lists.
    Over ``Z`` and ``Z/n`` the pivot is assembled from the remaining rows with
    2x2 extended-gcd transforms, which are unimodular.
    """
    ring = M.ring
    p = len(M.rows)
    work = [list(r) for r in M.data]
    Q = [[ring.one if i == j else ring.zero for j in range(p)] for i in range(p)]
    cpos = {b: j for j, b in enumerate(M.cols)}
    for k, b in enumerate(cols):
        j = cpos[b]
        if not ring.is_unit(work[k][j]):
            if ring.is_field:
                i = next(i for i in range(k + 1, p) if work[i][j] != 0)
                _combine_rows(ring, work, Q, k, i, ring.one, ring.one, ring.zero, ring.one)
            else:
                for i in range(k + 1, p):
                    a, c = ring.lift(work[k][j]), ring.lift(work[i][j])
                    if c == 0:
                        continue
                    g, s, t = extended_gcd(a, c)
                    _combine_rows(
                        ring, work, Q, k, i,
                        ring.canon(s), ring.canon(t),
                        ring.canon(-c // g), ring.canon(a // g),
                    )
                    if ring.is_unit(work[k][j]):
                        break
        inv = ring.inverse(work[k][j])
        if inv is None:
            raise AssertionError(f"column {b} does not extend to a basis")
        work[k] = [ring.mul(inv, x) for x in work[k]]
        Q[k] = [ring.mul(inv, x) for x in Q[k]]
        for i in range(p):
            f = work[i][j]
            if i != k and f != 0:
                work[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(work[i], work[k])]
                Q[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(Q[i], Q[k])]
    return work, Q


def reduce(M: IndexedMatrix) -> EchelonResult:
    """Invertible ``Q`` with ``QM`` in reduced echelon form.

    The chosen column set is the lexicographically smallest one of maximum
    size, and its k-th column is pivoted on the k-th smallest row label.
    """
    cols = best_unit_column_set(M)
    ring = M.ring
    if not cols:
        Q = IndexedMatrix.identity(ring, M.rows)
        return EchelonResult(Q, M, 0, {})
    work, qrows = _realize(M, cols)
    Q = IndexedMatrix(ring, M.rows, M.rows, tuple(tuple(r) for r in qrows), _trusted=True)
    reduced = IndexedMatrix(ring, M.rows, M.cols, tuple(tuple(r) for r in work), _trusted=True)
    pivots = {b: M.rows[k] for k, b in enumerate(cols)}
    return EchelonResult(Q, reduced, len(cols), pivots)


def is_reduced_echelon(M: IndexedMatrix) -> bool:
    return count_unit_columns(M) == unit_column_capacity(M)


def greedy_unit_pivots(M: IndexedMatrix) -> int:
    """Unit columns reached by plain left-to-right unit-pivot elimination.

    No gcd combining: a column is pivoted only if some free row already holds
    a unit there.  Kept to compare against the exact capacity.
    """
    ring = M.ring
    m = [list(r) for r in M.data]
    used: set[int] = set()
    count = 0
    for j in range(len(M.cols)):
        piv: Optional[int] = next(
            (i for i in range(len(m)) if i not in used and ring.is_unit(m[i][j])), None
        )
        if piv is None:
            continue
        inv = ring.inverse(m[piv][j])
        m[piv] = [ring.mul(inv, x) for x in m[piv]]
        for i in range(len(m)):
            f = m[i][j]
            if i != piv and f != 0:
                m[i] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(m[i], m[piv])]
        used.add(piv)
        count += 1
    return count
