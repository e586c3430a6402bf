"""Column partitions, partial transversals and admissible sets.

An *admissible set* is a set ``P`` of ``p = |rows|`` columns with ``M[rows, P]``
invertible.  Admissible sets are compared by their *spread* (the blocks they
meet) and then by the ascending sequence of block weights under majorization,
where a more balanced sequence majorizes a less balanced one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate, combinations
from typing import Iterator, Optional, Sequence

from .errors import RingcertError, ShapeError
from .matrices import IndexedMatrix, index_set


class ColumnPartition:
    """Ordered blocks ``B_1..B_n`` partitioning a column index set.

    Block indices are 1-based and follow input order.
    """

    __slots__ = ("blocks", "_block_of")

    def __init__(self, blocks: Sequence):
        self.blocks = tuple(index_set(b) for b in blocks)
        self._block_of = {}
        for i, block in enumerate(self.blocks, start=1):
            if not block:
                raise ShapeError(f"block {i} is empty")
            for c in block:
                if c in self._block_of:
                    raise ShapeError(f"column {c} appears in blocks {self._block_of[c]} and {i}")
                self._block_of[c] = i

    @classmethod
    def singletons(cls, cols) -> "ColumnPartition":
        return cls([(c,) for c in index_set(cols)])

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(sorted(self._block_of))

    def block(self, i: int) -> tuple[int, ...]:
        return self.blocks[i - 1]

    def block_of(self, c: int) -> int:
        return self._block_of[c]

    def indices(self) -> range:
        return range(1, self.n + 1)

    def check_covers(self, cols) -> None:
        if self.columns != index_set(cols):
            raise ShapeError(f"partition covers {list(self.columns)}, matrix has {list(cols)}")

    def is_partial_transversal(self, cols) -> bool:
        seen = set()
        for c in cols:
            i = self._block_of[c]
            if i in seen:
                return False
            seen.add(i)
        return True

    def partial_transversals(self, k: int) -> Iterator[tuple[int, ...]]:
        """Size-``k`` partial transversals in lexicographic order."""
        for cols in combinations(self.columns, k):
            if self.is_partial_transversal(cols):
                yield cols

    def __eq__(self, other):
        return isinstance(other, ColumnPartition) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        return f"ColumnPartition({[list(b) for b in self.blocks]})"


def partial_transversals(partition: ColumnPartition, k: int) -> Iterator[tuple[int, ...]]:
    return partition.partial_transversals(k)


def invertible_transversal(M: IndexedMatrix, partition: ColumnPartition) -> Optional[tuple]:
    """First ``(columns, determinant)`` with ``M[rows, columns]`` an invertible
    transversal submatrix, or ``None``."""
    partition.check_covers(M.cols)
    ring = M.ring
    for cols in partition.partial_transversals(len(M.rows)):
        det = M.submatrix(None, cols).determinant()
        if ring.is_unit(det):
            return cols, det
    return None


def hypothesis_holds(M: IndexedMatrix, partition: ColumnPartition) -> bool:
    """True iff no square submatrix with columns from distinct blocks is invertible."""
    return invertible_transversal(M, partition) is None


@dataclass(frozen=True)
class AdmissibleSet:
    """A column set ``P`` with ``M[rows, P]`` invertible and its bookkeeping.

    ``Q`` is the inverse of ``M[rows, P]`` relabelled to ``rows x rows`` so that
    ``reduced = QM`` carries ``P[k]`` as the unit vector of ``rows[k]``.
    """

    columns: tuple[int, ...]
    Q: IndexedMatrix
    reduced: IndexedMatrix
    weights: tuple[int, ...]
    row_groups: tuple[tuple[int, ...], ...]
    pivot_row: dict = field(compare=False)

    @property
    def spread(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights, start=1) if w)

    @property
    def profile_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(w for w in self.weights if w))

    def weight(self, i: int) -> int:
        return self.weights[i - 1]

    def rows_of(self, i: int) -> tuple[int, ...]:
        """The row group ``A_i``: pivot rows of the columns of ``P`` in block ``i``."""
        return self.row_groups[i - 1]


def make_admissible(M: IndexedMatrix, partition: ColumnPartition, cols) -> Optional[AdmissibleSet]:
    """Package ``cols`` as an admissible set, or ``None`` if ``M[rows, cols]`` is singular."""
    cols = index_set(cols)
    if len(cols) != len(M.rows):
        return None
    inv = M.submatrix(None, cols).inverse()
    if inv is None:
        return None
    Q = inv.relabel(rows=M.rows)
    reduced = Q @ M
    pivot_row = dict(zip(cols, M.rows))
    weights = [0] * partition.n
    groups = [[] for _ in range(partition.n)]
    for c in cols:
        i = partition.block_of(c)
        weights[i - 1] += 1
        groups[i - 1].append(pivot_row[c])
    return AdmissibleSet(
        columns=cols,
        Q=Q,
        reduced=reduced,
        weights=tuple(weights),
        row_groups=tuple(tuple(sorted(g)) for g in groups),
        pivot_row=pivot_row,
    )


def admissible_sets(M: IndexedMatrix, partition: ColumnPartition) -> Iterator[AdmissibleSet]:
    """All admissible sets in lexicographic order of their column sets."""
    partition.check_covers(M.cols)
    for cols in combinations(M.cols, len(M.rows)):
        adm = make_admissible(M, partition, cols)
        if adm is not None:
            yield adm


def _check_monotone(seq):
    if any(x > y for x, y in zip(seq, seq[1:])):
        raise ValueError(f"sequence {tuple(seq)} is not monotone increasing")


def majorizes(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff every prefix sum of ``a`` is at least that of ``b``, with equal totals.

    Both sequences must be ascending and of equal length.
    """
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    _check_monotone(a)
    _check_monotone(b)
    pa, pb = list(accumulate(a)), list(accumulate(b))
    if pa and pa[-1] != pb[-1]:
        return False
    return all(x >= y for x, y in zip(pa, pb))


def strictly_majorizes(a, b) -> bool:
    return tuple(a) != tuple(b) and majorizes(a, b)


def extremal_candidates(adms: Sequence[AdmissibleSet]) -> list[AdmissibleSet]:
    """Members of maximum spread whose profile sequence nobody strictly majorizes."""
    if not adms:
        return []
    top = max(len(a.spread) for a in adms)
    wide = [a for a in adms if len(a.spread) == top]
    seqs = {a.profile_sequence for a in wide}
    maximal = {s for s in seqs if not any(strictly_majorizes(o, s) for o in seqs)}
    return [a for a in wide if a.profile_sequence in maximal]


class NoAdmissibleSet(RingcertError):
    pass


def select_extremal(M: IndexedMatrix, partition: ColumnPartition) -> AdmissibleSet:
    """Lexicographically first admissible set among the extremal candidates."""
    candidates = extremal_candidates(list(admissible_sets(M, partition)))
    if not candidates:
        raise NoAdmissibleSet("no admissible set exists")
    return min(candidates, key=lambda a: a.columns)
