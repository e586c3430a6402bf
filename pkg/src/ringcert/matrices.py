"""Matrices indexed by finite sets of positive integers.

An :class:`IndexedMatrix` is a map ``rows x cols -> R``.  Row and column labels
are arbitrary positive integers, kept sorted; whenever a bijection between
labels and positions is needed (determinants, inverses, printing) the
ascending order is used.  Submatrices keep their original labels.

Entries are raw canonical ring values (see :mod:`ringcert.rings`).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Iterable, Optional, Sequence, Union

from .errors import RingMismatchError, ShapeError
from .rings import PRIME_FIELD, RATIONALS, Raw, Ring

Labels = Union[int, Iterable[int]]


def index_set(labels: Labels) -> tuple[int, ...]:
    """Normalize an int or an iterable of ints to a sorted tuple of labels.

    A bare integer ``a`` stands for the singleton ``{a}``.
    """
    if isinstance(labels, int) and not isinstance(labels, bool):
        labels = (labels,)
    out = tuple(sorted(labels))
    for a in out:
        if not isinstance(a, int) or isinstance(a, bool) or a < 1:
            raise ShapeError(f"index labels must be positive integers, got {a!r}")
    if len(set(out)) != len(out):
        raise ShapeError(f"duplicate index labels in {out}")
    return out


class IndexedMatrix:
    """Immutable dense matrix over a :class:`Ring` with labelled rows and columns."""

    __slots__ = ("ring", "rows", "cols", "data", "_rpos", "_cpos")

    def __init__(self, ring: Ring, rows: Labels, cols: Labels, data, *, _trusted=False):
        self.ring = ring
        self.rows = index_set(rows)
        self.cols = index_set(cols)
        if _trusted:
            self.data = data
        else:
            data = tuple(tuple(ring.canon(v) for v in row) for row in data)
            if len(data) != len(self.rows) or any(len(r) != len(self.cols) for r in data):
                raise ShapeError(
                    f"data shape does not match {len(self.rows)}x{len(self.cols)} index sets"
                )
            self.data = data
        self._rpos = {a: i for i, a in enumerate(self.rows)}
        self._cpos = {b: j for j, b in enumerate(self.cols)}

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> "IndexedMatrix":
        """Matrix with labels ``1..p`` and ``1..q`` from a list of rows."""
        p = len(rows)
        q = len(rows[0]) if p else 0
        return cls(ring, range(1, p + 1), range(1, q + 1), rows)

    @classmethod
    def from_entries(cls, ring: Ring, rows: Labels, cols: Labels, entries: dict) -> "IndexedMatrix":
        """Matrix from a total map ``{(row, col): value}``."""
        rows, cols = index_set(rows), index_set(cols)
        missing = [(a, b) for a in rows for b in cols if (a, b) not in entries]
        if missing or len(entries) != len(rows) * len(cols):
            raise ShapeError("entry map must be defined on exactly rows x cols")
        return cls(ring, rows, cols, [[entries[a, b] for b in cols] for a in rows])

    @classmethod
    def identity(cls, ring: Ring, labels: Labels) -> "IndexedMatrix":
        labels = index_set(labels)
        n = len(labels)
        data = tuple(
            tuple(ring.one if i == j else ring.zero for j in range(n)) for i in range(n)
        )
        return cls(ring, labels, labels, data, _trusted=True)

    @classmethod
    def zeros(cls, ring: Ring, rows: Labels, cols: Labels) -> "IndexedMatrix":
        rows, cols = index_set(rows), index_set(cols)
        data = tuple(tuple(ring.zero for _ in cols) for _ in rows)
        return cls(ring, rows, cols, data, _trusted=True)

    def _new(self, rows, cols, data) -> "IndexedMatrix":
        return IndexedMatrix(self.ring, rows, cols, data, _trusted=True)

    # -- access -------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def is_square(self) -> bool:
        return len(self.rows) == len(self.cols)

    def __getitem__(self, key) -> Raw:
        a, b = key
        return self.data[self._rpos[a]][self._cpos[b]]

    def row(self, a: int) -> tuple:
        return self.data[self._rpos[a]]

    def column(self, b: int) -> tuple:
        j = self._cpos[b]
        return tuple(r[j] for r in self.data)

    def entries(self) -> dict:
        return {(a, b): self.data[i][j] for i, a in enumerate(self.rows) for j, b in enumerate(self.cols)}

    def to_lists(self) -> list[list]:
        return [list(r) for r in self.data]

    def __eq__(self, other):
        if not isinstance(other, IndexedMatrix):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.ring, self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(self.ring.format(v) for v in r) for r in self.data)
        return f"IndexedMatrix({self.ring}, rows={list(self.rows)}, cols={list(self.cols)}, [{body}])"

    # -- structure ----------------------------------------------------------

    def submatrix(self, rows: Labels = None, cols: Labels = None) -> "IndexedMatrix":
        """Restriction to ``rows x cols``; ``None`` keeps the full index set."""
        rows = self.rows if rows is None else index_set(rows)
        cols = self.cols if cols is None else index_set(cols)
        try:
            ri = [self._rpos[a] for a in rows]
            ci = [self._cpos[b] for b in cols]
        except KeyError as exc:
            raise ShapeError(f"label {exc.args[0]} is not an index of this matrix") from None
        data = tuple(tuple(self.data[i][j] for j in ci) for i in ri)
        return self._new(rows, cols, data)

    def relabel(self, rows: Labels = None, cols: Labels = None) -> "IndexedMatrix":
        """Same entries with new labels, matched in ascending order."""
        rows = self.rows if rows is None else index_set(rows)
        cols = self.cols if cols is None else index_set(cols)
        if len(rows) != len(self.rows) or len(cols) != len(self.cols):
            raise ShapeError("relabelling must preserve the shape")
        return self._new(rows, cols, self.data)

    def matmul(self, other: "IndexedMatrix") -> "IndexedMatrix":
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply: columns {self.cols} vs rows {other.rows}")
        ring = self.ring
        mod = ring.modulus
        ocols = list(zip(*other.data)) if other.data else [() for _ in other.cols]
        data = []
        for r in self.data:
            out = []
            for c in ocols:
                s = sum(x * y for x, y in zip(r, c))
                if mod is not None:
                    s %= mod
                elif ring.kind == RATIONALS:
                    s = Fraction(s)
                out.append(s)
            data.append(tuple(out))
        return self._new(self.rows, other.cols, tuple(data))

    __matmul__ = matmul

    # -- determinants and inverses --------------------------------------------

    def _require_square(self):
        if not self.is_square:
            raise ShapeError(f"matrix is {len(self.rows)}x{len(self.cols)}, not square")

    def determinant(self) -> Raw:
        self._require_square()
        return determinant_of(self.ring, self.data)

    def is_invertible(self) -> bool:
        return self.ring.is_unit(self.determinant())

    def inverse(self) -> Optional["IndexedMatrix"]:
        """Two-sided inverse (labels ``cols x rows``), or ``None``."""
        self._require_square()
        ring = self.ring
        n = len(self.rows)
        det = determinant_of(ring, self.data)
        dinv = ring.inverse(det)
        if dinv is None:
            return None
        if n == 0:
            return self._new(self.cols, self.rows, ())
        adj = [[ring.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [r[:j] + r[j + 1:] for k, r in enumerate(self.data) if k != i]
                c = determinant_of(ring, minor)
                if (i + j) % 2:
                    c = ring.neg(c)
                adj[j][i] = ring.mul(c, dinv)
        return self._new(self.cols, self.rows, tuple(tuple(r) for r in adj))

    # -- elementary row operations ------------------------------------------

    def row_op_scale(self, r: int, u: Raw) -> "IndexedMatrix":
        """Multiply row ``r`` by the unit ``u``."""
        u = self.ring.canon(u)
        if not self.ring.is_unit(u):
            raise ValueError(f"scale factor {self.ring.format(u)} is not a unit")
        i = self._row_position(r)
        data = list(self.data)
        data[i] = tuple(self.ring.mul(u, x) for x in data[i])
        return self._new(self.rows, self.cols, tuple(data))

    def row_op_add(self, target: int, source: int, factor: Raw) -> "IndexedMatrix":
        """Add ``factor`` times row ``source`` to row ``target``."""
        if target == source:
            raise ValueError("row_op_add needs two distinct rows")
        factor = self.ring.canon(factor)
        i, k = self._row_position(target), self._row_position(source)
        ring = self.ring
        data = list(self.data)
        data[i] = tuple(ring.add(x, ring.mul(factor, y)) for x, y in zip(data[i], data[k]))
        return self._new(self.rows, self.cols, tuple(data))

    def _row_position(self, r: int) -> int:
        try:
            return self._rpos[r]
        except KeyError:
            raise ShapeError(f"{r} is not a row label") from None


def scale_matrix(ring: Ring, labels: Labels, r: int, u: Raw) -> IndexedMatrix:
    """Elementary matrix realizing :meth:`IndexedMatrix.row_op_scale`."""
    return IndexedMatrix.identity(ring, labels).row_op_scale(r, u)


def add_matrix(ring: Ring, labels: Labels, target: int, source: int, factor: Raw) -> IndexedMatrix:
    """Elementary matrix realizing :meth:`IndexedMatrix.row_op_add`."""
    return IndexedMatrix.identity(ring, labels).row_op_add(target, source, factor)


def permutation_matrix(ring: Ring, labels: Labels, order: Sequence[int]) -> IndexedMatrix:
    """Matrix whose row ``labels[k]`` picks out row ``order[k]``."""
    labels = index_set(labels)
    if sorted(order) != list(labels):
        raise ShapeError("order must be a permutation of the labels")
    pos = {a: j for j, a in enumerate(labels)}
    n = len(labels)
    data = tuple(
        tuple(ring.one if pos[order[i]] == j else ring.zero for j in range(n)) for i in range(n)
    )
    return IndexedMatrix(ring, labels, labels, data, _trusted=True)


# -- determinant kernels ------------------------------------------------------

def _cofactor(ring: Ring, a) -> Raw:
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return ring.sub(ring.mul(a[0][0], a[1][1]), ring.mul(a[0][1], a[1][0]))
    total = ring.zero
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in a[1:]]
        term = ring.mul(a[0][j], _cofactor(ring, minor))
        total = ring.sub(total, term) if j % 2 else ring.add(total, term)
    return total


def _bareiss(a) -> int:
    """Fraction-free elimination over Z (exact divisions only)."""
    m = [list(r) for r in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _gauss_fraction(a) -> Fraction:
    m = [[Fraction(x) for x in r] for r in a]
    n = len(m)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            if f:
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


def determinant_of(ring: Ring, a) -> Raw:
    """Determinant of a square list-of-rows of raw values.

    Cofactor expansion up to 4x4; above that, Bareiss on integer lifts for
    ``Z`` and ``Z/n`` and fraction elimination for fields.
    """
    n = len(a)
    if n == 0:
        return ring.one
    if n <= 4:
        return _cofactor(ring, a)
    if ring.kind == RATIONALS:
        return _gauss_fraction(a)
    if ring.kind == PRIME_FIELD:
        p = ring.modulus
        m = [list(r) for r in a]
        det = 1
        for k in range(n):
            piv = next((i for i in range(k, n) if m[i][k] % p), None)
            if piv is None:
                return 0
            if piv != k:
                m[k], m[piv] = m[piv], m[k]
                det = -det
            det = det * m[k][k] % p
            inv = pow(m[k][k], -1, p)
            for i in range(k + 1, n):
                f = m[i][k] * inv % p
                if f:
                    for j in range(k, n):
                        m[i][j] = (m[i][j] - f * m[k][j]) % p
        return det % p
    return ring.canon(_bareiss(a))


def permutation_determinant(ring: Ring, a) -> Raw:
    """Leibniz-formula determinant; slow, used only as a test oracle."""
    n = len(a)
    total = ring.zero
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ring.one
        for i, j in enumerate(perm):
            term = ring.mul(term, a[i][j])
        total = ring.sub(total, term) if inversions % 2 else ring.add(total, term)
    return total
