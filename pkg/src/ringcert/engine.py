"""Certificates for column-partitioned matrices without invertible transversals.

Given ``M`` (``p x q``) and a partition of its columns into blocks such that no
``p x p`` submatrix with columns from distinct blocks is invertible,
:func:`certify` produces an invertible ``Q`` and a non-empty row set ``A'``
such that ``QM`` is in reduced echelon form and at most ``|A'| - 1`` of the
blocks ``(QM)[A', B_i]`` have a column with a unit entry but no non-zero
non-unit.

The construction picks an admissible set of maximum spread whose weight
profile is majorization-maximal, walks its connection graph (arrows between
rows through columns of light blocks), and moves weight between blocks until
no path from the distinguished vertex ``0`` reaches a weight-two block.  The
row set ``A'`` is then read off from the blocks that still matter.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional

from .echelon import reduce as echelon_reduce
from .errors import CertificateError, HypothesisFailure
from .matrices import IndexedMatrix, permutation_matrix
from .transversal import (
    AdmissibleSet,
    ColumnPartition,
    admissible_sets,
    extremal_candidates,
    invertible_transversal,
    make_admissible,
    strictly_majorizes,
)

ENGINE_VERSION = "ringcert-engine/1"

SOURCE = 0  # the distinguished vertex; never a row label


class Branch(str, Enum):
    FEW_BLOCKS = "FewBlocks"
    NO_ADMISSIBLE = "NoAdmissible"
    NO_WEIGHT_TWO = "NoWeightTwo"
    FIRST_KIND = "FirstKind"


class Arrow(NamedTuple):
    """Arrow from row ``source`` to row ``target`` through ``column``."""

    source: int
    column: int
    target: int


@dataclass(frozen=True)
class ConnectionGraph:
    arrows: tuple[Arrow, ...]          # D
    layers: tuple[tuple[Arrow, ...], ...]  # D_1, D_2, ...
    row_pool: tuple[int, ...]          # rows of blocks of weight 1 or 2
    column_pool: tuple[int, ...]       # columns of blocks of weight 0 or 1
    targets: frozenset                 # T: rows of weight-two blocks
    distance: Optional[int]            # None when no 0 -> T path exists

    @property
    def union(self) -> frozenset:
        return frozenset(a for layer in self.layers for a in layer)

    @property
    def is_first_kind(self) -> bool:
        return self.distance is None

    @property
    def kind(self) -> str:
        return "first" if self.distance is None else "second"


class GapViolation(NamedTuple):
    row: int
    column: int
    row_block: int
    column_block: int
    pivot_column: int  # the column of P whose unit vector sits in ``row``


class Measure(NamedTuple):
    """Progress measure of an admissible set; swaps must strictly increase it.

    ``distance`` is 0 for first-kind sets, which rank above every second-kind
    set with the same spread and profile.
    """

    spread: int
    profile: tuple[int, ...]
    distance: int


def measure_of(adm: AdmissibleSet, graph: ConnectionGraph) -> Measure:
    return Measure(len(adm.spread), adm.profile_sequence, graph.distance or 0)


def measure_increases(before: Measure, after: Measure) -> bool:
    if after.spread != before.spread:
        return after.spread > before.spread
    if after.profile != before.profile:
        return strictly_majorizes(after.profile, before.profile)
    if before.distance == 0:
        return False
    return after.distance < before.distance


@dataclass
class SwapStep:
    move: str  # "gap" or "distance"
    removed: int
    added: int
    before: Measure
    after: Measure
    path: tuple[Arrow, ...] = ()

    @property
    def improves(self) -> bool:
        return measure_increases(self.before, self.after)


@dataclass
class Audit:
    admissible: Optional[tuple[int, ...]] = None
    weights: Optional[tuple[int, ...]] = None
    initial_distance: Optional[int] = None
    swaps: list[SwapStep] = field(default_factory=list)
    gap_violations: int = 0
    t: Optional[int] = None
    excluded_blocks: tuple[int, ...] = ()  # the set S of the first-kind branch


@dataclass
class TheoremCertificate:
    Q: IndexedMatrix
    a_prime: tuple[int, ...]
    m: int
    possibly_bad_blocks: tuple[int, ...]
    branch: Branch
    audit: Audit = field(default_factory=Audit)
    engine_version: str = ENGINE_VERSION


# -- connection graph -----------------------------------------------------------

def _clear_extension(QM: IndexedMatrix, path_columns, new_target) -> bool:
    return all(QM[new_target, c] == 0 for c in path_columns)


def _has_clear_path(QM, start: Arrow, arrows, targets) -> bool:
    """Is there a clear path in ``arrows`` that starts at ``start`` and ends in ``targets``?

    A path is clear when the column of each arrow vanishes on the targets of all
    later arrows.  Clear paths never repeat a target, so the search is finite.
    """
    by_source: dict[int, list[Arrow]] = {}
    for a in arrows:
        by_source.setdefault(a.source, []).append(a)

    def extend(path_cols, seen_targets, last):
        if last.target in targets:
            return True
        for nxt in by_source.get(last.target, ()):
            if nxt.target in seen_targets:
                continue
            if not _clear_extension(QM, path_cols, nxt.target):
                continue
            if extend(path_cols + (nxt.column,), seen_targets | {nxt.target}, nxt):
                return True
        return False

    return extend((start.column,), frozenset({start.target}), start)


def _distances_from_source(arrows) -> dict:
    dist = {SOURCE: 0}
    queue = deque([SOURCE])
    by_source: dict[int, list[Arrow]] = {}
    for a in arrows:
        by_source.setdefault(a.source, []).append(a)
    while queue:
        v = queue.popleft()
        for a in by_source.get(v, ()):
            if a.target not in dist:
                dist[a.target] = dist[v] + 1
                queue.append(a.target)
    return dist


def build_connection_graph(
    M: IndexedMatrix, partition: ColumnPartition, adm: AdmissibleSet
) -> ConnectionGraph:
    QM = adm.reduced
    ring = M.ring
    light = [i for i in partition.indices() if adm.weight(i) <= 1]
    row_pool = tuple(sorted(r for i in partition.indices() if adm.weight(i) <= 2 for r in adm.rows_of(i)))
    column_pool = tuple(sorted(c for i in light for c in partition.block(i)))
    targets = frozenset(r for i in partition.indices() if adm.weight(i) == 2 for r in adm.rows_of(i))

    arrows = []
    for c in column_pool:
        k = partition.block_of(c)
        source = adm.rows_of(k)[0] if adm.weight(k) == 1 else SOURCE
        for t in row_pool:
            if t != source and ring.is_unit(QM[t, c]):
                arrows.append(Arrow(source, c, t))
    arrows.sort()

    layers = []
    layer = tuple(a for a in arrows if a.target in targets)
    placed: set[Arrow] = set()
    while layer:
        layers.append(layer)
        placed.update(layer)
        sources = {a.source for a in layer}
        nxt = []
        for a in arrows:
            if a in placed or a.target not in sources:
                continue
            if _has_clear_path(QM, a, placed | {a}, targets):
                nxt.append(a)
        layer = tuple(nxt)

    dist = _distances_from_source(placed)
    reached = [dist[t] for t in targets if t in dist]
    distance = min(reached) if reached else None
    return ConnectionGraph(
        arrows=tuple(arrows),
        layers=tuple(layers),
        row_pool=row_pool,
        column_pool=column_pool,
        targets=targets,
        distance=distance,
    )


def shortest_paths(graph: ConnectionGraph) -> list[tuple[Arrow, ...]]:
    """All shortest directed paths from ``0`` into the target pool, sorted."""
    if graph.distance is None:
        return []
    arrows = graph.union
    dist = _distances_from_source(arrows)
    by_source: dict[int, list[Arrow]] = {}
    for a in sorted(arrows):
        by_source.setdefault(a.source, []).append(a)
    out = []

    def walk(v, path):
        if len(path) == graph.distance:
            if v in graph.targets:
                out.append(tuple(path))
            return
        for a in by_source.get(v, ()):
            if dist.get(a.target) == dist[v] + 1:
                walk(a.target, path + [a])

    walk(SOURCE, [])
    return out


def is_clear(QM: IndexedMatrix, path) -> bool:
    for i, a in enumerate(path):
        if any(QM[b.target, a.column] != 0 for b in path[i + 1:]):
            return False
    return True


def rows_reaching_targets(graph: ConnectionGraph) -> set:
    """Vertices with a directed path into the target pool inside ``D_P``."""
    reach = set(graph.targets)
    arrows = graph.union
    changed = True
    while changed:
        changed = False
        for a in arrows:
            if a.target in reach and a.source not in reach:
                reach.add(a.source)
                changed = True
    return reach


# -- swap moves -------------------------------------------------------------------

def gap_violations(partition: ColumnPartition, adm: AdmissibleSet) -> list[GapViolation]:
    """Units of ``QM`` in ``(A_i, B_j)`` with ``w_i >= w_j + 2``."""
    QM = adm.reduced
    ring = QM.ring
    row_to_col = {r: c for c, r in adm.pivot_row.items()}
    out = []
    for i in partition.indices():
        for j in partition.indices():
            if adm.weight(i) < adm.weight(j) + 2:
                continue
            for r in adm.rows_of(i):
                for c in partition.block(j):
                    if ring.is_unit(QM[r, c]):
                        out.append(GapViolation(r, c, i, j, row_to_col[r]))
    return out


def gap_swap(M: IndexedMatrix, partition: ColumnPartition, adm: AdmissibleSet,
             violation: GapViolation) -> AdmissibleSet:
    """Trade the pivot column of ``violation.row`` for ``violation.column``."""
    cols = (set(adm.columns) - {violation.pivot_column}) | {violation.column}
    new = make_admissible(M, partition, cols)
    if new is None:
        raise AssertionError(f"gap swap produced a singular column set {sorted(cols)}")
    return new


def distance_reducing_swap(
    M: IndexedMatrix,
    partition: ColumnPartition,
    adm: AdmissibleSet,
    graph: Optional[ConnectionGraph] = None,
) -> tuple[AdmissibleSet, ConnectionGraph, tuple[Arrow, ...], int]:
    """Shorten the connection distance of a second-kind admissible set.

    The last arrow ``(s, c_l, t)`` of a shortest ``0 -> T`` path ends in a row
    of a weight-two block ``B_k``; the column of ``P`` in ``B_k`` pivoted on
    ``t`` is exchanged for ``c_l``.  Shortest paths are tried in order (clear
    ones first) until one gives a strictly smaller distance.

    Returns the new set, its graph, the path used, and the removed column.
    """
    if graph is None:
        graph = build_connection_graph(M, partition, adm)
    if graph.is_first_kind:
        raise ValueError("distance_reducing_swap needs a second-kind admissible set")
    row_to_col = {r: c for c, r in adm.pivot_row.items()}
    paths = shortest_paths(graph)
    paths.sort(key=lambda p: (not is_clear(adm.reduced, p), p))
    for path in paths:
        last = path[-1]
        removed = row_to_col[last.target]
        cols = (set(adm.columns) - {removed}) | {last.column}
        new = make_admissible(M, partition, cols)
        if new is None:
            continue
        new_graph = build_connection_graph(M, partition, new)
        if new_graph.is_first_kind or new_graph.distance < graph.distance:
            return new, new_graph, path, removed
    raise CertificateError(
        f"no shortest path of {adm.columns} (distance {graph.distance}) gives a shorter distance"
    )


def improve(
    M: IndexedMatrix, partition: ColumnPartition, adm: AdmissibleSet
) -> tuple[AdmissibleSet, list[SwapStep]]:
    """Local search from ``adm`` using both swap moves.

    Gap swaps are applied while the gap condition fails, distance-reducing
    swaps while the set is of the second kind.  Every step must strictly
    increase the progress measure, which bounds the number of steps.  Stops
    when neither move applies (or no shortest path reduces the distance).
    """
    trace: list[SwapStep] = []
    graph = build_connection_graph(M, partition, adm)
    while True:
        before = measure_of(adm, graph)
        violations = gap_violations(partition, adm)
        if violations:
            v = violations[0]
            new = gap_swap(M, partition, adm, v)
            new_graph = build_connection_graph(M, partition, new)
            step = SwapStep("gap", v.pivot_column, v.column, before, measure_of(new, new_graph))
        elif not graph.is_first_kind:
            try:
                new, new_graph, path, removed = distance_reducing_swap(M, partition, adm, graph)
            except CertificateError:
                break
            step = SwapStep("distance", removed, path[-1].column, before,
                            measure_of(new, new_graph), path)
        else:
            break
        trace.append(step)
        if not step.improves:
            raise CertificateError(f"{step.move} swap did not increase the progress measure")
        adm, graph = new, new_graph
    return adm, trace


# -- certificate construction ---------------------------------------------------------

def bad_blocks(QM: IndexedMatrix, rows, partition: ColumnPartition) -> tuple[int, ...]:
    """Blocks with a column whose entries on ``rows`` include a unit but no non-zero non-unit."""
    ring = QM.ring
    out = []
    for i in partition.indices():
        for c in partition.block(i):
            vals = [QM[r, c] for r in rows]
            if any(ring.is_unit(v) for v in vals) and not any(ring.is_nonzero_nonunit(v) for v in vals):
                out.append(i)
                break
    return tuple(out)


def _finish(M, partition, Q, a_prime, possibly_bad, branch, audit) -> TheoremCertificate:
    from .oracle import verify_certificate

    cert = TheoremCertificate(
        Q=Q,
        a_prime=tuple(sorted(a_prime)),
        m=len(a_prime),
        possibly_bad_blocks=tuple(sorted(possibly_bad)),
        branch=branch,
        audit=audit,
    )
    check = verify_certificate(M, partition, cert)
    if not check.ok:
        raise CertificateError(f"self-check failed ({branch.value}): {check.diagnostic}", audit)
    return cert


def certify(M: IndexedMatrix, partition: ColumnPartition) -> TheoremCertificate:
    """Construct and self-verify a certificate for ``(M, partition)``.

    Raises :class:`HypothesisFailure` when an invertible transversal
    submatrix exists, and :class:`CertificateError` if a constructed
    certificate fails verification.
    """
    partition.check_covers(M.cols)
    witness = invertible_transversal(M, partition)
    if witness is not None:
        raise HypothesisFailure(witness[0], witness[1], M.ring)

    p = len(M.rows)
    audit = Audit()
    if partition.n < p:
        # any Q works for the counting; the echelon transform keeps QM reduced
        ech = echelon_reduce(M)
        audit.t = ech.t
        return _finish(M, partition, ech.Q, M.rows, partition.indices(), Branch.FEW_BLOCKS, audit)

    adms = list(admissible_sets(M, partition))
    if not adms:
        ech = echelon_reduce(M)
        audit.t = ech.t
        if ech.t == 0:
            a_prime = (M.rows[0],)
        else:
            a_prime = ech.rows_without_units
        return _finish(M, partition, ech.Q, a_prime, (), Branch.NO_ADMISSIBLE, audit)

    adm = min(extremal_candidates(adms), key=lambda a: a.columns)
    violations = gap_violations(partition, adm)
    audit.gap_violations = len(violations)
    if violations:
        raise CertificateError(f"extremal set {adm.columns} violates the gap condition", audit)
    graph = build_connection_graph(M, partition, adm)
    audit.initial_distance = graph.distance

    while not graph.is_first_kind:
        before = measure_of(adm, graph)
        new, new_graph, path, removed = distance_reducing_swap(M, partition, adm, graph)
        step = SwapStep("distance", removed, path[-1].column, before, measure_of(new, new_graph), path)
        audit.swaps.append(step)
        if not step.improves:
            raise CertificateError("swap did not increase the progress measure", audit)
        adm, graph = new, new_graph
        if gap_violations(partition, adm):
            raise CertificateError(f"swapped set {adm.columns} violates the gap condition", audit)

    audit.admissible = adm.columns
    audit.weights = adm.weights
    weights = adm.weights
    if 2 not in weights:
        chosen = [i for i in partition.indices() if adm.weight(i) > 2]
        branch = Branch.NO_WEIGHT_TWO
    else:
        reach = rows_reaching_targets(graph)
        used_blocks = {partition.block_of(a.column) for a in graph.union if a.target in reach}
        excluded = [i for i in partition.indices() if adm.weight(i) == 1 and i not in used_blocks]
        audit.excluded_blocks = tuple(excluded)
        chosen = [i for i in partition.indices() if i not in excluded]
        branch = Branch.FIRST_KIND
    a_prime = [r for i in chosen for r in adm.rows_of(i)]
    return _finish(M, partition, adm.Q, a_prime, chosen, branch, audit)


def to_theorem_form(cert: TheoremCertificate, M: IndexedMatrix) -> tuple[IndexedMatrix, int]:
    """Permute rows so that ``A'`` occupies the last ``m`` positions.

    Returns ``(Q', m)`` with ``Q' = P Q`` for a permutation matrix ``P``; the
    other rows keep their ascending order.
    """
    rest = [r for r in M.rows if r not in cert.a_prime]
    order = rest + list(cert.a_prime)
    perm = permutation_matrix(M.ring, M.rows, order)
    return perm @ cert.Q, cert.m
