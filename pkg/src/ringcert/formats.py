"""JSON interchange formats for instances, certificates and reports.

Instance file::

    {
      "ring": {"GF": 2},
      "rows": [[1, 1, 1, 1], [1, 1, 1, 1]],
      "partition": [[1, 2], [3, 4]]
    }

Rows and columns are numbered from 1.  Ring descriptors are ``"Z"``, ``"Q"``,
``{"Zmod": n}`` or ``{"GF": p}``; entries are integer literals, or ``"a/b"``
strings over ``Q``.  An optional ``"generator"`` object records how a random
instance was drawn.

Certificate file keys: ``ring``, ``Q``, ``m``, ``rowsAprime``,
``possiblyBadBlocks``, ``branch``, ``engineVersion``.

Output is deterministic: fixed key order, one top-level key per line, nested
lists on a single line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .engine import Branch
from .errors import RingcertError
from .matrices import IndexedMatrix
from .rado import RadoReport
from .rings import Ring
from .transversal import ColumnPartition


class ParseError(RingcertError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


def dumps(obj: dict) -> str:
    lines = [f"  {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}" for k, v in obj.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _load(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object", 1, 1)
    return obj


def _field(obj: dict, key: str):
    if key not in obj:
        raise ParseError(f"missing field {key!r}")
    return obj[key]


def _ring(obj) -> Ring:
    try:
        return Ring.from_json(obj)
    except ValueError as exc:
        raise ParseError(f"field 'ring': {exc}") from None


def _matrix_rows(ring: Ring, rows, key: str) -> list[list]:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"field {key!r} must be a non-empty list of rows")
    width = len(rows[0])
    if width == 0:
        raise ParseError(f"field {key!r}: rows must be non-empty")
    out = []
    for i, r in enumerate(rows, start=1):
        if len(r) != width:
            raise ParseError(f"field {key!r}: row {i} has {len(r)} entries, expected {width}")
        try:
            out.append([ring.decode(x) for x in r])
        except (ValueError, TypeError) as exc:
            raise ParseError(f"field {key!r}, row {i}: {exc}") from None
    return out


def _int_list(value, key: str) -> list[int]:
    if not isinstance(value, list) or not all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    ):
        raise ParseError(f"field {key!r} must be a list of integers")
    return value


# -- instances ----------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    matrix: IndexedMatrix
    partition: ColumnPartition
    generator: Optional[dict] = None


def instance_to_json(inst: Instance) -> dict:
    ring = inst.matrix.ring
    out = {
        "ring": ring.to_json(),
        "rows": [[ring.encode(x) for x in r] for r in inst.matrix.data],
        "partition": [list(b) for b in inst.partition.blocks],
    }
    if inst.generator is not None:
        out["generator"] = inst.generator
    return out


def dump_instance(inst: Instance) -> str:
    return dumps(instance_to_json(inst))


def parse_instance(text: str) -> Instance:
    obj = _load(text)
    ring = _ring(_field(obj, "ring"))
    rows = _matrix_rows(ring, _field(obj, "rows"), "rows")
    M = IndexedMatrix.from_rows(ring, rows)
    blocks = _field(obj, "partition")
    if not isinstance(blocks, list):
        raise ParseError("field 'partition' must be a list of blocks")
    for i, b in enumerate(blocks, start=1):
        _int_list(b, f"partition[{i}]")
    try:
        partition = ColumnPartition(blocks)
        partition.check_covers(M.cols)
    except RingcertError as exc:
        raise ParseError(f"field 'partition': {exc}") from None
    generator = obj.get("generator")
    if generator is not None and not isinstance(generator, dict):
        raise ParseError("field 'generator' must be an object")
    return Instance(M, partition, generator)


# -- certificates ---------------------------------------------------------------------

@dataclass(frozen=True)
class CertificateFile:
    Q: IndexedMatrix
    m: int
    a_prime: tuple[int, ...]
    possibly_bad_blocks: tuple[int, ...]
    branch: str
    engine_version: str


def certificate_file(cert) -> CertificateFile:
    return CertificateFile(
        Q=cert.Q,
        m=cert.m,
        a_prime=tuple(cert.a_prime),
        possibly_bad_blocks=tuple(cert.possibly_bad_blocks),
        branch=Branch(cert.branch).value,
        engine_version=cert.engine_version,
    )


def certificate_to_json(cert: CertificateFile) -> dict:
    ring = cert.Q.ring
    return {
        "ring": ring.to_json(),
        "Q": [[ring.encode(x) for x in r] for r in cert.Q.data],
        "m": cert.m,
        "rowsAprime": list(cert.a_prime),
        "possiblyBadBlocks": list(cert.possibly_bad_blocks),
        "branch": cert.branch,
        "engineVersion": cert.engine_version,
    }


def dump_certificate(cert) -> str:
    if not isinstance(cert, CertificateFile):
        cert = certificate_file(cert)
    return dumps(certificate_to_json(cert))


def parse_certificate(text: str) -> CertificateFile:
    obj = _load(text)
    ring = _ring(_field(obj, "ring"))
    rows = _matrix_rows(ring, _field(obj, "Q"), "Q")
    p = len(rows)
    if any(len(r) != p for r in rows):
        raise ParseError("field 'Q' must be square")
    Q = IndexedMatrix.from_rows(ring, rows)
    m = _field(obj, "m")
    if not isinstance(m, int) or isinstance(m, bool):
        raise ParseError("field 'm' must be an integer")
    a_prime = _int_list(_field(obj, "rowsAprime"), "rowsAprime")
    bad = _int_list(_field(obj, "possiblyBadBlocks"), "possiblyBadBlocks")
    branch = _field(obj, "branch")
    if branch not in {b.value for b in Branch}:
        raise ParseError(f"field 'branch': unknown tag {branch!r}")
    version = _field(obj, "engineVersion")
    if not isinstance(version, str):
        raise ParseError("field 'engineVersion' must be a string")
    return CertificateFile(Q, m, tuple(a_prime), tuple(bad), branch, version)


# -- reports -----------------------------------------------------------------------------

def rado_to_json(report: RadoReport) -> dict:
    return {
        "k": report.k,
        "holds": report.holds,
        "violatingFamily": None if report.violating_family is None else list(report.violating_family),
        "witnessTransversal": (
            None if report.witness_transversal is None else list(report.witness_transversal)
        ),
    }


def parse_rado(text: str) -> RadoReport:
    obj = _load(text)
    fam = obj.get("violatingFamily")
    wit = obj.get("witnessTransversal")
    return RadoReport(
        k=_field(obj, "k"),
        holds=_field(obj, "holds"),
        violating_family=None if fam is None else tuple(fam),
        witness_transversal=None if wit is None else tuple(wit),
    )


def echelon_to_json(result) -> dict:
    ring = result.Q.ring
    return {
        "ring": ring.to_json(),
        "t": result.t,
        "Q": [[ring.encode(x) for x in r] for r in result.Q.data],
        "QM": [[ring.encode(x) for x in r] for r in result.reduced.data],
        "pivots": [[c, r] for c, r in sorted(result.pivot_assignment.items())],
    }
